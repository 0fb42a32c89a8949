"""Ruby modules as classes without instances, included via virtual copies."""

from .errors import CyclicInclude, ModelViolation, NameConflict
from .objspace import RUBY, ClassFormat, ClassObj


def new_module(space, name_rb):
    if name_rb is not None and space.lookup_name(name_rb, RUBY) is not None:
        raise NameConflict(f"{name_rb!r} already names a class in the ruby environment")
    mod = space._alloc_class(ClassFormat.MODULE, space.Object)
    mod.vclass = space.Module
    if name_rb is not None:
        space.register(mod, RUBY, name_rb)
    space._sync_class_slots(mod)
    return mod


def virtual_superclass(space, cls, env):
    return space.parent(cls, env)


def superclass(space, cls, env):
    sup = space.parent(cls, env)
    while sup is not None and sup.is_virtual:
        sup = space.parent(sup, env)
    return sup


def included_modules(space, cls, env):
    seen = []
    for c in space.chain(space.parent(cls, env), env):
        if c.is_virtual and c.origin not in seen:
            seen.append(c.origin)
    return seen


def _chain_origins(space, cls, env):
    return {c.origin for c in space.chain(cls, env) if c.is_virtual}


def _module_segment(space, module, env):
    """``module`` followed by the modules spliced into its own chain, nearest first."""
    segment = [module]
    for c in space.chain(space.parent(module, env), env):
        if not c.is_virtual:
            break
        segment.append(c.origin)
    return segment


def _make_copy(space, module, env, superclass):
    copy = space._alloc_class(ClassFormat.VIRTUAL, superclass, envs=(env,))
    copy.vclass = space.Module
    copy.origin = module
    copy.fallback_super = superclass
    copy.mdicts[env] = dict(module.mdicts.get(env, {}))
    space._sync_class_slots(copy)
    return copy


def include_module(space, cls, module, env=RUBY):
    """Splice a copy of ``module`` (and the modules it includes) above ``cls``.

    Modules already present anywhere on ``cls``'s chain are skipped, so
    including a module twice is a no-op.  Only ``env``'s chain changes.
    """
    if not isinstance(module, ClassObj) or not module.is_module:
        raise ModelViolation(f"{module!r} is not a module")
    if not isinstance(cls, ClassObj) or cls.is_virtual:
        raise ModelViolation(f"cannot include into {cls!r}")
    segment = _module_segment(space, module, env)
    if cls in segment:
        raise CyclicInclude(f"including {module!r} into {cls!r} would create a cycle")
    if env not in cls.supers:
        cls.supers[env] = cls.fallback_super
        cls.mdicts.setdefault(env, {})
    present = _chain_origins(space, cls, env)
    point = cls
    for mod in segment:
        if mod in present:
            continue
        copy = _make_copy(space, mod, env, point.supers[env])
        point.supers[env] = copy
        point = copy
        present.add(mod)
    return cls

