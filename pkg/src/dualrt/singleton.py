"""Lazy generation of singleton classes at any level.

A class' first-level singleton class is its Smalltalk meta class and is
created together with the class.  Everything above that is created on
demand.  The superclass of a new singleton class is

* ``class_of(obj)``            when ``obj`` is not a class,
* ``Class``                    when ``obj`` is ``Object``,
* ``singleton(superclass(obj))`` otherwise, generated recursively; a
  module counts as a direct subclass of ``Object`` here.
"""

from .errors import ModelViolation, SingletonForbidden
from .objspace import RUBY, ClassFormat, ClassObj, Obj

HELIX_NAMES = ("Object", "Behavior", "Module", "Metaclass3", "Class")


def helix(space):
    return (space.Object, space.Behavior, space.Module, space.Metaclass3, space.Class)


def singleton_allowed(space, obj):
    if isinstance(obj, ClassObj):
        return not obj.is_virtual
    if isinstance(obj, Obj):
        return space.class_of(obj).singletons_allowed
    return False


def _nonvirtual_super(space, cls):
    sup = space.parent(cls, RUBY)
    while sup is not None and sup.is_virtual:
        sup = space.parent(sup, RUBY)
    return sup


def singleton_of(space, obj):
    """``obj``'s singleton class, generated if it does not exist yet."""
    vclass = space.virtual_class(obj)
    if vclass.is_meta:
        return vclass
    return generate_singleton(space, obj)


def singleton_superclass(space, obj):
    if not isinstance(obj, ClassObj):
        return space.class_of(obj)
    if obj is space.Object:
        return space.Class
    if obj.is_module:
        return singleton_of(space, space.Object)
    sup = _nonvirtual_super(space, obj)
    if sup is None:
        raise ModelViolation(f"{obj!r} has no superclass")
    return singleton_of(space, sup)


def generate_singleton(space, obj):
    if not singleton_allowed(space, obj):
        raise SingletonForbidden(f"no singleton classes for {obj!r}")
    vclass = space.virtual_class(obj)
    if vclass.is_meta:
        raise ModelViolation(f"{obj!r} already has a singleton class")
    sup = singleton_superclass(space, obj)
    new = space._alloc_class(ClassFormat.META, sup)
    new.vclass = space.Metaclass3
    new.layout = sup.layout
    new.hidden = sup.hidden
    new.dest = obj
    space._sync_class_slots(new)
    obj.vclass = new
    return new


def check_generate_singleton(space, obj):
    if not singleton_allowed(space, obj):
        return
    if not space.virtual_class(obj).is_meta:
        generate_singleton(space, obj)


def ensure_singleton_generated(space, obj, depth):
    for _ in range(depth):
        check_generate_singleton(space, obj)
        obj = space.virtual_class(obj)


def ruby_singleton_class(space, obj):
    if not singleton_allowed(space, obj):
        raise SingletonForbidden(f"no singleton classes for {obj!r}")
    ensure_singleton_generated(space, obj, 2)
    return space.virtual_class(obj)


def between(space, lower, upper):
    """Classes strictly above ``lower`` up to and including ``upper``."""
    if lower is upper:
        return 0
    count = 0
    cls = _nonvirtual_super(space, lower)
    while cls is not None:
        count += 1
        if cls is upper:
            return count
        cls = _nonvirtual_super(space, cls)
    raise ModelViolation(f"{upper!r} is not a superclass of {lower!r}")


def max_dest(space, obj):
    if isinstance(obj, ClassObj):
        target = obj.dest if obj.is_meta else obj
    else:
        target = space.class_of(obj)
    if not isinstance(target, ClassObj):
        # a first-level singleton of a plain object points at that object
        target = space.class_of(target)
    return target


def max_gen(space, obj):
    """Worst-case number of classes generated when accessing a singleton class."""
    return len(HELIX_NAMES) + between(space, max_dest(space, obj), space.Object) + 2
