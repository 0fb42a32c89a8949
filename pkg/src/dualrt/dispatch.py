"""Method definition, lookup, visibility, sends and super sends.

Lookup starts at the receiver's virtual class and follows the superclass
chain of the sending environment.  Classes without a dictionary for that
environment are passed through (their fallback superclass is followed).
The first dictionary hit decides: if its visibility forbids the call the
result is a miss, exactly as if nothing had been found.
"""

from dataclasses import dataclass, replace

from .bridges import (
    ARGUMENT_ERROR,
    PRIVATE,
    PROTECTED,
    PUBLIC,
    REAL,
    VISIBILITIES,
    MethodEntry,
    Signature,
    arity_error,
    family_keys,
    generate_bridges,
    overload_entry,
    spread,
)
from .errors import (
    ArgumentError,
    MethodNotUnderstood,
    ModelViolation,
    NoMethodError,
    NoSuchMethod,
    VisibilityUnsupported,
)
from .ir import Block, Frame, execute
from .objspace import RUBY, SMALLTALK, ClassObj, Message, Symbol
from .selectors import FullSelector, base_of, call_site, is_full_selector, smalltalk_arity

ABSENT = "absent"
VIS_PRIVATE = "visibility_private"
VIS_PROTECTED = "visibility_protected"

METHOD_MISSING = "method_missing#1*&"
DOES_NOT_UNDERSTAND = "doesNotUnderstand:"


@dataclass(frozen=True)
class CallContext:
    """Who is sending: the class holding the running method, its receiver,
    the environment, and whether the send had an implicit ``self``."""

    defining_class: object = None
    receiver: object = None
    env: object = RUBY
    implicit_self: bool = False


@dataclass(frozen=True)
class LookupResult:
    method: MethodEntry = None
    holder: ClassObj = None
    miss_reason: str = None

    @property
    def found(self):
        return self.method is not None


# -- definition ----------------------------------------------------------------


def define_method(space, cls, env, selector, visibility=PUBLIC, signature=None, body=None):
    """Install a method; in Ruby this installs the whole bridge family."""
    if not isinstance(cls, ClassObj):
        raise ModelViolation(f"{cls!r} is not a class")
    if visibility not in VISIBILITIES:
        raise ModelViolation(f"unknown visibility {visibility!r}")
    if env not in cls.mdicts:
        raise ModelViolation(f"{cls!r} has no {env} method dictionary")
    if env is SMALLTALK:
        return _define_smalltalk(cls, selector, visibility, signature, body)

    signature = signature or Signature()
    mdict = cls.mdicts[RUBY]
    if is_full_selector(selector):
        if not space.bootstrapping:
            raise ModelViolation(f"full selectors can only be defined directly during bootstrap: {selector}")
        base = base_of(selector)
        real = MethodEntry(base, RUBY, signature, body, visibility, REAL, cls)
        mdict[selector] = overload_entry(real, selector)
        return mdict[selector]
    for key in family_keys(mdict, selector):
        del mdict[key]
    real = MethodEntry(selector, RUBY, signature, body, visibility, REAL, cls)
    mdict.update(generate_bridges(real))
    return real


def _define_smalltalk(cls, selector, visibility, signature, body):
    if visibility != PUBLIC:
        raise VisibilityUnsupported("Smalltalk methods are always public")
    arity = smalltalk_arity(selector)
    if signature is None:
        signature = Signature(required=arity)
    if signature.optionals or signature.splat or signature.block or signature.required != arity:
        raise ModelViolation(f"Smalltalk selector {selector!r} takes exactly {arity} arguments")
    entry = MethodEntry(selector, SMALLTALK, signature, body, PUBLIC, REAL, cls)
    cls.mdicts[SMALLTALK][selector] = entry
    return entry


def set_visibility(space, cls, env, selector, visibility):
    if env is not RUBY:
        raise VisibilityUnsupported("Smalltalk methods are always public")
    if visibility not in VISIBILITIES:
        raise ModelViolation(f"unknown visibility {visibility!r}")
    mdict = cls.mdicts.get(RUBY, {})
    keys = family_keys(mdict, base_of(selector))
    if not keys:
        raise NoSuchMethod(f"{cls!r} defines no Ruby method {base_of(selector)!r}")
    # entries are replaced, never mutated: module copies keep their snapshot
    for key in keys:
        mdict[key] = replace(mdict[key], visibility=visibility)


# -- lookup --------------------------------------------------------------------


def _owner(cls):
    return cls.origin if cls.is_virtual else cls


def _descends(space, cls, owner):
    return any(c is owner or c.origin is owner for c in space.chain(cls, RUBY))


def admissible(space, entry, holder, receiver, caller):
    """Visibility rule: the single predicate deciding protected/private calls."""
    if entry.visibility == PUBLIC:
        return True
    if caller is None:
        return False
    if caller.implicit_self:
        return True
    if entry.visibility == PRIVATE:
        return False
    owner = _owner(holder)
    calling = caller.defining_class
    if calling is None:
        return False
    return _descends(space, _owner(calling), owner) and space.is_kind_of(receiver, owner)


def lookup_path(space, start, env):
    """Classes consulted by lookup from ``start``, in order."""
    return [c for c in space.chain(start, env) if env in c.mdicts]


def lookup(space, receiver, selector, env, caller=None, start=None):
    if start is None:
        start = space.virtual_class(receiver)
    for cls in space.chain(start, env):
        mdict = cls.mdicts.get(env)
        if mdict is None:
            continue
        entry = mdict.get(selector)
        if entry is None:
            continue
        if env is SMALLTALK or admissible(space, entry, cls, receiver, caller):
            return LookupResult(entry, cls)
        reason = VIS_PRIVATE if entry.visibility == PRIVATE else VIS_PROTECTED
        return LookupResult(miss_reason=reason)
    return LookupResult(miss_reason=ABSENT)


def find_family(space, receiver, base):
    """First Ruby entry named ``base`` on the receiver's chain, ignoring visibility."""
    for cls in space.chain(space.virtual_class(receiver), RUBY):
        mdict = cls.mdicts.get(RUBY)
        if not mdict:
            continue
        keys = family_keys(mdict, base)
        if keys:
            return mdict[keys[0]], cls
    return None, None


# -- sends ---------------------------------------------------------------------


def _block_or_none(block):
    return block if isinstance(block, Block) else None


def send(rt, receiver, selector, args=(), block=None, env=RUBY, caller=None, splat=None):
    space = rt.space
    args = list(args)
    block = _block_or_none(block)
    if env is RUBY:
        if is_full_selector(selector):
            if splat is not None:
                args.append(list(splat))
        else:
            shape, args = call_site(selector, args, splat, block is not None)
            selector = shape.render()
    elif splat is not None:
        raise ArgumentError("splat arguments are a Ruby calling convention")
    result = lookup(space, receiver, selector, env, caller)
    if result.found:
        return invoke(rt, result, receiver, args, block)
    if env is RUBY:
        return _method_missing(rt, receiver, selector, args, block)
    return _does_not_understand(rt, receiver, selector, args)


def _method_missing(rt, receiver, selector, args, block):
    shape = FullSelector.parse(selector)
    flat = list(args[: shape.n])
    if shape.splat and len(args) > shape.n:
        flat.extend(args[shape.n])
    hook = lookup(rt.space, receiver, METHOD_MISSING, RUBY, CallContext(None, receiver, RUBY, True))
    if not hook.found:
        raise NoMethodError(f"undefined method `{shape.base}'", shape.base)
    return invoke(rt, hook, receiver, [Symbol(shape.base), flat], block)


def _does_not_understand(rt, receiver, selector, args):
    hook = lookup(rt.space, receiver, DOES_NOT_UNDERSTAND, SMALLTALK)
    if not hook.found:
        raise MethodNotUnderstood(f"{selector} not understood", selector)
    return invoke(rt, hook, receiver, [Message(selector, list(args))], None)


def missing_error(rt, receiver, base):
    """The NoMethodError the default ``method_missing`` raises."""
    entry, _ = find_family(rt.space, receiver, base)
    shown = rt.describe(receiver)
    if entry is not None and entry.visibility == PRIVATE:
        return NoMethodError(f"private method `{base}' called for {shown}", base, "private")
    if entry is not None and entry.visibility == PROTECTED:
        return NoMethodError(f"protected method `{base}' called for {shown}", base, "protected")
    return NoMethodError(f"undefined method `{base}' for {shown}", base, "absent")


def super_send(rt, frame, args=(), block=None, splat=None):
    home = frame.home
    method = home.method
    if method is None or home.holder is None:
        raise NoMethodError("super called outside of method")
    env = method.env
    space = rt.space
    receiver = home.receiver
    start = space.parent(home.holder, env)
    args = list(args)
    if env is RUBY:
        block = _block_or_none(block) or home.block
        shape, args = call_site(method.base, args, splat, block is not None)
        selector = shape.render()
    else:
        selector = method.selector
    caller = CallContext(home.holder, receiver, env, True)
    result = LookupResult(miss_reason=ABSENT) if start is None else lookup(space, receiver, selector, env, caller, start)
    if result.found:
        return invoke(rt, result, receiver, args, block)
    name = method.base if env is RUBY else selector
    error = NoMethodError if env is RUBY else MethodNotUnderstood
    raise error(f"super: no superclass method `{name}'", name, "absent")


# -- invocation ----------------------------------------------------------------


def run_body(rt, entry, holder, receiver, args, block):
    frame = Frame(rt, receiver, list(args), block, entry.env, entry, holder)
    if entry.is_native:
        return entry.body(frame)
    return execute(entry.body, frame)


def invoke(rt, result, receiver, args, block=None):
    entry, holder = result.method, result.holder
    if entry.env is SMALLTALK:
        if len(args) != entry.signature.required:
            raise ArgumentError(f"{entry.selector} expects {entry.signature.required} arguments, got {len(args)}")
        return run_body(rt, entry, holder, receiver, args, block)

    flat = spread(entry, args)
    sig = entry.signature
    if entry.role == ARGUMENT_ERROR or not sig.accepts(len(flat)):
        raise arity_error(sig, len(flat))
    if entry.role == REAL and entry.shape.n == sig.arity and entry.shape.splat == sig.splat:
        return run_body(rt, entry, holder, receiver, args, block)
    target = holder.mdicts[RUBY].get(sig.full_selector(entry.base).render(), entry)
    bound = bind(rt, target, holder, receiver, flat, block)
    return run_body(rt, target, holder, receiver, bound, block)


def bind(rt, entry, holder, receiver, flat, block):
    """Full-bridge argument list for ``flat``: defaults filled, extras packed."""
    sig = entry.signature
    bound = list(flat[: sig.arity])
    frame = Frame(rt, receiver, bound, block, RUBY, entry, holder)
    for name, default in sig.optionals[len(bound) - sig.required:]:
        bound.append(default(frame) if callable(default) else execute(default, frame))
    if sig.splat:
        bound.append(list(flat[sig.arity:]))
    return bound
