"""Calls across the environment boundary.

Smalltalk reaches Ruby methods three ways: an ``@ruby1:`` keyword message,
a :class:`RubyWrapper` proxy, or a Ruby method the Ruby side exposes.  Ruby
reaches Smalltalk methods through *primitives*, Ruby dictionary entries
whose body forwards to a Smalltalk selector.
"""

from .bridges import Signature, arity_error
from .dispatch import CallContext, define_method
from .errors import GuestTypeError, NoSuchMethod, SelectorSyntaxError
from .ir import Block, call_block, native_block
from .objspace import RUBY, SMALLTALK, ClassObj, Obj
from .selectors import (
    RUBY_PREFIX,
    StRubySelector,
    call_site,
    parse_st_ruby_selector,
    smalltalk_arity,
)
from .singleton import ruby_singleton_class


class _Missing:
    def __repr__(self):
        return "MISSING"


MISSING = _Missing()


def st_call_ruby(rt, receiver, parsed, args, splat_arg=None, block_arg=None, caller=None):
    """Dispatch a parsed ``@ruby1:`` message in the Ruby environment."""
    args = list(args)
    if len(args) != parsed.normal_args:
        raise SelectorSyntaxError(
            f"@ruby1:{parsed.base} takes {parsed.normal_args} normal arguments, {len(args)} supplied"
        )
    if parsed.has_splat and not isinstance(splat_arg, list):
        raise GuestTypeError(f"__STAR: expects a collection, got {rt.describe(splat_arg)}")
    if parsed.has_block and not isinstance(block_arg, Block):
        raise GuestTypeError(f"__BLOCK: expects a block, got {rt.describe(block_arg)}")
    splat = splat_arg if parsed.has_splat else None
    block = block_arg if parsed.has_block else None
    shape, packed = call_site(parsed.base, args, splat, block is not None)
    caller = caller or CallContext(None, None, SMALLTALK, False)
    return rt.send(receiver, shape.render(), packed, block=block, env=RUBY, caller=caller)


def st_call_ruby_keywords(rt, receiver, pairs, caller=None):
    """``pairs`` is ``[(keyword, value or MISSING), ...]`` in message order."""
    keywords, values = [], []
    for i, (kw, value) in enumerate(pairs):
        if value is MISSING:
            if i != 0:
                raise SelectorSyntaxError(f"keyword {kw!r} has no argument")
            kw = kw[:-1] if kw.endswith(":") and kw != RUBY_PREFIX else kw
        else:
            values.append(value)
        keywords.append(kw)
    parsed = parse_st_ruby_selector(keywords)
    if len(values) != parsed.arg_count:
        raise SelectorSyntaxError(f"{''.join(keywords)} needs {parsed.arg_count} arguments, got {len(values)}")
    normal = values[: parsed.normal_args]
    rest = values[parsed.normal_args:]
    splat = rest.pop(0) if parsed.has_splat else None
    block = rest.pop(0) if parsed.has_block else None
    return st_call_ruby(rt, receiver, parsed, normal, splat, block, caller)


# -- primitives ----------------------------------------------------------------


def _resolve_st(space, start, selector):
    for cls in space.chain(start, SMALLTALK):
        if selector in cls.mdicts.get(SMALLTALK, {}):
            return cls
    raise NoSuchMethod(f"no Smalltalk method {selector!r} above {start!r}")


class _Absent:
    def __repr__(self):
        return "<absent>"


_ABSENT = _Absent()


def _absent(frame):
    return _ABSENT


def _forwarder(selector, arity):
    def body(frame):
        args = list(frame.args)
        if args and args[-1] is _ABSENT:
            # a Ruby block given at the call site fills the trailing Smalltalk argument
            if frame.block is None:
                raise arity_error(Signature(arity), arity - 1)
            args[-1] = frame.block
        return frame.rt.send(frame.receiver, selector, args, env=SMALLTALK)

    body.__name__ = f"primitive<{selector}>"
    return body


def primitive_signature(st_selector):
    """Ruby signature of a primitive: the Smalltalk arity, where the last
    argument may also be supplied as a Ruby block."""
    arity = smalltalk_arity(st_selector)
    if arity == 0:
        return Signature(0, (), False, True)
    return Signature(arity - 1, (("block", _absent),), False, True)


def _install(rt, target, ruby_name, st_selector):
    sig = primitive_signature(st_selector)
    body = _forwarder(st_selector, smalltalk_arity(st_selector))
    return define_method(rt.space, target, RUBY, ruby_name, signature=sig, body=body)


def primitive(rt, cls, ruby_name, st_selector):
    """Expose the Smalltalk method ``st_selector`` to Ruby as ``ruby_name``."""
    _resolve_st(rt.space, cls, st_selector)
    return _install(rt, cls, ruby_name, st_selector)


def class_primitive(rt, cls, ruby_name, st_selector):
    """Like :func:`primitive`, for a class-side Smalltalk method."""
    space = rt.space
    _resolve_st(space, space.virtual_class(cls), st_selector)
    return _install(rt, ruby_singleton_class(space, cls), ruby_name, st_selector)


# -- RubyWrapper -----------------------------------------------------------------


def is_wrapper(rt, value):
    return isinstance(value, Obj) and rt.space.virtual_class(value) is rt.RubyWrapper


def wrap(rt, value):
    if is_wrapper(rt, value):
        return value
    wrapper = rt.space.new_instance(rt.RubyWrapper)
    rt.space.write_ivar(wrapper, "target", SMALLTALK, value)
    return wrapper


def unwrap(rt, value):
    while is_wrapper(rt, value):
        value = rt.space.read_ivar(value, "target", SMALLTALK)
    return value


def _auto_wrap(rt, value):
    # only heap objects are proxied; immediates already behave the same in both worlds
    if isinstance(value, Obj) and not isinstance(value, ClassObj) and not is_wrapper(rt, value):
        return wrap(rt, value)
    return value


def _wrap_block(rt, block):
    def adapter(*args):
        return unwrap(rt, call_block(block, [_auto_wrap(rt, a) for a in args]))

    return native_block(adapter, block.arity, block.env)


def wrapper_selector(selector):
    """Parse a message sent to a wrapper as if it were an ``@ruby1:`` message."""
    if smalltalk_arity(selector) == 1 and ":" not in selector:
        return StRubySelector(selector, 1)
    return parse_st_ruby_selector(RUBY_PREFIX + selector)


def wrapper_send(rt, wrapper, selector, args):
    target = unwrap(rt, wrapper)
    parsed = wrapper_selector(selector)
    args = [_wrap_block(rt, a) if isinstance(a, Block) else unwrap(rt, a) for a in args]
    if len(args) != parsed.arg_count:
        raise SelectorSyntaxError(f"{selector} needs {parsed.arg_count} arguments, got {len(args)}")
    normal = args[: parsed.normal_args]
    rest = args[parsed.normal_args:]
    splat = rest.pop(0) if parsed.has_splat else None
    block = rest.pop(0) if parsed.has_block else None
    return _auto_wrap(rt, st_call_ruby(rt, target, parsed, normal, splat, block))


def wrapper_dnu(frame):
    """``RubyWrapper>>doesNotUnderstand:``: forward the message to Ruby."""
    message = frame.args[0]
    return wrapper_send(frame.rt, frame.receiver, message.selector, message.arguments)
