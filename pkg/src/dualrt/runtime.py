"""One bootstrapped object space plus the operations that act on it."""

from . import dispatch, interop, kernel, modules, singleton
from .bridges import PUBLIC, Signature
from .inspector import describe, inspect_hierarchy
from .ir import Frame, evaluate, read
from .objspace import RUBY, SMALLTALK, Env, ObjectSpace


def as_env(env):
    return env if isinstance(env, Env) else Env(env)


class Runtime:
    """A dual-environment runtime.

    >>> rt = Runtime()
    >>> rt.eval('(send "A" * 3)', "ruby")
    'AAA'
    """

    def __init__(self):
        self.space = ObjectSpace()
        self.globals = {}
        self.main = None
        kernel.bootstrap(self)
        self.bootstrap_objects = self.space.object_count
        self.bootstrap_classes = len(self.space.classes())

    # -- object model --------------------------------------------------------

    def new_class(self, name_st, name_rb, superclass=None, static_ivars=(), hidden=()):
        return self.space.new_class(name_st, name_rb, superclass or self.space.Object, static_ivars, hidden)

    def new_module(self, name_rb):
        return modules.new_module(self.space, name_rb)

    def include(self, cls, module, env=RUBY):
        return modules.include_module(self.space, cls, module, as_env(env))

    def new_instance(self, cls):
        return self.space.new_instance(cls)

    def lookup_name(self, name, env):
        return self.space.lookup_name(name, as_env(env))

    def resolve(self, name, env=RUBY):
        """Class named ``name`` in ``env``, falling back to the other environment."""
        env = as_env(env)
        return self.space.lookup_name(name, env) or self.space.lookup_name(name, env.other())

    def read_ivar(self, obj, name, env):
        return self.space.read_ivar(obj, name, as_env(env))

    def write_ivar(self, obj, name, env, value):
        return self.space.write_ivar(obj, name, as_env(env), value)

    def singleton_class(self, obj):
        return singleton.ruby_singleton_class(self.space, obj)

    def ensure_singleton(self, obj, depth):
        singleton.ensure_singleton_generated(self.space, obj, depth)
        return self.space.virtual_class(obj)

    # -- methods -------------------------------------------------------------

    def define(self, cls, env, selector, body, visibility=PUBLIC, signature=None):
        """Define a method; ``body`` is IR text, a parsed IR tree or a native callable."""
        if isinstance(body, str):
            body = read(body)
        return dispatch.define_method(self.space, cls, as_env(env), selector, visibility, signature, body)

    def set_visibility(self, cls, env, selector, visibility):
        dispatch.set_visibility(self.space, cls, as_env(env), selector, visibility)

    def primitive(self, cls, ruby_name, st_selector):
        return interop.primitive(self, cls, ruby_name, st_selector)

    def class_primitive(self, cls, ruby_name, st_selector):
        return interop.class_primitive(self, cls, ruby_name, st_selector)

    # -- execution -----------------------------------------------------------

    def send(self, receiver, selector, args=(), block=None, env=RUBY, caller=None, splat=None):
        return dispatch.send(self, receiver, selector, args, block, as_env(env), caller, splat)

    def super_send(self, frame, args=(), block=None, splat=None):
        return dispatch.super_send(self, frame, args, block, splat)

    def lookup(self, receiver, selector, env=RUBY, caller=None):
        return dispatch.lookup(self.space, receiver, selector, as_env(env), caller)

    def st_call_ruby(self, receiver, selector, args=(), splat=None, block=None):
        from .selectors import parse_st_ruby_selector

        parsed = parse_st_ruby_selector(selector)
        return interop.st_call_ruby(self, receiver, parsed, args, splat, block)

    def st_call_ruby_keywords(self, receiver, pairs, caller=None):
        return interop.st_call_ruby_keywords(self, receiver, pairs, caller)

    def wrap(self, value):
        return interop.wrap(self, value)

    def unwrap(self, value):
        return interop.unwrap(self, value)

    def top_frame(self, env=RUBY):
        return Frame(self, self.main, [], None, as_env(env))

    def eval(self, text, env=RUBY, frame=None):
        """Evaluate one IR expression at top level."""
        return evaluate(read(text), frame or self.top_frame(env))

    # -- presentation --------------------------------------------------------

    def describe(self, value):
        return describe(self, value)

    def inspect_hierarchy(self, target):
        return inspect_hierarchy(self, target)


__all__ = ["Runtime", "Signature", "SMALLTALK", "RUBY"]
