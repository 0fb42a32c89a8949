"""Bootstrap: helix classes, core classes and their methods.

Topology (superclass arrows point up)::

    Object <- Behavior <- Module <- Metaclass3 <- Class

Every bootstrap class gets its meta class at once.  Object's meta class
inherits from Class, every other meta class from its superclass' meta
class, and every meta class is an instance of Metaclass3.  Because Class
sits below Metaclass3, any singleton class chain passes through
Metaclass3 and ``isKindOf: Metaclass3`` holds for all of them.
"""

from .bridges import PRIVATE, Signature
from .dispatch import CallContext, define_method, missing_error, set_visibility
from .errors import ArgumentError, GuestIndexError, GuestTypeError, LocalJumpError, MethodNotUnderstood
from .interop import wrapper_dnu
from .ir import Block, call_block, read, truthy
from .modules import include_module, included_modules, new_module, superclass
from .objspace import RUBY, SMALLTALK, ClassFormat, ClassObj, Message, Obj, Symbol
from .singleton import ruby_singleton_class

def _ruby_visible(cls):
    # classes named only in Smalltalk stay out of Ruby's reflective listings
    return cls.name(RUBY) is not None or cls.name(SMALLTALK) is None


# Objects allocated by bootstrap(); the anchor for laziness checks.
BOOTSTRAP_OBJECTS = 46
BOOTSTRAP_CLASSES = 45


def _helix(space):
    space.bootstrapping = True
    obj = space._alloc_class(ClassFormat.INSTANTIABLE, None)
    behavior = space._alloc_class(ClassFormat.NONE, obj)
    module = space._alloc_class(ClassFormat.NONE, behavior)
    meta3 = space._alloc_class(ClassFormat.NONE, module)
    klass = space._alloc_class(ClassFormat.NONE, meta3)
    space.Object, space.Behavior, space.Module, space.Metaclass3, space.Class = obj, behavior, module, meta3, klass
    behavior.layout = module.layout = ("format",)
    meta3.layout = ("format", "destClass")
    klass.layout = meta3.layout
    meta3.hidden = klass.hidden = frozenset({"destClass"})

    meta_super = klass
    for cls, name in ((obj, "Object"), (behavior, "Behavior"), (module, "Module"), (meta3, "Metaclass3"), (klass, "Class")):
        cls.vclass = space._make_meta(cls, meta_super)
        meta_super = cls.vclass
        space.register(cls, SMALLTALK, name)
        space.register(cls, RUBY, name)
    for cls in space.classes():
        space._sync_class_slots(cls)


class _Kit:
    """Small helpers for defining native kernel methods."""

    def __init__(self, rt):
        self.rt = rt
        self.space = rt.space

    def st(self, cls, selector, fn):
        define_method(self.space, cls, SMALLTALK, selector, body=fn)

    def rb(self, cls, name, fn, required=0, optionals=(), splat=False, block=False, visibility="public"):
        opts = tuple((n, read(d) if isinstance(d, str) else d) for n, d in optionals)
        sig = Signature(required, opts, splat, block)
        return define_method(self.space, cls, RUBY, name, visibility, sig, fn)

    def rb_ir(self, cls, name, text, required=0, optionals=(), splat=False, block=False):
        return self.rb(cls, name, read(text), required, optionals, splat, block)


def _name_arg(value):
    name = value.name if isinstance(value, Symbol) else value
    if not isinstance(name, str):
        raise GuestTypeError(f"{value!r} is not a symbol nor a string")
    return name[1:] if name.startswith("@") else name


def _need_block(frame):
    if frame.block is None:
        raise LocalJumpError("no block given")
    return frame.block


def _ints(frame):
    for v in (frame.receiver, *frame.args):
        if not isinstance(v, int) or isinstance(v, bool):
            raise GuestTypeError(f"{frame.rt.describe(v)} is not an integer")
    return frame.receiver, frame.args


def _int_op(op):
    def fn(frame):
        a, (b,) = _ints(frame)
        return op(a, b)

    return fn


def _str_arg(frame, i=0):
    v = frame.args[i]
    if not isinstance(v, str):
        raise GuestTypeError(f"{frame.rt.describe(v)} is not a string")
    return v


def _equal(a, b):
    if isinstance(a, (int, str, list)) and not isinstance(a, bool):
        return type(a) is type(b) and a == b
    return a is b


def _hash_table(rt, h):
    table = rt.space.read_ivar(h, "table", SMALLTALK)
    if table is None:
        table = {}
        rt.space.write_ivar(h, "table", SMALLTALK, table)
    return table


def _hash_key(value):
    if isinstance(value, list):
        return ("list", tuple(_hash_key(v) for v in value))
    if isinstance(value, (Obj, Symbol, Block)) or value is None or isinstance(value, bool):
        return ("id", id(value))
    return (type(value).__name__, value)


def bootstrap(rt):
    space = rt.space
    _helix(space)
    new = space.new_class
    Obj_ = space.Object

    collection = new("Collection", None, Obj_)
    seq = new("SequenceableCollection", None, collection)
    array = new("Array", "Array", seq)
    string = new("String", "String", seq)
    symbol = new("Symbol", "Symbol", Obj_)
    number = new("Number", "Numeric", Obj_)
    integer = new("Integer", "Integer", number)
    small = new("SmallInteger", "Fixnum", integer)
    boolean = new("Boolean", "Boolean", Obj_)
    undefined = new("UndefinedObject", "NilClass", Obj_)
    block_cls = new("ExecBlock", "Proc", Obj_)
    hash_cls = new("RubyHash", "Hash", Obj_, ("size", "table"), hidden=("table",))
    message = new("Message", None, Obj_)
    wrapper = space.new_class("RubyWrapper", None, Obj_, ("target",), ruby=False)
    for cls in (symbol, small, boolean, undefined):
        cls.singletons_allowed = False
    space.prim_classes.update({
        int: small, bool: boolean, str: string, Symbol: symbol, type(None): undefined,
        list: array, Block: block_cls, Message: message,
    })

    kernel_mod = new_module(space, "Kernel")
    enumerable = new_module(space, "Enumerable")
    comparable = new_module(space, "Comparable")

    rt.RubyWrapper = wrapper
    rt.Kernel = kernel_mod
    rt.Enumerable = enumerable

    kit = _Kit(rt)
    _smalltalk_methods(rt, kit, locals())
    _ruby_methods(rt, kit, locals())

    include_module(space, Obj_, kernel_mod, RUBY)
    include_module(space, array, enumerable, RUBY)
    include_module(space, string, comparable, RUBY)
    include_module(space, number, comparable, RUBY)

    rt.main = space.new_instance(Obj_)
    space.bootstrapping = False


# -- Smalltalk side --------------------------------------------------------------


def _smalltalk_methods(rt, kit, c):
    space = rt.space
    st = kit.st
    O = space.Object

    st(O, "yourself", lambda f: f.receiver)
    st(O, "class", lambda f: space.class_of(f.receiver))
    st(O, "virtualClass", lambda f: space.virtual_class(f.receiver))
    st(O, "==", lambda f: _equal(f.receiver, f.args[0]))
    st(O, "=", lambda f: _equal(f.receiver, f.args[0]))
    st(O, "printString", lambda f: rt.describe(f.receiver))
    st(O, "isNil", lambda f: f.receiver is None)
    st(O, "isKindOf:", lambda f: space.is_kind_of(f.receiver, f.args[0], SMALLTALK))
    st(O, "dynamicInstVarAt:", lambda f: space.dynamic_ivar_at(f.receiver, _name_arg(f.args[0])))
    st(O, "dynamicInstVarAt:put:", lambda f: space.dynamic_ivar_at_put(f.receiver, _name_arg(f.args[0]), f.args[1]))
    st(O, "instVarNamed:", lambda f: space.read_ivar(f.receiver, _name_arg(f.args[0]), SMALLTALK))
    st(O, "instVarNamed:put:", lambda f: space.write_ivar(f.receiver, _name_arg(f.args[0]), SMALLTALK, f.args[1]))
    st(O, "instVarNames", lambda f: space.instance_variables(f.receiver, SMALLTALK))
    st(O, "rubySingletonClass", lambda f: ruby_singleton_class(space, f.receiver))

    def dnu(f):
        msg = f.args[0]
        raise MethodNotUnderstood(f"{rt.describe(f.receiver)} does not understand #{msg.selector}", msg.selector)

    st(O, "doesNotUnderstand:", dnu)

    B = space.Behavior
    st(B, "new", lambda f: space.new_instance(f.receiver))
    st(B, "basicNew", lambda f: space.new_instance(f.receiver))
    st(B, "superclass", lambda f: superclass(space, f.receiver, SMALLTALK))
    st(B, "name", lambda f: f.receiver.name(SMALLTALK))
    st(B, "includesSelector:", lambda f: f.args[0] in f.receiver.mdicts.get(SMALLTALK, {}))
    st(space.Metaclass3, "destClass", lambda f: space.destination_class(f.receiver))

    string, small, array, block_cls = c["string"], c["small"], c["array"], c["block_cls"]
    st(string, ",", lambda f: f.receiver + _str_arg(f))
    st(string, "size", lambda f: len(f.receiver))
    st(string, "asUppercase", lambda f: f.receiver.upper())
    st(string, "asSymbol", lambda f: Symbol(f.receiver))
    st(c["symbol"], "asString", lambda f: f.receiver.name)

    for sel, op in (("+", lambda a, b: a + b), ("-", lambda a, b: a - b), ("*", lambda a, b: a * b),
                    ("<", lambda a, b: a < b), (">", lambda a, b: a > b)):
        st(small, sel, _int_op(op))
    st(small, "printString", lambda f: str(f.receiver))

    def at(f):
        i = f.args[0]
        if not isinstance(i, int) or not 1 <= i <= len(f.receiver):
            raise GuestIndexError(f"index {i!r} out of bounds")
        return f.receiver[i - 1]

    def do(f):
        for item in list(f.receiver):
            call_block(f.args[0], [item])
        return f.receiver

    st(array, "size", lambda f: len(f.receiver))
    st(array, "at:", at)
    st(array, "do:", do)
    st(array, ",", lambda f: f.receiver + list(f.args[0]))
    st(array, "includes:", lambda f: any(_equal(x, f.args[0]) for x in f.receiver))

    st(block_cls, "value", lambda f: call_block(f.receiver, []))
    st(block_cls, "value:", lambda f: call_block(f.receiver, f.args))
    st(block_cls, "value:value:", lambda f: call_block(f.receiver, f.args))
    st(block_cls, "value:value:value:", lambda f: call_block(f.receiver, f.args))
    st(block_cls, "valueWithArguments:", lambda f: call_block(f.receiver, list(f.args[0])))
    st(block_cls, "numArgs", lambda f: f.receiver.arity)

    hash_cls = c["hash_cls"]

    def at_put(f):
        table = _hash_table(rt, f.receiver)
        table[_hash_key(f.args[0])] = (f.args[0], f.args[1])
        space.write_ivar(f.receiver, "size", SMALLTALK, len(table))
        return f.args[1]

    def hash_at(f):
        hit = _hash_table(rt, f.receiver).get(_hash_key(f.args[0]))
        return hit[1] if hit else None

    st(hash_cls, "at:put:", at_put)
    st(hash_cls, "at:", hash_at)
    st(hash_cls, "size", lambda f: len(_hash_table(rt, f.receiver)))

    st(c["message"], "selector", lambda f: f.receiver.selector)
    st(c["message"], "arguments", lambda f: list(f.receiver.arguments))

    wrapper = c["wrapper"]
    st(wrapper, "doesNotUnderstand:", wrapper_dnu)
    st(wrapper, "rubyTarget", lambda f: space.read_ivar(f.receiver, "target", SMALLTALK))
    st(wrapper.vclass, "on:", lambda f: rt.wrap(f.args[0]))


# -- Ruby side -------------------------------------------------------------------


def _ruby_methods(rt, kit, c):
    space = rt.space
    rb = kit.rb
    K = c["kernel_mod"]

    def method_missing(f):
        raise missing_error(rt, f.receiver, f.args[0].name)

    def dyn_send(f):
        caller = CallContext(f.holder, f.receiver, RUBY, True)
        return rt.send(f.receiver, _name_arg(f.args[0]), f.args[1], block=f.block, env=RUBY, caller=caller)

    def respond_to(f):
        from .dispatch import find_family

        entry, _ = find_family(space, f.receiver, _name_arg(f.args[0]))
        return entry is not None and entry.visibility == "public"

    rb(K, "method_missing", method_missing, 1, splat=True, block=True, visibility=PRIVATE)
    rb(K, "send", dyn_send, 1, splat=True, block=True)
    rb(K, "__send__", dyn_send, 1, splat=True, block=True)
    rb(K, "class", lambda f: space.class_of(f.receiver))
    rb(K, "singleton_class", lambda f: ruby_singleton_class(space, f.receiver))
    rb(K, "instance_variables", lambda f: space.instance_variables(f.receiver, RUBY))
    rb(K, "instance_variable_get", lambda f: space.read_ivar(f.receiver, _name_arg(f.args[0]), RUBY), 1)
    rb(K, "instance_variable_set",
       lambda f: space.write_ivar(f.receiver, _name_arg(f.args[0]), RUBY, f.args[1]), 2)
    rb(K, "==", lambda f: _equal(f.receiver, f.args[0]), 1)
    rb(K, "equal?", lambda f: f.receiver is f.args[0] or _equal(f.receiver, f.args[0]), 1)
    rb(K, "is_a?", lambda f: space.is_kind_of(f.receiver, f.args[0], RUBY), 1)
    rb(K, "kind_of?", lambda f: space.is_kind_of(f.receiver, f.args[0], RUBY), 1)
    rb(K, "nil?", lambda f: f.receiver is None)
    rb(K, "respond_to?", respond_to, 1)
    rb(K, "inspect", lambda f: rt.describe(f.receiver))
    rb(K, "to_s", lambda f: f.receiver if isinstance(f.receiver, str) else rt.describe(f.receiver))
    rb(K, "object_id", lambda f: f.receiver.oop if isinstance(f.receiver, Obj) else _hash_key(f.receiver)[1])
    rb(space.Object, "initialize", lambda f: None, visibility=PRIVATE)

    M = space.Module

    def include(f):
        for mod in f.args[0]:
            include_module(space, f.receiver, mod, RUBY)
        return f.receiver

    def ancestors(f):
        out = []
        for cls in space.chain(f.receiver, RUBY):
            owner = cls.origin if cls.is_virtual else cls
            if _ruby_visible(owner) and owner not in out:
                out.append(owner)
        return out

    def visibility(vis):
        def fn(f):
            for name in f.args[0]:
                set_visibility(space, f.receiver, RUBY, _name_arg(name), vis)
            return None

        return fn

    rb(M, "include", include, splat=True)
    rb(M, "included_modules", lambda f: included_modules(space, f.receiver, RUBY))
    rb(M, "ancestors", ancestors)
    def ruby_superclass(f):
        sup = superclass(space, f.receiver, RUBY)
        while sup is not None and not _ruby_visible(sup):
            sup = superclass(space, sup, RUBY)
        return sup

    rb(M, "superclass", ruby_superclass)
    rb(M, "name", lambda f: f.receiver.name(RUBY))
    rb(M, "public", visibility("public"), splat=True)
    rb(M, "private", visibility("private"), splat=True)
    rb(M, "protected", visibility("protected"), splat=True)
    rb(M, "method_defined?", lambda f: bool(
        [k for k in f.receiver.mdicts.get(RUBY, {}) if k.startswith(_name_arg(f.args[0]) + "#")]), 1)

    def class_new(f):
        obj = space.new_instance(f.receiver)
        caller = CallContext(f.holder, obj, RUBY, True)
        rt.send(obj, "initialize", [], block=f.block, env=RUBY, caller=caller, splat=f.args[0])
        return obj

    rb(space.Class, "new", class_new, splat=True, block=True)
    rb(space.Class, "allocate", lambda f: space.new_instance(f.receiver))

    rb(c["undefined"], "inspect", lambda f: "nil")
    rb(c["undefined"], "to_s", lambda f: "")

    integer = c["integer"]
    for name, op in (("+", lambda a, b: a + b), ("-", lambda a, b: a - b), ("*", lambda a, b: a * b),
                     ("<", lambda a, b: a < b), (">", lambda a, b: a > b)):
        rb(integer, name, _int_op(op), 1)
    rb(integer, "to_s", lambda f: str(f.receiver))

    def times(f):
        blk = _need_block(f)
        for i in range(f.receiver):
            call_block(blk, [i])
        return f.receiver

    rb(integer, "times", times, block=True)

    string = c["string"]

    def repeat(f):
        n = f.args[0]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ArgumentError(f"negative or non-integer repeat count {n!r}")
        return f.receiver * n

    rb(string, "*", repeat, 1)
    rb(string, "+", lambda f: f.receiver + _str_arg(f), 1)
    rb(string, "size", lambda f: len(f.receiver))
    rb(string, "length", lambda f: len(f.receiver))
    rb(string, "upcase", lambda f: f.receiver.upper())
    rb(string, "to_sym", lambda f: Symbol(f.receiver))
    rb(c["symbol"], "to_s", lambda f: f.receiver.name)
    rb(c["symbol"], "to_sym", lambda f: f.receiver)

    array = c["array"]

    def each(f):
        blk = _need_block(f)
        for item in list(f.receiver):
            call_block(blk, [item])
        return f.receiver

    def index(f):
        i = f.args[0]
        if not isinstance(i, int) or isinstance(i, bool):
            raise GuestTypeError(f"{rt.describe(i)} is not an index")
        return f.receiver[i] if -len(f.receiver) <= i < len(f.receiver) else None

    def push(f):
        f.receiver.extend(f.args[0])
        return f.receiver

    rb(array, "each", each, block=True)
    rb(array, "size", lambda f: len(f.receiver))
    rb(array, "length", lambda f: len(f.receiver))
    rb(array, "[]", index, 1)
    rb(array, "push", push, splat=True)
    rb(array, "<<", lambda f: f.receiver.append(f.args[0]) or f.receiver, 1)
    rb(array, "+", lambda f: f.receiver + list(f.args[0]), 1)
    rb(array, "join", lambda f: f.args[0].join(
        x if isinstance(x, str) else rt.describe(x) for x in f.receiver), optionals=(("sep", '""'),))
    # bootstrap overload: first#0__ and first#1__ have separate bodies
    rb(array, "first", lambda f: f.receiver[0] if f.receiver else None)
    define_method(space, array, RUBY, "first#1__", body=lambda f: f.receiver[: f.args[0]])

    enum = c["enumerable"]
    kit.rb_ir(enum, "to_a", "(seq (set acc []) (call each & (block (x) (send acc << x))) acc)")
    kit.rb_ir(enum, "map", "(seq (set acc []) (call each & (block (x) (send acc << (yield x)))) acc)", block=True)
    kit.rb_ir(enum, "select",
              "(seq (set acc []) (call each & (block (x) (if (yield x) (send acc << x)))) acc)", block=True)
    kit.rb_ir(enum, "include?",
              "(seq (set found false) (call each & (block (x) (if (send x == (arg 0)) (set found true)))) found)", 1)
    kit.rb_ir(enum, "inject", "(seq (set acc (arg 0)) (call each & (block (x) (set acc (yield acc x)))) acc)",
              1, block=True)

    comparable = c["comparable"]
    kit.rb_ir(comparable, "between?", "(if (send self < (arg 0)) false (not (send (arg 1) < self)))", 2)

    hash_cls = c["hash_cls"]

    def hash_init(f):
        _hash_table(rt, f.receiver)
        space.write_ivar(f.receiver, "size", SMALLTALK, 0)
        return None

    def hash_store(f):
        return rt.send(f.receiver, "at:put:", f.args, env=SMALLTALK)

    def fetch(f):
        key, default = f.args[0], f.args[1]
        hit = _hash_table(rt, f.receiver).get(_hash_key(key))
        if hit is not None:
            return hit[1]
        if f.block is not None:
            return call_block(f.block, [key])
        if default is not _NO_DEFAULT:
            return default
        raise GuestIndexError(f"key not found: {rt.describe(key)}")

    rb(hash_cls, "initialize", hash_init, visibility=PRIVATE)
    rb(hash_cls, "[]=", hash_store, 2)
    rb(hash_cls, "[]", lambda f: rt.send(f.receiver, "at:", f.args, env=SMALLTALK), 1)
    rb(hash_cls, "fetch", fetch, 1, optionals=(("default", _no_default),), block=True)
    rb(hash_cls, "size", lambda f: len(_hash_table(rt, f.receiver)))
    rb(hash_cls, "keys", lambda f: [k for k, _ in _hash_table(rt, f.receiver).values()])

    block_cls = c["block_cls"]
    rb(block_cls, "call", lambda f: call_block(f.receiver, f.args[0]), splat=True)
    rb(block_cls, "arity", lambda f: f.receiver.arity)

    boolean = c["boolean"]
    rb(boolean, "!", lambda f: not f.receiver)
    rb(boolean, "&", lambda f: f.receiver and truthy(f.args[0]), 1)
    rb(boolean, "|", lambda f: f.receiver or truthy(f.args[0]), 1)


class _NoDefault:
    def __repr__(self):
        return "<no default>"


_NO_DEFAULT = _NoDefault()


def _no_default(frame):
    return _NO_DEFAULT
