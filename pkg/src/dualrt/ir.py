"""Method-body IR: an s-expression reader and a tree-walking evaluator.

Forms (``e`` is any expression)::

    42  "text"  :sym  true false nil  self  name
    [e ...]                           list literal
    (arg i)                           i-th bound parameter of the method
    (ivar name) (ivar= name e)        instance variable, per environment rules
    (send recv sel e ... [* e] [& e]) explicit-receiver send
    (call sel e ... [* e] [& e])      implicit-self send
    (super e ... [* e] [& e])         continue lookup above the holder class
    (cross recv @ruby1:kw e kw e ...) Smalltalk-side call of a Ruby method
    (block (p ...) e ...)             block literal
    (yield e ...)  (callblock b e ...)
    (seq e ...)  (set name e)  (if c a b)  (not e)
    (list e ...)  (concat e ...)  (+ a b)  (- a b)  (* a b)  (= a b)  (< a b)
    (new Class)  (wrap e)

Sends use the selector syntax of the environment the body was defined in:
base names in Ruby (translated to full selectors at the call site) and
keyword selectors in Smalltalk.
"""

import re

from .errors import (
    ArgumentError,
    GuestNameError,
    GuestTypeError,
    LocalJumpError,
    ModelViolation,
    SelectorSyntaxError,
)
from .objspace import RUBY, SMALLTALK, Symbol


class Ident(str):
    """A bare identifier in IR source (as opposed to a string literal)."""

    def __repr__(self):
        return f"Ident({str(self)!r})"


class ReadError(SelectorSyntaxError):
    pass


_TOKEN_RE = re.compile(r'\s+|(?P<open>[(\[])|(?P<close>[)\]])|(?P<str>"(?:[^"\\]|\\.)*")|(?P<atom>[^\s()\[\]"]+)')
_INT_RE = re.compile(r"^-?\d+$")
_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


def _unescape(body):
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


def tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ReadError(f"unreadable text at column {pos}: {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.lastgroup is None:
            continue
        tokens.append((m.lastgroup, m.group(m.lastgroup)))
    return tokens


def atom(text):
    if _INT_RE.match(text):
        return int(text)
    if text == "true":
        return True
    if text == "false":
        return False
    if text == "nil":
        return None
    if text.startswith(":") and len(text) > 1 and not text.endswith(":"):
        return Symbol(text[1:])
    return Ident(text)


def read_all(text):
    """Read every top-level datum in ``text``."""
    tokens = tokenize(text)
    out = []
    pos = 0
    while pos < len(tokens):
        datum, pos = _read(tokens, pos)
        out.append(datum)
    return out


def read(text):
    data = read_all(text)
    if len(data) != 1:
        raise ReadError(f"expected one expression, found {len(data)}")
    return data[0]


def _read(tokens, pos):
    kind, text = tokens[pos]
    if kind == "open":
        items = [Ident("list")] if text == "[" else []
        closer = "]" if text == "[" else ")"
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ReadError(f"missing {closer!r}")
            if tokens[pos][0] == "close":
                if tokens[pos][1] != closer:
                    raise ReadError(f"mismatched {tokens[pos][1]!r}")
                return items, pos + 1
            item, pos = _read(tokens, pos)
            if closer == "]" and isinstance(item, Ident) and item.endswith(","):
                # commas between list elements are optional
                if item == ",":
                    continue
                item = atom(item[:-1])
            items.append(item)
    if kind == "close":
        raise ReadError(f"unexpected {text!r}")
    if kind == "str":
        return _unescape(text[1:-1]), pos + 1
    return atom(text), pos + 1


def unparse(node):
    if isinstance(node, list):
        return "(" + " ".join(unparse(n) for n in node) + ")"
    if isinstance(node, Ident):
        return str(node)
    if isinstance(node, str):
        return '"' + node.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if node is True:
        return "true"
    if node is False:
        return "false"
    if node is None:
        return "nil"
    return repr(node) if isinstance(node, Symbol) else str(node)


# -- runtime structures ------------------------------------------------------


class Frame:
    __slots__ = ("rt", "receiver", "args", "block", "env", "method", "holder", "locals", "parent", "home")

    def __init__(self, rt, receiver, args, block, env, method=None, holder=None, parent=None):
        self.rt = rt
        self.receiver = receiver
        self.args = args
        self.block = block
        self.env = env
        self.method = method
        self.holder = holder
        self.locals = {}
        self.parent = parent
        self.home = parent.home if parent is not None else self

    def find_local(self, name):
        frame = self
        while frame is not None:
            if name in frame.locals:
                return frame
            frame = frame.parent
        return None


class Block:
    __slots__ = ("params", "body", "frame", "env", "native")

    def __init__(self, params, body, frame, env, native=None):
        self.params = tuple(params)
        self.body = body
        self.frame = frame
        self.env = env
        self.native = native

    @property
    def arity(self):
        return len(self.params)

    def __repr__(self):
        return f"<Block/{self.arity} {self.env}>"


def native_block(fn, arity, env):
    return Block(tuple(f"_{i}" for i in range(arity)), None, None, env, native=fn)


def call_block(block, args):
    if not isinstance(block, Block):
        raise GuestTypeError(f"{block!r} is not a block")
    args = list(args)
    if len(args) != block.arity:
        if block.env is SMALLTALK:
            raise ArgumentError(f"block expects {block.arity} arguments, got {len(args)}")
        args = (args + [None] * block.arity)[: block.arity]
    if block.native is not None:
        return block.native(*args)
    frame = Frame(block.frame.rt, block.frame.receiver, block.frame.args, block.frame.block,
                  block.env, block.frame.method, block.frame.holder, parent=block.frame)
    frame.locals.update(zip(block.params, args))
    result = None
    for expr in block.body:
        result = evaluate(expr, frame)
    return result


def truthy(value):
    return value is not None and value is not False


# -- evaluator ---------------------------------------------------------------


def execute(body, frame):
    return evaluate(body, frame)


def evaluate(node, frame):
    if isinstance(node, list):
        if not node:
            raise ModelViolation("empty form")
        head = node[0]
        handler = _FORMS.get(head) if isinstance(head, Ident) else None
        if handler is None:
            raise ModelViolation(f"unknown form {unparse(node)}")
        return handler(node, frame)
    if isinstance(node, Ident):
        return _resolve_name(node, frame)
    return node


def _resolve_name(name, frame):
    if name == "self":
        return frame.receiver
    owner = frame.find_local(name)
    if owner is not None:
        return owner.locals[name]
    rt = frame.rt
    if name in rt.globals:
        return rt.globals[name]
    for env in (frame.env, frame.env.other()):
        cls = rt.lookup_name(name, env)
        if cls is not None:
            return cls
    raise GuestNameError(f"undefined name {name!r}")


def _split_args(items, frame):
    args, splat, block = [], None, None
    it = iter(items)
    for item in it:
        if item == "*" and isinstance(item, Ident):
            splat = evaluate(next(it), frame)
            if not isinstance(splat, list):
                raise GuestTypeError(f"cannot splat {splat!r}")
        elif item == "&" and isinstance(item, Ident):
            block = evaluate(next(it), frame)
        else:
            args.append(evaluate(item, frame))
    return args, splat, block


def _context(frame, implicit):
    from .dispatch import CallContext

    return CallContext(frame.home.holder, frame.receiver, frame.env, implicit)


def _send(node, frame):
    recv = evaluate(node[1], frame)
    args, splat, block = _split_args(node[3:], frame)
    return frame.rt.send(recv, str(node[2]), args, block=block, env=frame.env,
                         caller=_context(frame, False), splat=splat)


def _call(node, frame):
    args, splat, block = _split_args(node[2:], frame)
    return frame.rt.send(frame.receiver, str(node[1]), args, block=block, env=frame.env,
                         caller=_context(frame, True), splat=splat)


def _super(node, frame):
    args, splat, block = _split_args(node[1:], frame)
    return frame.rt.super_send(frame, args, block, splat=splat)


def _cross(node, frame):
    from .interop import MISSING

    recv = evaluate(node[1], frame)
    pairs = []
    for item in node[2:]:
        if isinstance(item, Ident) and (item.endswith(":") or item.startswith("@ruby1:")):
            pairs.append([str(item), []])
        elif not pairs:
            raise SelectorSyntaxError(f"cross call needs a keyword first: {unparse(node)}")
        else:
            pairs[-1][1].append(evaluate(item, frame))
    keywords = []
    from .selectors import split_keywords, RUBY_PREFIX

    for text, values in pairs:
        prefix = RUBY_PREFIX if text.startswith(RUBY_PREFIX) else ""
        kws = split_keywords(text[len(prefix):])
        if prefix:
            kws[0] = prefix + kws[0] if kws else prefix
        if len(values) > len(kws):
            raise SelectorSyntaxError(f"too many values after {text!r}")
        padded = [MISSING] * (len(kws) - len(values)) + values
        keywords.extend(zip(kws, padded))
    return frame.rt.st_call_ruby_keywords(recv, keywords, caller=_context(frame, False))


def _block(node, frame):
    params = node[1]
    if not isinstance(params, list):
        raise ModelViolation(f"block parameters must be a list: {unparse(node)}")
    return Block([str(p) for p in params], node[2:], frame, frame.env)


def _yield(node, frame):
    block = frame.home.block
    if block is None:
        raise LocalJumpError("no block given")
    return call_block(block, [evaluate(a, frame) for a in node[1:]])


def _callblock(node, frame):
    block = evaluate(node[1], frame)
    return call_block(block, [evaluate(a, frame) for a in node[2:]])


def _arg(node, frame):
    index = node[1]
    args = frame.home.args
    if not isinstance(index, int) or not 0 <= index < len(args):
        raise ArgumentError(f"no argument at index {index!r}")
    return args[index]


def _ivar(node, frame):
    return frame.rt.read_ivar(frame.receiver, str(node[1]), frame.env)


def _ivar_set(node, frame):
    return frame.rt.write_ivar(frame.receiver, str(node[1]), frame.env, evaluate(node[2], frame))


def _seq(node, frame):
    result = None
    for expr in node[1:]:
        result = evaluate(expr, frame)
    return result


def _set(node, frame):
    value = evaluate(node[2], frame)
    name = str(node[1])
    owner = frame.find_local(name) or frame
    owner.locals[name] = value
    return value


def _if(node, frame):
    if truthy(evaluate(node[1], frame)):
        return evaluate(node[2], frame)
    return evaluate(node[3], frame) if len(node) > 3 else None


def _ints(node, frame):
    values = [evaluate(a, frame) for a in node[1:]]
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise GuestTypeError(f"{node[0]} expects integers, got {v!r}")
    return values


def _concat(node, frame):
    parts = [evaluate(a, frame) for a in node[1:]]
    for p in parts:
        if not isinstance(p, str):
            raise GuestTypeError(f"concat expects text, got {p!r}")
    return "".join(parts)


def _arith(op):
    def form(node, frame):
        a, b = _ints(node, frame)
        return op(a, b)

    return form


def _new(node, frame):
    return frame.rt.new_instance(evaluate(node[1], frame))


def _wrap(node, frame):
    return frame.rt.wrap(evaluate(node[1], frame))


_FORMS = {
    "send": _send,
    "call": _call,
    "super": _super,
    "cross": _cross,
    "block": _block,
    "yield": _yield,
    "callblock": _callblock,
    "arg": _arg,
    "ivar": _ivar,
    "ivar=": _ivar_set,
    "seq": _seq,
    "set": _set,
    "if": _if,
    "not": lambda node, frame: not truthy(evaluate(node[1], frame)),
    "list": lambda node, frame: [evaluate(a, frame) for a in node[1:]],
    "concat": _concat,
    "+": _arith(lambda a, b: a + b),
    "-": _arith(lambda a, b: a - b),
    "*": _arith(lambda a, b: a * b),
    "<": _arith(lambda a, b: a < b),
    "=": lambda node, frame: _equal(evaluate(node[1], frame), evaluate(node[2], frame)),
    "new": _new,
    "wrap": _wrap,
}


def _equal(a, b):
    if isinstance(a, (int, str, list)) and not isinstance(a, bool):
        return type(a) is type(b) and a == b
    return a is b


def literal_value(node):
    """Value of a literal datum, without a runtime (used for defaults and expects)."""
    if isinstance(node, list):
        if node and node[0] == "list":
            return [literal_value(n) for n in node[1:]]
        raise ModelViolation(f"{unparse(node)} is not a literal")
    if isinstance(node, Ident):
        raise ModelViolation(f"{node} is not a literal")
    return node


__all__ = [
    "Block",
    "Frame",
    "Ident",
    "call_block",
    "evaluate",
    "execute",
    "literal_value",
    "native_block",
    "read",
    "read_all",
    "unparse",
    "RUBY",
]
