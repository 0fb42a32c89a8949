"""Method entries and Ruby bridge methods.

Defining a Ruby method installs a *family* of entries, one per call shape
``base#N{*|_}{&|_}`` for N in 0..3, plus an exact-arity entry when the
method takes more than three parameters.  Each entry has a role:

``real``
    the shape matches the signature; the body runs directly.
``default_filling_stub``
    optional arguments are missing (or extra arguments go to the
    method's splat); forwards to the full bridge.
``splat_adapter``
    the caller passed a splat; it is unpacked, counted, and forwarded.
``argument_error_stub``
    no argument list of this shape can ever bind; raises ``ArgumentError``.
"""

from dataclasses import dataclass, replace

from .errors import ArgumentError
from .selectors import MAX_BRIDGE_ARGS, FullSelector, base_of, is_full_selector

REAL = "real"
DEFAULT_FILLING = "default_filling_stub"
SPLAT_ADAPTER = "splat_adapter"
ARGUMENT_ERROR = "argument_error_stub"

PUBLIC, PROTECTED, PRIVATE = "public", "protected", "private"
VISIBILITIES = (PUBLIC, PROTECTED, PRIVATE)


@dataclass(frozen=True)
class Signature:
    required: int = 0
    optionals: tuple = ()  # (name, default IR) pairs
    splat: bool = False
    block: bool = False

    @property
    def arity(self):
        return self.required + len(self.optionals)

    def accepts(self, count):
        return count >= self.required and (self.splat or count <= self.arity)

    def full_selector(self, base):
        return FullSelector(base, self.arity, self.splat, True)

    def describe(self):
        parts = [str(self.required)]
        if self.optionals:
            parts.append(f"+{len(self.optionals)}opt")
        if self.splat:
            parts.append("*")
        if self.block:
            parts.append("&")
        return "".join(parts)


@dataclass(frozen=True, eq=False)
class MethodEntry:
    selector: str
    env: str
    signature: Signature
    body: object
    visibility: str = PUBLIC
    role: str = REAL
    defining_class: object = None
    shape: FullSelector = None

    @property
    def base(self):
        return self.shape.base if self.shape is not None else base_of(self.selector)

    @property
    def is_native(self):
        return callable(self.body)

    def __repr__(self):
        return f"<MethodEntry {self.env}:{self.selector} {self.role} {self.visibility}>"


def bridge_role(sig, n, splat):
    if not splat:
        if not sig.accepts(n):
            return ARGUMENT_ERROR
        return REAL if (n == sig.arity and not sig.splat) else DEFAULT_FILLING
    if sig.splat and n == sig.arity:
        return REAL
    if not sig.splat and n > sig.arity:
        return ARGUMENT_ERROR
    return SPLAT_ADAPTER


def generate_bridges(real):
    """All bridge entries for ``real``, keyed by full selector."""
    sig = real.signature
    base = real.selector
    family = {}
    for n in range(MAX_BRIDGE_ARGS + 1):
        for splat in (False, True):
            for block in (False, True):
                shape = FullSelector(base, n, splat, block)
                key = shape.render()
                family[key] = MethodEntry(key, real.env, sig, real.body, real.visibility,
                                          bridge_role(sig, n, splat), real.defining_class, shape)
    if sig.arity > MAX_BRIDGE_ARGS:
        shape = sig.full_selector(base)
        family[shape.render()] = replace(real, selector=shape.render(), role=REAL, shape=shape)
    return family


def family_keys(mdict, base):
    prefix = base + "#"
    return [k for k in mdict if k.startswith(prefix) and is_full_selector(k) and base_of(k) == base]


def overload_entry(real, full):
    """A bootstrap-only entry bound to exactly one call shape."""
    shape = FullSelector.parse(full)
    sig = Signature(required=shape.n, splat=shape.splat, block=real.signature.block)
    return replace(real, selector=full, signature=sig, role=REAL, shape=shape)


def spread(entry, args):
    """Flatten ``args`` (shaped per ``entry.shape``) into one positional list."""
    shape = entry.shape
    expected = shape.n + (1 if shape.splat else 0)
    if len(args) != expected:
        raise ArgumentError(f"{entry.selector} expects {expected} call arguments, got {len(args)}")
    if shape.splat:
        return list(args[:-1]) + list(args[-1])
    return list(args)


def arity_error(sig, given):
    if sig.splat:
        expected = f"{sig.required}+"
    elif sig.optionals:
        expected = f"{sig.required}..{sig.arity}"
    else:
        expected = str(sig.required)
    return ArgumentError(f"wrong number of arguments ({given} for {expected})")
