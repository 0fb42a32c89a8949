"""Selector syntax shared by both environments.

Ruby-side dispatch keys are *full selectors*: ``base#N`` followed by ``*``
or ``_`` (splat argument or not) and ``&`` or ``_`` (block argument or
not).  Smalltalk code reaches Ruby methods through ``@ruby1:`` keyword
messages, e.g. ``@ruby1:set_name: 'Doe' _: 'John'``.
"""

import re
from dataclasses import dataclass

from .errors import SelectorSyntaxError, UnsupportedShape

MAX_BRIDGE_ARGS = 3
RUBY_PREFIX = "@ruby1:"
STAR_KEYWORD = "__STAR:"
BLOCK_KEYWORD = "__BLOCK:"

_FULL_RE = re.compile(r"^(?P<base>.+)#(?P<n>\d+)(?P<splat>[*_])(?P<block>[&_])$")
_BINARY_CHARS = set("+-*/\\~<>=@%|&?,")


@dataclass(frozen=True)
class FullSelector:
    base: str
    n: int
    splat: bool = False
    block: bool = False

    def render(self):
        return f"{self.base}#{self.n}{'*' if self.splat else '_'}{'&' if self.block else '_'}"

    __str__ = render

    @classmethod
    def parse(cls, text):
        m = _FULL_RE.match(text)
        if m is None:
            raise SelectorSyntaxError(f"{text!r} is not a full selector")
        return cls(m["base"], int(m["n"]), m["splat"] == "*", m["block"] == "&")


def is_full_selector(text):
    return _FULL_RE.match(text) is not None


def base_of(text):
    m = _FULL_RE.match(text)
    return m["base"] if m else text


def translate_call_site(base, argc, has_splat_literal=False, has_block=False):
    """Full selector for a Ruby call site, plus the index from which
    arguments are packed into the splat (``None`` when nothing is packed)."""
    if argc > MAX_BRIDGE_ARGS:
        return FullSelector(base, MAX_BRIDGE_ARGS, True, has_block), MAX_BRIDGE_ARGS
    return FullSelector(base, argc, has_splat_literal, has_block), None


def pack_arguments(args, splat=None, pack_from=None):
    """Argument list matching the selector built by :func:`translate_call_site`."""
    args = list(args)
    if pack_from is None:
        if splat is not None:
            args.append(list(splat))
        return args
    packed = args[pack_from:] + list(splat or ())
    return args[:pack_from] + [packed]


def call_site(base, args, splat=None, has_block=False):
    selector, pack_from = translate_call_site(base, len(args), splat is not None, has_block)
    return selector, pack_arguments(args, splat, pack_from)


def smalltalk_arity(selector):
    if selector and all(ch in _BINARY_CHARS for ch in selector):
        return 1
    return selector.count(":")


@dataclass(frozen=True)
class StRubySelector:
    base: str
    normal_args: int
    has_splat: bool = False
    has_block: bool = False

    @property
    def arg_count(self):
        return self.normal_args + self.has_splat + self.has_block


def split_keywords(text):
    """``'a:_:__BLOCK:'`` -> ``['a:', '_:', '__BLOCK:']``."""
    parts = re.findall(r"[^:]*:|[^:]+$", text)
    return [p for p in parts if p]


def parse_st_ruby_selector(parts):
    """Parse the keyword parts of a Smalltalk-side Ruby call.

    ``parts`` may be a list of keywords or one concatenated selector string.
    """
    if isinstance(parts, str):
        parts = [parts]
    parts = list(parts)
    if not parts or not parts[0].startswith(RUBY_PREFIX):
        raise SelectorSyntaxError(f"Ruby selectors start with {RUBY_PREFIX!r}: {parts!r}")
    keywords = split_keywords(parts[0][len(RUBY_PREFIX):])
    for part in parts[1:]:
        keywords.extend(split_keywords(part))
    if not keywords or keywords[0] in (":", STAR_KEYWORD, BLOCK_KEYWORD):
        raise SelectorSyntaxError(f"missing Ruby selector in {parts!r}")

    first, rest = keywords[0], keywords[1:]
    if not first.endswith(":"):
        if any(k in (STAR_KEYWORD, BLOCK_KEYWORD) for k in rest):
            raise UnsupportedShape(
                "cannot pass a block or splat argument without a first normal argument"
            )
        if rest:
            raise SelectorSyntaxError(f"argument keywords need a colon after the selector: {parts!r}")
        return StRubySelector(first, 0)

    normal, splat, block = 1, False, False
    for kw in rest:
        if kw == BLOCK_KEYWORD:
            if block:
                raise SelectorSyntaxError("more than one __BLOCK: argument")
            block = True
        elif kw == STAR_KEYWORD:
            if splat or block:
                raise SelectorSyntaxError("__STAR: must precede __BLOCK: and appear once")
            splat = True
        elif kw.endswith(":"):
            if splat or block:
                raise SelectorSyntaxError("normal arguments must precede __STAR: and __BLOCK:")
            normal += 1
        else:
            raise SelectorSyntaxError(f"malformed keyword {kw!r}")
    return StRubySelector(first[:-1], normal, splat, block)
