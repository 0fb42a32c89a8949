"""Deterministic text renderings of values and class hierarchies.

Oops are allocation indices in a fresh object space, so they already
follow creation order and are stable from run to run.
"""

import json

from .objspace import ENVS, RUBY, SMALLTALK, ClassObj, Message, Obj, Symbol


def class_label(cls):
    if cls.is_meta:
        return None
    st, rb = cls.names.get(SMALLTALK), cls.names.get(RUBY)
    if st and rb:
        return st if st == rb else f"{st}(::{rb})"
    if st:
        return st
    if rb:
        return f"::{rb}"
    return None


def describe(rt, value, depth=0):
    from .ir import Block

    if value is None:
        return "nil"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, Symbol):
        return ":" + value.name
    if isinstance(value, list):
        if depth > 8:
            return "[...]"
        return "[" + ", ".join(describe(rt, v, depth + 1) for v in value) + "]"
    if isinstance(value, Block):
        return f"<block/{value.arity}>"
    if isinstance(value, Message):
        return f"<Message #{value.selector}>"
    if isinstance(value, ClassObj):
        return _describe_class(rt, value, depth)
    if isinstance(value, Obj):
        cls = rt.space.class_of(value)
        if cls is getattr(rt, "RubyWrapper", None):
            target = rt.space.read_ivar(value, "target", SMALLTALK)
            return f"#<RubyWrapper on {describe(rt, target, depth + 1)}>"
        return f"#<{class_label(cls) or f'anon@{cls.oop}'}@{value.oop}>"
    return repr(value)


def _describe_class(rt, cls, depth):
    if cls.is_meta:
        if depth > 8:
            return "#<Class: ...>"
        return f"#<Class: {describe(rt, cls.dest, depth + 1)}>"
    if cls.is_virtual:
        return f"copy({describe(rt, cls.origin, depth + 1)})@{cls.oop}"
    return class_label(cls) or f"#<Class:anon@{cls.oop}>"


def node_line(rt, cls):
    """One hierarchy node: label plus meta/virtual markers."""
    if cls.is_virtual:
        return f"[V origin={describe(rt, cls.origin)}] @{cls.oop}"
    text = describe(rt, cls)
    if cls.is_meta:
        text += f" [M dest={describe(rt, cls.dest)}]"
    if cls.is_module:
        text += " [module]"
    return text


def chain_lines(rt, start, env):
    return [node_line(rt, c) for c in rt.space.chain(start, env)]


def inspect_hierarchy(rt, target):
    """Superclass chains per environment, plus the instance-of levels above ``target``."""
    space = rt.space
    if isinstance(target, ClassObj):
        start = target
    else:
        start = space.virtual_class(target)
    lines = [f"hierarchy of {describe(rt, target)}"]
    lines.append("[levels]")
    seen = set()
    level = target
    while True:
        vclass = space.virtual_class(level)
        lines.append(f"  {describe(rt, level)} -> {describe(rt, vclass)}")
        if not vclass.is_meta or id(vclass) in seen:
            break
        seen.add(id(vclass))
        level = vclass
    for env in ENVS:
        lines.append(f"[{env}]")
        lines.extend("  " + line for line in chain_lines(rt, start, env))
    return "\n".join(lines)


def dump_all(rt, since=0):
    """Every class allocated at or after oop ``since``, one line each."""
    space = rt.space
    out = []
    for cls in space.classes():
        if cls.oop < since:
            continue
        kind = "meta" if cls.is_meta else "virtual" if cls.is_virtual else "module" if cls.is_module else "class"
        supers = []
        for env in ENVS:
            sup = space.parent(cls, env)
            own = "" if env in cls.mdicts else "~"
            supers.append(f"{env}{own}={describe(rt, sup) if sup is not None else '-'}")
        methods = sum(len(cls.mdicts.get(env, {})) for env in ENVS)
        out.append(f"@{cls.oop} {kind} {node_line(rt, cls)} {' '.join(supers)} methods={methods}")
    return "\n".join(out)
