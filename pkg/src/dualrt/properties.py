"""Randomized workloads and the independent oracles they are checked against.

The oracles never walk runtime pointers.  They work on plain names and a
log of construction events, recomputing lookup chains, argument bindings
and bridge counts from the rules alone.
"""

import random
from dataclasses import dataclass, field

from . import dispatch, modules, singleton
from .bridges import Signature
from .errors import ArgumentError
from .objspace import RUBY, ClassObj, Obj
from .selectors import MAX_BRIDGE_ARGS

POOL = tuple(f"m{i}" for i in range(10))
HELIX_SUPERS = {"Class": "Metaclass3", "Metaclass3": "Module", "Module": "Behavior", "Behavior": "Object"}


# -- symbolic keys -----------------------------------------------------------------


def key_of(space, value):
    """Name-based identity of a runtime class or object, independent of the chains."""
    if isinstance(value, ClassObj):
        if value.is_meta:
            return ("S", key_of(space, value.dest))
        if value.is_virtual:
            return ("mod", value.origin.name(RUBY))
        if value.is_module:
            return ("mod", value.name(RUBY))
        return ("cls", value.name(RUBY) or value.name())
    if isinstance(value, Obj):
        return ("obj", value.oop)
    return ("imm", repr(value))


@dataclass
class LookupModel:
    """Symbolic model of a randomly built hierarchy."""

    parent: dict = field(default_factory=lambda: dict(HELIX_SUPERS))
    instance_class: dict = field(default_factory=dict)
    # per class: spliced entries after it, nearest first; each is (module, frozen snapshot)
    spliced: dict = field(default_factory=lambda: {"Object": [("Kernel", None)]})
    methods: dict = field(default_factory=dict)  # node -> {selector: visibility}
    singletons: dict = field(default_factory=dict)  # node -> deepest requested level

    def chain(self, node):
        """Ruby lookup chain of ``node`` as symbolic keys."""
        out = []
        while node is not None:
            out.append(node)
            kind, name = node
            if kind == "cls":
                out.extend(("copy", mod, snap) for mod, snap in self.spliced.get(name, []))
                sup = self.parent.get(name)
                node = ("cls", sup) if sup else None
            elif kind == "S":
                node = self.singleton_super(name)
            else:
                raise ValueError(node)
        return out

    def singleton_super(self, target):
        kind, name = target
        if kind == "obj":
            return ("cls", self.instance_class[name])
        if kind == "cls":
            if name == "Object":
                return ("cls", "Class")
            return ("S", ("cls", self.parent[name]))
        return ("S", self.singleton_super(name))

    def origins(self, node):
        return [k[1] for k in self.chain(node) if k[0] == "copy"]

    def include(self, cls, mod):
        if mod in self.origins(("cls", cls)):
            return
        snap = dict(self.methods.get(("mod", mod), {}))
        self.spliced.setdefault(cls, []).insert(0, (mod, snap))

    def define(self, node, selector, visibility):
        self.methods.setdefault(node, {})[selector] = visibility

    def start(self, receiver):
        """Where lookup starts for a symbolic receiver."""
        kind = receiver[0]
        if kind == "obj" and receiver not in self.singletons:
            return ("cls", self.instance_class[receiver[1]])
        return ("S", receiver)

    def expected(self, receiver, selector):
        for node in self.chain(self.start(receiver)):
            if node[0] == "copy":
                table = node[2] or {}
                found = ("mod", node[1])
            else:
                table = self.methods.get(node, {})
                found = node
            if selector in table:
                vis = table[selector]
                if vis == "public":
                    return found, None
                return None, dispatch.VIS_PRIVATE if vis == "private" else dispatch.VIS_PROTECTED
        return None, dispatch.ABSENT

    def expected_path(self, receiver):
        return [("mod", k[1]) if k[0] == "copy" else k for k in self.chain(self.start(receiver))]


def _tag(value):
    return lambda frame: value


def build_hierarchy(rng, rt=None, max_classes=8, max_modules=4, max_includes=6, max_depth=3, max_methods=40):
    """Build a random hierarchy in a fresh runtime; returns (rt, model, receivers, bound_log)."""
    from .runtime import Runtime

    rt = rt or Runtime()
    space = rt.space
    model = LookupModel()
    classes = ["Object"]
    mods = []
    instances = []
    receivers = []
    bound_log = []
    n_classes = rng.randint(1, max_classes)
    n_modules = rng.randint(0, max_modules)
    budget = {"include": rng.randint(0, max_includes), "def": rng.randint(1, max_methods)}
    events = ["class"] * n_classes + ["module"] * n_modules + ["include"] * budget["include"]
    events += ["def"] * budget["def"] + ["instance"] * rng.randint(1, 6) + ["singleton"] * rng.randint(0, 4)
    rng.shuffle(events)
    # classes must exist before anything refers to them; keep relative order otherwise
    events.sort(key=lambda e: 0 if e == "class" else 1 if e == "module" else 2)
    tail = events[n_classes + n_modules:]
    rng.shuffle(tail)
    events = events[: n_classes + n_modules] + tail

    def node_for_holder():
        options = [("cls", c) for c in classes] + [("mod", m) for m in mods]
        options += [("S", ("cls", c)) for c in classes]
        options += [("S", r) for r in model.singletons]
        options += [("S", ("S", r)) for r, d in model.singletons.items() if d >= 2]
        return rng.choice(options)

    def runtime_class(node):
        kind, name = node
        if kind in ("cls", "mod"):
            return space.lookup_name(name, RUBY)
        return space.virtual_class(runtime_object(name))

    def runtime_object(node):
        kind, name = node
        if kind == "obj":
            return space.objects[name]
        if kind == "S":
            return runtime_class(node)
        return space.lookup_name(name, RUBY)

    for event in events:
        if event == "class":
            name = f"C{len(classes)}"
            sup = rng.choice(classes)
            space.new_class(None, name, space.lookup_name(sup, RUBY))
            model.parent[name] = sup
            classes.append(name)
        elif event == "module":
            name = f"M{len(mods)}"
            modules.new_module(space, name)
            mods.append(name)
        elif event == "include" and mods and len(classes) > 1:
            cls = rng.choice(classes[1:])
            mod = rng.choice(mods)
            modules.include_module(space, space.lookup_name(cls, RUBY), space.lookup_name(mod, RUBY), RUBY)
            model.include(cls, mod)
        elif event == "def":
            node = node_for_holder()
            sel = rng.choice(POOL)
            vis = rng.choices(("public", "private", "protected"), (8, 1, 1))[0]
            holder = runtime_class(node)
            dispatch.define_method(space, holder, RUBY, sel, vis, Signature(), _tag(node))
            model.define(node, sel, vis)
        elif event == "instance":
            cls = rng.choice(classes)
            obj = space.new_instance(space.lookup_name(cls, RUBY))
            model.instance_class[obj.oop] = cls
            instances.append(("obj", obj.oop))
        elif event == "singleton":
            pool = instances + [("cls", c) for c in classes[1:]] + [("S", t) for t in model.singletons]
            if not pool:
                continue
            target = rng.choice(pool)
            depth = rng.randint(1, max_depth)
            obj = runtime_object(target)
            before = len(space.classes())
            bound = singleton.max_gen(space, obj) + max(depth - 2, 0)
            if depth == 2 and rng.random() < 0.5:
                singleton.ruby_singleton_class(space, obj)
                call = "ruby_singleton_class"
            else:
                singleton.ensure_singleton_generated(space, obj, depth)
                call = f"ensure({depth})"
            made = len(space.classes()) - before
            bound_log.append((target, call, made, bound))
            have = model.singletons.get(target, 1 if target[0] == "cls" else 0)
            model.singletons[target] = max(have, depth)

    for inst in instances:
        receivers.append(inst)
    for c in classes:
        receivers.append(("cls", c))
    for target, depth in model.singletons.items():
        level = target
        for _ in range(depth - 1):
            level = ("S", level)
            receivers.append(level)
    # a class receiver always starts at its meta class
    for c in classes:
        model.singletons.setdefault(("cls", c), 1)
    return rt, model, receivers, bound_log, runtime_object


def check_lookup(seed):
    """One random hierarchy: (agreements, probes, mismatches)."""
    agree, probes, mismatches, _ = check_hierarchy(seed)
    return agree, probes, mismatches


def check_hierarchy(seed):
    """Lookup agreement plus the singleton allocation log of one hierarchy."""
    rng = random.Random(seed)
    rt, model, receivers, bound_log, runtime_object = build_hierarchy(rng)
    space = rt.space
    agree = probes = 0
    mismatches = []
    for recv in receivers:
        obj = runtime_object(recv)
        path = [key_of(space, c) for c in space.chain(space.virtual_class(obj), RUBY)]
        probes += 1
        if path == model.expected_path(recv):
            agree += 1
        else:
            mismatches.append((recv, "path", path, model.expected_path(recv)))
        for sel in POOL:
            probes += 1
            result = dispatch.lookup(space, obj, sel + "#0__", RUBY)
            got = (key_of(space, result.holder) if result.found else None, result.miss_reason)
            want = model.expected(recv, sel)
            if got == want:
                agree += 1
            else:
                mismatches.append((recv, sel, got, want))
    return agree, probes, mismatches, bound_log


def check_singleton_bound(seed):
    rng = random.Random(seed)
    _, _, _, bound_log, _ = build_hierarchy(rng)
    return list(bound_log), [e for e in bound_log if e[2] > e[3]]


# -- arity oracle ----------------------------------------------------------------------


def oracle_binding(sig, positional):
    """Enumerate every legal assignment of ``positional`` to the signature.

    Returns the bound argument list of the unique legal assignment, or None.
    """
    n = len(positional)
    opts = len(sig.optionals)
    legal = []
    for filled in range(opts + 1):
        for rest in range(n + 1):
            if sig.required + filled + rest != n:
                continue
            if rest and not sig.splat:
                continue
            if rest and filled < opts:
                continue  # optionals take arguments before the splat does
            legal.append((filled, rest))
    if not legal:
        return None
    filled, rest = legal[0]
    fixed = positional[: sig.required + filled]
    defaults = [f"default-{i}" for i in range(filled, opts)]
    bound = list(fixed) + defaults
    if sig.splat:
        bound.append(list(positional[sig.required + filled:]))
    return bound


def signature_corpus():
    for req in range(6):
        for opts in range(3):
            for splat in (False, True):
                for block in (False, True):
                    yield Signature(req, tuple((f"o{i}", f'"default-{i}"') for i in range(opts)), splat, block)


def call_shapes():
    for argc in range(7):
        for splat_len in (None, 0, 1, 2):
            for block in (False, True):
                yield argc, splat_len, block


def check_arity(rt=None, sigs=None):
    """Dispatch outcome vs. the binding oracle over the full corpus."""
    from .ir import native_block, read
    from .runtime import Runtime

    rt = rt or Runtime()
    space = rt.space
    cls = space.new_class(None, "ArityProbe", space.Object)
    recv = space.new_instance(cls)
    agree = total = 0
    mismatches = []
    for i, sig in enumerate(sigs or signature_corpus()):
        sig = Signature(sig.required, tuple((n, read(d) if isinstance(d, str) else d) for n, d in sig.optionals),
                        sig.splat, sig.block)
        name = f"probe{i}"
        dispatch.define_method(space, cls, RUBY, name, signature=sig,
                               body=lambda f: (list(f.args), f.block is not None))
        for argc, splat_len, has_block in call_shapes():
            args = [f"a{k}" for k in range(argc)]
            splat = None if splat_len is None else [f"s{k}" for k in range(splat_len)]
            block = native_block(lambda: None, 0, RUBY) if has_block else None
            want = oracle_binding(sig, args + (splat or []))
            try:
                got = rt.send(recv, name, args, block=block, env=RUBY, splat=splat)
            except ArgumentError:
                got = None
            expect = None if want is None else (want, has_block)
            total += 1
            if got == expect:
                agree += 1
            else:
                mismatches.append((sig, argc, splat_len, has_block, got, expect))
    return agree, total, mismatches


# -- bridge counting -----------------------------------------------------------------------


def expected_family_size(sig):
    return 16 + (1 if sig.arity > MAX_BRIDGE_ARGS else 0)


def random_signature(rng):
    req = rng.randint(0, 5)
    opts = rng.randint(0, 2)
    return Signature(req, tuple((f"o{i}", None) for i in range(opts)), rng.random() < 0.3, rng.random() < 0.5)


def check_bridges(seed, trials=200):
    """(good, trials): entries added per definition, and net change on redefinition."""
    from .runtime import Runtime

    rng = random.Random(seed)
    rt = Runtime()
    space = rt.space
    cls = space.new_class(None, "BridgeProbe", space.Object)
    good = 0
    for i in range(trials):
        sig = random_signature(rng)
        mdict = cls.mdicts[RUBY]
        before = len(mdict)
        dispatch.define_method(space, cls, RUBY, f"b{i}", signature=sig, body=_tag(i))
        added = len(mdict) - before
        # redefine with another signature on the same side of the 3-argument line
        while True:
            other = random_signature(rng)
            if (other.arity > MAX_BRIDGE_ARGS) == (sig.arity > MAX_BRIDGE_ARGS):
                break
        mid = len(mdict)
        dispatch.define_method(space, cls, RUBY, f"b{i}", signature=other, body=_tag(-i))
        if added == expected_family_size(sig) and len(mdict) == mid:
            good += 1
    return good, trials


# -- entry points used by the script `property` command ------------------------------------


def _lookup_prop(seed, trials):
    ok = 0
    for t in range(trials):
        agree, probes, _ = check_lookup(seed * 100003 + t)
        ok += agree == probes
    return ok, trials


def _arity_prop(seed, trials):
    agree, total, _ = check_arity()
    return agree, total


def _bridges_prop(seed, trials):
    return check_bridges(seed, trials)


def _singleton_prop(seed, trials):
    calls = bad = 0
    for t in range(trials):
        log, violations = check_singleton_bound(seed * 100003 + t)
        calls += len(log)
        bad += len(violations)
    return calls - bad, calls


SCRIPT_PROPERTIES = {
    "lookup": _lookup_prop,
    "arity": _arity_prop,
    "bridges": _bridges_prop,
    "singleton-bound": _singleton_prop,
}

__all__ = [
    "LookupModel",
    "build_hierarchy",
    "check_arity",
    "check_bridges",
    "check_hierarchy",
    "check_lookup",
    "check_singleton_bound",
    "oracle_binding",
    "SCRIPT_PROPERTIES",
]
