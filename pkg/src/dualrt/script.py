"""Line-oriented script runner.

One command per line, ``#`` at the start of a word begins a comment.
Every command is echoed as ``> command`` followed by its result
(``=> value``) or error (``=> !ErrorName: message``).  ``expect`` compares
against the previous command's outcome.  Exit status: 0 when all expects
pass, 1 when an expect failed, 2 on a parse error (which aborts the run)
or on an error that no ``expect !Name`` accounted for.
"""

import io
import sys
from dataclasses import dataclass, field

from . import dispatch, modules, properties, singleton
from .bridges import VISIBILITIES, Signature, family_keys
from .errors import GuestError, ModelError, ModelViolation
from .inspector import describe, dump_all
from .interop import MISSING
from .ir import Ident, ReadError, evaluate, read_all
from .objspace import RUBY, ClassObj, Env
from .runtime import Runtime


class ScriptParseError(Exception):
    def __init__(self, message, lineno=None):
        super().__init__(message)
        self.lineno = lineno


def strip_comment(line):
    in_str = False
    escaped = False
    for i, ch in enumerate(line):
        if in_str:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        elif ch == "#" and (i == 0 or line[i - 1].isspace()):
            return line[:i].rstrip()
    return line.rstrip()


@dataclass
class Outcome:
    value: object = None
    error: BaseException = None
    note: str = ""
    text: str = None  # preformatted multi-line output


@dataclass
class Report:
    transcript: str
    exit_code: int
    passed: int = 0
    failed: int = 0
    unexpected_errors: int = 0
    lines: list = field(default_factory=list)


def _word(datum, what):
    if not isinstance(datum, (Ident, str)) or isinstance(datum, bool):
        raise ScriptParseError(f"expected {what}, got {datum!r}")
    return str(datum)


def _values_equal(a, b):
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_values_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, (int, str)) and not isinstance(a, bool):
        return type(a) is type(b) and a == b
    return a is b


def _error_matches(error, name):
    return any(k.__name__ == name for k in type(error).__mro__)


class ScriptRunner:
    def __init__(self, runtime=None, seed=0):
        self.rt = runtime or Runtime()
        self.env = RUBY
        self.seed = seed
        self.out = []
        self.last = None
        self.pending_error = False
        self.passed = self.failed = self.unexpected = 0

    # -- plumbing ------------------------------------------------------------

    def frame(self):
        return self.rt.top_frame(self.env)

    def eval(self, datum):
        return evaluate(datum, self.frame())

    def resolve_class(self, datum):
        if isinstance(datum, Ident):
            cls = self.rt.resolve(str(datum), self.env)
            if cls is not None:
                return cls
        value = self.eval(datum)
        if not isinstance(value, ClassObj):
            raise ScriptParseError(f"{describe(self.rt, value)} is not a class")
        return value

    def recv_node(self, data, i):
        if i >= len(data):
            raise ScriptParseError("missing receiver")
        if data[i] == "new" and isinstance(data[i], Ident):
            if i + 1 >= len(data):
                raise ScriptParseError("`new` needs a class name")
            return [Ident("new"), data[i + 1]], i + 2
        return data[i], i + 1

    def emit(self, text):
        self.out.append(text)

    # -- running ---------------------------------------------------------------

    def run(self, text):
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = strip_comment(raw).strip()
            if not line:
                continue
            self.emit(f"> {line}")
            try:
                data = read_all(line)
                if not data or not isinstance(data[0], Ident):
                    raise ScriptParseError("a command must start with a word")
                command = str(data[0])
                handler = getattr(self, "cmd_" + command.replace("-", "_"), None)
                if handler is None:
                    raise ScriptParseError(f"unknown command {command!r}")
                if command != "expect":
                    self._settle()
                self.execute(handler, data[1:])
            except (ScriptParseError, ReadError) as exc:
                self.emit(f"!! parse error at line {lineno}: {exc}")
                return self.finish(abort=True)
        self._settle()
        return self.finish()

    def execute(self, handler, args):
        try:
            outcome = handler(args)
        except ScriptParseError:
            raise
        except (ModelError, GuestError) as exc:
            outcome = Outcome(error=exc)
        except RecursionError:
            outcome = Outcome(error=GuestError("stack overflow"))
        if outcome is None:
            return
        self.last = outcome
        if outcome.error is not None:
            self.pending_error = True
            self.emit(f"=> !{type(outcome.error).__name__}: {outcome.error}")
        elif outcome.text is not None:
            self.emit(outcome.text)
        else:
            note = f"  # {outcome.note}" if outcome.note else ""
            self.emit(f"=> {describe(self.rt, outcome.value)}{note}")
        if outcome.error is None:
            self.rt.globals["@lastresult"] = outcome.value

    def _settle(self):
        if self.pending_error:
            self.unexpected += 1
            self.pending_error = False

    def finish(self, abort=False):
        if abort:
            code = 2
        elif self.unexpected:
            code = 2
        elif self.failed:
            code = 1
        else:
            code = 0
        self.emit(
            f"# expects passed={self.passed} failed={self.failed} "
            f"unexpected_errors={self.unexpected} exit={code}"
        )
        return Report("\n".join(self.out) + "\n", code, self.passed, self.failed, self.unexpected, self.out)

    # -- commands ----------------------------------------------------------------

    def cmd_env(self, args):
        if len(args) != 1 or str(args[0]) not in ("smalltalk", "ruby"):
            raise ScriptParseError("usage: env <smalltalk|ruby>")
        self.env = Env(str(args[0]))
        return Outcome(value=str(self.env))

    def cmd_class(self, args):
        if len(args) < 3 or args[1] != "super":
            raise ScriptParseError("usage: class <Name> super <Name> [ivars <n> ...]")
        name = _word(args[0], "a class name")
        sup = self.resolve_class(args[2])
        ivars = ()
        if len(args) > 3:
            if args[3] != "ivars":
                raise ScriptParseError(f"unexpected {args[3]!r} after superclass")
            ivars = tuple(_word(a, "an ivar name") for a in args[4:])
        names = {"name_st": None, "name_rb": None}
        names["name_st" if self.env is not RUBY else "name_rb"] = name
        cls = self.rt.space.new_class(names["name_st"], names["name_rb"], sup, ivars)
        return Outcome(value=cls)

    def cmd_module(self, args):
        if len(args) != 1:
            raise ScriptParseError("usage: module <Name>")
        if self.env is not RUBY:
            raise ModelViolation("modules can only be defined in the ruby environment")
        return Outcome(value=self.rt.new_module(_word(args[0], "a module name")))

    def cmd_include(self, args):
        if len(args) != 2:
            raise ScriptParseError("usage: include <Class> <Module>")
        cls, mod = self.resolve_class(args[0]), self.resolve_class(args[1])
        return Outcome(value=modules.include_module(self.rt.space, cls, mod, self.env))

    def _target(self, data, i):
        cls = self.resolve_class(data[i])
        i += 1
        # `def X class sel ...` targets the class side
        if i + 1 < len(data) and data[i] == "class" and data[i + 1] not in ("vis", "sig", "body"):
            if self.env is RUBY:
                cls = singleton.ruby_singleton_class(self.rt.space, cls)
            else:
                cls = self.rt.space.virtual_class(cls)
            i += 1
        return cls, i

    def cmd_def(self, args):
        if len(args) < 3:
            raise ScriptParseError("usage: def <Class> <selector> [vis v] [sig n] ... body <expr>")
        cls, i = self._target(args, 0)
        selector = _word(args[i], "a selector")
        i += 1
        vis, required, optionals, splat, block, body = "public", None, [], False, False, MISSING
        while i < len(args):
            word = args[i]
            if word == "vis":
                vis = _word(args[i + 1], "a visibility")
                if vis not in VISIBILITIES:
                    raise ScriptParseError(f"unknown visibility {vis!r}")
                i += 2
            elif word == "sig":
                required = args[i + 1]
                if not isinstance(required, int) or isinstance(required, bool) or required < 0:
                    raise ScriptParseError("sig takes a non-negative count")
                i += 2
            elif word == "opt":
                i += 1
                while i < len(args) and isinstance(args[i], Ident) and "=" in args[i]:
                    name, _, rest = str(args[i]).partition("=")
                    if rest:
                        default = read_all(rest)[0]
                        i += 1
                    else:
                        default = args[i + 1]
                        i += 2
                    optionals.append((name, default))
            elif word == "splat":
                splat, i = True, i + 1
            elif word == "block":
                block, i = True, i + 1
            elif word == "body":
                if i + 2 != len(args):
                    raise ScriptParseError("body takes exactly one expression")
                body, i = args[i + 1], i + 2
            else:
                raise ScriptParseError(f"unexpected {word!r} in def")
        if body is MISSING:
            raise ScriptParseError("def needs a body")
        space = self.rt.space
        if self.env is RUBY:
            sig = Signature(required or 0, tuple(optionals), splat, block)
        else:
            sig = None if required is None else Signature(required)
        before = len(cls.mdicts.get(self.env, {}))
        dispatch.define_method(space, cls, self.env, selector, vis, sig, body)
        after = len(cls.mdicts.get(self.env, {}))
        count = len(family_keys(cls.mdicts[self.env], selector)) if self.env is RUBY else 1
        return Outcome(value=count, note=f"{selector} on {describe(self.rt, cls)} ({after - before:+d})")

    def _prim(self, args, fn):
        if len(args) != 3:
            raise ScriptParseError("usage: defprim <Class> <ruby_name> <st_selector>")
        cls = self.resolve_class(args[0])
        entry = fn(cls, _word(args[1], "a ruby name"), _word(args[2], "a smalltalk selector"))
        return Outcome(value=entry.signature.arity, note=f"{args[1]} -> {args[2]}")

    def cmd_defprim(self, args):
        return self._prim(args, self.rt.primitive)

    def cmd_defclassprim(self, args):
        return self._prim(args, self.rt.class_primitive)

    def cmd_visibility(self, args):
        if len(args) != 3:
            raise ScriptParseError("usage: visibility <Class> <selector> <public|private|protected>")
        cls = self.resolve_class(args[0])
        self.rt.set_visibility(cls, self.env, _word(args[1], "a selector"), _word(args[2], "a visibility"))
        return Outcome(value=None, note=f"{args[1]} is {args[2]}")

    def cmd_send(self, args):
        recv_node, i = self.recv_node(args, 0)
        if i >= len(args):
            raise ScriptParseError("send needs a selector")
        sel = args[i]
        selector = "[]" if sel == [Ident("list")] else _word(sel, "a selector")
        i += 1
        call_args, splat, block = [], None, None
        while i < len(args):
            if args[i] == "star" and isinstance(args[i], Ident):
                splat = self.eval(args[i + 1])
                i += 2
            elif args[i] == "blockv" and isinstance(args[i], Ident):
                block = self.eval(args[i + 1])
                i += 2
            else:
                call_args.append(self.eval(args[i]))
                i += 1
        recv = self.eval(recv_node)
        from .dispatch import CallContext

        caller = CallContext(None, self.rt.main, self.env, False)
        return Outcome(value=self.rt.send(recv, selector, call_args, block, self.env, caller, splat))

    def cmd_stcallruby(self, args):
        recv_node, i = self.recv_node(args, 0)
        node = [Ident("cross"), recv_node] + list(args[i:])
        frame = self.rt.top_frame(self.env)
        return Outcome(value=evaluate(node, frame))

    def cmd_wrap(self, args):
        recv_node, i = self.recv_node(args, 0)
        if i != len(args):
            raise ScriptParseError("usage: wrap <recv-expr>")
        return Outcome(value=self.rt.wrap(self.eval(recv_node)))

    def cmd_singleton(self, args):
        recv_node, i = self.recv_node(args, 0)
        target = self.eval(recv_node)
        space = self.rt.space
        before = len(space.classes())
        if i < len(args):
            depth = args[i]
            if not isinstance(depth, int) or depth < 0:
                raise ScriptParseError("depth must be a non-negative integer")
            singleton.ensure_singleton_generated(space, target, depth)
            result = space.virtual_class(target)
        else:
            result = singleton.ruby_singleton_class(space, target)
        return Outcome(value=result, note=f"+{len(space.classes()) - before} classes")

    def cmd_expect(self, args):
        if len(args) != 1:
            raise ScriptParseError("usage: expect <literal | !ErrorName>")
        want = args[0]
        last = self.last
        self.pending_error = False
        if isinstance(want, Ident) and want.startswith("!"):
            name = want[1:]
            ok = last is not None and last.error is not None and _error_matches(last.error, name)
            expected_text = f"!{name}"
        else:
            expected = self.eval(want)
            ok = last is not None and last.error is None and _values_equal(last.value, expected)
            expected_text = describe(self.rt, expected)
        if ok:
            self.passed += 1
            self.emit("=> ok")
            return None
        self.failed += 1
        if last is None:
            actual = "(nothing)"
        elif last.error is not None:
            actual = f"!{type(last.error).__name__}: {last.error}"
        else:
            actual = describe(self.rt, last.value)
        self.emit("=> FAILED\n--- expected\n+++ actual\n-" + expected_text + "\n+" + actual)
        return None

    def cmd_inspect(self, args):
        if len(args) != 2 or args[0] != "hierarchy":
            raise ScriptParseError("usage: inspect hierarchy <Name|expr>")
        target = self.resolve_target(args[1])
        text = self.rt.inspect_hierarchy(target)
        return Outcome(value=text, text=text)

    def resolve_target(self, datum):
        if isinstance(datum, Ident) and datum not in self.rt.globals:
            cls = self.rt.resolve(str(datum), self.env)
            if cls is not None:
                return cls
        return self.eval(datum)

    def cmd_ivars(self, args):
        recv_node, i = self.recv_node(args, 0)
        if i != len(args):
            raise ScriptParseError("usage: ivars <expr>")
        return Outcome(value=self.rt.space.instance_variables(self.eval(recv_node), self.env))

    # extensions

    def cmd_let(self, args):
        if len(args) != 1:
            raise ScriptParseError("usage: let <name>  (binds the last result)")
        if self.last is None or self.last.error is not None:
            raise ScriptParseError("let needs a previous successful result")
        self.rt.globals[_word(args[0], "a name")] = self.last.value
        return Outcome(value=self.last.value)

    def cmd_eval(self, args):
        if len(args) != 1:
            raise ScriptParseError("usage: eval <expr>")
        return Outcome(value=self.eval(args[0]))

    def cmd_property(self, args):
        if not args:
            raise ScriptParseError("usage: property <name> [trials]")
        name = _word(args[0], "a property name")
        trials = args[1] if len(args) > 1 else 20
        checks = properties.SCRIPT_PROPERTIES
        if name not in checks:
            raise ScriptParseError(f"unknown property {name!r}; known: {', '.join(sorted(checks))}")
        agreed, total = checks[name](self.seed, trials)
        return Outcome(value=agreed, note=f"{agreed}/{total} agree (seed {self.seed})")

    def cmd_dump(self, args):
        text = dump_all(self.rt, since=self.rt.bootstrap_objects)
        return Outcome(value=text, text=text or "(no classes)")


def run_script(text, seed=0, dump_final=False):
    runner = ScriptRunner(seed=seed)
    report = runner.run(text)
    if dump_final:
        dump = dump_all(runner.rt)
        report.transcript += "# final hierarchy\n" + dump + "\n"
    return report


def run_path(path, **kwargs):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with io.open(path, encoding="utf-8") as fh:
            text = fh.read()
    return run_script(text, **kwargs)
