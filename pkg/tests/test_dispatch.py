import pytest

from dualrt import dispatch
from dualrt.bridges import Signature
from dualrt.dispatch import CallContext
from dualrt.errors import (
    ArgumentError,
    MethodNotUnderstood,
    ModelViolation,
    NoMethodError,
    VisibilityUnsupported,
)
from dualrt.ir import read
from dualrt.objspace import RUBY, SMALLTALK


@pytest.fixture
def person(rt):
    return rt.new_class("Person", "Person", rt.space.Object)


def test_env_isolation(rt, person):
    rt.define(person, RUBY, "greet", '"hello"')
    obj = rt.new_instance(person)
    assert rt.send(obj, "greet") == "hello"
    assert not rt.lookup(obj, "greet", SMALLTALK).found
    with pytest.raises(MethodNotUnderstood):
        rt.send(obj, "greet", env=SMALLTALK)


def test_smalltalk_visibility_unsupported(rt, person):
    with pytest.raises(VisibilityUnsupported):
        rt.define(person, SMALLTALK, "x", "1", visibility="private")
    with pytest.raises(ModelViolation):
        rt.define(person, SMALLTALK, "at:", "1", signature=Signature(2))


def test_private_needs_implicit_self(rt, person):
    rt.define(person, RUBY, "secret", "42", visibility="private")
    obj = rt.new_instance(person)
    result = rt.lookup(obj, "secret#0__")
    assert not result.found and result.miss_reason == dispatch.VIS_PRIVATE
    implicit = CallContext(person, obj, RUBY, True)
    assert rt.lookup(obj, "secret#0__", caller=implicit).found
    with pytest.raises(NoMethodError, match="private method `secret'"):
        rt.send(obj, "secret")


def test_protected_rule(rt, person):
    other = rt.new_class(None, "Other", rt.space.Object)
    rt.define(person, RUBY, "token", "7", visibility="protected")
    obj = rt.new_instance(person)
    inside = CallContext(person, obj, RUBY, False)
    outside = CallContext(other, rt.new_instance(other), RUBY, False)
    assert rt.lookup(obj, "token#0__", caller=inside).found
    result = rt.lookup(obj, "token#0__", caller=outside)
    assert result.miss_reason == dispatch.VIS_PROTECTED


def test_visibility_change_keeps_holder(rt, person):
    sub = rt.new_class(None, "Sub", person)
    rt.define(person, RUBY, "m", "1")
    obj = rt.new_instance(sub)
    found = rt.lookup(obj, "m#0__")
    rt.set_visibility(person, RUBY, "m", "private")
    implicit = rt.lookup(obj, "m#0__", caller=CallContext(sub, obj, RUBY, True))
    assert implicit.holder is found.holder
    assert implicit.method.visibility == "private"
    assert found.method.visibility == "public"


def test_method_missing_called_once(rt, person):
    calls = []

    def hook(frame):
        calls.append(list(frame.args))
        return "caught"

    rt.define(person, RUBY, "method_missing", hook, visibility="private",
              signature=Signature(1, (), True, True))
    obj = rt.new_instance(person)
    assert rt.send(obj, "nothing", [1, 2]) == "caught"
    assert len(calls) == 1
    name, rest = calls[0][0], calls[0][1]
    assert name.name == "nothing" and rest == [1, 2]


def test_arity_errors(rt, person):
    rt.define(person, RUBY, "two", "1", signature=Signature(2))
    obj = rt.new_instance(person)
    with pytest.raises(ArgumentError, match=r"\(1 for 2\)"):
        rt.send(obj, "two", [1])
    with pytest.raises(ArgumentError):
        rt.send(obj, "two", [1, 2, 3, 4, 5])
    assert rt.send(obj, "two", [1], splat=[2]) == 1


def test_defaults_and_splat_binding(rt, person):
    sig = Signature(1, (("b", read("(+ (arg 0) 1)")),), True)
    rt.define(person, RUBY, "f", lambda frame: list(frame.args), signature=sig)
    obj = rt.new_instance(person)
    assert rt.send(obj, "f", [1]) == [1, 2, []]
    assert rt.send(obj, "f", [1, 5, 6, 7, 8]) == [1, 5, [6, 7, 8]]


def test_super_and_missing_super(rt, person):
    sub = rt.new_class(None, "Kid", person)
    rt.define(person, RUBY, "who", '"person"')
    rt.define(sub, RUBY, "who", '(concat "kid>" (super))')
    assert rt.send(rt.new_instance(sub), "who") == "kid>person"
    rt.define(sub, RUBY, "orphan", "(super)")
    with pytest.raises(NoMethodError, match="super"):
        rt.send(rt.new_instance(sub), "orphan")


def test_does_not_understand_hook(rt, person):
    rt.define(person, SMALLTALK, "doesNotUnderstand:", "(send (arg 0) selector)")
    assert rt.send(rt.new_instance(person), "frobnicate:", [1], env=SMALLTALK) == "frobnicate:"


def test_lookup_path_skips_dictless(rt):
    path = dispatch.lookup_path(rt.space, rt.RubyWrapper, RUBY)
    assert rt.RubyWrapper not in path
