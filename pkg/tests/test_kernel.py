import pytest

from dualrt.bridges import Signature
from dualrt.errors import MethodNotUnderstood, NoMethodError
from dualrt.objspace import RUBY, SMALLTALK, Symbol


def test_string_star_only_in_ruby(rt):
    assert rt.send("A", "*", [3]) == "AAA"
    with pytest.raises(MethodNotUnderstood):
        rt.send("A", "*", [3], env=SMALLTALK)
    assert rt.send("A", ",", ["B"], env=SMALLTALK) == "AB"


def test_integers(rt):
    assert rt.send(2, "+", [3]) == 5
    assert rt.send(2, "printString", env=SMALLTALK) == "2"
    assert rt.eval("(send 3 times & (block (i) i))") == 3


def test_array_and_enumerable(rt):
    assert rt.eval('(send [1 2 3] join "-")') == "1-2-3"
    assert rt.eval("(send [1 2 3] select & (block (x) (< 1 x)))") == [2, 3]
    assert rt.eval("(send [1 2 3] inject 0 & (block (a x) (+ a x)))") == 6
    assert rt.eval("(send [1 2 3] include? 2)") is True
    assert rt.eval("(send [4 5] first)") == 4
    assert rt.eval("(send [4 5] first 1)") == [4]


def test_hash(rt):
    h = rt.eval("(send Hash new)")
    rt.send(h, "[]=", [Symbol("a"), 1])
    assert rt.send(h, "[]", [Symbol("a")]) == 1
    assert rt.send(h, "keys") == [Symbol("a")]
    assert rt.send(h, "at:", [Symbol("a")], env=SMALLTALK) == 1
    assert rt.read_ivar(h, "size", RUBY) == 1


def test_reflection(rt):
    assert rt.eval("(send Array ancestors)")[:3] == [rt.lookup_name("Array", RUBY),
                                                     rt.lookup_name("Enumerable", RUBY),
                                                     rt.lookup_name("Object", RUBY)]
    assert rt.eval("(send 1 is_a? Integer)") is True
    assert rt.eval("(send nil nil?)") is True
    assert rt.eval("(send 1 respond_to? :+)") is True
    assert rt.eval("(send 1 respond_to? :nope)") is False


def test_class_new_runs_initialize(rt):
    cls = rt.new_class(None, "Pt", rt.space.Object)
    rt.define(cls, RUBY, "initialize", "(ivar= x (arg 0))", visibility="private",
              signature=Signature(1))
    obj = rt.send(cls, "new", [5])
    assert rt.read_ivar(obj, "x", RUBY) == 5
    with pytest.raises(NoMethodError):
        rt.send(obj, "initialize", [1])


def test_smalltalk_reflection(rt):
    cls = rt.new_class("Pt", None, rt.space.Object, ("x",))
    obj = rt.send(cls, "new", env=SMALLTALK)
    assert rt.send(obj, "class", env=SMALLTALK) is cls
    rt.send(obj, "instVarNamed:put:", ["x", 3], env=SMALLTALK)
    assert rt.send(obj, "instVarNamed:", ["x"], env=SMALLTALK) == 3
    meta = rt.space.virtual_class(cls)
    assert rt.send(meta, "destClass", env=SMALLTALK) is cls


def test_module_cannot_be_instantiated(rt):
    with pytest.raises(NoMethodError):
        rt.send(rt.lookup_name("Kernel", RUBY), "new")
