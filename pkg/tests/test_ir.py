import pytest

from dualrt.errors import ArgumentError, GuestNameError, GuestTypeError, LocalJumpError
from dualrt.ir import Ident, ReadError, call_block, native_block, read, read_all, truthy, unparse
from dualrt.objspace import RUBY, SMALLTALK, Symbol


def test_reader_atoms():
    assert read("42") == 42
    assert read("-3") == -3
    assert read('"a\\"b"') == 'a"b'
    assert read(":sym") is Symbol("sym")
    assert read("nil") is None and read("true") is True
    assert read("name") == Ident("name")
    assert read("[1, 2 3]") == [Ident("list"), 1, 2, 3]
    assert read_all("1 2") == [1, 2]


@pytest.mark.parametrize("bad", ["(1 2", "(1]", ")", "1 2"])
def test_reader_errors(bad):
    with pytest.raises(ReadError):
        read(bad)


def test_unparse_round_trip():
    text = '(send (arg 0) join " ")'
    assert read(unparse(read(text))) == read(text)


def test_truthiness():
    assert not truthy(None) and not truthy(False)
    assert truthy(0) and truthy("")


def test_arithmetic_and_control(rt):
    assert rt.eval("(+ 1 2)") == 3
    assert rt.eval("(if (< 1 2) :yes :no)") is Symbol("yes")
    assert rt.eval("(seq (set x 4) (* x x))") == 16
    assert rt.eval('(concat "a" "b")') == "ab"
    assert rt.eval("(= [1 2] [1 2])") is True
    with pytest.raises(GuestTypeError):
        rt.eval('(+ 1 "a")')


def test_unknown_name(rt):
    with pytest.raises(GuestNameError):
        rt.eval("nowhere")


def test_blocks_capture_locals(rt):
    assert rt.eval("(seq (set n 10) (callblock (block (x) (+ x n)) 5))") == 15


def test_block_arity_rules(rt):
    st = rt.eval("(block (a b) a)", env=SMALLTALK)
    with pytest.raises(ArgumentError):
        call_block(st, [1])
    rb = rt.eval("(block (a b) b)", env=RUBY)
    assert call_block(rb, [1]) is None
    assert call_block(rb, [1, 2, 3]) == 2


def test_native_block():
    block = native_block(lambda a: a * 2, 1, RUBY)
    assert call_block(block, [4]) == 8


def test_yield_without_block(rt):
    cls = rt.new_class(None, "Y", rt.space.Object)
    rt.define(cls, RUBY, "go", "(yield 1)")
    with pytest.raises(LocalJumpError):
        rt.send(rt.new_instance(cls), "go")


def test_arg_out_of_range(rt):
    cls = rt.new_class(None, "Z", rt.space.Object)
    rt.define(cls, RUBY, "go", "(arg 3)")
    with pytest.raises(ArgumentError):
        rt.send(rt.new_instance(cls), "go")


def test_splat_and_block_markers(rt):
    assert rt.eval("(send [1] push * [2 3])") == [1, 2, 3]
    assert rt.eval("(send [1 2] map & (block (x) (* x 10)))") == [10, 20]
