from dualrt.inspector import class_label, describe, dump_all, inspect_hierarchy
from dualrt.objspace import RUBY, Message, Symbol


def test_describe_values(rt):
    assert describe(rt, None) == "nil"
    assert describe(rt, True) == "true"
    assert describe(rt, "a\"b") == '"a\\"b"'
    assert describe(rt, Symbol("x")) == ":x"
    assert describe(rt, [1, "a"]) == '[1, "a"]'
    assert describe(rt, Message("at:", [1])) == "<Message #at:>"


def test_class_labels(rt):
    space = rt.space
    assert class_label(space.Object) == "Object"
    assert class_label(space.virtual_class(3)) == "SmallInteger(::Fixnum)"
    assert describe(rt, rt.new_class(None, "Rb", space.Object)) == "::Rb"
    assert describe(rt, space.virtual_class(space.Object)) == "#<Class: Object>"


def test_describe_instances_and_copies(rt):
    space = rt.space
    cls = rt.new_class(None, "A", space.Object)
    obj = rt.new_instance(cls)
    assert describe(rt, obj) == f"#<::A@{obj.oop}>"
    mod = rt.new_module("M")
    rt.include(cls, mod)
    copy = space.parent(cls, RUBY)
    assert describe(rt, copy) == f"copy(::M)@{copy.oop}"
    assert describe(rt, rt.wrap(obj)) == f"#<RubyWrapper on #<::A@{obj.oop}>>"


def test_inspect_hierarchy_sections(rt):
    cls = rt.new_class(None, "A", rt.space.Object)
    text = inspect_hierarchy(rt, rt.new_instance(cls))
    lines = text.splitlines()
    assert lines[0].startswith("hierarchy of #<::A@")
    assert "[levels]" in lines and "[smalltalk]" in lines and "[ruby]" in lines
    assert "  ::A" in lines


def test_dump_all_since(rt):
    before = rt.space.object_count
    assert dump_all(rt, since=before) == ""
    rt.new_class(None, "A", rt.space.Object)
    lines = dump_all(rt, since=before).splitlines()
    assert len(lines) == 2
    assert lines[0].startswith(f"@{before} class ::A")
    assert " meta " in lines[1]
