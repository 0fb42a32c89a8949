import pytest

from dualrt.errors import ModelViolation, NameConflict, NotAMetaClass, NotInstantiable, UndeclaredIvar
from dualrt.kernel import BOOTSTRAP_CLASSES, BOOTSTRAP_OBJECTS
from dualrt.objspace import RUBY, SMALLTALK, Env, Symbol


def test_env_other():
    assert RUBY.other() is SMALLTALK
    assert SMALLTALK.other() is RUBY
    assert Env("ruby") is RUBY


def test_symbols_are_interned():
    assert Symbol("a") is Symbol("a")
    assert Symbol("a") is not Symbol("b")


def test_bootstrap_counts_are_documented(space):
    assert space.object_count == BOOTSTRAP_OBJECTS
    assert len(space.classes()) == BOOTSTRAP_CLASSES


def test_helix_closes(space):
    helix = [space.Object, space.Behavior, space.Module, space.Metaclass3, space.Class]
    for cls in helix:
        assert space.class_of(cls) in helix
        assert space.virtual_class(cls).is_meta
    assert space.class_of(space.Object) is space.Class


def test_new_class_creates_meta(space):
    cls = space.new_class("Foo", "Foo", space.Object)
    meta = space.virtual_class(cls)
    assert meta.is_meta
    assert space.destination_class(meta) is cls
    assert space.parent(meta, RUBY) is space.virtual_class(space.Object)
    assert not space.class_of(cls).is_meta


def test_class_of_skips_metas(space):
    cls = space.new_class(None, "Foo", space.Object)
    obj = space.new_instance(cls)
    assert space.class_of(obj) is cls
    assert space.class_of(cls) is space.Class


def test_destination_class_of_plain_class_fails(space):
    with pytest.raises(NotAMetaClass):
        space.destination_class(space.Object)


def test_name_conflicts(space):
    space.new_class(None, "Foo", space.Object)
    with pytest.raises(NameConflict):
        space.new_class(None, "Foo", space.Object)
    # the same name in the other environment is fine
    space.new_class("Foo", None, space.Object)


def test_cannot_subclass_a_meta(space):
    with pytest.raises(ModelViolation):
        space.new_class(None, "Bad", space.virtual_class(space.Object))


def test_meta_and_module_not_instantiable(rt, space):
    with pytest.raises(NotInstantiable):
        space.new_instance(space.virtual_class(space.Object))
    with pytest.raises(NotInstantiable):
        space.new_instance(rt.new_module("M"))


def test_static_ivars_and_prefix(space):
    cls = space.new_class("Box", "Box", space.Object, ("size",))
    box = space.new_instance(cls)
    space.write_ivar(box, "size", SMALLTALK, 3)
    assert space.read_ivar(box, "size", RUBY) == 3
    assert space.read_ivar(box, "_st_size", RUBY) == 3
    space.write_ivar(box, "_st_size", RUBY, 4)
    assert space.read_ivar(box, "size", SMALLTALK) == 4
    assert space.instance_variables(box, SMALLTALK) == ["size"]
    assert space.instance_variables(box, RUBY) == ["_st_size"]


def test_dynamic_ivars_are_per_object(space):
    cls = space.new_class(None, "Bag", space.Object)
    a, b = space.new_instance(cls), space.new_instance(cls)
    space.write_ivar(a, "color", RUBY, "red")
    assert space.read_ivar(b, "color", RUBY) is None
    assert space.instance_variables(a, RUBY) == ["color"]
    assert space.instance_variables(b, RUBY) == []
    assert space.dynamic_ivar_at(a, "color") == "red"


def test_smalltalk_rejects_undeclared_ivars(space):
    cls = space.new_class("Bag", None, space.Object)
    obj = space.new_instance(cls)
    with pytest.raises(UndeclaredIvar):
        space.read_ivar(obj, "nope", SMALLTALK)
    with pytest.raises(UndeclaredIvar):
        space.write_ivar(obj, "nope", SMALLTALK, 1)


def test_hidden_statics(space):
    cls = space.new_class("Secret", "Secret", space.Object, ("shown", "hidden"), hidden=("hidden",))
    obj = space.new_instance(cls)
    assert space.instance_variables(obj, RUBY) == ["_st_shown"]
    assert space.instance_variables(obj, SMALLTALK) == ["shown", "hidden"]
    # a Ruby write of the hidden name lands in the dynamic table instead
    space.write_ivar(obj, "hidden", RUBY, 1)
    assert space.read_ivar(obj, "hidden", SMALLTALK) is None
    assert space.instance_variables(obj, RUBY) == ["_st_shown", "hidden"]


def test_duplicate_and_inherited_ivars_rejected(space):
    with pytest.raises(ModelViolation):
        space.new_class(None, "Dup", space.Object, ("a", "a"))
    base = space.new_class(None, "Base", space.Object, ("a",))
    with pytest.raises(ModelViolation):
        space.new_class(None, "Sub", base, ("a",))


def test_immediates_have_no_ivars(space):
    assert space.read_ivar(3, "x", RUBY) is None
    assert space.instance_variables(3, RUBY) == []
    with pytest.raises(ModelViolation):
        space.write_ivar(3, "x", RUBY, 1)


def test_immediate_classes(rt, space):
    assert space.virtual_class(3).name(RUBY) == "Fixnum"
    assert space.virtual_class("s").name(RUBY) == "String"
    assert space.virtual_class(None).name(RUBY) == "NilClass"
    assert space.virtual_class(True).name(SMALLTALK) == "Boolean"


def test_static_prefix_is_reserved(space):
    cls = space.new_class("Box", "Box", space.Object, ("size", "table"), hidden=("table",))
    box = space.new_instance(cls)
    with pytest.raises(ModelViolation):
        space.write_ivar(box, "_st_table", RUBY, 1)
    with pytest.raises(ModelViolation):
        space.write_ivar(box, "_st_nothing", RUBY, 1)
    assert space.read_ivar(box, "_st_table", RUBY) is None
