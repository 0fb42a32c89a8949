import pytest

from dualrt import Symbol, singleton
from dualrt.errors import SingletonForbidden
from dualrt.objspace import RUBY


def test_instances_have_no_singleton_until_asked(space):
    cls = space.new_class(None, "Person", space.Object)
    john = space.new_instance(cls)
    assert space.virtual_class(john) is cls
    before = len(space.classes())
    sing = singleton.ruby_singleton_class(space, john)
    # first and second level for john; the second level's superclass is Person's meta class
    assert len(space.classes()) == before + 2
    assert sing.is_meta and sing.dest is john
    assert space.parent(sing, RUBY) is cls
    second = space.virtual_class(sing)
    assert second.is_meta
    assert space.parent(second, RUBY) is space.virtual_class(cls)
    assert space.class_of(john) is cls


def test_new_level_is_instance_of_metaclass3(space):
    cls = space.new_class(None, "A", space.Object)
    obj = space.new_instance(cls)
    singleton.ensure_singleton_generated(space, obj, 1)
    assert space.virtual_class(space.virtual_class(obj)) is space.Metaclass3


def test_class_ruby_singleton_is_its_meta(space):
    cls = space.new_class(None, "A", space.Object)
    meta = space.virtual_class(cls)
    sing = singleton.ruby_singleton_class(space, cls)
    assert sing is meta
    second = space.virtual_class(meta)
    assert second.is_meta and second.dest is meta


def test_meta_of_object_goes_to_meta_of_class(space):
    meta = space.virtual_class(space.Object)
    sing = singleton.singleton_of(space, meta)
    assert sing.dest is meta
    assert space.parent(sing, RUBY) is space.virtual_class(space.Class)


def test_third_level_forces_superclass_levels(space):
    person = space.new_class(None, "Person", space.Object)
    john = space.new_instance(person)
    singleton.ensure_singleton_generated(space, john, 3)
    assert space.virtual_class(space.virtual_class(person)).is_meta
    assert space.virtual_class(space.virtual_class(space.Object)).is_meta


def test_ensure_zero_is_noop(space):
    obj = space.new_instance(space.new_class(None, "A", space.Object))
    before = len(space.classes())
    singleton.ensure_singleton_generated(space, obj, 0)
    assert len(space.classes()) == before


def test_parallel_hierarchy_at_level_two(space):
    a = space.new_class(None, "A", space.Object)
    b = space.new_class(None, "B", a)
    singleton.ensure_singleton_generated(space, b, 2)
    singleton.ensure_singleton_generated(space, a, 2)
    sb = space.virtual_class(space.virtual_class(b))
    sa = space.virtual_class(space.virtual_class(a))
    assert sa in list(space.chain(sb, RUBY))


def test_idempotent(space):
    cls = space.new_class(None, "A", space.Object)
    singleton.ensure_singleton_generated(space, cls, 3)
    before = len(space.classes())
    singleton.ensure_singleton_generated(space, cls, 3)
    singleton.ruby_singleton_class(space, cls)
    assert len(space.classes()) == before


def test_immediates_refuse(space):
    for value in (3, None, True, Symbol("s")):
        with pytest.raises(SingletonForbidden):
            singleton.ruby_singleton_class(space, value)


def test_module_singleton_follows_object(rt, space):
    mod = rt.new_module("M")
    sing = singleton.ruby_singleton_class(space, mod)
    assert space.parent(sing, RUBY) is space.virtual_class(space.Object)
    # Module's instance methods stay reachable through Class and Metaclass3
    assert space.Module in list(space.chain(sing, RUBY))


def test_between_and_max_gen(space):
    a = space.new_class(None, "A", space.Object)
    b = space.new_class(None, "B", a)
    c = space.new_class(None, "C", b)
    assert singleton.between(space, c, space.Object) == 3
    assert singleton.between(space, space.Object, space.Object) == 0
    assert singleton.max_gen(space, c) == 5 + 3 + 2
    assert singleton.max_gen(space, space.new_instance(c)) == 10


def test_max_gen_bootstrap_integer(space):
    # SmallInteger < Integer < Number < Object
    assert singleton.max_gen(space, 42) == 10


def test_generation_stops_at_helix(space):
    before = len(space.classes())
    singleton.ruby_singleton_class(space, space.Object)
    # Object's level two plus the level-two singletons of the rest of the helix it needs
    made = len(space.classes()) - before
    assert 1 <= made <= singleton.max_gen(space, space.Object)
