import pytest

from dualrt.bridges import (
    ARGUMENT_ERROR,
    DEFAULT_FILLING,
    REAL,
    SPLAT_ADAPTER,
    MethodEntry,
    Signature,
    arity_error,
    bridge_role,
    family_keys,
    generate_bridges,
)
from dualrt.dispatch import define_method
from dualrt.errors import ModelViolation
from dualrt.objspace import RUBY


def roles(sig):
    real = MethodEntry("m", RUBY, sig, None)
    return {k: e.role for k, e in generate_bridges(real).items()}


def test_sixteen_for_small_arity():
    assert len(roles(Signature(2))) == 16
    assert len(roles(Signature(3, (("a", None),)))) == 17


def test_fetch_like_roles():
    table = roles(Signature(1, (("default", None),), False, True))
    assert table["m#0__"] == ARGUMENT_ERROR
    assert table["m#1__"] == DEFAULT_FILLING
    assert table["m#2_&"] == REAL
    assert table["m#2__"] == REAL
    assert table["m#3__"] == ARGUMENT_ERROR
    assert table["m#1*_"] == SPLAT_ADAPTER
    assert table["m#3*_"] == ARGUMENT_ERROR


def test_splat_roles():
    table = roles(Signature(1, (), True))
    assert table["m#1*_"] == REAL
    assert table["m#3__"] == DEFAULT_FILLING
    assert table["m#0*_"] == SPLAT_ADAPTER
    assert table["m#0__"] == ARGUMENT_ERROR


def test_bridge_role_direct():
    assert bridge_role(Signature(0), 0, False) == REAL
    assert bridge_role(Signature(0), 1, False) == ARGUMENT_ERROR


def test_arity_error_messages():
    assert str(arity_error(Signature(2), 3)) == "wrong number of arguments (3 for 2)"
    assert str(arity_error(Signature(1, (("a", None),)), 3)) == "wrong number of arguments (3 for 1..2)"
    assert str(arity_error(Signature(1, (), True), 0)) == "wrong number of arguments (0 for 1+)"


def test_redefinition_replaces_family(space):
    cls = space.new_class(None, "A", space.Object)
    define_method(space, cls, RUBY, "f", signature=Signature(5), body=lambda f: 1)
    assert len(family_keys(cls.mdicts[RUBY], "f")) == 17
    define_method(space, cls, RUBY, "f", signature=Signature(1), body=lambda f: 2)
    assert len(family_keys(cls.mdicts[RUBY], "f")) == 16
    assert "f#5__" not in cls.mdicts[RUBY]


def test_family_keys_exact_base(space):
    cls = space.new_class(None, "A", space.Object)
    define_method(space, cls, RUBY, "f", body=lambda f: 1)
    define_method(space, cls, RUBY, "f2", body=lambda f: 1)
    assert len(family_keys(cls.mdicts[RUBY], "f")) == 16


def test_full_selector_definition_needs_bootstrap(space):
    cls = space.new_class(None, "A", space.Object)
    with pytest.raises(ModelViolation):
        define_method(space, cls, RUBY, "f#1__", body=lambda f: 1)
