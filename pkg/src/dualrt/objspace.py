"""Object space: allocation, object headers, class descriptors, ivars.

Every heap object is an :class:`Obj` carrying an oop, a pointer to its
*virtual class* (the class used for dispatch) and two kinds of instance
variable storage: static slots laid out by its class, and a per-object
table of dynamic instance variables.  Classes are :class:`ClassObj`, an
``Obj`` subclass that additionally owns one method dictionary and one
superclass reference per environment.

Integers, strings, symbols, booleans, nil, lists and blocks are immediate
values.  They have no header; ``virtual_class`` maps them to the kernel
class registered for their Python type.
"""

import enum
from dataclasses import dataclass, field

from .errors import (
    ModelViolation,
    NameConflict,
    NotAMetaClass,
    NotInstantiable,
    UndeclaredIvar,
)


class Env(str, enum.Enum):
    SMALLTALK = "smalltalk"
    RUBY = "ruby"

    def other(self):
        return Env.RUBY if self is Env.SMALLTALK else Env.SMALLTALK

    def __str__(self):
        return self.value


SMALLTALK = Env.SMALLTALK
RUBY = Env.RUBY
ENVS = (SMALLTALK, RUBY)

STATIC_PREFIX = "_st_"


class Symbol:
    """Interned symbol; compare with ``is``."""

    __slots__ = ("name",)
    _table = {}

    def __new__(cls, name):
        sym = cls._table.get(name)
        if sym is None:
            sym = super().__new__(cls)
            sym.name = name
            cls._table[name] = sym
        return sym

    def __repr__(self):
        return ":" + self.name

    def __reduce__(self):
        return (Symbol, (self.name,))


@dataclass
class Message:
    """Reified failed Smalltalk send, handed to ``doesNotUnderstand:``."""

    selector: str
    arguments: list = field(default_factory=list)


class ClassFormat(enum.Flag):
    NONE = 0
    META = enum.auto()
    VIRTUAL = enum.auto()
    MODULE = enum.auto()
    INSTANTIABLE = enum.auto()


class Obj:
    __slots__ = ("oop", "vclass", "slots", "dyn", "__weakref__")

    def __init__(self, oop, vclass, nslots):
        self.oop = oop
        self.vclass = vclass
        self.slots = [None] * nslots
        self.dyn = {}

    def __repr__(self):
        return f"<Obj oop={self.oop}>"


class ClassObj(Obj):
    __slots__ = (
        "names",
        "format",
        "dest",
        "origin",
        "mdicts",
        "supers",
        "fallback_super",
        "layout",
        "hidden",
        "singletons_allowed",
    )

    def __init__(self, oop, fmt, superclass, envs=ENVS):
        super().__init__(oop, None, 0)
        self.names = {}
        self.format = fmt
        self.dest = None
        self.origin = None
        self.mdicts = {env: {} for env in envs}
        self.supers = {env: superclass for env in envs}
        self.fallback_super = superclass
        self.layout = ()
        self.hidden = frozenset()
        self.singletons_allowed = True

    @property
    def is_meta(self):
        return bool(self.format & ClassFormat.META)

    @property
    def is_virtual(self):
        return bool(self.format & ClassFormat.VIRTUAL)

    @property
    def is_module(self):
        return bool(self.format & ClassFormat.MODULE)

    @property
    def instantiable(self):
        return bool(self.format & ClassFormat.INSTANTIABLE)

    def name(self, env=None):
        if env is not None:
            return self.names.get(env)
        return self.names.get(SMALLTALK) or self.names.get(RUBY)

    def __repr__(self):
        label = self.name()
        if label is None:
            if self.is_meta:
                label = "meta"
            elif self.is_virtual:
                label = f"virtual<{self.origin.name()}>"
            else:
                label = "anon"
        return f"<ClassObj {label} oop={self.oop}>"


class ObjectSpace:
    """Arena owning every object created by one runtime."""

    def __init__(self):
        self.objects = []
        self.registries = {SMALLTALK: {}, RUBY: {}}
        self.prim_classes = {}
        self.bootstrapping = False
        # kernel classes, filled in by kernel.bootstrap()
        self.Object = None
        self.Behavior = None
        self.Module = None
        self.Metaclass3 = None
        self.Class = None

    # -- allocation ------------------------------------------------------

    @property
    def object_count(self):
        return len(self.objects)

    def classes(self):
        return [o for o in self.objects if isinstance(o, ClassObj)]

    def _alloc(self, vclass, nslots):
        obj = Obj(len(self.objects), vclass, nslots)
        self.objects.append(obj)
        return obj

    def _alloc_class(self, fmt, superclass, envs=ENVS):
        cls = ClassObj(len(self.objects), fmt, superclass, envs)
        self.objects.append(cls)
        return cls

    def _sync_class_slots(self, cls):
        """Lay out a class object's own static slots (format, destClass)."""
        layout = self.class_of(cls).layout
        if len(cls.slots) != len(layout):
            cls.slots = [None] * len(layout)
        for i, name in enumerate(layout):
            if name == "format":
                cls.slots[i] = cls.format.value
            elif name == "destClass":
                cls.slots[i] = cls.dest

    # -- registries --------------------------------------------------------

    def register(self, cls, env, name):
        table = self.registries[env]
        if name in table and table[name] is not cls:
            raise NameConflict(f"{name!r} already names a class in the {env} environment")
        table[name] = cls
        cls.names[env] = name

    def lookup_name(self, name, env):
        return self.registries[env].get(name)

    # -- classes and instances ---------------------------------------------

    def new_class(self, name_st, name_rb, superclass, static_ivars=(), hidden=(), ruby=True):
        """Create a class plus its Smalltalk meta class.

        ``hidden`` names static ivars that the Ruby environment must not see.
        ``ruby=False`` builds a class without a Ruby method dictionary; Ruby
        lookups then follow its fallback superclass.
        """
        self._check_superclass(superclass)
        for env, name in ((SMALLTALK, name_st), (RUBY, name_rb)):
            if name is not None and self.lookup_name(name, env) is not None:
                raise NameConflict(f"{name!r} already names a class in the {env} environment")
        static_ivars = tuple(static_ivars)
        if len(set(static_ivars)) != len(static_ivars):
            raise ModelViolation(f"duplicate static ivar names {static_ivars}")
        clash = set(static_ivars) & set(superclass.layout)
        if clash:
            raise ModelViolation(f"static ivars {sorted(clash)} already declared by a superclass")
        unknown_hidden = set(hidden) - set(static_ivars)
        if unknown_hidden:
            raise ModelViolation(f"cannot hide undeclared ivars {sorted(unknown_hidden)}")

        envs = ENVS if ruby else (SMALLTALK,)
        cls = self._alloc_class(ClassFormat.INSTANTIABLE, superclass, envs)
        cls.layout = superclass.layout + static_ivars
        cls.hidden = superclass.hidden | frozenset(hidden)
        cls.singletons_allowed = superclass.singletons_allowed
        meta = self._make_meta(cls, superclass.vclass)
        cls.vclass = meta
        if name_st is not None:
            self.register(cls, SMALLTALK, name_st)
        if name_rb is not None:
            self.register(cls, RUBY, name_rb)
        self._sync_class_slots(cls)
        return cls

    def _check_superclass(self, superclass):
        if not isinstance(superclass, ClassObj):
            raise ModelViolation(f"superclass {superclass!r} is not a class")
        if superclass.is_meta or superclass.is_virtual or superclass.is_module:
            raise ModelViolation(f"cannot subclass {superclass!r}")

    def _make_meta(self, dest, superclass):
        meta = self._alloc_class(ClassFormat.META, superclass)
        meta.vclass = self.Metaclass3
        meta.dest = dest
        meta.layout = superclass.layout if superclass is not None else ()
        meta.hidden = superclass.hidden if superclass is not None else frozenset()
        if self.Metaclass3 is not None:
            self._sync_class_slots(meta)
        return meta

    def new_instance(self, cls):
        if not isinstance(cls, ClassObj) or not cls.instantiable:
            raise NotInstantiable(f"{cls!r} cannot have instances")
        return self._alloc(cls, len(cls.layout))

    # -- class relations -----------------------------------------------------

    def virtual_class(self, obj):
        if isinstance(obj, Obj):
            return obj.vclass
        try:
            return self.prim_classes[type(obj)]
        except KeyError:
            raise ModelViolation(f"{obj!r} is not a value of this object space") from None

    def parent(self, cls, env):
        """Immediate chain parent in ``env`` (may be a virtual class)."""
        if env in cls.supers:
            return cls.supers[env]
        return cls.fallback_super

    def chain(self, cls, env):
        while cls is not None:
            yield cls
            cls = self.parent(cls, env)

    def class_of(self, obj):
        cls = self.virtual_class(obj)
        while cls.format & (ClassFormat.META | ClassFormat.VIRTUAL):
            cls = self.parent(cls, RUBY)
        return cls

    def destination_class(self, meta):
        if not isinstance(meta, ClassObj) or not meta.is_meta:
            raise NotAMetaClass(f"{meta!r} is not a meta class")
        return meta.dest

    def is_kind_of(self, obj, cls, env=RUBY):
        for c in self.chain(self.virtual_class(obj), env):
            if c is cls or (c.is_virtual and c.origin is cls):
                return True
        return False

    # -- instance variables --------------------------------------------------

    def _layout_of(self, obj):
        owner = self.class_of(obj)
        return owner.layout, owner.hidden

    def _static_index(self, obj, name, env):
        layout, hidden = self._layout_of(obj)
        if env is SMALLTALK:
            return layout.index(name) if name in layout else None
        if name.startswith(STATIC_PREFIX):
            base = name[len(STATIC_PREFIX):]
            if base in layout and base not in hidden:
                return layout.index(base)
        if name in layout and name not in hidden:
            return layout.index(name)
        return None

    def read_ivar(self, obj, name, env):
        if not isinstance(obj, Obj):
            if env is RUBY:
                return None
            raise UndeclaredIvar(f"{obj!r} has no instance variables")
        idx = self._static_index(obj, name, env)
        if idx is not None:
            return obj.slots[idx]
        if env is SMALLTALK:
            hint = " (use dynamicInstVarAt:)" if name in obj.dyn else ""
            raise UndeclaredIvar(f"{name!r} is not a static instance variable{hint}")
        return obj.dyn.get(name)

    def write_ivar(self, obj, name, env, value):
        if not isinstance(obj, Obj):
            raise ModelViolation(f"cannot store instance variables in immediate {obj!r}")
        idx = self._static_index(obj, name, env)
        if idx is not None:
            obj.slots[idx] = value
            return value
        if env is SMALLTALK:
            raise UndeclaredIvar(f"{name!r} is not a static instance variable (use dynamicInstVarAt:put:)")
        if name.startswith(STATIC_PREFIX):
            # the prefix only ever aliases a visible static slot
            raise ModelViolation(f"{name!r} does not name a visible static instance variable")
        obj.dyn[name] = value
        return value

    def dynamic_ivar_at(self, obj, name):
        if not isinstance(obj, Obj):
            return None
        return obj.dyn.get(name)

    def dynamic_ivar_at_put(self, obj, name, value):
        if not isinstance(obj, Obj):
            raise ModelViolation(f"cannot store instance variables in immediate {obj!r}")
        obj.dyn[name] = value
        return value

    def instance_variables(self, obj, env):
        if not isinstance(obj, Obj):
            return []
        layout, hidden = self._layout_of(obj)
        if env is SMALLTALK:
            return list(layout)
        names = [STATIC_PREFIX + n for n in layout if n not in hidden]
        names.extend(obj.dyn)
        return names
