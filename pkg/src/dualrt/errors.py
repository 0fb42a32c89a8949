"""Exception hierarchy.

Two families live here.  ``ModelError`` subclasses signal misuse of the
object model itself (bad class definitions, forbidden singleton requests,
cyclic includes).  ``GuestError`` subclasses are the errors a running
program observes: they correspond to exceptions raised *inside* the guest
languages (``NoMethodError``, ``ArgumentError`` ...).
"""


class ModelError(Exception):
    """Base class for object-model misuse."""


class NameConflict(ModelError):
    pass


class NotInstantiable(ModelError):
    pass


class NotAMetaClass(ModelError):
    pass


class UndeclaredIvar(ModelError):
    pass


class ModelViolation(ModelError):
    pass


class SingletonForbidden(ModelError):
    pass


class CyclicInclude(ModelError):
    pass


class VisibilityUnsupported(ModelError):
    pass


class NoSuchMethod(ModelError):
    pass


class SelectorSyntaxError(ModelError):
    pass


class UnsupportedShape(SelectorSyntaxError):
    """A ``@ruby1:`` call shape the Smalltalk syntax cannot express."""


class GuestError(Exception):
    """An exception raised by guest code while a method runs."""


class NoMethodError(GuestError):
    """Raised by the default ``method_missing``.

    ``reason`` is one of ``"absent"``, ``"private"`` or ``"protected"``.
    """

    def __init__(self, message, selector=None, reason="absent"):
        super().__init__(message)
        self.selector = selector
        self.reason = reason


class MethodNotUnderstood(NoMethodError):
    """Smalltalk-side flavour, raised by ``doesNotUnderstand:``."""


class ArgumentError(GuestError):
    pass


class LocalJumpError(GuestError):
    pass


class GuestTypeError(GuestError):
    pass


class GuestNameError(GuestError):
    pass


class GuestIndexError(GuestError):
    pass
