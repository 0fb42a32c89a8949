"""dualrt: a dual-environment (Smalltalk/Ruby) object-model runtime."""

from .errors import *  # noqa: F401,F403
from .objspace import RUBY, SMALLTALK, Env, Symbol
from .runtime import Runtime

__version__ = "0.1.0"

__all__ = ["Runtime", "Env", "Symbol", "RUBY", "SMALLTALK"]
