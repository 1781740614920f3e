"""Finite and continuous gyrogroups: verification, structure and morphisms."""

from . import cayley, core, errors, finite, models, morphisms, perm, structure
from .cayley import *  # noqa: F401,F403
from .core import *  # noqa: F401,F403
from .errors import (
    CapabilityError,
    ConsistencyError,
    DomainError,
    GyroError,
    HomomorphismError,
    NotAGyrogroupError,
    PreconditionError,
    SingularityError,
    TableFormatError,
)
from .finite import *  # noqa: F401,F403
from .models import *  # noqa: F401,F403
from .morphisms import *  # noqa: F401,F403
from .perm import *  # noqa: F401,F403
from .structure import *  # noqa: F401,F403

__version__ = "0.1.0"
