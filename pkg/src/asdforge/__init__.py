"""Exact q-expansion arithmetic and checks of Atkin-Swinnerton-Dyer type
congruences for noncongruence cusp forms."""

__version__ = "0.1.0"

from .exactnum import INF, CycloElem, InputError, Rat, vp  # noqa: F401
from .qseries import IdentityFailure, QExp  # noqa: F401
