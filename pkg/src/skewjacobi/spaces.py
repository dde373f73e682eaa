"""The four nested spaces on each side of the correspondence."""
from __future__ import annotations

from enum import Enum


class Space(Enum):
    """Finest space tag; each member names the matching space on both sides.

    HOLOMORPHIC < WEAK < HARMONIC < MANAGEABLE as sets.
    """

    HOLOMORPHIC = ("J^sk", "M^+")
    WEAK = ("J^!sk", "M^!+")
    HARMONIC = ("J^sk,cusp", "H^+")
    MANAGEABLE = ("J^sk,harm", "H^!+")

    @property
    def jacobi_name(self) -> str:
        return self.value[0]

    @property
    def scalar_name(self) -> str:
        return self.value[1]
