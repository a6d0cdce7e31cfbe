"""
krullab: a factorization laboratory for Krull monoids and semigroup rings.

It models a Krull domain through its divisor theory (class group plus classes
of the height-one primes) and provides:
- class group arithmetic and cokernels (abgroup)
- atoms, factorizations and the bounded property deciders (krull)
- normal affine semigroups compiled into the divisor model (semigroup)
- exact polynomial computations over semigroup rings (polyring)
- a click command line over JSON instance files (cli)

Uses Flask's Config for settings, WTForms for validation and pandas for tables.
"""

from krullab.abgroup import FgAbelianGroup, GroupElement, IntMatrix, cokernel, smith_normal_form
from krullab.config import create_config
from krullab.errors import KrullabError
from krullab.krull import Divisor, KrullInstance, PrimeSlot
from krullab.semigroup import AffineSemigroup, compile_to_krull

__version__ = "2025.1"

__all__ = [
    "AffineSemigroup",
    "Divisor",
    "FgAbelianGroup",
    "GroupElement",
    "IntMatrix",
    "KrullInstance",
    "KrullabError",
    "PrimeSlot",
    "cokernel",
    "compile_to_krull",
    "create_config",
    "smith_normal_form",
]
