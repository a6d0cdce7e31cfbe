"""
Normal affine semigroups and their divisor theory.

An AffineSemigroup is given by generators in N^d together with the facet
functionals of the cone they span. For a saturated (normal) semigroup, the
facet values of a point are its divisor in the semigroup ring: one height-one
prime per facet. compile_to_krull turns the semigroup into a KrullInstance
whose class group is the cokernel of the divisors of the generators.

Saturation is only verified on a bounded box, see is_saturated.

Dependencies:
    - krullab.abgroup (cokernel)
    - krullab.krull (KrullInstance, Divisor)
"""

import itertools
import logging
from dataclasses import dataclass
from functools import partial

from krullab.abgroup import IntMatrix, cokernel, smith_normal_form
from krullab.errors import NotMember, NotSaturated, ShapeMismatch, ValidationError
from krullab.krull import Divisor, KrullInstance, PrimeSlot, canonical_key

log = logging.getLogger(__name__)


def _evaluate(functional, point):
    return sum(a * b for a, b in zip(functional, point))


def _conformable(S, p):
    p = tuple(int(x) for x in p)
    if len(p) != S.ambient_dim:
        raise ShapeMismatch(f"expected a point of length {S.ambient_dim}, got {len(p)}")
    return p


def _rank(vectors):
    """Rank of the lattice spanned by the vectors."""
    if not vectors:
        return 0
    _, S, _ = smith_normal_form(IntMatrix.from_rows(vectors))
    return sum(1 for d in S.diagonal() if d)


@dataclass(frozen=True)
class AffineSemigroup:
    """Generators and facet functionals of a normal affine semigroup."""

    ambient_dim: int
    generators: tuple
    facets: tuple
    facet_names: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        facets = tuple(tuple(int(x) for x in f) for f in self.facets)
        if self.ambient_dim < 1:
            raise ValidationError("ambient dimension must be positive", "ambient_dim")
        if not gens:
            raise ValidationError("at least one generator is required", "generators")
        if not facets:
            raise ValidationError("at least one facet is required", "facets")
        for g in gens:
            if len(g) != self.ambient_dim:
                raise ValidationError(f"generator {list(g)} has the wrong length", "generators")
            if any(x < 0 for x in g) or not any(g):
                raise ValidationError(
                    f"generator {list(g)} must be nonzero and nonnegative", "generators"
                )
        for f in facets:
            if len(f) != self.ambient_dim:
                raise ValidationError(f"facet {list(f)} has the wrong length", "facets")
            for g in gens:
                if _evaluate(f, g) < 0:
                    raise ValidationError(
                        f"generator {list(g)} violates facet {list(f)}", "facets"
                    )
            # a facet is spanned by the generators it vanishes on
            if _rank([g for g in gens if _evaluate(f, g) == 0]) != self.ambient_dim - 1:
                raise ValidationError(
                    f"{list(f)} is not a facet of the cone spanned by the generators", "facets"
                )
        names = tuple(self.facet_names) or tuple(f"F{i + 1}" for i in range(len(facets)))
        if len(names) != len(facets):
            raise ValidationError("one name per facet is required", "facet_names")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "facet_names", names)


SemigroupElement = tuple

# F[x, y, zx, zy]: cone i >= 0, j >= 0, k >= 0, i + j - k >= 0
S_XYZ = AffineSemigroup(
    ambient_dim=3,
    generators=((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)),
    facets=((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)),
    facet_names=("q1", "q2", "q3", "q4"),
)


# -----------------------------------------------------------------------------
# Membership
# -----------------------------------------------------------------------------
def membership(S, p):
    """True iff p is nonnegative and satisfies every facet inequality."""
    p = _conformable(S, p)
    return all(x >= 0 for x in p) and all(_evaluate(f, p) >= 0 for f in S.facets)


def divisor_map(S, p):
    """Facet values of a member point, one slot per facet."""
    if not membership(S, p):
        raise NotMember(f"{list(p)} does not belong to the semigroup")
    return Divisor(tuple(_evaluate(f, p) for f in S.facets))


def _generator_lattice(S):
    return cokernel(IntMatrix.from_columns(S.generators, rows=S.ambient_dim))


def lattice_contains(S, p):
    """True iff p lies in the group generated by the generators."""
    p = _conformable(S, p)
    _, projection = _generator_lattice(S)
    return projection(p).is_identity()


def is_saturated(S, factor=2):
    """
    Bounded saturation check.

    Scans the box [0, factor * max generator coordinate]^d in canonical order
    for a point of the generated lattice that satisfies every facet inequality
    but is not an N-combination of the generators.

    Returns:
        The first such gap as a tuple, or None.
    """
    upper = [factor * max(g[k] for g in S.generators) for k in range(S.ambient_dim)]
    _, projection = _generator_lattice(S)
    reachable = {(0,) * S.ambient_dim: True}

    def in_span(p):
        if p not in reachable:
            reachable[p] = any(
                all(a >= b for a, b in zip(p, g))
                and in_span(tuple(a - b for a, b in zip(p, g)))
                for g in S.generators
            )
        return reachable[p]

    points = sorted(itertools.product(*(range(u + 1) for u in upper)), key=canonical_key)
    for p in points:
        if membership(S, p) and projection(p).is_identity() and not in_span(p):
            log.info("saturation gap at %s", list(p))
            return p
    log.debug("saturation verified on %d box points", len(points))
    return None


# -----------------------------------------------------------------------------
# Compilation into the divisor model
# -----------------------------------------------------------------------------
def compile_to_krull(S, factor=2):
    """
    Compile a saturated semigroup into a KrullInstance.

    Returns:
        (inst, embed): one prime slot per facet, class group the cokernel of
        the generator divisors; embed maps member points to monoid elements.

    Raises:
        NotSaturated: with the first gap found on the verification box.
    """
    gap = is_saturated(S, factor)
    if gap is not None:
        raise NotSaturated(gap)

    images = [divisor_map(S, g).exponents for g in S.generators]
    group, projection = cokernel(IntMatrix.from_columns(images, rows=len(S.facets)))
    slots = []
    for i, name in enumerate(S.facet_names):
        unit = tuple(int(j == i) for j in range(len(S.facets)))
        slots.append(PrimeSlot(name, projection(unit)))
    inst = KrullInstance(group, tuple(slots))
    log.debug("compiled semigroup: class group %s", group)
    return inst, partial(divisor_map, S)
