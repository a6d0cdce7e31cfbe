"""
Unit tests for normal affine semigroups.

Covers:
- Validation of generators and facets
- Membership, divisor map and generated lattice
- Bounded saturation check and compilation into a Krull instance
- Additivity and injectivity of the divisor map, membership against the compiled monoid
"""

import itertools

import pytest

from krullab.abgroup import FgAbelianGroup
from krullab.errors import NotMember, NotSaturated, ShapeMismatch, ValidationError
from krullab.krull import Divisor, atoms, is_element
from krullab.semigroup import (
    AffineSemigroup,
    compile_to_krull,
    divisor_map,
    is_saturated,
    lattice_contains,
    membership,
)

NUMERICAL = AffineSemigroup(ambient_dim=1, generators=((2,), (3,)), facets=((1,),))
PLANE = AffineSemigroup(ambient_dim=2, generators=((1, 0), (0, 1)), facets=((1, 0), (0, 1)))
VERONESE = AffineSemigroup(
    ambient_dim=2, generators=((1, 0), (1, 1), (1, 2)), facets=((0, 1), (2, -1))
)


# -------------------- VALIDATION --------------------

@pytest.mark.parametrize(
    "kwargs, field",
    [
        ({"ambient_dim": 0, "generators": ((1,),), "facets": ((1,),)}, "ambient_dim"),
        ({"ambient_dim": 1, "generators": (), "facets": ((1,),)}, "generators"),
        ({"ambient_dim": 1, "generators": ((1,),), "facets": ()}, "facets"),
        ({"ambient_dim": 2, "generators": ((1,),), "facets": ((1, 0),)}, "generators"),
        ({"ambient_dim": 1, "generators": ((0,),), "facets": ((1,),)}, "generators"),
        ({"ambient_dim": 2, "generators": ((1, 2),), "facets": ((1, -1),)}, "facets"),
        ({"ambient_dim": 2, "generators": ((1, 0), (0, 1)), "facets": ((1, 0), (0, 1), (1, 1))},
         "facets"),
        ({"ambient_dim": 2, "generators": ((1, 0), (0, 1)), "facets": ((1, 0),)}, "facets"),
        ({"ambient_dim": 1, "generators": ((1,),), "facets": ((1,),), "facet_names": ("a", "b")},
         "facet_names"),
    ],
)
def test_invalid_semigroups(kwargs, field):
    """
    GIVEN a malformed semigroup description
    WHEN an AffineSemigroup is constructed
    THEN a ValidationError naming the offending field is raised
    """
    with pytest.raises(ValidationError) as excinfo:
        AffineSemigroup(**kwargs)
    assert excinfo.value.field == field


def test_default_facet_names():
    """
    GIVEN a semigroup without facet names
    WHEN it is constructed
    THEN the facets are named F1, F2, ...
    """
    assert PLANE.facet_names == ("F1", "F2")


# -------------------- MEMBERSHIP --------------------

def test_membership(s_xyz):
    """
    GIVEN the semigroup of x, y, zx, zy
    WHEN points are tested
    THEN exactly the points of the cone are members
    """
    assert membership(s_xyz, (1, 0, 1))
    assert membership(s_xyz, (1, 1, 2))
    assert not membership(s_xyz, (0, 0, 1))
    assert not membership(s_xyz, (-1, 1, 0))
    with pytest.raises(ShapeMismatch):
        membership(s_xyz, (1, 0))


def test_divisor_map(s_xyz):
    """
    GIVEN the generators x and zx
    WHEN their divisors are computed
    THEN they are the facet values (1,0,0,1) and (1,0,1,0)
    """
    assert divisor_map(s_xyz, (1, 0, 0)) == Divisor((1, 0, 0, 1))
    assert divisor_map(s_xyz, (1, 0, 1)) == Divisor((1, 0, 1, 0))
    with pytest.raises(NotMember):
        divisor_map(s_xyz, (0, 0, 1))


def test_lattice_contains():
    """
    GIVEN the semigroup generated by (2, 0) and (0, 1)
    WHEN lattice points are tested
    THEN only points with even first coordinate lie in the lattice
    """
    S = AffineSemigroup(ambient_dim=2, generators=((2, 0), (0, 1)), facets=((1, 0), (0, 1)))
    assert lattice_contains(S, (4, -3))
    assert not lattice_contains(S, (1, 0))


# -------------------- SATURATION AND COMPILATION --------------------

def test_is_saturated(s_xyz):
    """
    GIVEN a normal and a non-normal semigroup
    WHEN saturation is checked on the bounded box
    THEN the first gap of the numerical semigroup <2, 3> is 1
    """
    assert is_saturated(s_xyz) is None
    assert is_saturated(PLANE) is None
    assert is_saturated(NUMERICAL) == (1,)


def test_compile_to_krull(s_xyz, inst_xy):
    """
    GIVEN the semigroup of x, y, zx, zy
    WHEN it is compiled
    THEN the result is the four-slot instance with classes +1, +1, -1, -1
    """
    inst, embed = compile_to_krull(s_xyz)
    assert inst == inst_xy
    assert embed((0, 1, 1)) == Divisor((0, 1, 1, 0))
    assert all(is_element(inst, embed(g)) for g in s_xyz.generators)
    assert {a.exponents for a in atoms(inst)} == {embed(g).exponents for g in s_xyz.generators}


def test_compile_factorial_semigroup():
    """
    GIVEN N^2
    WHEN it is compiled
    THEN the class group is trivial
    """
    inst, _ = compile_to_krull(PLANE)
    assert inst.class_group == FgAbelianGroup()
    assert inst.names == ("F1", "F2")


def test_compile_rejects_unsaturated():
    """
    GIVEN the numerical semigroup <2, 3>
    WHEN it is compiled
    THEN NotSaturated carries the gap 1
    """
    with pytest.raises(NotSaturated) as excinfo:
        compile_to_krull(NUMERICAL)
    assert excinfo.value.witness == (1,)


def test_redundant_inequality_is_not_a_facet():
    """
    GIVEN N^2 with the extra inequality x + y >= 0
    WHEN the semigroup is constructed
    THEN the inequality is rejected instead of becoming a third prime slot
    """
    with pytest.raises(ValidationError) as excinfo:
        AffineSemigroup(ambient_dim=2, generators=((1, 0), (0, 1)), facets=((1, 0), (0, 1), (1, 1)))
    assert excinfo.value.field == "facets"
    assert "[1, 1]" in str(excinfo.value)


def test_compile_veronese():
    """
    GIVEN the semigroup generated by (1,0), (1,1), (1,2)
    WHEN it is compiled
    THEN the class group is Z/2
    """
    inst, _ = compile_to_krull(VERONESE)
    assert inst.class_group == FgAbelianGroup(0, (2,))


# -------------------- DIVISOR MAP ON A BOX --------------------

def _members(S, degree):
    points = itertools.product(range(degree + 1), repeat=S.ambient_dim)
    return [p for p in points if sum(p) <= degree and membership(S, p)]


def _facet_values(S, p):
    return Divisor(tuple(sum(a * b for a, b in zip(f, p)) for f in S.facets))


@pytest.mark.parametrize("name", ["xyz", "veronese"])
def test_divisor_map_is_additive_and_injective(name, s_xyz):
    """
    GIVEN every member point of degree at most 6
    WHEN divisors are taken
    THEN div(p + q) = div(p) + div(q) and distinct points have distinct divisors
    """
    S = {"xyz": s_xyz, "veronese": VERONESE}[name]
    points = _members(S, 6)
    images = {divisor_map(S, p) for p in points}
    assert len(images) == len(points)
    for p, q in itertools.product(points, repeat=2):
        total = tuple(a + b for a, b in zip(p, q))
        assert divisor_map(S, total) == divisor_map(S, p) + divisor_map(S, q)


@pytest.mark.parametrize("name", ["xyz", "veronese"])
def test_membership_matches_compiled_elements(name, s_xyz):
    """
    GIVEN every lattice point of the box [-2, 4]^d
    WHEN membership is compared with the compiled monoid
    THEN p is a member exactly when its facet values form an element
    """
    S = {"xyz": s_xyz, "veronese": VERONESE}[name]
    inst, _ = compile_to_krull(S)
    for p in itertools.product(range(-2, 5), repeat=S.ambient_dim):
        assert membership(S, p) == is_element(inst, _facet_values(S, p))
