"""
Krull monoids through their divisor theory.

A KrullInstance lists finitely many height-one prime slots, each carrying a
divisor class. The monoid H of the domain (modulo units) is the set of
nonnegative exponent vectors whose class is zero. Everything in this module
works on those vectors:

    - divisibility, common factors and atoms (minimal nonzero elements)
    - factorizations, length sets and elasticity
    - bounded deciders for half-factoriality, the Z-property, condition (C) and
      the inverse-ideal splitting condition
    - the unique-square procedure and the Z-property witness built from it

All deciders are bounded: a verdict of ``Holds(bound)`` only covers elements up
to total degree ``bound``. Every choice of a "first" object uses the canonical
order of :func:`canonical_key` (total degree, then ascending lexicographic), so
results do not depend on iteration details.

Dependencies:
    - krullab.abgroup for class arithmetic
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from krullab.abgroup import FgAbelianGroup, GroupElement, element_order, group_combine
from krullab.errors import (
    EnumerationBudgetExceeded,
    NotAnElement,
    NotAtom,
    NotMultiPrime,
    NotPrimitive,
    ShapeMismatch,
    TorsionClassGroup,
    ValidationError,
    ZeroElement,
)

log = logging.getLogger(__name__)

DEFAULT_BOUND = 8
DEFAULT_BUDGET = 1_000_000


def canonical_key(v):
    """Graded lexicographic key: total degree first, then the exponent tuple."""
    v = tuple(v)
    return (sum(v), v)


def _leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _meet(u, v):
    return tuple(min(a, b) for a, b in zip(u, v))


# -----------------------------------------------------------------------------
# Domain types
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class Divisor:
    """Integer exponent vector over the prime slots of an instance."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    def __len__(self):
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    def _check(self, other):
        if len(other) != len(self):
            raise ShapeMismatch(f"divisors of length {len(self)} and {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Divisor(_add(self, other))

    def __sub__(self, other):
        self._check(other)
        return Divisor(_sub(self, other))

    def __neg__(self):
        return Divisor(tuple(-e for e in self))

    def __mul__(self, n):
        return Divisor(tuple(n * e for e in self))

    __rmul__ = __mul__

    def __le__(self, other):
        """Componentwise order (divisibility for elements)."""
        self._check(other)
        return _leq(self, other)

    def __ge__(self, other):
        self._check(other)
        return _leq(other, self)

    def meet(self, other):
        """Componentwise minimum."""
        self._check(other)
        return Divisor(_meet(self, other))

    @property
    def degree(self):
        return sum(self.exponents)

    @property
    def support(self):
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def is_zero(self):
        return not any(self.exponents)

    def is_nonnegative(self):
        return all(e >= 0 for e in self.exponents)

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.exponents) + ")"


# Elements of the monoid and of the quotient field are divisors with extra
# invariants checked by the operations that accept them.
MonoidElement = Divisor
FractionalElement = Divisor


@dataclass(frozen=True)
class PrimeSlot:
    """A height-one prime: a name and a divisor class."""

    name: str
    cls: GroupElement


@dataclass(frozen=True)
class KrullInstance:
    """Class group plus an ordered list of labelled prime slots."""

    class_group: FgAbelianGroup
    primes: tuple

    def __post_init__(self):
        primes = tuple(self.primes)
        if not primes:
            raise ValidationError("at least one prime slot is required", "primes")
        names = [p.name for p in primes]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValidationError(f"duplicate slot names {duplicates}", "primes")
        for p in primes:
            if p.cls.group != self.class_group:
                raise ValidationError(
                    f"class of {p.name} does not belong to {self.class_group}", "primes"
                )
        object.__setattr__(self, "primes", primes)

    @classmethod
    def from_classes(cls, group, classes, names=None):
        """Build an instance from class elements (or (free, torsion) pairs)."""
        slots = []
        for i, c in enumerate(classes):
            if not isinstance(c, GroupElement):
                free, torsion = c
                c = group.element(free, torsion)
            slots.append(PrimeSlot(names[i] if names else f"p{i + 1}", c))
        return cls(group, tuple(slots))

    @property
    def size(self):
        return len(self.primes)

    @property
    def names(self):
        return tuple(p.name for p in self.primes)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown prime slot {name!r}", "primes") from None

    def divisor(self, exponents):
        v = Divisor(exponents)
        if len(v) != self.size:
            raise ShapeMismatch(f"expected {self.size} exponents, got {len(v)}")
        return v

    def unit_vector(self, i):
        return Divisor(tuple(int(j == i) for j in range(self.size)))

    def zero(self):
        return Divisor((0,) * self.size)


@dataclass(frozen=True)
class Factorization:
    """Multiset of indices into the canonical atom list, in nondecreasing order."""

    indices: tuple

    @property
    def length(self):
        return len(self.indices)

    def product(self, atom_list):
        total = (0,) * len(atom_list[0])
        for i in self.indices:
            total = _add(total, atom_list[i])
        return Divisor(total)


@dataclass(frozen=True)
class LengthSet:
    lengths: tuple
    elasticity: Fraction
    factors_uniquely: bool


@dataclass(frozen=True)
class IdealGens:
    """Generators of a finitely generated ideal."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(Divisor(g) if not isinstance(g, Divisor) else g for g in self.generators)
        if not gens:
            raise ValidationError("an ideal needs at least one generator", "generators")
        if any(g.is_zero() for g in gens):
            raise ZeroElement("ideal generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    def __iter__(self):
        return iter(self.generators)


# -----------------------------------------------------------------------------
# Verdicts
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class Holds:
    """No counterexample up to the given degree bound."""

    bound: int
    holds = True


@dataclass(frozen=True)
class HfdCounterexample:
    element: Divisor
    shortest: int
    longest: int
    bound: int
    holds = False


@dataclass(frozen=True)
class ZCounterexample:
    """Nonzero nonunits with abc = de where ab shares no factor with d nor e."""

    a: Divisor
    b: Divisor
    c: Divisor
    d: Divisor
    e: Divisor
    bound: int
    holds = False

    @property
    def quintuple(self):
        return (self.a, self.b, self.c, self.d, self.e)


@dataclass(frozen=True)
class UniqueSquare:
    prime: str
    primes: tuple
    x: Divisor
    eta: int
    square_factorizations: tuple


@dataclass(frozen=True)
class ZWitness:
    """x^2 (yz)^(n+1) = y^(n+1) (x^2 z^(n+1)) as a Z-property counterexample."""

    prime: str
    x: Divisor
    y: Divisor
    z: Divisor
    n: int
    a: Divisor
    b: Divisor
    c: Divisor
    d: Divisor
    e: Divisor

    @property
    def quintuple(self):
        return (self.a, self.b, self.c, self.d, self.e)


@dataclass(frozen=True)
class ConditionC:
    gcd: Divisor
    alpha: Divisor = None

    @property
    def holds(self):
        return self.alpha is not None


@dataclass(frozen=True)
class Condition3:
    residues: tuple
    product_primitive: bool
    unsplittable: Divisor = None
    splittings: tuple = field(default=())

    @property
    def holds(self):
        return self.unsplittable is None


# -----------------------------------------------------------------------------
# Hilbert basis search
# -----------------------------------------------------------------------------
def hilbert_basis(rows, nvars, budget=DEFAULT_BUDGET):
    """
    Minimal nonzero solutions of A x = 0 over the nonnegative integers.

    Completion procedure: starting from the unit vectors, a non-solution x is
    only extended by e_j when <Ax, Ae_j> < 0, and candidates dominating a known
    solution are discarded. Terminates by Dickson's lemma.

    Args:
        rows: coefficient rows of A.
        nvars: number of unknowns.
        budget: maximum number of generated nodes.

    Raises:
        EnumerationBudgetExceeded
    """
    columns = [tuple(row[j] for row in rows) for j in range(nvars)]
    frontier = [(tuple(int(i == j) for i in range(nvars)), columns[j]) for j in range(nvars)]
    seen = {x for x, _ in frontier}
    basis = []
    nodes = len(frontier)

    while frontier:
        basis.extend(x for x, ax in frontier if not any(ax))
        successors = []
        for x, ax in frontier:
            if not any(ax):
                continue
            for j, col in enumerate(columns):
                if sum(a * c for a, c in zip(ax, col)) >= 0:
                    continue
                y = x[:j] + (x[j] + 1,) + x[j + 1:]
                if y in seen:
                    continue
                seen.add(y)
                if any(_leq(b, y) for b in basis):
                    continue
                nodes += 1
                if nodes > budget:
                    log.warning("Hilbert basis search stopped after %d nodes", nodes)
                    raise EnumerationBudgetExceeded(budget, "Hilbert basis search")
                successors.append((y, _add(ax, col)))
        frontier = successors

    log.debug("Hilbert basis: %d solutions, %d nodes", len(basis), nodes)
    return basis


def _class_rows(group, classes):
    """
    Linear system whose nonnegative solutions are the zero-class vectors.

    Free coordinates give homogeneous equations; each torsion coordinate of
    order n gets a slack unknown s with sum(t_i v_i) - n s = 0.
    """
    k = len(group.torsion_orders)
    rows = []
    for r in range(group.free_rank):
        rows.append([c.free_part[r] for c in classes] + [0] * k)
    for r, n in enumerate(group.torsion_orders):
        slack = [0] * k
        slack[r] = -n
        rows.append([c.torsion_part[r] for c in classes] + slack)
    return rows, len(classes) + k


# -----------------------------------------------------------------------------
# Cached engine per (instance, budget)
# -----------------------------------------------------------------------------
class _Monoid:
    """Caches atoms, length sets and element levels of one instance."""

    def __init__(self, inst, budget):
        self.inst = inst
        self.budget = budget
        self._free = [slot.cls.free_part for slot in inst.primes]
        self._torsion = [slot.cls.torsion_part for slot in inst.primes]
        self._orders = inst.class_group.torsion_orders
        self._has_atom = {}
        self._lengths = {(0,) * inst.size: frozenset({0})}
        self._levels = {0: [(0,) * inst.size]}

    def class_key(self, v):
        free = tuple(
            sum(e * f[r] for e, f in zip(v, self._free))
            for r in range(self.inst.class_group.free_rank)
        )
        torsion = tuple(
            sum(e * t[r] for e, t in zip(v, self._torsion)) % n
            for r, n in enumerate(self._orders)
        )
        return free, torsion

    def is_zero_class(self, v):
        free, torsion = self.class_key(v)
        return not any(free) and not any(torsion)

    def is_element(self, v):
        return all(e >= 0 for e in v) and self.is_zero_class(v)

    @cached_property
    def atoms(self):
        rows, nvars = _class_rows(self.inst.class_group, [p.cls for p in self.inst.primes])
        basis = hilbert_basis(rows, nvars, self.budget)
        found = {x[: self.inst.size] for x in basis}
        return tuple(sorted(found, key=canonical_key))

    @cached_property
    def atom_set(self):
        return frozenset(self.atoms)

    def has_atom_below(self, m):
        hit = self._has_atom.get(m)
        if hit is None:
            hit = any(_leq(a, m) for a in self.atoms)
            self._has_atom[m] = hit
        return hit

    def factorizations(self, h):
        candidates = [(i, a) for i, a in enumerate(self.atoms) if _leq(a, h)]
        found = []
        nodes = 0

        def walk(rest, start, chosen):
            nonlocal nodes
            if not any(rest):
                found.append(tuple(chosen))
                return
            for k in range(start, len(candidates)):
                i, a = candidates[k]
                if _leq(a, rest):
                    nodes += 1
                    if nodes > self.budget:
                        raise EnumerationBudgetExceeded(self.budget, "factorization search")
                    chosen.append(i)
                    walk(_sub(rest, a), k, chosen)
                    chosen.pop()

        walk(h, 0, [])
        return found

    def lengths(self, h):
        cached = self._lengths.get(h)
        if cached is not None:
            return cached
        result = set()
        for a in self.atoms:
            if _leq(a, h):
                result.update(n + 1 for n in self.lengths(_sub(h, a)))
        result = frozenset(result)
        self._lengths[h] = result
        return result

    def level(self, degree):
        """All elements of exactly this degree, in canonical order."""
        for d in range(1, degree + 1):
            if d in self._levels:
                continue
            found = set()
            for a in self.atoms:
                da = sum(a)
                if da <= d:
                    found.update(_add(h, a) for h in self._levels[d - da])
            if sum(len(v) for v in self._levels.values()) + len(found) > self.budget:
                raise EnumerationBudgetExceeded(self.budget, "element enumeration")
            self._levels[d] = sorted(found)
        return self._levels[degree]

    def elements_up_to(self, bound):
        return [h for d in range(1, bound + 1) for h in self.level(d)]


@lru_cache(maxsize=32)
def _monoid(inst, budget):
    return _Monoid(inst, budget)


class _Ticker:
    """Node counter of one search, shared by its nested loops."""

    def __init__(self, budget, what):
        self.budget = budget
        self.what = what
        self.nodes = 0

    def __call__(self):
        self.nodes += 1
        if self.nodes > self.budget:
            log.warning("%s stopped after %d nodes", self.what, self.nodes)
            raise EnumerationBudgetExceeded(self.budget, self.what)


# -----------------------------------------------------------------------------
# Element-level operations
# -----------------------------------------------------------------------------
def _conformable(inst, v):
    v = v if isinstance(v, Divisor) else Divisor(v)
    if len(v) != inst.size:
        raise ShapeMismatch(f"expected {inst.size} exponents, got {len(v)}")
    return v


def _require_element(inst, v, what="element", nonzero=True):
    v = _conformable(inst, v)
    if not is_element(inst, v):
        raise NotAnElement(f"{what} {v} is not an element of the monoid")
    if nonzero and v.is_zero():
        raise ZeroElement(f"{what} must be a nonunit")
    return v


def divisor_class(inst, v):
    """Sum of v_i * class(prime_i)."""
    v = _conformable(inst, v)
    total = inst.class_group.identity()
    for e, slot in zip(v, inst.primes):
        if e:
            total = group_combine(total, slot.cls, e)
    return total


def is_element(inst, v):
    """True iff v is nonnegative with zero class."""
    v = _conformable(inst, v)
    return v.is_nonnegative() and divisor_class(inst, v).is_identity()


def common_factor_exists(inst, u, v, budget=DEFAULT_BUDGET):
    """True iff some nonunit element divides both u and v."""
    u = _require_element(inst, u, "u", nonzero=False)
    v = _require_element(inst, v, "v", nonzero=False)
    return _monoid(inst, budget).has_atom_below(_meet(u, v))


def atoms(inst, budget=DEFAULT_BUDGET):
    """The atoms of the monoid, in canonical order."""
    return [Divisor(a) for a in _monoid(inst, budget).atoms]


def elements_up_to(inst, bound, budget=DEFAULT_BUDGET):
    """All nonzero elements of total degree <= bound, in canonical order."""
    return [Divisor(h) for h in _monoid(inst, budget).elements_up_to(bound)]


def davenport_bound(inst, budget=DEFAULT_BUDGET):
    """Largest atom degree; for a torsion class group this bounds every atom."""
    return max(sum(a) for a in _monoid(inst, budget).atoms)


def factorizations(inst, h, budget=DEFAULT_BUDGET):
    """All factorizations of h into atoms, each listed once."""
    h = _require_element(inst, h, "h")
    found = _monoid(inst, budget).factorizations(h.exponents)
    return [Factorization(f) for f in found]


def length_set(inst, h, budget=DEFAULT_BUDGET):
    """Set of factorization lengths of h, its elasticity, and uniqueness."""
    found = factorizations(inst, h, budget)
    lengths = tuple(sorted({f.length for f in found}))
    return LengthSet(
        lengths=lengths,
        elasticity=Fraction(lengths[-1], lengths[0]),
        factors_uniquely=len(found) == 1,
    )


def eta(inst, h):
    """Number of prime slots containing h."""
    h = _conformable(inst, h)
    if h.is_zero():
        raise ZeroElement("eta is undefined for the unit")
    return sum(1 for e in h if e > 0)


# -----------------------------------------------------------------------------
# Property deciders
# -----------------------------------------------------------------------------
def check_hfd(inst, bound=DEFAULT_BOUND, budget=DEFAULT_BUDGET):
    """
    Half-factoriality up to a degree bound.

    Returns:
        Holds(bound), or HfdCounterexample for the first element (canonical
        order) with two different factorization lengths.
    """
    if bound < 1:
        raise ValidationError("bound must be at least 1", "bound")
    monoid = _monoid(inst, budget)
    for d in range(1, bound + 1):
        for h in monoid.level(d):
            lengths = monoid.lengths(h)
            if len(lengths) > 1:
                log.info("element %s has lengths %s", h, sorted(lengths))
                return HfdCounterexample(Divisor(h), min(lengths), max(lengths), bound)
    return Holds(bound)


def check_z_property(inst, bound=DEFAULT_BOUND, budget=DEFAULT_BUDGET):
    """
    Z-property up to a degree bound.

    Searches quintuples of nonzero elements with abc = de and deg(abc) <= bound
    for one where ab shares no nonunit factor with d nor with e. Since the
    conditions are symmetric in (a, b) and in (d, e), only a <= b and d <= e
    (canonical order) are visited.

    Visiting order: deg(abc) ascending, then a, then b, then c, then d, each
    compared by canonical_key (degree first, then exponents lexicographically).
    This is not lexicographic order on the concatenated quintuple: a lighter
    a is visited first even when its exponent tuple is larger.

    Every (a, b, c) triple and every box point scanned for d counts as one
    node against the budget.

    Returns:
        Holds(bound), or the first ZCounterexample in the order above.

    Raises:
        EnumerationBudgetExceeded
    """
    if bound < 3:
        raise ValidationError("bound must be at least 3", "bound")
    monoid = _monoid(inst, budget)
    tick = _Ticker(budget, "Z-property search")
    ordered = monoid.elements_up_to(bound)
    elements = set(ordered)
    splits = {}
    violations = {}

    def split_points(T):
        points = splits.get(T)
        if points is None:
            points = []
            for d in itertools.product(*(range(t + 1) for t in T)):
                tick()
                if d in elements and d != T:
                    e = _sub(T, d)
                    if e in elements and canonical_key(d) <= canonical_key(e):
                        points.append(d)
            points.sort(key=canonical_key)
            splits[T] = points
        return points

    def first_violation(g, T):
        key = (g, T)
        if key not in violations:
            violations[key] = next(
                (
                    d for d in split_points(T)
                    if not monoid.has_atom_below(_meet(g, d))
                    and not monoid.has_atom_below(_meet(g, _sub(T, d)))
                ),
                None,
            )
        return violations[key]

    for total in range(3, bound + 1):
        for i, a in enumerate(ordered):
            da = sum(a)
            if da > total - 2:
                break
            for b in ordered[i:]:
                db = sum(b)
                if da + db > total - 1:
                    break
                g = _add(a, b)
                for c in monoid.level(total - da - db):
                    tick()
                    T = _add(g, c)
                    d = first_violation(g, T)
                    if d is not None:
                        log.info("Z-property fails at degree %d", total)
                        return ZCounterexample(
                            *(Divisor(v) for v in (a, b, c, d, _sub(T, d))), bound=bound
                        )
    log.debug("Z-property search: %d (ab, abc) pairs, %d nodes", len(violations), tick.nodes)
    return Holds(bound)


# -----------------------------------------------------------------------------
# Unique squares and Z-property witnesses
# -----------------------------------------------------------------------------
def find_unique_square(inst, bound=DEFAULT_BOUND, budget=DEFAULT_BUDGET):
    """
    Find a nontorsion prime P and an atom x in P whose square factors uniquely.

    Candidates are elements of degree <= bound lying in some nontorsion prime.
    The number of primes containing them (eta) is minimized; among the
    minimizers, those in the earliest possible nontorsion slot are kept, and
    their exponents are minimized slot by slot, starting at that slot and then
    going through the others in instance order.

    Returns:
        UniqueSquare, or None if no candidate within the bound qualifies.

    Raises:
        TorsionClassGroup: every slot class has finite order.
    """
    nontorsion = [
        i for i, slot in enumerate(inst.primes) if element_order(slot.cls) == math.inf
    ]
    if not nontorsion:
        raise TorsionClassGroup(f"every class of {inst.class_group} has finite order")

    monoid = _monoid(inst, budget)
    candidates = [
        h for h in monoid.elements_up_to(bound) if any(h[i] > 0 for i in nontorsion)
    ]
    if not candidates:
        return None
    minimal = min(sum(1 for e in h if e > 0) for h in candidates)
    pool = [h for h in candidates if sum(1 for e in h if e > 0) == minimal]

    for p in nontorsion:
        in_p = [h for h in pool if h[p] > 0]
        for x in sorted(in_p, key=lambda h: (h[p],) + h[:p] + h[p + 1:]):
            square = monoid.factorizations(_add(x, x))
            if x in monoid.atom_set and len(square) == 1:
                return UniqueSquare(
                    prime=inst.primes[p].name,
                    primes=tuple(inst.primes[i].name for i, e in enumerate(x) if e > 0),
                    x=Divisor(x),
                    eta=minimal,
                    square_factorizations=tuple(Factorization(f) for f in square),
                )
            log.warning("candidate %s does not have a unique square, skipping", x)
    return None


def _vectors_of_degree(size, degree, skip=None):
    slots = [i for i in range(size) if i != skip]
    for combo in itertools.combinations_with_replacement(slots, degree):
        v = [0] * size
        for i in combo:
            v[i] += 1
        yield tuple(v)


def z_witness(inst, x, bound=DEFAULT_BOUND, budget=DEFAULT_BUDGET):
    """
    Build the Z-property counterexample x^2 (yz)^(n+1) = y^(n+1) (x^2 z^(n+1)).

    P is the first slot containing x; y is an element with min(x, y) = e_P; z
    is a fractional element with z >= -e_P outside the monoid; n is the least
    positive integer with x z^n in H and x z^(n+1) not in H. Candidates are
    tried in canonical order until the identity and both coprimality tests
    verify.

    Returns:
        ZWitness, or None when the searches exhaust the bound.

    Raises:
        NotAtom, NotMultiPrime, EnumerationBudgetExceeded
    """
    x = _require_element(inst, x, "x")
    monoid = _monoid(inst, budget)
    if x.exponents not in monoid.atom_set:
        raise NotAtom(f"{x} is not an atom")
    if len(x.support) < 2:
        raise NotMultiPrime(f"{x} is supported on a single prime slot")

    p = x.support[0]
    ep = inst.unit_vector(p).exponents
    xs = x.exponents
    tick = _Ticker(budget, "z-witness search")
    ys = [y for y in monoid.elements_up_to(bound) if _meet(xs, y) == ep]
    target = monoid.class_key(ep)
    residues = []
    for degree in range(1, bound + 1):
        for u in _vectors_of_degree(inst.size, degree, skip=p):
            tick()
            if monoid.class_key(u) == target:
                residues.append(u)
    residues.sort(key=canonical_key)
    zs = [_sub(u, ep) for u in residues]
    log.debug("z-witness: %d y-candidates, %d z-candidates", len(ys), len(zs))

    for y in ys:
        for z in zs:
            tick()
            n = next(
                (
                    k for k in range(1, xs[p] + 1)
                    if monoid.is_element(_add(xs, _scale(k, z)))
                    and not monoid.is_element(_add(xs, _scale(k + 1, z)))
                ),
                None,
            )
            if n is None:
                continue
            a = b = xs
            c = _scale(n + 1, _add(y, z))
            d = _scale(n + 1, y)
            e = _add(_scale(2, xs), _scale(n + 1, z))
            if not all(monoid.is_element(v) and any(v) for v in (c, d, e)):
                continue
            if _add(_add(a, b), c) != _add(d, e):
                continue
            ab = _add(a, b)
            if monoid.has_atom_below(_meet(ab, d)) or monoid.has_atom_below(_meet(ab, e)):
                continue
            return ZWitness(
                prime=inst.primes[p].name,
                x=x, y=Divisor(y), z=Divisor(z), n=n,
                a=x, b=x, c=Divisor(c), d=Divisor(d), e=Divisor(e),
            )
    return None


def _scale(k, v):
    return tuple(k * e for e in v)


# -----------------------------------------------------------------------------
# Ideals
# -----------------------------------------------------------------------------
def ideal_gcd_and_primitivity(inst, ideal, budget=DEFAULT_BUDGET):
    """
    Divisorial content of an ideal and whether it is primitive.

    Returns:
        (m, primitive): m is the componentwise minimum of the generators;
        the ideal is primitive when no nonunit element lies below m.
    """
    gens = [_require_element(inst, g, "generator") for g in ideal]
    m = gens[0].exponents
    for g in gens[1:]:
        m = _meet(m, g)
    return Divisor(m), not _monoid(inst, budget).has_atom_below(m)


def check_condition_C(inst, ideal, budget=DEFAULT_BUDGET):
    """
    Condition (C): a primitive ideal I has an atom in its v-closure.

    Returns:
        ConditionC with the first atom alpha >= m(I), or alpha None.

    Raises:
        NotPrimitive
    """
    m, primitive = ideal_gcd_and_primitivity(inst, ideal, budget)
    if not primitive:
        raise NotPrimitive(f"ideal content {m} is divisible by a nonunit")
    alpha = next((a for a in _monoid(inst, budget).atoms if _leq(m, a)), None)
    return ConditionC(gcd=m, alpha=Divisor(alpha) if alpha else None)


def min_class_residues(inst, g, offset=None, budget=DEFAULT_BUDGET):
    """
    Minimal nonnegative vectors of class g, in canonical order.

    They are the minimal solutions with last coordinate 1 of the system for
    the instance extended by one slot of class -g. With ``offset`` M the
    vectors are returned translated by -M.
    """
    if g.group != inst.class_group:
        raise ShapeMismatch(f"class {g} does not belong to {inst.class_group}")
    classes = [p.cls for p in inst.primes] + [-g]
    rows, nvars = _class_rows(inst.class_group, classes)
    size = inst.size
    residues = sorted(
        (x[:size] for x in hilbert_basis(rows, nvars, budget) if x[size] == 1),
        key=canonical_key,
    )
    if offset is not None:
        offset = _conformable(inst, offset)
        residues = [_sub(v, offset) for v in residues]
    return [Divisor(v) for v in residues]


def check_condition_3(inst, left, right, budget=DEFAULT_BUDGET):
    """
    Inverse-ideal splitting: every element of (AB)^-1 is a product uv with
    u in A^-1 and v in B^-1.

    Works with the minimal zero-class w >= -(m_A + m_B); a larger w' = w + p
    splits as (u + p) + v once w does. A minimal w splits iff w + m_A + m_B
    contains a nonnegative sub-vector of the class of m_A.

    Returns:
        Condition3 with the first unsplittable w, or None.
    """
    m_left, _ = ideal_gcd_and_primitivity(inst, left, budget)
    m_right, _ = ideal_gcd_and_primitivity(inst, right, budget)
    monoid = _monoid(inst, budget)
    total = m_left + m_right
    residues = min_class_residues(inst, divisor_class(inst, total), budget=budget)
    wanted = monoid.class_key(m_left.exponents)
    splittings = []
    nodes = 0
    for v in residues:
        split = None
        for u in itertools.product(*(range(e + 1) for e in v)):
            nodes += 1
            if nodes > budget:
                raise EnumerationBudgetExceeded(budget, "splitting search")
            if monoid.class_key(u) == wanted:
                split = u
                break
        w = v - total
        if split is None:
            return Condition3(
                residues=tuple(r - total for r in residues),
                product_primitive=not monoid.has_atom_below(total.exponents),
                unsplittable=w,
            )
        u = Divisor(_sub(split, m_left.exponents))
        splittings.append((w, u, w - u))
    return Condition3(
        residues=tuple(r - total for r in residues),
        product_primitive=not monoid.has_atom_below(total.exponents),
        splittings=tuple(splittings),
    )
