"""
Sparse polynomials over semigroup rings.

A SparsePoly lives in F[x_1, ..., x_d][t]: ambient variables (x, y, z by
default) plus one auxiliary indeterminate t. Coefficients are exact: Fraction
over Q, ints mod p over GF(p).

Irreducibility is always relative to an AmbientFactorization certificate: a
factorization into irreducibles of the full polynomial ring, supplied by the
caller and checked by multiplying it back. Because the ambient ring is a UFD
with scalar units, the divisors of a polynomial in a subring F[S][t] are
sub-products of its certificate, so partitions of the certificate decide
reducibility in the subring.

Functions:
    - parse_poly, poly_mul, in_semigroup_ring
    - factorizations_in_subring, subring_factorizations
    - verify_z_failure_identity, constant_factor_condition
    - sum_of_squares_example: the F[x, y, zx, zy] pipeline for one coefficient field

Dependencies:
    - sympy (primality, square roots of -1 modulo p)
"""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import partial, reduce

from sympy import isprime, sqrt_mod

from krullab.errors import (
    BadCertificate,
    EnumerationBudgetExceeded,
    FieldMismatch,
    NotAnElement,
    NotMember,
    NotPrimitive,
    NotInSubring,
    ParseError,
    QuintupleMismatch,
    ShapeMismatch,
    ValidationError,
)
from krullab.krull import (
    DEFAULT_BUDGET,
    KrullInstance,
    common_factor_exists,
    ideal_gcd_and_primitivity,
    is_element,
)
from krullab.semigroup import S_XYZ, AffineSemigroup, compile_to_krull, divisor_map, membership

log = logging.getLogger(__name__)

AMBIENT = ("x", "y", "z")
AUX = "t"


# -----------------------------------------------------------------------------
# Coefficient fields
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class CoefficientField:
    """Q (characteristic 0) or GF(p) for a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not isprime(p):
            raise ValidationError(f"{p} is not prime", "field")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime_field(cls, p):
        return cls(int(p))

    @classmethod
    def from_tag(cls, tag):
        """'q' for Q, 'f<p>' for GF(p)."""
        tag = tag.strip().lower()
        if tag in ("q", "qq"):
            return cls.rationals()
        match = re.fullmatch(r"f(?:p)?(\d+)", tag)
        if not match:
            raise ValidationError(f"unknown field {tag!r}, expected q or f<p>", "field")
        return cls.prime_field(int(match.group(1)))

    @property
    def tag(self):
        return "q" if self.characteristic == 0 else f"f{self.characteristic}"

    def coerce(self, value):
        if self.characteristic == 0:
            return Fraction(value)
        value = Fraction(value)
        p = self.characteristic
        if value.denominator % p == 0:
            raise ValidationError(f"{value} has no image in GF({p})", "coefficient")
        return value.numerator * pow(value.denominator, -1, p) % p

    def inverse(self, a):
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


# -----------------------------------------------------------------------------
# Polynomials
# -----------------------------------------------------------------------------
def _print_key(item):
    (exps, tdeg), _ = item
    return (-tdeg, -sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class SparsePoly:
    """
    Polynomial in the ambient variables and t.

    ``terms`` is a tuple of ((ambient exponents, t-degree), coefficient) pairs
    in printing order (t-degree, then ambient degree, then lexicographic, all
    descending), with no zero coefficients.
    """

    field: CoefficientField
    variables: tuple
    terms: tuple

    @classmethod
    def from_terms(cls, field, variables, terms):
        variables = tuple(variables)
        collected = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for (exps, tdeg), coef in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ShapeMismatch(f"monomial {list(exps)} for variables {variables}")
            if tdeg < 0 or any(e < 0 for e in exps):
                raise ValidationError("exponents must be nonnegative", "terms")
            key = (exps, int(tdeg))
            collected[key] = field.coerce(collected.get(key, 0) + field.coerce(coef))
        nonzero = ((k, c) for k, c in collected.items() if c != 0)
        return cls(field, variables, tuple(sorted(nonzero, key=_print_key)))

    @classmethod
    def constant(cls, field, variables, value):
        return cls.from_terms(field, variables, {((0,) * len(variables), 0): value})

    @classmethod
    def monomial(cls, field, variables, exps, tdeg=0, coef=1):
        return cls.from_terms(field, variables, {(tuple(exps), tdeg): coef})

    def as_dict(self):
        return dict(self.terms)

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"cannot combine polynomials over {self.field} and {other.field}")
        if self.variables != other.variables:
            raise ShapeMismatch(f"variables {self.variables} and {other.variables} differ")

    def __add__(self, other):
        self._check(other)
        combined = self.as_dict()
        for k, c in other.terms:
            combined[k] = combined.get(k, 0) + c
        return SparsePoly.from_terms(self.field, self.variables, combined)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            return poly_mul(self, other)
        return self.scale(other)

    def scale(self, c):
        c = self.field.coerce(c)
        return SparsePoly.from_terms(self.field, self.variables, [(k, v * c) for k, v in self.terms])

    def is_zero(self):
        return not self.terms

    @property
    def t_degree(self):
        return max((tdeg for (_, tdeg), _ in self.terms), default=0)

    def is_scalar(self):
        return all(not any(exps) and tdeg == 0 for (exps, tdeg), _ in self.terms)

    def support(self):
        """Ambient exponent vectors with a nonzero coefficient."""
        return sorted({exps for (exps, _), _ in self.terms})

    def coefficient(self, tdeg):
        """The t^tdeg coefficient as a t-free polynomial."""
        return SparsePoly.from_terms(
            self.field, self.variables,
            [((exps, 0), c) for (exps, d), c in self.terms if d == tdeg],
        )

    def leading_coefficient(self):
        return self.terms[0][1] if self.terms else 0

    def sort_key(self):
        return (len(self.terms), tuple((k, str(c)) for k, c in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.variables + (AUX,)
        out = []
        for i, ((exps, tdeg), coef) in enumerate(self.terms):
            negative = self.field.characteristic == 0 and coef < 0
            magnitude = -coef if negative else coef
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps + (tdeg,)) if e
            ]
            if magnitude != 1 or not factors:
                factors.insert(0, str(magnitude))
            body = "*".join(factors)
            if i == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)


def poly_mul(p, q):
    """Exact distributive product."""
    p._check(q)
    product = {}
    for (e1, d1), c1 in p.terms:
        for (e2, d2), c2 in q.terms:
            key = (tuple(a + b for a, b in zip(e1, e2)), d1 + d2)
            product[key] = product.get(key, 0) + c1 * c2
    return SparsePoly.from_terms(p.field, p.variables, product)


def poly_product(polys, field, variables):
    return reduce(poly_mul, polys, SparsePoly.constant(field, variables, 1))


_TERM = re.compile(r"([+-]?)([^+-]+)")
_NUMBER = re.compile(r"\d+(?:/\d+)?")
_POWER = re.compile(r"([A-Za-z_]\w*)(?:\^(\d+))?")


def parse_poly(text, field=None, variables=AMBIENT):
    """
    Parse a literal such as ``x^2*t + 3/2*y^2 - z``.

    Terms are ``coef*v^a*...`` joined by ``+``/``-``; a missing coefficient
    means 1 and a missing exponent means 1. ``t`` is the auxiliary variable.

    Raises:
        ParseError: with the column of the offending token.
    """
    field = field or CoefficientField.rationals()
    variables = tuple(variables)
    names = variables + (AUX,)
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty polynomial", position=1)

    terms = []
    pos = 0
    for match in _TERM.finditer(compact):
        if match.start() != pos or (match.start() > 0 and not match.group(1)):
            raise ParseError(f"unexpected {compact[pos]!r}", position=pos + 1)
        sign = -1 if match.group(1) == "-" else 1
        coef = Fraction(sign)
        exps = [0] * len(names)
        column = match.start(2)
        for token in match.group(2).split("*"):
            if not token:
                raise ParseError("empty factor", position=column + 1)
            if _NUMBER.fullmatch(token):
                coef *= Fraction(token)
            else:
                power = _POWER.fullmatch(token)
                if not power or power.group(1) not in names:
                    raise ParseError(f"unknown factor {token!r}", position=column + 1)
                exps[names.index(power.group(1))] += int(power.group(2) or 1)
            column += len(token) + 1
        terms.append(((tuple(exps[:-1]), exps[-1]), coef))
        pos = match.end()
    if pos != len(compact):
        raise ParseError("trailing sign", position=pos + 1)
    return SparsePoly.from_terms(field, variables, terms)


# -----------------------------------------------------------------------------
# Certificates and subring factorizations
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class AmbientFactorization:
    """unit * product(factors) == poly, each factor irreducible in the full ring."""

    poly: SparsePoly
    unit: object
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        for f in factors:
            self.poly._check(f)
            if f.is_zero() or f.is_scalar():
                raise BadCertificate(f"certificate factor {f} is a unit")
        unit = self.poly.field.coerce(self.unit)
        if unit == 0:
            raise BadCertificate("certificate unit is zero")
        product = poly_product(factors, self.poly.field, self.poly.variables).scale(unit)
        if product != self.poly:
            raise BadCertificate(f"certificate multiplies to {product}, not {self.poly}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "unit", unit)

    @classmethod
    def certify(cls, poly, factors):
        """Build a certificate, solving for the unit from leading coefficients."""
        factors = tuple(factors)
        product = poly_product(factors, poly.field, poly.variables)
        if product.is_zero() or poly.is_zero():
            raise BadCertificate("cannot certify the zero polynomial")
        unit = poly.leading_coefficient() * poly.field.inverse(product.leading_coefficient())
        return cls(poly, unit, factors)


def in_semigroup_ring(p, S):
    """True iff every ambient monomial of p belongs to S."""
    if len(p.variables) != S.ambient_dim:
        raise ShapeMismatch(f"{len(p.variables)} variables for a semigroup in dimension {S.ambient_dim}")
    return all(membership(S, exps) for exps in p.support())


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]


class _CertificateBlocks:
    """Products, subring membership and subring irreducibility of factor sub-multisets."""

    def __init__(self, cert, S, budget):
        self.cert = cert
        self.S = S
        self.budget = budget
        self.keys = [f.sort_key() for f in cert.factors]
        self._products = {}
        self._irreducible = {}
        self.nodes = 0

    def canonical(self, block):
        return tuple(sorted(self.keys[i] for i in block))

    def product(self, block):
        key = self.canonical(block)
        if key not in self._products:
            poly = self.cert.poly
            self._products[key] = poly_product(
                [self.cert.factors[i] for i in block], poly.field, poly.variables
            )
        return self._products[key]

    def in_ring(self, block):
        return in_semigroup_ring(self.product(block), self.S)

    def irreducible(self, block):
        """True iff no split into two in-ring sub-products exists."""
        key = self.canonical(block)
        if key not in self._irreducible:
            block = sorted(block)
            first, rest = block[0], block[1:]
            verdict = True
            for r in range(len(rest)):
                for others in itertools.combinations(rest, r):
                    self._tick()
                    left = (first,) + others
                    right = [i for i in rest if i not in others]
                    if self.in_ring(left) and self.in_ring(right):
                        verdict = False
                        break
                if not verdict:
                    break
            self._irreducible[key] = verdict
        return self._irreducible[key]

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise EnumerationBudgetExceeded(self.budget, "certificate partition search")

    def partitions(self, minimum_blocks, irreducible_only):
        seen = set()
        found = []
        for partition in _set_partitions(list(range(len(self.cert.factors)))):
            self._tick()
            if len(partition) < minimum_blocks:
                continue
            if not all(self.in_ring(b) for b in partition):
                continue
            if irreducible_only and not all(self.irreducible(b) for b in partition):
                continue
            key = tuple(sorted(self.canonical(b) for b in partition))
            if key in seen:
                continue
            seen.add(key)
            found.append(self._normalize(partition))
        found.sort(key=lambda blocks: (len(blocks), [b.sort_key() for b in blocks]))
        return found

    def _normalize(self, partition):
        blocks = sorted((self.product(b) for b in partition), key=SparsePoly.sort_key)
        blocks[0] = blocks[0].scale(self.cert.unit)
        return tuple(blocks)


def _check_certificate(p, cert, S):
    if cert.poly != p:
        raise BadCertificate(f"certificate is for {cert.poly}, not {p}")
    if not in_semigroup_ring(p, S):
        raise NotInSubring(f"{p} has a monomial outside the semigroup")


def factorizations_in_subring(p, cert, S, budget=DEFAULT_BUDGET):
    """
    Nontrivial factorizations of p in F[S][t] read off the certificate.

    Returns:
        Partitions of the certificate into at least two blocks whose products
        all lie in the subring, as tuples of block products with the unit
        absorbed into the first block. Empty means p is irreducible in F[S][t].
    """
    _check_certificate(p, cert, S)
    return _CertificateBlocks(cert, S, budget).partitions(2, irreducible_only=False)


def subring_factorizations(p, cert, S, budget=DEFAULT_BUDGET):
    """Factorizations of p into irreducibles of F[S][t]."""
    _check_certificate(p, cert, S)
    return _CertificateBlocks(cert, S, budget).partitions(1, irreducible_only=True)


# -----------------------------------------------------------------------------
# The identity fg = ab*h and the constant factor condition
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class VerifiedIdentity:
    """f = ab*t + d, g = ab*t + e, h = ab*t^2 + (d + e)*t + c with fg = ab*h."""

    f: SparsePoly
    g: SparsePoly
    h: SparsePoly
    ab: SparsePoly
    product: SparsePoly
    f_primitive: bool
    g_primitive: bool


def verify_z_failure_identity(source, a, b, c, d, e, field=None, budget=DEFAULT_BUDGET):
    """
    Build and check the polynomials attached to a quintuple with abc = de.

    ``source`` is a KrullInstance (vectors are divisors, monomials are in the
    slot names) or an AffineSemigroup (vectors are points of S, monomials are
    in the ambient variables).

    Raises:
        QuintupleMismatch: abc != de, or an entry is the unit.
    """
    field = field or CoefficientField.rationals()
    quintuple = [tuple(int(x) for x in v) for v in (a, b, c, d, e)]
    if isinstance(source, AffineSemigroup):
        inst, embed = compile_to_krull(source)
        variables = AMBIENT[: source.ambient_dim] if source.ambient_dim <= 3 else tuple(
            f"x{i + 1}" for i in range(source.ambient_dim)
        )
        for v in quintuple:
            if not membership(source, v):
                raise NotMember(f"{list(v)} does not belong to the semigroup")
        divisors = [embed(v) for v in quintuple]
    elif isinstance(source, KrullInstance):
        inst = source
        variables = inst.names
        divisors = [inst.divisor(v) for v in quintuple]
        for v in divisors:
            if not is_element(inst, v):
                raise NotAnElement(f"{v} is not an element of the monoid")
    else:
        raise ValidationError("expected a Krull instance or an affine semigroup", "instance")

    if any(not any(v) for v in quintuple):
        raise QuintupleMismatch("every entry of the quintuple must be a nonunit")
    va, vb, vc, vd, ve = quintuple
    if tuple(x + y + z for x, y, z in zip(va, vb, vc)) != tuple(x + y for x, y in zip(vd, ve)):
        raise QuintupleMismatch("abc differs from de")

    def mono(v, tdeg=0):
        return SparsePoly.monomial(field, variables, v, tdeg)

    ab_exps = tuple(x + y for x, y in zip(va, vb))
    ab = mono(ab_exps)
    f = mono(ab_exps, 1) + mono(vd)
    g = mono(ab_exps, 1) + mono(ve)
    h = mono(ab_exps, 2) + mono(vd, 1) + mono(ve, 1) + mono(vc)
    product = poly_mul(f, g)
    if product != poly_mul(ab, h):
        raise QuintupleMismatch("fg differs from ab*h")

    div_a, div_b, _, div_d, div_e = divisors
    div_ab = div_a + div_b
    return VerifiedIdentity(
        f=f, g=g, h=h, ab=ab, product=product,
        f_primitive=not common_factor_exists(inst, div_ab, div_d, budget),
        g_primitive=not common_factor_exists(inst, div_ab, div_e, budget),
    )


def is_primitive(p, S, budget=DEFAULT_BUDGET):
    """
    Monomial content criterion.

    The content divisor is the componentwise minimum of the divisors of the
    monomials of p; p is primitive when no nonunit of S lies below it.
    """
    if not in_semigroup_ring(p, S):
        raise NotInSubring(f"{p} has a monomial outside the semigroup")
    monomials = [divisor_map(S, exps) for exps in p.support()]
    if any(m.is_zero() for m in monomials):
        return True
    inst, _ = compile_to_krull(S)
    _, primitive = ideal_gcd_and_primitivity(inst, monomials, budget)
    return primitive


@dataclass(frozen=True)
class ConstantFactorCondition:
    """Fails when fg has a constant divisor c that is neither a unit nor irreducible."""

    factor: SparsePoly = None
    cofactor: SparsePoly = None

    @property
    def holds(self):
        return self.factor is None


def constant_factor_condition(f, g, cert, S, budget=DEFAULT_BUDGET):
    """
    Check the constant divisors of fg in F[S][t].

    Every sub-multiset of the constant (t-free) certificate factors whose
    product c lies in the subring and leaves fg/c in the subring is tested;
    the first reducible c is returned.

    Raises:
        NotPrimitive, BadCertificate
    """
    for name, poly in (("f", f), ("g", g)):
        if poly.t_degree != 1:
            raise ValidationError("must have degree one in t", name)
        if not is_primitive(poly, S, budget):
            raise NotPrimitive(f"{name} = {poly} is not primitive")
    fg = poly_mul(f, g)
    if cert.poly != fg:
        raise BadCertificate(f"certificate is for {cert.poly}, not {fg}")

    blocks = _CertificateBlocks(cert, S, budget)
    constants = [i for i, factor in enumerate(cert.factors) if factor.t_degree == 0]
    everything = range(len(cert.factors))
    seen = set()
    for size in range(1, len(constants) + 1):
        for subset in itertools.combinations(constants, size):
            key = blocks.canonical(subset)
            if key in seen:
                continue
            seen.add(key)
            rest = [i for i in everything if i not in subset]
            if not blocks.in_ring(subset) or (rest and not blocks.in_ring(rest)):
                continue
            if not blocks.irreducible(subset):
                c = blocks.product(subset)
                log.info("constant factor %s of fg is reducible", c)
                cofactor = blocks.product(rest).scale(cert.unit) if rest else None
                return ConstantFactorCondition(factor=c, cofactor=cofactor)
    return ConstantFactorCondition()


# -----------------------------------------------------------------------------
# F[x, y, zx, zy]
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class SumOfSquaresReport:
    field: CoefficientField
    lhs: SparsePoly
    identity_holds: bool
    certificate: AmbientFactorization
    factorizations: tuple
    lengths: tuple
    fg_identity: VerifiedIdentity
    constant_factor: ConstantFactorCondition
    notes: tuple = ()

    @property
    def hfd_fails(self):
        return len(self.lengths) > 1


def _linear_factors(field):
    """Certificate factors of x^2 + y^2 and 1 + z^2 over ``field``."""
    P = partial(parse_poly, field=field)
    p = field.characteristic
    if p == 2:
        return [P("x + y"), P("x + y")], [P("1 + z"), P("1 + z")]
    if p % 4 == 1:
        i = sqrt_mod(-1, p)
        return (
            [P(f"x + {i}*y"), P(f"x + {p - i}*y")],
            [P(f"1 + {i}*z"), P(f"1 + {p - i}*z")],
        )
    return [P("x^2 + y^2")], [P("1 + z^2")]


def sum_of_squares_example(field=None, S=S_XYZ, budget=DEFAULT_BUDGET):
    """
    (x^2 + y^2)(x^2 + z^2*x^2) = x*x*(x^2 + y^2 + z^2*x^2 + z^2*y^2) in F[x, y, zx, zy].

    Over Q (and GF(p) with p = 3 mod 4) the two sides are factorizations into
    irreducibles of lengths 2 and 3, so the ring is not half-factorial. When -1
    is a square (characteristic 2 or p = 1 mod 4) x^2 + y^2 splits and the
    discrepancy disappears.

    Also checks the degree-one pair f = x^2*t + y^2, g = x^2*t + z^2*x^2, whose
    product is x^2*(x^2*t^2 + (y^2 + z^2*x^2)*t + z^2*y^2), against the constant
    factor condition.
    """
    field = field or CoefficientField.rationals()
    P = partial(parse_poly, field=field)
    x = P("x")
    sum_of_squares = P("x^2 + y^2")
    lhs = poly_mul(sum_of_squares, P("x^2 + z^2*x^2"))
    rhs = poly_product([x, x, P("x^2 + y^2 + z^2*x^2 + z^2*y^2")], field, AMBIENT)
    identity_holds = lhs == rhs

    squares, one_plus_z2 = _linear_factors(field)
    cert = AmbientFactorization.certify(lhs, [x, x] + squares + one_plus_z2)
    found = subring_factorizations(lhs, cert, S, budget)
    lengths = tuple(sorted({len(blocks) for blocks in found}))

    # x^2 (x^2 t^2 + (y^2 + z^2 x^2) t + z^2 y^2); the t^2 term is required
    identity = verify_z_failure_identity(
        S, (1, 0, 0), (1, 0, 0), (0, 2, 2), (0, 2, 0), (2, 0, 2), field, budget
    )
    fg_cert = AmbientFactorization.certify(
        identity.product, [identity.f, x, x, P("t + z^2")]
    )
    condition = constant_factor_condition(identity.f, identity.g, fg_cert, S, budget)

    notes = []
    if len(squares) > 1:
        notes.append(f"x^2 + y^2 = ({squares[0]})*({squares[1]}) over {field}")
    log.info("sum of squares over %s: lengths %s", field, list(lengths))
    return SumOfSquaresReport(
        field=field,
        lhs=lhs,
        identity_holds=identity_holds,
        certificate=cert,
        factorizations=tuple(found),
        lengths=lengths,
        fg_identity=identity,
        constant_factor=condition,
        notes=tuple(notes),
    )
