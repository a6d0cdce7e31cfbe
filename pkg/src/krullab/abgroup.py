"""
Finitely generated abelian groups and the integer linear algebra behind them.

A group is stored in invariant-factor form Z^r + Z/n_1 + ... + Z/n_k with
n_i | n_{i+1}. Class groups are obtained as cokernels of integer matrices,
computed through the Smith normal form.

All values are immutable and all integers are Python ints, so there is no
overflow anywhere.

Functions:
    - group_combine, element_order: group law and orders
    - smith_normal_form: U * A * V = S with U, V unimodular
    - cokernel: Z^rows / im(A) together with its projection
"""

import math
from dataclasses import dataclass, field
from functools import reduce

from krullab.errors import ShapeMismatch, ValidationError


# -----------------------------------------------------------------------------
# Integer matrices
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row by row."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise ShapeMismatch(
                f"expected {self.rows}x{self.cols} entries, got {len(entries)} rows"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ShapeMismatch("columns have different lengths")
        return cls(rows, len(columns), tuple(
            tuple(c[i] for c in columns) for i in range(rows)
        ))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def transpose(self):
        return IntMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in other_cols)
            for row in self.entries
        ))

    def apply(self, vector):
        """Return A * v for an integer vector v."""
        if len(vector) != self.cols:
            raise ShapeMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def diagonal(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


# -----------------------------------------------------------------------------
# Groups and their elements
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/torsion_orders[0] + ... in invariant-factor form."""

    free_rank: int = 0
    torsion_orders: tuple = ()

    def __post_init__(self):
        orders = tuple(int(n) for n in self.torsion_orders)
        if self.free_rank < 0:
            raise ValidationError("free rank must be nonnegative", "free_rank")
        if any(n < 2 for n in orders):
            raise ValidationError("every torsion order must be at least 2", "torsion_orders")
        for a, b in zip(orders, orders[1:]):
            if b % a:
                raise ValidationError(f"{a} does not divide {b}", "torsion_orders")
        object.__setattr__(self, "torsion_orders", orders)

    @property
    def is_torsion(self):
        return self.free_rank == 0

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion_orders

    @property
    def order(self):
        """Number of elements, or math.inf for a group with free part."""
        return math.inf if self.free_rank else math.prod(self.torsion_orders)

    def identity(self):
        return GroupElement(self, (0,) * self.free_rank, (0,) * len(self.torsion_orders))

    def element(self, free=(), torsion=()):
        return GroupElement(self, tuple(free), tuple(torsion))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion_orders]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    """An element of an FgAbelianGroup with torsion parts reduced into [0, n-1]."""

    group: FgAbelianGroup
    free_part: tuple = ()
    torsion_part: tuple = ()

    def __post_init__(self):
        free = tuple(int(x) for x in self.free_part)
        torsion = tuple(int(x) for x in self.torsion_part)
        if len(free) != self.group.free_rank or len(torsion) != len(self.group.torsion_orders):
            raise ShapeMismatch(
                f"element ({list(free)}, {list(torsion)}) does not fit the group {self.group}"
            )
        torsion = tuple(t % n for t, n in zip(torsion, self.group.torsion_orders))
        object.__setattr__(self, "free_part", free)
        object.__setattr__(self, "torsion_part", torsion)

    def is_identity(self):
        return not any(self.free_part) and not any(self.torsion_part)

    def __add__(self, other):
        return group_combine(self, other, 1)

    def __sub__(self, other):
        return group_combine(self, other, -1)

    def __neg__(self):
        return group_combine(self.group.identity(), self, -1)

    def __mul__(self, n):
        return group_combine(self.group.identity(), self, n)

    __rmul__ = __mul__

    def __str__(self):
        parts = [str(x) for x in self.free_part] + [f"[{t}]" for t in self.torsion_part]
        if not parts:
            return "0"
        return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def group_combine(g, h, n=1):
    """
    Return g + n*h.

    Raises:
        ShapeMismatch: if g and h belong to different groups.
    """
    if g.group != h.group:
        raise ShapeMismatch(f"cannot combine elements of {g.group} and {h.group}")
    return GroupElement(
        g.group,
        tuple(a + n * b for a, b in zip(g.free_part, h.free_part)),
        tuple(a + n * b for a, b in zip(g.torsion_part, h.torsion_part)),
    )


def element_order(g):
    """Least n >= 1 with n*g = 0, or math.inf when the free part is nonzero."""
    if any(g.free_part):
        return math.inf
    return reduce(
        math.lcm,
        (n // math.gcd(t, n) for t, n in zip(g.torsion_part, g.group.torsion_orders)),
        1,
    )


# -----------------------------------------------------------------------------
# Smith normal form
# -----------------------------------------------------------------------------
def smith_normal_form(A):
    """
    Compute the Smith normal form of an integer matrix.

    Args:
        A (IntMatrix): any integer matrix.

    Returns:
        (U, S, V): IntMatrix triple with U * A * V = S, U and V unimodular, S
        diagonal with nonnegative entries d_1 | d_2 | ... (zeros last).
    """
    m, n = A.rows, A.cols
    S = [list(row) for row in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        for M in (S, U):
            M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(src, dst, k):
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [
                (abs(S[i][j]), i, j)
                for i in range(t, m) for j in range(t, n) if S[i][j]
            ]
            if not nonzero:
                return _snf_result(U, S, V, m, n)
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)

            # Reduce the pivot row and column; leftovers are smaller than the pivot
            cleared = True
            for i in range(t + 1, m):
                q = S[i][t] // S[t][t]
                if q:
                    add_row(t, i, -q)
                cleared = cleared and S[i][t] == 0
            for j in range(t + 1, n):
                q = S[t][j] // S[t][t]
                if q:
                    add_col(t, j, -q)
                cleared = cleared and S[t][j] == 0
            if not cleared:
                continue

            pivot = S[t][t]
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            add_row(offender, t, 1)

        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]

    return _snf_result(U, S, V, m, n)


def _snf_result(U, S, V, m, n):
    return IntMatrix(m, m, tuple(map(tuple, U))), IntMatrix(m, n, tuple(map(tuple, S))), \
        IntMatrix(n, n, tuple(map(tuple, V)))


# -----------------------------------------------------------------------------
# Cokernels
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class CokernelProjection:
    """The quotient map Z^rows -> Z^rows / im(A), as a callable."""

    group: FgAbelianGroup
    transform: IntMatrix
    free_rows: tuple
    torsion_rows: tuple
    signs: tuple = field(default=())

    def __call__(self, vector):
        y = self.transform.apply(tuple(vector))
        signs = self.signs or (1,) * len(self.free_rows)
        return GroupElement(
            self.group,
            tuple(s * y[i] for s, i in zip(signs, self.free_rows)),
            tuple(y[i] for i in self.torsion_rows),
        )


def cokernel(A):
    """
    Compute Z^rows / im(A) in invariant-factor form.

    The sign of every free coordinate is fixed so that the first unit vector
    with a nonzero image in that coordinate maps to a positive value.

    Returns:
        (FgAbelianGroup, CokernelProjection)
    """
    U, S, _ = smith_normal_form(A)
    diagonal = S.diagonal()
    torsion_rows, orders, free_rows = [], [], []
    for i in range(A.rows):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            free_rows.append(i)
        elif d > 1:
            torsion_rows.append(i)
            orders.append(d)

    group = FgAbelianGroup(len(free_rows), tuple(orders))
    signs = []
    for i in free_rows:
        first = next((x for x in U.entries[i] if x), 1)
        signs.append(1 if first > 0 else -1)
    projection = CokernelProjection(
        group, U, tuple(free_rows), tuple(torsion_rows), tuple(signs)
    )
    return group, projection
