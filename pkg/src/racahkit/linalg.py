"""Dense exact matrices over :class:`ParamScalar` and Gaussian elimination."""

from __future__ import annotations

from typing import Sequence

from .exactcore import ONE, ZERO, LaurentPoly, ParamScalar, scalar


class SingularSystem(ArithmeticError):
    pass


class PMatrix:
    """Small dense matrix with exact parametric entries.

    ``*`` is the matrix product so that operator identities written for
    :class:`~racahkit.weyl.WeylOp` can be re-run on matrices unchanged.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        self.data = [[scalar(c) for c in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PMatrix":
        m = object.__new__(cls)
        m.data = [[ZERO] * cols for _ in range(rows)]
        m.rows, m.cols = rows, cols
        return m

    @classmethod
    def identity(cls, size: int, c=1) -> "PMatrix":
        m = cls.zeros(size, size)
        c = scalar(c)
        for i in range(size):
            m.data[i][i] = c
        return m

    def copy(self) -> "PMatrix":
        m = PMatrix.zeros(self.rows, self.cols)
        m.data = [list(r) for r in self.data]
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j) -> list:
        return [row[j] for row in self.data]

    def is_zero(self) -> bool:
        return all(not c for row in self.data for c in row)

    def __eq__(self, other):
        if not isinstance(other, PMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def _coerce(self, other):
        if isinstance(other, PMatrix):
            self._same_shape(other)
            return other
        if self.rows != self.cols:
            raise ValueError("scalar shift of a non-square matrix")
        return PMatrix.identity(self.rows, other)

    def __add__(self, other):
        other = self._coerce(other)
        m = PMatrix.zeros(self.rows, self.cols)
        m.data = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        return m

    __radd__ = __add__

    def __neg__(self):
        m = PMatrix.zeros(self.rows, self.cols)
        m.data = [[-a for a in row] for row in self.data]
        return m

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "PMatrix":
        c = scalar(c)
        m = PMatrix.zeros(self.rows, self.cols)
        m.data = [[a * c for a in row] for row in self.data]
        return m

    def __mul__(self, other):
        if not isinstance(other, PMatrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        m = PMatrix.zeros(self.rows, other.cols)
        cols = [other.column(j) for j in range(other.cols)]
        for i, row in enumerate(self.data):
            nz = [(t, a) for t, a in enumerate(row) if a]
            out = m.data[i]
            for j, col in enumerate(cols):
                acc = ZERO
                for t, a in nz:
                    b = col[t]
                    if b:
                        acc = acc + a * b
                out[j] = acc
        return m

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, m: int):
        out = PMatrix.identity(self.rows)
        for _ in range(m):
            out = out * self
        return out

    def map(self, fn) -> "PMatrix":
        m = PMatrix.zeros(self.rows, self.cols)
        m.data = [[scalar(fn(a)) for a in row] for row in self.data]
        return m

    def map_coefficients(self, fn) -> "PMatrix":
        return self.map(fn)

    def trace(self) -> ParamScalar:
        acc = ZERO
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    def __repr__(self):
        return f"PMatrix({self.rows}x{self.cols})"

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(c) for c in row) + "]" for row in self.data) + "]"


def _pivot_cost(c: ParamScalar):
    if c.is_constant():
        return (0, 0)
    return (1, len(c.num) + len(c.den))


def row_reduce(m: PMatrix):
    """Reduced row echelon form; returns (rref matrix, pivot columns)."""
    a = [list(r) for r in m.data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        candidates = [(i, a[i][c]) for i in range(r, rows) if a[i][c]]
        if not candidates:
            continue
        i, p = min(candidates, key=lambda t: _pivot_cost(t[1]))
        a[r], a[i] = a[i], a[r]
        inv = ONE / p
        a[r] = [x * inv if x else x for x in a[r]]
        for i2 in range(rows):
            if i2 != r and a[i2][c]:
                f = a[i2][c]
                a[i2] = [x - f * y if y else x for x, y in zip(a[i2], a[r])]
        pivots.append(c)
        r += 1
    out = PMatrix.zeros(rows, cols)
    out.data = a
    return out, pivots


def rank(m: PMatrix) -> int:
    return len(row_reduce(m)[1])


def solve(m: PMatrix, rhs: Sequence) -> list[ParamScalar]:
    """Unique solution of ``m x = rhs``; raises :class:`SingularSystem` otherwise."""
    aug = PMatrix([list(row) + [b] for row, b in zip(m.data, rhs)])
    red, pivots = row_reduce(aug)
    if m.cols in pivots:
        raise SingularSystem("inconsistent linear system")
    if len(pivots) != m.cols:
        raise SingularSystem("linear system has no unique solution")
    return [red.data[i][m.cols] for i in range(m.cols)]


def nullspace(m: PMatrix) -> list[list[ParamScalar]]:
    red, pivots = row_reduce(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red.data[r][f]
        basis.append(v)
    return basis


def coordinates(p: LaurentPoly, monomials: Sequence[tuple]) -> list[ParamScalar]:
    """Coefficient vector of ``p`` against an explicit monomial list."""
    index = {e: i for i, e in enumerate(monomials)}
    vec = [ZERO] * len(monomials)
    for e, c in p.terms.items():
        if e not in index:
            raise ValueError(f"monomial {e} outside the given basis")
        vec[index[e]] = c
    return vec


def action_matrix(op, monomials: Sequence[tuple], variables, target=None) -> PMatrix:
    """Matrix of a linear map on the span of ``monomials`` (columns = images)."""
    from .weyl import weyl_apply

    target = monomials if target is None else target
    m = PMatrix.zeros(len(target), len(monomials))
    for j, e in enumerate(monomials):
        img = weyl_apply(op, LaurentPoly.monomial(variables, e))
        for i, c in enumerate(coordinates(img, target)):
            m.data[i][j] = c
    return m
