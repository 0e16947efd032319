"""Dense matrices over an exact field."""

from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

from ..errors import ParseError
from .poly import QQ


class Matrix:
    """Dense row-major matrix whose entries live in ``field``."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: Sequence[Sequence], field=QQ):
        entries = tuple(tuple(field(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrices must have at least one row and one column")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise ValueError("ragged rows")
        self.entries = entries
        self.rows = len(entries)
        self.cols = width
        self.field = field

    def _new(self, entries) -> Matrix:
        return type(self)(entries, self.field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> Matrix:
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> Matrix:
        return cls([[field.zero] * cols for _ in range(rows)], field)

    def identity_like(self) -> Matrix:
        return type(self).identity(self.rows, self.field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def tolist(self) -> list[list]:
        return [list(row) for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return self._new([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return self._new([[-a for a in row] for row in self.entries])

    def __mul__(self, other) -> Matrix:
        if not isinstance(other, Matrix):
            return self._new([[a * other for a in row] for row in self.entries])
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = list(zip(*other.entries))
        out = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a != zero]
            out.append([sum((a * col[k] for k, a in nz), zero) for col in cols])
        return self._new(out)

    def __rmul__(self, scalar) -> Matrix:
        return self._new([[scalar * a for a in row] for row in self.entries])

    def __pow__(self, exponent: int) -> Matrix:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.identity_like()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def transpose(self) -> Matrix:
        return self._new(list(zip(*self.entries)))

    def kron(self, other: Matrix) -> Matrix:
        """Kronecker product: entry ``a_ij`` replaced by the block ``a_ij * other``."""
        out = []
        for row in self.entries:
            for orow in other.entries:
                out.append([a * b for a in row for b in orow])
        return self._new(out)

    def direct_sum(self, other: Matrix) -> Matrix:
        z = self.field.zero
        top = [list(r) + [z] * other.cols for r in self.entries]
        bottom = [[z] * self.cols + list(r) for r in other.entries]
        return self._new(top + bottom)

    def _echelon(self):
        """Row echelon form by Gaussian elimination; returns (rows, pivot columns)."""
        zero = self.field.zero
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c] != zero), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = self.field.one / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != zero:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def inverse(self) -> Matrix:
        if not self.is_square():
            raise ValueError("only square matrices can be inverted")
        n = self.rows
        aug = self._new([list(r) + list(e) for r, e in zip(self.entries, self.identity_like().entries)])
        m, pivots = aug._echelon()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return self._new([row[n:] for row in m[:n]])

    def __repr__(self):
        return f"{type(self).__name__}({self.rows}x{self.cols})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


class RationalMatrix(Matrix):
    """Matrix over the rationals, with fraction-free rank and a text format.

    Text format: first line ``"rows cols"``, then the entries in row-major order
    written as integers or ``p/q``.
    """

    __slots__ = ()

    def __init__(self, entries, field=QQ):
        if field is not QQ:
            raise ValueError("RationalMatrix entries must be rationals")
        super().__init__(entries, QQ)

    @classmethod
    def identity(cls, n: int, field=QQ) -> RationalMatrix:
        return super().identity(n, QQ)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> RationalMatrix:
        return super().zeros(rows, cols, QQ)

    def denominator_lcm(self) -> int:
        return math.lcm(*(x.denominator for row in self.entries for x in row))

    def to_integer_rows(self) -> tuple[int, list[list[int]]]:
        """``(D, B)`` with ``B = D * self`` integral and ``D`` the least such scale."""
        d = self.denominator_lcm()
        return d, [[int(x * d) for x in row] for row in self.entries]

    def rank(self) -> int:
        """Rank by fraction-free (Bareiss) elimination on the integer-scaled matrix."""
        _, m = self.to_integer_rows()
        rows, cols = self.rows, self.cols
        prev = 1
        r = 0
        for c in range(cols):
            piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            p = m[r][c]
            for i in range(r + 1, rows):
                f = m[i][c]
                m[i] = [(p * x - f * y) // prev for x, y in zip(m[i], m[r])]
            prev = p
            r += 1
            if r == rows:
                break
        return r

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> RationalMatrix:
        tokens = text.split()
        if len(tokens) < 2:
            raise ParseError("matrix text needs a 'rows cols' header")
        try:
            rows, cols = int(tokens[0]), int(tokens[1])
            values = [Fraction(tok) for tok in tokens[2:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad matrix entry: {exc}") from None
        if rows < 1 or cols < 1 or len(values) != rows * cols:
            raise ParseError(f"expected {rows}x{cols} entries, found {len(values)}")
        return cls([values[i * cols:(i + 1) * cols] for i in range(rows)])


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    return A.kron(B)
