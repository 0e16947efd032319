"""Univariate polynomials over an exact field (rationals or a number field)."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction


class RationalField:
    """The field of rationals, backed by :class:`fractions.Fraction`."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return value if isinstance(value, Fraction) else Fraction(value)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class Poly:
    """Polynomial with ascending coefficients ``c[0] + c[1] x + ...``.

    Trailing zeros are stripped, so the zero polynomial has no coefficients and
    degree -1.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Sequence = (), field=QQ):
        coeffs = [field(c) for c in coeffs]
        while coeffs and coeffs[-1] == field.zero:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def x(cls, field=QQ) -> Poly:
        return cls([field.zero, field.one], field)

    @classmethod
    def constant(cls, c, field=QQ) -> Poly:
        return cls([c], field)

    def _new(self, coeffs) -> Poly:
        return Poly(coeffs, self.field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == self.field.one

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        inv = self.field.one / self.lead
        return self._new([c * inv for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return self._new([x + y for x, y in zip(a, b)])

    def __neg__(self) -> Poly:
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self._new([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == self.field.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        inv_lead = self.field.one / other.lead
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._new([]), self
        quot = [self.field.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quot[k] = c
            if c != self.field.zero:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return self._new(quot), self._new(rem[: other.degree])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def derivative(self) -> Poly:
        return self._new([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate by Horner's rule; ``x`` may be a field element or a matrix."""
        if hasattr(x, "identity_like"):
            result = x.identity_like() * self.field.zero
            ident = x.identity_like()
            for c in reversed(self.coeffs):
                result = result * x + ident * c
            return result
        result = self.field.zero
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def gcd(self, other: Poly) -> Poly:
        """Monic greatest common divisor (Euclid)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, (a % b).monic()
        return a.monic()

    def lcm(self, other: Poly) -> Poly:
        if self.is_zero() or other.is_zero():
            return self._new([])
        return ((self * other) // self.gcd(other)).monic()

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == self.field.zero:
                continue
            mono = "" if k == 0 else "x" if k == 1 else f"x^{k}"
            if not mono:
                body = str(c)
            elif c == self.field.one:
                body = mono
            elif c == -self.field.one:
                body = "-" + mono
            else:
                text = str(c)
                if not isinstance(c, Fraction) or "/" in text:
                    text = f"({text})"
                body = f"{text}*{mono}"
            terms.append(body)
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def is_squarefree(p: Poly) -> bool:
    """True iff ``gcd(p, p')`` is constant."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no squarefreeness verdict")
    return p.gcd(p.derivative()).degree == 0
