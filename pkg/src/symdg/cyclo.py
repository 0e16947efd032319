"""Exact arithmetic in Q(ζ) for a primitive 7th root of unity ζ, and the explicit
representations used to certify non-diagonalizability.

Elements are stored as six rational coefficients of ``1, ζ, ..., ζ^5``; the
relation ``ζ^6 = -(1 + ζ + ... + ζ^5)`` is applied on construction.
"""

from __future__ import annotations

import ast
import json
import operator
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product

from .errors import ParseError
from .exact import Matrix, Poly, QQ, RationalMatrix, is_squarefree, minimal_polynomial
from .perm import Permutation
from .words import evaluate_word

DEGREE = 6


def _reduce(coeffs: Sequence) -> tuple[Fraction, ...]:
    folded = [Fraction(0)] * 7
    for k, c in enumerate(coeffs):
        if c:
            folded[k % 7] += c
    top = folded[6]
    return tuple(Fraction(c) - top for c in folded[:6])


class CyclotomicElement:
    """``c_0 + c_1 ζ + ... + c_5 ζ^5`` with rational ``c_k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        self.coeffs = _reduce(coeffs)

    @classmethod
    def zeta(cls, k: int = 1) -> CyclotomicElement:
        c = [0] * 7
        c[k % 7] = 1
        return cls(c)

    @classmethod
    def rational(cls, value) -> CyclotomicElement:
        return cls([Fraction(value)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement([-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicElement([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement([a * other for a in self.coeffs])
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        out = [Fraction(0)] * 11
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return CyclotomicElement(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CyclotomicElement([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> CyclotomicElement:
        """Inverse by the extended Euclidean algorithm against ``Φ_7``."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(ζ)")
        r0, r1 = CYCLOTOMIC_POLY, Poly(self.coeffs)
        s0, s1 = Poly(), Poly([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        # r0 is a nonzero constant since Φ_7 is irreducible
        return CyclotomicElement((s0 * (1 / r0.coeffs[0])).coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement([a / other for a in self.coeffs])
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_list(cls, values: Sequence) -> CyclotomicElement:
        if len(values) != DEGREE:
            raise ParseError(f"expected {DEGREE} coefficients, got {len(values)}")
        return cls([Fraction(v) for v in values])

    def __repr__(self):
        return f"CyclotomicElement({self})"

    def __str__(self):
        terms = []
        for k in range(DEGREE - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else "ζ" if k == 1 else f"ζ^{k}"
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}{mono}" if "/" not in str(c) else f"({c}){mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


CYCLOTOMIC_POLY = Poly([1] * 7)


class CyclotomicField:
    name = "Q(ζ7)"

    def __init__(self):
        self.zero = CyclotomicElement()
        self.one = CyclotomicElement([1])

    def __call__(self, value) -> CyclotomicElement:
        if isinstance(value, CyclotomicElement):
            return value
        return CyclotomicElement([Fraction(value)])

    def __repr__(self):
        return self.name


CF7 = CyclotomicField()
ZETA = CyclotomicElement.zeta(1)


class CycloMatrix(Matrix):
    """Dense matrix over ``Q(ζ)``."""

    __slots__ = ()

    def __init__(self, entries, field=CF7):
        super().__init__(entries, CF7)

    @classmethod
    def identity(cls, n: int, field=CF7) -> CycloMatrix:
        return super().identity(n, CF7)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=CF7) -> CycloMatrix:
        return super().zeros(rows, cols, CF7)

    @classmethod
    def from_rational(cls, M: Matrix) -> CycloMatrix:
        return cls(M.entries)


def block_diagonal(*blocks: Matrix) -> CycloMatrix:
    result = CycloMatrix.from_rational(blocks[0])
    for b in blocks[1:]:
        result = result.direct_sum(CycloMatrix.from_rational(b))
    return result


# expression evaluator for fixtures

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def evaluate_expression(text: str, names: dict | None = None) -> CyclotomicElement:
    """Evaluate an arithmetic expression in ``z`` (``= ζ``) and integer literals.

    Only ``+ - * / **`` with integer exponents, parentheses and the given names
    are accepted.
    """
    env = {"z": ZETA, **(names or {})}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return CyclotomicElement([node.value])
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ParseError(f"unknown name {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            value = ev(node.operand)
            return -value if isinstance(node.op, ast.USub) else value
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ParseError(f"exponents must be integer literals in {text!r}")
                return ev(node.left) ** (sign * exp.value)
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(ev(node.left), ev(node.right))
        raise ParseError(f"unsupported syntax in {text!r}")

    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return ev(tree)


def _load_fixtures() -> dict:
    return json.loads(resources.files("symdg.data").joinpath("cyclo_fixtures.json").read_text(encoding="utf-8"))


def fixture_values() -> tuple[dict[str, CyclotomicElement], dict[str, CycloMatrix]]:
    """Named constants and matrices from the bundled fixture file."""
    data = _load_fixtures()
    consts: dict[str, CyclotomicElement] = {}
    for name, expr in data["constants"].items():
        consts[name] = evaluate_expression(expr, consts)
    matrices = {
        name: CycloMatrix([[evaluate_expression(e, consts) for e in row] for row in rows])
        for name, rows in data["matrices"].items()
    }
    return consts, matrices


# the representation of C7 : C3 = <a, b | a^7 = b^3 = 1, b^-1 a b = a^2>


def meta_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    """Product of normal forms ``a^k b^l``, using ``b^l a^k = a^(4^l k) b^l``."""
    (k1, l1), (k2, l2) = x, y
    return (k1 + pow(4, l1, 7) * k2) % 7, (l1 + l2) % 3


def meta_pow(x: tuple[int, int], n: int) -> tuple[int, int]:
    if n < 0:
        k, l = x
        inv = ((-pow(2, l, 7) * k) % 7, (-l) % 3)
        assert meta_mul(x, inv) == (0, 0)
        x, n = inv, -n
    result = (0, 0)
    for _ in range(n):
        result = meta_mul(result, x)
    return result


def meta_word(text: str) -> tuple[int, int]:
    """Normal form ``(k, l)`` of a word in ``a, b``."""
    return evaluate_word(text, {"a": (1, 0), "b": (0, 1)}, (0, 0), meta_mul, meta_pow)


def phi(k: int, l: int) -> CycloMatrix:
    """Matrix of ``a^k b^l``: basis vector ``ω^j`` maps to ``ζ^(k 2^j) ω^(j-l)``; rows are images."""
    rows = [[CF7.zero] * 3 for _ in range(3)]
    for j in range(3):
        rows[j][(j - l) % 3] = CyclotomicElement.zeta(k * 2**j)
    return CycloMatrix(rows)


def phi_of_word(text: str) -> CycloMatrix:
    return phi(*meta_word(text))


def phi_sum(words: Sequence[str], invert: bool = False) -> CycloMatrix:
    total = CycloMatrix.zeros(3, 3)
    for w in words:
        x = meta_word(w)
        total = total + phi(*(meta_pow(x, -1) if invert else x))
    return total


def phi_matrices() -> dict[str, CycloMatrix]:
    """``φ`` summed over ``S1, S1^-1, S2, S3, S3^-1, S4``."""
    from .construct import S1_WORDS, S2_WORDS, S3_WORDS, S4_WORDS

    return {
        "phi_S1": phi_sum(S1_WORDS),
        "phi_S1_inv": phi_sum(S1_WORDS, invert=True),
        "phi_S2": phi_sum(S2_WORDS),
        "phi_S3": phi_sum(S3_WORDS),
        "phi_S3_inv": phi_sum(S3_WORDS, invert=True),
        "phi_S4": phi_sum(S4_WORDS),
    }


def rho_S(phis: dict[str, CycloMatrix] | None = None) -> CycloMatrix:
    """The 9x9 image of the connection set, as a six-term sum of Kronecker products."""
    p = phi_matrices() if phis is None else phis
    s1 = p["phi_S1"] + p["phi_S1_inv"]
    s3 = p["phi_S3"] + p["phi_S3_inv"]
    return (
        s1.kron(s3)
        + s3.kron(s1)
        + p["phi_S1"].kron(p["phi_S2"])
        + p["phi_S2"].kron(p["phi_S1"])
        + p["phi_S1_inv"].kron(p["phi_S4"])
        + p["phi_S4"].kron(p["phi_S1_inv"])
    )


def rho_S_direct(sigma) -> CycloMatrix:
    """``Σ_{x ∈ S} φ(x_ab) ⊗ φ(x_cd)`` over the actual elements of the connection set.

    Each ``x = a^i b^j c^k d^l`` is located through the normal-form enumeration of
    ``R`` carried by the instance.
    """
    coords = {x: idx for idx, x in enumerate(sigma.elements)}
    total = CycloMatrix.zeros(9, 9)
    for x in sigma.connection_set:
        idx = coords[x]
        i, rest = divmod(idx, 63)
        j, rest = divmod(rest, 21)
        k, l = divmod(rest, 3)
        total = total + phi(i, j).kron(phi(k, l))
    return total


@dataclass
class SigmaBlockResult:
    ok: bool
    checks: dict[str, bool]
    blocks: dict[str, RationalMatrix]
    mismatches: list[str] = field(default_factory=list)


def _diff(name: str, got: Matrix, want: Matrix) -> list[str]:
    out = []
    for i in range(got.rows):
        for j in range(got.cols):
            if got[i, j] != want[i, j]:
                out.append(f"{name}[{i + 1},{j + 1}]: computed {got[i, j]}, expected {want[i, j]}")
    return out


def verify_sigma_blocks() -> SigmaBlockResult:
    """Check the explicit conjugation of the 9x9 image of ``S`` into ``½ diag(A, B, C, D)``."""
    _, fx = fixture_values()
    phis = phi_matrices()
    checks: dict[str, bool] = {}
    mismatches: list[str] = []
    for name, M in phis.items():
        diff = _diff(name, M, fx[name])
        checks[f"{name} matches"] = not diff
        mismatches += diff
    I3 = CycloMatrix.identity(3)
    for t in ("T1", "T2"):
        ok = fx[t] * fx[f"{t}_inv"] == I3 and fx[f"{t}_inv"] * fx[t] == I3
        checks[f"{t} times listed inverse is I"] = ok
        if not ok:
            mismatches.append(f"{t} * {t}_inv != I")
    checks["T3 invertible"] = fx["T3"].rank() == 6

    rho = rho_S(phis)
    T = fx["T1"].kron(fx["T2"])
    T_inv = fx["T1_inv"].kron(fx["T2_inv"])
    P = I3.direct_sum(fx["T3"])
    lhs = P * T_inv * rho * T
    half = Fraction(1, 2)
    rhs = block_diagonal(fx["A"], fx["B"], fx["C"], fx["D"]) * P * half
    diff = _diff("block identity", lhs, rhs)
    checks["block identity"] = not diff
    mismatches += diff

    blocks = {name: RationalMatrix([[e.coeffs[0] for e in row] for row in fx[name].entries]) for name in "ABCD"}
    checks["blocks rational"] = all(e.is_rational() for n in "ABCD" for row in fx[n].entries for e in row)
    return SigmaBlockResult(all(checks.values()), checks, blocks, mismatches)


def rho_S_not_diagonalizable(rho: CycloMatrix | None = None) -> bool:
    """Minimal polynomial over ``Q(ζ)`` has a repeated factor."""
    rho = rho_S() if rho is None else rho
    return not is_squarefree(minimal_polynomial(rho))


# representations of R_s


@dataclass
class GammaRepEvaluation:
    """Low-dimensional representation of ``R_s`` whose image of ``ab + b`` is nilpotent.

    Every element is written ``a_1^ε1 ... a_s^εs b^m`` with ``a_k = a^(b^k)`` and
    ``m`` in ``1..2s``; ``normal_forms`` maps permutations to ``(ε, m)``.
    """

    s: int
    parity: str
    normal_forms: dict[Permutation, tuple[tuple[int, ...], int]]
    rho_ab: RationalMatrix
    rho_b: RationalMatrix

    @property
    def dimension(self) -> int:
        return self.rho_ab.rows

    def rho(self, x: Permutation) -> RationalMatrix:
        eps, m = self.normal_forms[x]
        return gamma_rep_matrix(self.s, eps, m)

    def sum_matrix(self) -> RationalMatrix:
        return self.rho_ab + self.rho_b

    def expected_sum(self) -> RationalMatrix:
        n = self.dimension
        col = (self.s + 1) // 2 - 1 if self.parity == "odd" else 1
        return RationalMatrix([[2 if (i, j) == (0, col) else 0 for j in range(n)] for i in range(n)])

    def is_multiplicative(self, pairs) -> bool:
        """``ρ(x)ρ(y) = ρ(xy)`` for the untwisted normal-form formula."""
        return all(self.rho(x) * self.rho(y) == self.rho(x * y) for x, y in pairs)

    @property
    def needs_twist(self) -> bool:
        # b^(2s) = a_1 ... a_s flips every ε; for even s the δ_i change by s/2
        return self.parity == "even" and (self.s // 2) % 2 == 1

    def carry_sign(self, x: Permutation, y: Permutation) -> int:
        m, n = self.normal_forms[x][1], self.normal_forms[y][1]
        return -1 if self.needs_twist and m + n > 2 * self.s else 1

    def is_multiplicative_after_twist(self, pairs) -> bool:
        """Multiplicativity of ``x -> μ^m ρ(x)`` with ``μ^(2s) = -1``.

        The scalar cancels except when reducing ``m + n`` past ``2s``, where it
        contributes ``μ^(-2s) = -1``; so the check is ``ρ(x)ρ(y) = ±ρ(xy)`` with the
        sign from :meth:`carry_sign`.  When no twist is needed this is plain
        multiplicativity.  The twist scales ``ρ(ab) + ρ(b)`` by ``μ`` and keeps it
        nilpotent.
        """
        return all(self.rho(x) * self.rho(y) == self.rho(x * y) * self.carry_sign(x, y) for x, y in pairs)


def gamma_rep_matrix(s: int, eps: Sequence[int], m: int) -> RationalMatrix:
    """Matrix of ``a_1^ε1 ... a_s^εs b^m``; ``eps[k-1]`` is ``ε_k``."""
    e = lambda k: eps[(k - 1) % s]
    if s % 2:
        rows = [[0] * s for _ in range(s)]
        total = sum(eps)
        shift = m * (s - 1) // 2
        for i in range(1, s + 1):
            sign = (-1) ** ((total - e(2 - 2 * i)) % 2)
            rows[i - 1][(i + shift - 1) % s] = sign
        return RationalMatrix(rows)
    delta = [sum(e(2 * k + i) for k in range(s // 2)) for i in (1, 2)]
    bar = lambda t: t % 2
    sg = [(-1) ** (d % 2) for d in delta]
    return RationalMatrix(
        [
            [sg[0] * bar(m + 1), sg[0] * bar(m)],
            [sg[1] * bar(m), sg[1] * bar(m + 1)],
        ]
    )


def gamma_normal_forms(s: int) -> dict[Permutation, tuple[tuple[int, ...], int]]:
    from .construct import gamma_generators

    gens = gamma_generators(s)
    a, b = gens["a"], gens["b"]
    a_k = [a.conj(b**k) for k in range(1, s + 1)]
    forms = {}
    ident = Permutation.identity(4 * s)
    for eps in product((0, 1), repeat=s):
        head = ident
        for ak, e in zip(a_k, eps):
            if e:
                head = head * ak
        for m in range(1, 2 * s + 1):
            forms[head * b**m] = (eps, m)
    if len(forms) != 2 ** (s + 1) * s:
        raise AssertionError("normal forms are not distinct")
    return forms


def gamma_rep(s: int) -> GammaRepEvaluation:
    if s < 2:
        raise ValueError("s must be at least 2")
    from .construct import gamma_generators

    gens = gamma_generators(s)
    forms = gamma_normal_forms(s)
    ab, b = gens["a"] * gens["b"], gens["b"]
    rab = gamma_rep_matrix(s, *forms[ab])
    rb = gamma_rep_matrix(s, *forms[b])
    return GammaRepEvaluation(s, "odd" if s % 2 else "even", forms, rab, rb)


def element_to_json(x: CyclotomicElement) -> list[str]:
    return x.to_list()


def matrix_to_json(M: Matrix) -> list[list[list[str]]]:
    return [[CF7(e).to_list() for e in row] for row in M.entries]


def matrix_from_json(data) -> CycloMatrix:
    return CycloMatrix([[CyclotomicElement.from_list(e) for e in row] for row in data])

