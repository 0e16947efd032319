"""Minimal polynomials, diagonalizability verdicts and Jordan structure.

The minimal polynomial is assembled as the lcm of the annihilators of the Krylov
sequences ``e_j, A e_j, A^2 e_j, ...`` for standard basis vectors, stopping as soon
as the running lcm annihilates ``A``.  Over the rationals the Krylov sequences are
computed on the integer-scaled matrix with fraction-free elimination, and the
final ``m(A) = 0`` check is a multi-modular certificate: every entry of ``m(A)``
is an integer bounded by a computable ``B``, so vanishing modulo primes whose
product exceeds ``2B`` proves it is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrix import Matrix, RationalMatrix
from .poly import QQ, Poly, is_squarefree

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(limit: int):
    p = limit - 1
    while p > 2:
        if _is_prime(p):
            yield p
        p -= 1


def _sparse_rows(rows: list[list[int]]) -> list[list[tuple[int, int]]]:
    return [[(j, v) for j, v in enumerate(row) if v] for row in rows]


def _content(values) -> int:
    g = 0
    for v in values:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return 1
    return g


def _krylov_relation_int(sparse, n: int, seed: int) -> list[int]:
    """Integer coefficients ``c`` (ascending, primitive, positive leading term) of
    the least-degree relation ``sum c_k B^k e_seed = 0``."""
    basis = []  # (pivot, vector, combination)
    v = [0] * n
    v[seed] = 1
    k = 0
    while True:
        w = list(v)
        comb = [0] * (k + 1)
        comb[k] = 1
        for pivot, bvec, bcomb in basis:
            x = w[pivot]
            if x == 0:
                continue
            p = bvec[pivot]
            g = math.gcd(p, x)
            fp, fx = p // g, x // g
            w = [fp * a - fx * b for a, b in zip(w, bvec)]
            comb = [fp * a for a in comb]
            for i, b in enumerate(bcomb):
                comb[i] -= fx * b
            g = _content(w + comb)
            if g > 1:
                w = [a // g for a in w]
                comb = [a // g for a in comb]
        pivot = next((i for i, a in enumerate(w) if a), None)
        if pivot is None:
            g = _content(comb)
            comb = [a // g for a in comb]
            if comb[-1] < 0:
                comb = [-a for a in comb]
            return comb
        basis.append((pivot, w, comb))
        v = [sum(a * v[j] for j, a in row) for row in sparse]
        k += 1


def _krylov_relation_field(A: Matrix, seed: int) -> Poly:
    """Monic annihilator of the Krylov sequence of ``e_seed`` over ``A.field``."""
    field = A.field
    zero, one = field.zero, field.one
    n = A.rows
    basis = []
    v = [zero] * n
    v[seed] = one
    k = 0
    rows = A.entries
    while True:
        w = list(v)
        comb = [zero] * (k + 1)
        comb[k] = one
        for pivot, bvec, bcomb in basis:
            x = w[pivot]
            if x == zero:
                continue
            w = [a - x * b for a, b in zip(w, bvec)]
            for i, b in enumerate(bcomb):
                comb[i] = comb[i] - x * b
        pivot = next((i for i, a in enumerate(w) if a != zero), None)
        if pivot is None:
            return Poly(comb, field).monic()
        inv = one / w[pivot]
        basis.append((pivot, [a * inv for a in w], [a * inv for a in comb]))
        v = [sum((a * v[j] for j, a in enumerate(row) if a != zero), zero) for row in rows]
        k += 1


def _integer_poly(p: Poly) -> list[int]:
    d = math.lcm(*(c.denominator for c in p.coeffs))
    return [int(c * d) for c in p.coeffs]


def _annihilates_exact(int_rows: list[list[int]], coeffs: list[int]) -> bool:
    n = len(int_rows)
    X = [[coeffs[-1] if i == j else 0 for j in range(n)] for i in range(n)]
    for c in reversed(coeffs[:-1]):
        X = [[sum(a * b for a, b in zip(row, col)) for col in zip(*X)] for row in int_rows]
        for i in range(n):
            X[i][i] += c
    return all(x == 0 for row in X for x in row)


def _annihilates_modular(int_rows: list[list[int]], coeffs: list[int]) -> bool:
    """Multi-modular proof that ``sum coeffs[k] B^k == 0`` for the integer matrix ``B``."""
    n = len(int_rows)
    r = max(1, max(sum(abs(a) for a in row) for row in int_rows))
    bound = sum(abs(c) * r**k for k, c in enumerate(coeffs))
    limit = min(2**40, 2**52 // r)
    B = np.array(int_rows, dtype=np.float64)
    diag = np.arange(n)
    modulus = 1
    for p in _primes_below(limit):
        fp = float(p)
        X = np.zeros((n, n))
        X[diag, diag] = coeffs[-1] % p
        for c in reversed(coeffs[:-1]):
            X = np.mod(B @ X, fp)
            X[diag, diag] = np.mod(X[diag, diag] + (c % p), fp)
        if X.any():
            return False
        modulus *= p
        if modulus > 2 * bound:
            return True
    raise RuntimeError("ran out of primes for the modular certificate")


def _rational_annihilates(int_rows, poly_int_scaled) -> bool:
    n = len(int_rows)
    r = max(sum(abs(a) for a in row) for row in int_rows)
    if n <= 24 or r >= 2**20:
        return _annihilates_exact(int_rows, poly_int_scaled)
    return _annihilates_modular(int_rows, poly_int_scaled)


def _scaled_annihilates(p: Poly, d: int, int_rows) -> bool:
    # p(A) = 0  <=>  sum c_k d^(deg-k) B^k = 0 with B = d A
    deg = p.degree
    scaled = Poly([c * d ** (deg - k) for k, c in enumerate(p.coeffs)])
    return _rational_annihilates(int_rows, _integer_poly(scaled))


def annihilates(p: Poly, A: Matrix) -> bool:
    """Exact test of ``p(A) == 0``."""
    if p.is_zero():
        return True
    if A.field is QQ:
        d, int_rows = RationalMatrix(A.entries).to_integer_rows()
        return _scaled_annihilates(p, d, int_rows)
    return all(x == A.field.zero for row in p(A).entries for x in row)


def minimal_polynomial(A: Matrix) -> Poly:
    """Monic minimal polynomial of a square matrix over its field."""
    if not A.is_square():
        raise ValueError("minimal polynomial requires a square matrix")
    n = A.rows
    if A.field is QQ:
        d, int_rows = RationalMatrix(A.entries).to_integer_rows()
        sparse = _sparse_rows(int_rows)
        m = Poly([1])
        for seed in range(n):
            rel = _krylov_relation_int(sparse, n, seed)
            # relation for B = dA becomes one for A after substituting x -> d x
            local = Poly([Fraction(c) * d**k for k, c in enumerate(rel)]).monic()
            new = m.lcm(local)
            if new.degree != m.degree or seed == 0:
                m = new
                if _scaled_annihilates(m, d, int_rows):
                    return m
            m = new
        raise AssertionError("lcm over all basis vectors failed to annihilate the matrix")
    m = Poly([A.field.one], A.field)
    for seed in range(n):
        new = m.lcm(_krylov_relation_field(A, seed))
        if new.degree != m.degree or seed == 0:
            m = new
            if annihilates(m, A):
                return m
        m = new
    raise AssertionError("lcm over all basis vectors failed to annihilate the matrix")


def is_diagonalizable(A: Matrix) -> bool:
    """Diagonalizable over the algebraic closure iff the minimal polynomial is squarefree."""
    if not A.is_square():
        raise ValueError("diagonalizability requires a square matrix")
    return is_squarefree(minimal_polynomial(A))


def rank_sequence(A: Matrix, eigenvalue, max_power: int | None = None) -> list[int]:
    """``[rank((A - λI)^k) for k = 0, 1, ...]`` until the rank stabilizes."""
    if not A.is_square():
        raise ValueError("rank sequence requires a square matrix")
    n = A.rows
    shifted = A - A.identity_like() * A.field(eigenvalue)
    ranks = [n]
    power = A.identity_like()
    limit = n if max_power is None else max_power
    for _ in range(limit):
        power = power * shifted
        r = power.rank()
        ranks.append(r)
        if r == ranks[-2]:
            break
    return ranks


def jordan_structure(A: Matrix, eigenvalue) -> list[int]:
    """Jordan block sizes of ``A`` at ``eigenvalue`` (descending), from rank drops."""
    ranks = rank_sequence(A, eigenvalue)
    ranks.append(ranks[-1])
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(1, len(at_least) + 1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes += [k] * exactly
    return sorted(sizes, reverse=True)


def jordan_structure_rational(A: RationalMatrix, eigenvalue) -> list[int]:
    return jordan_structure(A, Fraction(eigenvalue))


def jordan_block(eigenvalue, size: int, field=QQ) -> Matrix:
    cls = RationalMatrix if field is QQ else Matrix
    ev = field(eigenvalue)
    return cls(
        [[ev if i == j else field.one if j == i + 1 else field.zero for j in range(size)] for i in range(size)],
        field,
    )


ZERO = "zero"
NONZERO_PRODUCT = "nonzero_product"


@dataclass(frozen=True)
class JordanSpec:
    """Jordan blocks of ``J(α, s) ⊗ J(β, t)`` as (eigenvalue tag, size) pairs."""

    blocks: tuple[tuple[str, int], ...]
    s: int
    t: int
    alpha_zero: bool
    beta_zero: bool

    def sizes(self) -> list[int]:
        return sorted((size for _, size in self.blocks), reverse=True)

    def has_nontrivial_block(self) -> bool:
        return any(size > 1 for _, size in self.blocks)


def jordan_tensor_spec(alpha_zero: bool, beta_zero: bool, s: int, t: int) -> JordanSpec:
    """Closed-form Jordan structure of the Kronecker product of two Jordan blocks."""
    if s < 1 or t < 1:
        raise ValueError("block sizes must be positive")
    lo = min(s, t)
    if alpha_zero and beta_zero:
        sizes = [lo] * (abs(s - t) + 1)
        for k in range(1, lo):
            sizes += [k, k]
        tag = ZERO
    elif alpha_zero:
        sizes, tag = [s] * t, ZERO
    elif beta_zero:
        sizes, tag = [t] * s, ZERO
    else:
        sizes, tag = [s + t + 1 - 2 * k for k in range(1, lo + 1)], NONZERO_PRODUCT
    blocks = tuple(sorted(((tag, n) for n in sizes), key=lambda b: -b[1]))
    return JordanSpec(blocks, s, t, alpha_zero, beta_zero)
