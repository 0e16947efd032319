"""Independent checks used as test oracles: modular matrix-polynomial evaluation in numpy."""

import numpy as np

PRIMES = (67108859, 67108837, 50331653)


def poly_at_matrix_mod(coeffs, A, p):
    """``sum c_k A^k mod p`` by Horner in int64; ``coeffs`` ascending, ``A`` integer array, ``p < 2**26``."""
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    eye = np.eye(n, dtype=np.int64)
    acc = np.zeros((n, n), dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc @ A + (int(c) % p) * eye) % p
    return acc


def annihilates_mod(coeffs, A, primes=PRIMES):
    return all(not poly_at_matrix_mod(coeffs, A, p).any() for p in primes)


def poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def poly_divexact(f, g):
    """Quotient of integer polynomials (ascending) when ``g`` is monic and divides ``f``."""
    f = list(f)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        q[k] = f[k + len(g) - 1]
        for j, b in enumerate(g):
            f[k + j] -= q[k] * b
    assert not any(f), "not an exact divisor"
    return q
