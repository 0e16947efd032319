import numpy as np
import pytest
import sympy

from oracles import annihilates_mod, poly_divexact, poly_mul
from symdg.construct import (
    INF,
    TableRow,
    build_gamma,
    check_table_rows,
    gamma_generators,
    involution_check,
    involution_set_results,
    linear_fractional,
    point_label,
    r_is_transversal,
    sigma_identities,
    tables_fixture,
)
from symdg.digraph import strongly_connected, verify_coset_model
from symdg.errors import EnumerationBoundError, FixtureMismatchError
from symdg.exact import Poly, is_squarefree, minimal_polynomial
from symdg.perm import PermutationGroup, conjugate_intersection_order, double_coset_cosets

X = sympy.Symbol("x")

# Minimal polynomial of A(Σ), ascending coefficients.  Derived before freezing by
# factoring with sympy and evaluating m(A) with big-integer numpy arithmetic; the
# tests below re-check it modularly and against the factored form.
SIGMA_MINPOLY = [-253952000, -132761600, 8770560, 8141152, 700808, -31420, -5273, -126, 1]
SIGMA_MINPOLY_FACTORS = [[-160, 1], [-4, 1], [8, 1], [8, 1], [-25, -10, 1], [248, 32, 1]]


def gamma_minpoly(s):
    """x^(3s) - 4^s x^s: derived from sympy on A(Γ_2) and modular checks for larger s."""
    coeffs = [0] * (3 * s + 1)
    coeffs[3 * s] = 1
    coeffs[s] = -(4**s)
    return coeffs


# projective line


def test_linear_fractional_conventions():
    shift = linear_fractional(((1, 0), (1, 1)))
    assert [shift(x) for x in range(7)] == [1, 2, 3, 4, 5, 6, 0] and shift(INF) == INF
    inv = linear_fractional(((0, 1), (-1, 0)))  # x -> -1/x
    assert inv(0) == INF and inv(INF) == 0 and inv(1) == 6
    with pytest.raises(ValueError):
        linear_fractional(((1, 2), (2, 4)))
    assert point_label(8 * INF + 3) == "(∞,3)"


# Γ_s


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_gamma_sizes(gamma_instances, s):
    inst = gamma_instances[s]
    g = inst.digraph
    assert g.n == 2 ** (s + 1) * s
    assert g.valency() == 2 and set(g.in_degrees()) == {2}
    assert strongly_connected(g)
    assert inst.R.order() == g.n
    assert inst.G.order() == 2 ** (2 * s) * 2 * s


def test_gamma_vertex_words(gamma_instances):
    inst = gamma_instances[3]
    named = {"ab": inst.a * inst.b, "b": inst.b}
    for x, word in zip(inst.elements, inst.labels):
        value = inst.R.identity()
        if word != "1":
            for part in word.split("·"):
                value = value * named[part]
        assert value == x


def test_gamma_rejects_small_s():
    with pytest.raises(ValueError):
        gamma_generators(1)
    with pytest.raises(ValueError):
        build_gamma(1)


def test_gamma_enumeration_bound():
    with pytest.raises(EnumerationBoundError):
        build_gamma(4, enumeration_bound=1000)


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_gamma_minpoly_frozen(gamma_instances, s):
    A = gamma_instances[s].digraph.adjacency_matrix()
    m = minimal_polynomial(A)
    assert m == Poly(gamma_minpoly(s))
    assert not is_squarefree(m)


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_gamma_minpoly_modular_oracle(gamma_instances, s):
    A = gamma_instances[s].digraph.adjacency_array()
    m = gamma_minpoly(s)
    assert annihilates_mod(m, A)
    # dropping one factor of x, or the factor x^(2s) - 4^s, leaves a non-annihilator
    assert not annihilates_mod(m[1:], A)
    cofactor = [-(4**s)] + [0] * (2 * s - 1) + [1]
    assert not annihilates_mod(poly_divexact(m, cofactor), A)


def test_gamma2_minpoly_sympy_oracle(gamma_instances):
    M = sympy.Matrix(gamma_instances[2].digraph.adjacency_array().tolist())
    charpoly = M.charpoly(X).as_expr()
    expected = X**6 - 16 * X**2
    assert sympy.rem(charpoly, expected, X) == 0
    assert (M**6 - 16 * M**2).is_zero_matrix
    for smaller in (X**5 - 16 * X, X**4 - 16, X**2 * (X**2 - 4) * (X - 2)):
        P = sympy.Poly(smaller, X)
        acc = sympy.zeros(16, 16)
        for c in P.all_coeffs():
            acc = acc * M + c * sympy.eye(16)
        assert not acc.is_zero_matrix


@pytest.mark.parametrize("s", [2, 3])
def test_gamma_coset_model(gamma_instances, s):
    inst = gamma_instances[s]
    ca = inst.coset_action
    assert double_coset_cosets(ca, inst.g) == {ca.label(inst.a * inst.b), ca.label(inst.b)}
    assert verify_coset_model(inst.digraph, inst.elements, ca, [inst.g])


# Σ


def test_sigma_sizes(sigma):
    assert sigma.digraph.n == 441
    assert sigma.digraph.valency() == 160 and set(sigma.digraph.in_degrees()) == {160}
    assert len(set(sigma.connection_set)) == 160
    assert [len(b) for _, b in sigma.blocks] == [64, 64, 8, 8, 8, 8]
    assert (sigma.R.order(), sigma.G.order(), sigma.H.order()) == (441, 112896, 256)


def test_sigma_identities(sigma):
    failed = [k for k, ok in sigma_identities(sigma).items() if not ok]
    assert failed == []
    assert r_is_transversal(sigma)


def test_sigma_orders_match_sympy(sigma):
    from sympy.combinatorics import Permutation as SPerm
    from sympy.combinatorics import PermutationGroup as SGroup

    for group in (sigma.G, sigma.H):
        assert SGroup([SPerm(list(g.images)) for g in group.generators]).order() == group.order()


def test_sigma_double_cosets(sigma):
    ca = sigma.coset_action
    assert conjugate_intersection_order(sigma.H, sigma["g1"]) == 2
    assert conjugate_intersection_order(sigma.H, sigma["g2"]) == 8
    assert len(double_coset_cosets(ca, sigma["g1"])) == 128
    assert len(double_coset_cosets(ca, sigma["g2"])) == 32


def test_sigma_coset_model(sigma):
    assert verify_coset_model(sigma.digraph, sigma.elements, sigma.coset_action, [sigma["g1"], sigma["g2"]])
    assert not verify_coset_model(sigma.digraph, sigma.elements, sigma.coset_action, [sigma["g1"]])


def test_sigma_primitive(sigma):
    induced = sigma.coset_action.induced_group()
    assert induced.degree == 441 and induced.is_transitive() and induced.is_primitive()
    # R acts regularly: the coset digraph is vertex-transitive, yet R itself is imprimitive
    R_induced = PermutationGroup([sigma.coset_action.induced(g) for g in sigma.R.generators])
    assert R_induced.order() == 441 and not R_induced.is_primitive()


def test_tables(sigma):
    rows = tables_fixture()
    assert len(rows) == 48
    assert check_table_rows(sigma) == 48


def test_fabricated_row_is_located(sigma):
    rows = tables_fixture()
    bad = rows[10]
    forged = TableRow(bad.index, bad.table, bad.x, bad.h, bad.k, 3 - bad.j)
    with pytest.raises(FixtureMismatchError) as info:
        check_table_rows(sigma, rows[:10] + [forged] + rows[11:])
    assert len(info.value.mismatches) == 1
    assert info.value.mismatches[0].startswith(f"row {bad.index} (table {bad.table})")


def test_involutions(sigma):
    results = involution_set_results(sigma)
    assert len(results) == 10
    assert all(r.match for r in results)
    assert involution_check(sigma)


def test_sigma_minpoly_frozen(sigma):
    m = minimal_polynomial(sigma.digraph.adjacency_matrix())
    assert m == Poly(SIGMA_MINPOLY)
    assert not is_squarefree(m)


def test_sigma_minpoly_factored_form():
    prod = [1]
    for f in SIGMA_MINPOLY_FACTORS:
        prod = poly_mul(prod, f)
    assert prod == SIGMA_MINPOLY
    expr = sympy.Poly(list(reversed(SIGMA_MINPOLY)), X)
    assert sympy.factor(expr.as_expr()) == sympy.factor(
        (X - 160) * (X - 4) * (X + 8) ** 2 * (X**2 - 10 * X - 25) * (X**2 + 32 * X + 248)
    )


def test_sigma_minpoly_modular_oracle(sigma):
    A = sigma.digraph.adjacency_array()
    assert annihilates_mod(SIGMA_MINPOLY, A)
    # removing any irreducible factor breaks annihilation, so the polynomial is minimal
    for f in ([-160, 1], [-4, 1], [8, 1], [-25, -10, 1], [248, 32, 1]):
        assert not annihilates_mod(poly_divexact(SIGMA_MINPOLY, f), A)


def test_sigma_row_sums(sigma):
    A = sigma.digraph.adjacency_array().astype(np.int64)
    assert set(A.sum(axis=0)) == set(A.sum(axis=1)) == {160}
    assert not np.diag(A).any()
