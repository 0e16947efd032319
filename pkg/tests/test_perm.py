import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SPerm
from sympy.combinatorics import PermutationGroup as SGroup

from symdg.errors import (
    DegreeMismatchError,
    EnumerationBoundError,
    InvalidCyclesError,
    NotInGroupError,
    NotTransitiveError,
    ParseError,
)
from symdg.perm import (
    CosetAction,
    Permutation,
    PermutationGroup,
    conjugate_intersection_order,
    double_coset_cosets,
    involutions_in,
    parse_cycles,
    perm_from_cycles,
)


def perms(degree):
    return st.permutations(range(degree)).map(Permutation)


def gens_strategy(max_degree=7, max_gens=3):
    return st.integers(2, max_degree).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=max_gens))


def sympy_group(gens):
    return SGroup([SPerm(list(g.images)) for g in gens])


def test_right_action_convention():
    p = perm_from_cycles([(1, 2)], 3)
    q = perm_from_cycles([(2, 3)], 3)
    # apply p then q: 1 -> 2 -> 3
    assert (p * q)(0) == 2
    assert p.conj(q) == q.inverse() * p * q


def test_cycle_string_round_trip():
    p = parse_cycles("(1,5,3)(2,4)", 6)
    assert p.to_cycle_string() == "(1,5,3)(2,4)"
    assert parse_cycles("()", 4).is_identity()
    assert p.order() == 6


@pytest.mark.parametrize(
    "text,error",
    [("(1,2", ParseError), ("(1,x)", ParseError), ("(1,9)", InvalidCyclesError), ("(1,2)(2,3)", InvalidCyclesError)],
)
def test_bad_cycles(text, error):
    with pytest.raises(error):
        parse_cycles(text, 4)


def test_not_a_permutation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        Permutation([1, 0]) * Permutation([0, 2, 1])
    with pytest.raises(DegreeMismatchError):
        PermutationGroup([Permutation([1, 0]), Permutation([0, 2, 1])])


@given(perms(6), perms(6), perms(6))
def test_group_axioms(p, q, r):
    e = Permutation.identity(6)
    assert (p * q) * r == p * (q * r)
    assert p * e == e * p == p
    assert p * p.inverse() == e
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert p ** p.order() == e
    assert p**-3 == (p**3).inverse()


@given(perms(7))
def test_cycles_round_trip(p):
    assert parse_cycles(p.to_cycle_string(), 7) == p


@settings(max_examples=60, deadline=None)
@given(gens_strategy())
def test_order_and_membership_match_sympy(gens):
    G = PermutationGroup(gens)
    S = sympy_group(gens)
    assert G.order() == S.order()
    elements = G.elements()
    assert len(set(elements)) == G.order()
    for g in elements[:50]:
        assert g in G
        assert S.contains(SPerm(list(g.images)))


@settings(max_examples=60, deadline=None)
@given(gens_strategy(), st.data())
def test_non_members_rejected(gens, data):
    G = PermutationGroup(gens)
    n = G.degree
    p = data.draw(perms(n))
    assert (p in G) == sympy_group(gens).contains(SPerm(list(p.images)))


@settings(max_examples=60, deadline=None)
@given(gens_strategy(max_degree=8))
def test_transitivity_and_primitivity_match_sympy(gens):
    G = PermutationGroup(gens)
    S = sympy_group(gens)
    assert G.is_transitive() == S.is_transitive()
    if G.is_transitive():
        assert G.is_primitive() == S.is_primitive()
    else:
        with pytest.raises(NotTransitiveError):
            G.is_primitive()


def test_minimal_block_of_imprimitive_group():
    # the dihedral group of the square preserves {0, 2} and {1, 3}
    r = perm_from_cycles([(1, 2, 3, 4)], 4)
    f = perm_from_cycles([(2, 4)], 4)
    D = PermutationGroup([r, f])
    assert sorted(D.minimal_block(0, 2)) == [0, 2]
    assert not D.is_primitive()
    assert PermutationGroup([perm_from_cycles([(1, 2, 3, 4, 5)], 5)]).is_primitive()


def test_enumeration_bound():
    S8 = PermutationGroup([perm_from_cycles([(1, 2)], 8), perm_from_cycles([tuple(range(1, 9))], 8)], enumeration_bound=1000)
    assert S8.order() == 40320
    with pytest.raises(EnumerationBoundError):
        S8.elements()


def test_json_round_trip(tmp_path):
    G = PermutationGroup([perm_from_cycles([(1, 2, 3)], 4), perm_from_cycles([(3, 4)], 4)])
    path = tmp_path / "g.json"
    import json

    path.write_text(json.dumps(G.to_json()))
    H = PermutationGroup.from_json(path)
    assert H.order() == G.order() == 24
    assert H.generators == G.generators


def _symmetric(n):
    return PermutationGroup([perm_from_cycles([(1, 2)], n), perm_from_cycles([tuple(range(1, n + 1))], n)])


def test_coset_action_of_s4_on_s3_cosets():
    G = _symmetric(4)
    H = PermutationGroup([perm_from_cycles([(1, 2)], 4), perm_from_cycles([(1, 2, 3)], 4)])
    ca = CosetAction(G, H)
    assert ca.degree == 4
    induced = ca.induced_group()
    assert induced.order() == 24 and induced.is_transitive()
    # rep_actions[i][c] is the label of coset c * rep_i
    for i, rep in enumerate(ca.reps):
        for c, other in enumerate(ca.reps):
            assert ca.rep_actions[i][c] == ca.label(other * rep)
    for g in G.elements():
        assert ca.induced(g) == induced.identity() or ca.induced(g) in induced


def test_coset_action_rejects_foreign_subgroup():
    G = PermutationGroup([perm_from_cycles([(1, 2, 3)], 4)])
    H = PermutationGroup([perm_from_cycles([(3, 4)], 4)])
    with pytest.raises(NotInGroupError):
        CosetAction(G, H)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.data())
def test_double_coset_size_formula(n, data):
    G = _symmetric(n)
    H = PermutationGroup([perm_from_cycles([(1, 2)], n), perm_from_cycles([(2, 3)], n)])
    g = data.draw(perms(n))
    ca = CosetAction(G, H)
    # |HgH| / |H| = |H| / |H ∩ H^g|
    assert len(double_coset_cosets(ca, g)) * conjugate_intersection_order(H, g) == H.order()


def test_involutions_in():
    G = _symmetric(4)
    assert len(involutions_in(G.elements())) == 9
