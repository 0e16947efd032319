import json

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdg.errors import InvalidConnectionSetError, NotAnAutomorphismError, ResourceBoundError, TransversalError
from symdg.perm import CosetAction, Permutation, PermutationGroup, perm_from_cycles
from symdg.digraph import (
    Digraph,
    all_s_arcs,
    cayley_digraph,
    cayley_vertex_order,
    check_automorphism,
    count_s_arcs,
    directed_cycle,
    first_s_arc,
    is_s_arc_transitive_under,
    s_arc_orbits,
    strongly_connected,
    strongly_connected_components,
    tensor_power,
    tensor_product,
    verify_coset_model,
)


def digraphs(max_n=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(0, n - 1), max_size=3, unique=True), min_size=n, max_size=n
        ).map(lambda adj: Digraph(n, [[w for w in row if w != i] for i, row in enumerate(adj)]))
    )


def to_nx(gamma):
    G = nx.DiGraph()
    G.add_nodes_from(range(gamma.n))
    G.add_edges_from(gamma.arcs())
    return G


def test_cycle_basics():
    c = directed_cycle(5)
    assert c.valency() == 1 and c.num_arcs() == 5
    assert c.has_arc(4, 0) and not c.has_arc(0, 4)
    assert strongly_connected(c)
    rot = Permutation([1, 2, 3, 4, 0])
    w = is_s_arc_transitive_under(c, [rot], 3)
    assert w.transitive and w.total_arcs == 5


def test_validation():
    with pytest.raises(ValueError):
        Digraph(2, [[5], []])
    with pytest.raises(ValueError):
        Digraph(2, [[0], []])
    with pytest.raises(ValueError):
        Digraph(2, [[1]])
    # a relation, so repeated arcs collapse
    assert Digraph(2, [[1, 1], []]).num_arcs() == 1


@settings(max_examples=80, deadline=None)
@given(digraphs())
def test_scc_matches_networkx(gamma):
    ours = sorted(sorted(c) for c in strongly_connected_components(gamma))
    theirs = sorted(sorted(c) for c in nx.strongly_connected_components(to_nx(gamma)))
    assert ours == theirs
    assert strongly_connected(gamma) == nx.is_strongly_connected(to_nx(gamma))


@settings(max_examples=60, deadline=None)
@given(digraphs(6), st.integers(0, 3))
def test_s_arc_counts(gamma, s):
    A = gamma.adjacency_array().astype(np.int64)
    expected = int(np.linalg.matrix_power(A, s).sum())
    assert count_s_arcs(gamma, s) == expected == len(all_s_arcs(gamma, s))
    arc = first_s_arc(gamma, s)
    assert (arc is None) == (expected == 0)


@settings(max_examples=60, deadline=None)
@given(digraphs(6))
def test_json_round_trip(gamma):
    again = Digraph.from_json(json.loads(gamma.dumps()))
    assert again == gamma
    assert Digraph.from_json(gamma.dumps()) == gamma


@settings(max_examples=40, deadline=None)
@given(digraphs(5), digraphs(4))
def test_tensor_product_is_kronecker(g1, g2):
    prod = tensor_product(g1, g2)
    assert np.array_equal(prod.adjacency_array(), np.kron(g1.adjacency_array(), g2.adjacency_array()))
    assert prod.adjacency_matrix() == g1.adjacency_matrix().kron(g2.adjacency_matrix())


def test_tensor_power():
    c = directed_cycle(3)
    assert tensor_power(c, 1) == c
    cube = tensor_power(c, 3)
    assert cube.n == 27 and cube.valency() == 1
    # C3 x C3 splits into three directed 3-cycles
    assert len(strongly_connected_components(tensor_power(c, 2))) == 3
    with pytest.raises(ValueError):
        tensor_power(c, 0)


def test_dot_export():
    c = directed_cycle(3)
    assert "0 -> 1;" in c.to_dot()
    with pytest.raises(ResourceBoundError):
        directed_cycle(10).to_dot(max_vertices=5)


def _s3():
    r = perm_from_cycles([(1, 2, 3)], 3)
    f = perm_from_cycles([(1, 2)], 3)
    return r, f, PermutationGroup([r, f])


def test_cayley_digraph_of_s3():
    r, f, G = _s3()
    order = cayley_vertex_order([r, f], G)
    gamma = cayley_digraph(order, [r, f])
    assert gamma.n == 6 and gamma.valency() == 2 and strongly_connected(gamma)
    # x -> y iff y x^-1 in S
    for u, v in gamma.arcs():
        assert order[v] * order[u].inverse() in (r, f)
    # right multiplication is an automorphism of x -> s x
    index = {x: i for i, x in enumerate(order)}
    for g in G.elements():
        check_automorphism(gamma, Permutation([index[x * g] for x in order]))


def test_cayley_rejects_identity_in_connection_set():
    r, f, G = _s3()
    with pytest.raises(InvalidConnectionSetError):
        cayley_digraph(G.elements(), [G.identity()])


def test_corrupted_witness_names_an_arc():
    c = directed_cycle(4)
    bad = Permutation([1, 0, 2, 3])
    with pytest.raises(NotAnAutomorphismError) as info:
        is_s_arc_transitive_under(c, [Permutation([1, 2, 3, 0]), bad], 1)
    assert info.value.generator_index == 1


def test_arc_orbits_split():
    # the undirected 4-cycle as a digraph: rotations alone give 2 orbits on 2-arcs (straight vs back)
    c = Digraph(4, [[1, 3], [0, 2], [1, 3], [0, 2]])
    rot = Permutation([1, 2, 3, 0])
    assert sorted(s_arc_orbits(c, [rot], 2)) == [4, 4, 4, 4]
    refl = Permutation([0, 3, 2, 1])
    assert sorted(s_arc_orbits(c, [rot, refl], 2)) == [8, 8]


def test_coset_model_of_regular_action():
    """With H trivial the coset digraph is the Cayley digraph itself."""
    r, f, G = _s3()
    H = PermutationGroup([], degree=3)
    ca = CosetAction(G, H)
    order = cayley_vertex_order([r, f], G)
    gamma = cayley_digraph(order, [r, f])
    assert verify_coset_model(gamma, order, ca, [r, f])
    assert not verify_coset_model(gamma, order, ca, [r])
    with pytest.raises(TransversalError):
        verify_coset_model(gamma, [order[0]] * 6, ca, [r, f])
