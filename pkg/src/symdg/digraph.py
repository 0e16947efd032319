"""Digraphs given by out-adjacency lists, and the symmetric constructions on them."""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from operator import itemgetter

import numpy as np

from .errors import (
    InvalidConnectionSetError,
    NotAnAutomorphismError,
    NotInGroupError,
    ResourceBoundError,
    TransversalError,
)
from .exact import RationalMatrix
from .perm import CosetAction, Permutation, PermutationGroup, double_coset_cosets

DEFAULT_MAX_ARCS = 10**8
DEFAULT_DOT_LIMIT = 2000


class Digraph:
    """Irreflexive digraph on ``0 .. n-1``; ``out_adj[v]`` is sorted and duplicate free."""

    __slots__ = ("n", "out_adj", "vertex_labels", "_out_sets")

    def __init__(self, n: int, out_adj: Sequence[Iterable[int]], vertex_labels: Sequence[str] | None = None):
        if len(out_adj) != n:
            raise ValueError(f"expected {n} adjacency lists, got {len(out_adj)}")
        adj = []
        for v, nbrs in enumerate(out_adj):
            row = tuple(sorted(set(nbrs)))
            if row and (row[0] < 0 or row[-1] >= n):
                raise ValueError(f"vertex {v} has an out-neighbour outside 0..{n - 1}")
            if v in row:
                raise ValueError(f"self-loop at vertex {v}")
            adj.append(row)
        if vertex_labels is not None and len(vertex_labels) != n:
            raise ValueError("one label per vertex required")
        self.n = n
        self.out_adj = tuple(adj)
        self.vertex_labels = None if vertex_labels is None else tuple(vertex_labels)
        self._out_sets = None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], vertex_labels=None) -> Digraph:
        adj = [[] for _ in range(n)]
        for u, v in arcs:
            adj[u].append(v)
        return cls(n, adj, vertex_labels)

    def arcs(self):
        for u, nbrs in enumerate(self.out_adj):
            for v in nbrs:
                yield u, v

    def num_arcs(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        if self._out_sets is None:
            self._out_sets = [frozenset(nbrs) for nbrs in self.out_adj]
        return v in self._out_sets[u]

    def out_degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.out_adj]

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for _, v in self.arcs():
            deg[v] += 1
        return deg

    def valency(self) -> int | None:
        """Common in- and out-valency, or ``None`` if the digraph is not regular."""
        degrees = set(self.out_degrees()) | set(self.in_degrees())
        return degrees.pop() if len(degrees) == 1 else None

    def adjacency_array(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, nbrs in enumerate(self.out_adj):
            a[u, list(nbrs)] = 1
        return a

    def adjacency_matrix(self) -> RationalMatrix:
        return RationalMatrix(self.adjacency_array().tolist())

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out_adj == other.out_adj

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.num_arcs()})"

    # serialization

    def to_json(self) -> dict:
        data = {"n": self.n, "arcs": [[u, v] for u, v in self.arcs()]}
        if self.vertex_labels is not None:
            data["labels"] = list(self.vertex_labels)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict | str) -> Digraph:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_arcs(int(data["n"]), (tuple(arc) for arc in data["arcs"]), data.get("labels"))

    def to_dot(self, with_labels: bool = False, max_vertices: int = DEFAULT_DOT_LIMIT) -> str:
        if self.n > max_vertices:
            raise ResourceBoundError(f"{self.n} vertices exceeds the DOT export limit {max_vertices}")
        lines = ["digraph G {"]
        if with_labels and self.vertex_labels is not None:
            for v, label in enumerate(self.vertex_labels):
                escaped = label.replace('"', '\\"')
                lines.append(f'  {v} [label="{escaped}"];')
        lines += [f"  {u} -> {v};" for u, v in self.arcs()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [[(v + 1) % n] for v in range(n)])


def cayley_vertex_order(connection_set: Sequence[Permutation], group: PermutationGroup) -> list[Permutation]:
    """Breadth-first order from the identity along ``x -> s x``; falls back to the
    sorted element list when the connection set does not generate the group."""
    ident = group.identity()
    order = [ident]
    seen = {ident}
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for s in connection_set:
            y = s * x
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    if len(order) != group.order():
        return group.elements()
    return order


def cayley_digraph(
    elements: Sequence[Permutation],
    connection_set: Sequence[Permutation],
    labels: Sequence[str] | None = None,
) -> Digraph:
    """``Cay(G, S)``: vertex ``i`` is ``elements[i]`` and ``x -> y`` iff ``y x^-1`` lies in ``S``."""
    if not elements or not elements[0].is_identity():
        raise ValueError("the element list must start with the identity")
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise ValueError("duplicate group elements")
    for s in connection_set:
        if s.is_identity():
            raise InvalidConnectionSetError("the identity cannot belong to a connection set")
        if s not in index:
            raise InvalidConnectionSetError(f"{s.to_cycle_string()} is not a group element")
    adj = []
    for x in elements:
        try:
            adj.append([index[s * x] for s in connection_set])
        except KeyError:
            raise NotInGroupError("element list is not closed under the connection set") from None
    return Digraph(len(elements), adj, labels)


def coset_digraph(ca: CosetAction, d_reps: Sequence[Permutation]) -> Digraph:
    """``Cos(G, H, D)`` with ``D`` the union of the double cosets ``H r H``."""
    out_of_h: set[int] = set()
    for r in d_reps:
        cosets = double_coset_cosets(ca, r)
        if 0 in cosets:
            raise InvalidConnectionSetError(f"{r.to_cycle_string()} lies in the subgroup")
        out_of_h |= cosets
    targets = np.array(sorted(out_of_h), dtype=np.int64)
    acts = ca.rep_actions
    adj = [acts[i][targets].tolist() for i in range(ca.degree)]
    return Digraph(ca.degree, adj)


def tensor_product(first: Digraph, second: Digraph) -> Digraph:
    """Vertex ``(u, v)`` is ``u * second.n + v``; arcs need arcs in both coordinates."""
    m = second.n
    adj = []
    for u in range(first.n):
        for v in range(m):
            adj.append([u2 * m + v2 for u2 in first.out_adj[u] for v2 in second.out_adj[v]])
    return Digraph(first.n * m, adj)


def tensor_power(gamma: Digraph, n: int) -> Digraph:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    result = gamma
    for _ in range(n - 1):
        result = tensor_product(result, gamma)
    return result


def strongly_connected_components(gamma: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index = [-1] * gamma.n
    low = [0] * gamma.n
    on_stack = [False] * gamma.n
    stack: list[int] = []
    components = []
    counter = 0
    for root in range(gamma.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = gamma.out_adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(sorted(comp))
    return components


def strongly_connected(gamma: Digraph) -> bool:
    return gamma.n > 0 and len(strongly_connected_components(gamma)) == 1


def count_s_arcs(gamma: Digraph, s: int) -> int:
    """Number of walks ``v_0 -> ... -> v_s``; a 0-arc is a vertex."""
    if s < 0:
        raise ValueError("s must be non-negative")
    counts = [1] * gamma.n
    for _ in range(s):
        counts = [sum(counts[w] for w in gamma.out_adj[v]) for v in range(gamma.n)]
    return sum(counts)


def first_s_arc(gamma: Digraph, s: int) -> tuple[int, ...] | None:
    """Lexicographically least s-arc, or ``None`` if there is none."""
    extendable = [[True] * gamma.n]
    for _ in range(s):
        prev = extendable[-1]
        extendable.append([any(prev[w] for w in gamma.out_adj[v]) for v in range(gamma.n)])
    start = next((v for v in range(gamma.n) if extendable[s][v]), None)
    if start is None:
        return None
    arc = [start]
    for k in range(s - 1, -1, -1):
        arc.append(next(w for w in gamma.out_adj[arc[-1]] if extendable[k][w]))
    return tuple(arc)


def check_automorphism(gamma: Digraph, gen: Permutation, index: int = 0) -> None:
    """Raise :class:`NotAnAutomorphismError` naming the first arc not preserved."""
    if gen.degree != gamma.n:
        raise ValueError(f"generator {index} has degree {gen.degree}, digraph has {gamma.n} vertices")
    img = gen.images
    for u, v in gamma.arcs():
        if not gamma.has_arc(img[u], img[v]):
            raise NotAnAutomorphismError(index, (u, v), (img[u], img[v]))


@dataclass(frozen=True)
class ArcOrbitWitness:
    s: int
    total_arcs: int
    orbit_size: int
    transitive: bool


def _arc_orbit(arc: tuple[int, ...], getters) -> set[tuple[int, ...]]:
    orbit = {arc}
    queue = [arc]
    while queue:
        x = queue.pop()
        for get in getters:
            y = get(x)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return orbit


def _getters(gens: Sequence[Permutation], s: int):
    if s == 0:
        return [lambda arc, g=g: (g.images[arc[0]],) for g in gens]
    return [lambda arc, g=g: itemgetter(*arc)(g.images) for g in gens]


def is_s_arc_transitive_under(
    gamma: Digraph,
    witness_gens: Sequence[Permutation],
    s: int,
    max_arcs: int = DEFAULT_MAX_ARCS,
) -> ArcOrbitWitness:
    """Orbit of the first s-arc under the witness group, compared with all s-arcs.

    A transitive verdict certifies s-arc-transitivity of ``gamma``; a negative one
    only says that this particular group is not transitive.
    """
    for i, g in enumerate(witness_gens):
        check_automorphism(gamma, g, i)
    total = count_s_arcs(gamma, s)
    if total > max_arcs:
        raise ResourceBoundError(f"{total} s-arcs exceeds the limit {max_arcs}")
    arc = first_s_arc(gamma, s)
    if arc is None:
        return ArcOrbitWitness(s, 0, 0, True)
    orbit = _arc_orbit(arc, _getters(witness_gens, s))
    return ArcOrbitWitness(s, total, len(orbit), len(orbit) == total)


def all_s_arcs(gamma: Digraph, s: int) -> list[tuple[int, ...]]:
    arcs = [(v,) for v in range(gamma.n)]
    for _ in range(s):
        arcs = [a + (w,) for a in arcs for w in gamma.out_adj[a[-1]]]
    return arcs


def s_arc_orbits(
    gamma: Digraph,
    witness_gens: Sequence[Permutation],
    s: int,
    max_arcs: int = DEFAULT_MAX_ARCS,
) -> list[int]:
    """Sizes of all orbits of the witness group on s-arcs, in order of first arc."""
    for i, g in enumerate(witness_gens):
        check_automorphism(gamma, g, i)
    total = count_s_arcs(gamma, s)
    if total > max_arcs:
        raise ResourceBoundError(f"{total} s-arcs exceeds the limit {max_arcs}")
    getters = _getters(witness_gens, s)
    seen: set[tuple[int, ...]] = set()
    sizes = []
    for arc in all_s_arcs(gamma, s):
        if arc in seen:
            continue
        orbit = _arc_orbit(arc, getters)
        seen |= orbit
        sizes.append(len(orbit))
    return sizes


def verify_coset_model(
    gamma: Digraph,
    elements: Sequence[Permutation],
    ca: CosetAction,
    d_reps: Sequence[Permutation],
) -> bool:
    """Check that ``r -> Hr`` is an isomorphism from ``gamma`` onto ``Cos(G, H, D)``.

    ``elements[i]`` is the group element labelling vertex ``i`` of ``gamma``; the
    labels must form a right transversal of ``H``.
    """
    if gamma.n != len(elements) or gamma.n != ca.degree:
        return False
    psi = []
    owner: dict[int, int] = {}
    for i, r in enumerate(elements):
        label = ca.label(r)
        if label in owner:
            raise TransversalError(owner[label], i, label)
        owner[label] = i
        psi.append(label)
    model = coset_digraph(ca, d_reps).adjacency_array()
    psi = np.array(psi)
    return bool(np.array_equal(gamma.adjacency_array(), model[np.ix_(psi, psi)]))


def coset_labelling(elements: Sequence[Permutation], ca: CosetAction) -> list[int]:
    """``psi[i]`` = label of the coset ``H elements[i]``."""
    return [ca.label(r) for r in elements]


def transport(perm_on_cosets: Permutation, psi: Sequence[int]) -> Permutation:
    """Pull a permutation of coset labels back along the bijection ``psi``."""
    inv = [0] * len(psi)
    for i, label in enumerate(psi):
        inv[label] = i
    return Permutation([inv[perm_on_cosets.images[psi[i]]] for i in range(len(psi))], check=False)
