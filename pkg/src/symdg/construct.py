"""Factories for the two digraph families and their groups.

``build_gamma(s)`` gives the 2-valent family on ``R_s = <a_s, b_s>`` inside
``Sym(4s)``.  ``build_sigma()`` gives the 160-valent digraph on
``R = (C7 : C3)^2`` acting on the 64 points of ``PG(1,7) x PG(1,7)``; the
automorphism of ``R`` swapping ``a <-> c`` and ``b <-> d`` is realized as
conjugation by the coordinate swap ``β``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations, product

from .digraph import Digraph, cayley_digraph
from .errors import ConstructionError, EnumerationBoundError, FixtureMismatchError
from .perm import CosetAction, Permutation, PermutationGroup, perm_from_cycles
from .words import evaluate_word

INF = 7
P = 7


# projective line over F_7


def _lft_point(matrix, x: int) -> int:
    (a, b), (c, d) = matrix
    if x == INF:
        return INF if b % P == 0 else a * pow(b, -1, P) % P
    num, den = (a * x + c) % P, (b * x + d) % P
    return INF if den == 0 else num * pow(den, -1, P) % P


def linear_fractional(matrix) -> Permutation:
    """Permutation ``x -> (ax + c)/(bx + d)`` of ``F_7 ∪ {∞}`` for ``[[a, b], [c, d]]``.

    Points ``0..6`` are field elements and ``7`` is ``∞``.
    """
    (a, b), (c, d) = matrix
    if (a * d - b * c) % P == 0:
        raise ValueError(f"matrix {matrix} is singular over F_7")
    return Permutation([_lft_point(matrix, x) for x in range(P + 1)])


def pair_action(first: Permutation, second: Permutation) -> Permutation:
    """``(x, y) -> (first(x), second(y))`` on the 64 points ``8x + y``."""
    f, g = first.images, second.images
    return Permutation([8 * f[p // 8] + g[p % 8] for p in range(64)], check=False)


def coordinate_swap() -> Permutation:
    return Permutation([8 * (p % 8) + p // 8 for p in range(64)], check=False)


def point_label(p: int) -> str:
    name = lambda z: "∞" if z == INF else str(z)
    return f"({name(p // 8)},{name(p % 8)})"


# Γ_s family


@dataclass
class GammaFamilyInstance:
    s: int
    a: Permutation
    b: Permutation
    h: Permutation
    g: Permutation
    R: PermutationGroup
    N: PermutationGroup
    G: PermutationGroup
    H: PermutationGroup
    elements: list[Permutation]
    labels: list[str]
    digraph: Digraph
    enumeration_bound: int = 2_000_000
    _coset_action: CosetAction | None = field(default=None, repr=False)

    @property
    def connection_set(self) -> list[Permutation]:
        return [self.a * self.b, self.b]

    @property
    def coset_action(self) -> CosetAction:
        if self._coset_action is None:
            self._coset_action = CosetAction(self.G, self.H)
        return self._coset_action

    def manifest(self) -> dict:
        return {
            "family": "gamma",
            "s": self.s,
            "degree": 4 * self.s,
            "generators": {name: p.to_cycle_string() for name, p in self.named().items()},
            "orders": {"R": self.R.order(), "N": self.N.order(), "G": self.G.order(), "H": self.H.order()},
            "vertices": self.digraph.n,
            "valency": self.digraph.valency(),
            "connection_set": ["ab", "b"],
        }

    def named(self) -> dict[str, Permutation]:
        return {"a": self.a, "b": self.b, "h": self.h, "g": self.g}


def gamma_generators(s: int) -> dict[str, Permutation]:
    """``a, b, h, g`` for the family at parameter ``s`` (degree ``4s``)."""
    if s < 2:
        raise ValueError("s must be at least 2")
    n = 4 * s
    a = perm_from_cycles([(2 * s - 1, 2 * s), (4 * s - 1, 4 * s)], n)
    b = perm_from_cycles([list(range(1, n, 2)) + list(range(2, n + 1, 2))], n)
    h = perm_from_cycles([(1, 2)], n)
    g = perm_from_cycles([list(range(1, n, 2)), list(range(2, n + 1, 2))], n)
    return {"a": a, "b": b, "h": h, "g": g}


def _bfs_with_words(connection_set, names, identity):
    """Vertices reachable from the identity along ``x -> c x``, with their words."""
    order, words = [identity], ["1"]
    seen = {identity: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = order[i]
        for c, name in zip(connection_set, names):
            y = c * x
            if y not in seen:
                seen[y] = len(order)
                order.append(y)
                words.append(name if words[i] == "1" else name + "·" + words[i])
                queue.append(len(order) - 1)
    return order, words


def build_gamma(s: int, enumeration_bound: int = 2_000_000) -> GammaFamilyInstance:
    gens = gamma_generators(s)
    a, b, h, g = gens["a"], gens["b"], gens["h"], gens["g"]
    n = 4 * s
    R = PermutationGroup([a, b], enumeration_bound=enumeration_bound)
    N = PermutationGroup([a.conj(b**i) for i in range(s)], degree=n)
    G = PermutationGroup([h, g], enumeration_bound=enumeration_bound)
    H = PermutationGroup([h.conj(g**i) for i in range(s)], degree=n)

    checks = {
        "a = h^(g^(s-1)) h^(g^-1)": a == h.conj(g ** (s - 1)) * h.conj(g**-1),
        "b = g h": b == g * h,
        "|R| = 2^(s+1) s": R.order() == 2 ** (s + 1) * s,
        "|H| = 2^s": H.order() == 2**s,
        "|G| = 2^(2s) 2s": G.order() == 2 ** (2 * s) * 2 * s,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise ConstructionError(f"s={s}: failed identities {failed}")
    if G.order() > enumeration_bound:
        raise EnumerationBoundError(f"|G| = {G.order()} exceeds the enumeration bound {enumeration_bound}")

    conn = [a * b, b]
    elements, labels = _bfs_with_words(conn, ["ab", "b"], R.identity())
    if len(elements) != R.order():
        raise ConstructionError("connection set does not generate R")
    gamma = cayley_digraph(elements, conn, labels)
    return GammaFamilyInstance(s, a, b, h, g, R, N, G, H, elements, labels, gamma, enumeration_bound)


# Σ


S1_WORDS = ("a", "a^5", "a^6b", "a^6b^2")
S2_WORDS = ("ab", "(ab)^{-1}")
S3_WORDS = ("a^3", "b", "ab^2", "a^4b^2")
S4_WORDS = ("a^2b", "(a^2b)^{-1}")

LFT_MATRICES = {
    "a": ((1, 0), (1, 1)),
    "b": ((2, 0), (0, 1)),
    "s": ((2, 1), (1, 1)),
    "t": ((0, 1), (-1, 0)),
    "alpha": ((-1, 1), (0, 1)),
}
IDENTITY_2 = ((1, 0), (0, 1))


def sigma_generators() -> dict[str, Permutation]:
    """The named permutations of the 64-point model, keyed by their letters."""
    lft = {k: linear_fractional(m) for k, m in LFT_MATRICES.items()}
    one = linear_fractional(IDENTITY_2)
    beta = coordinate_swap()
    p = {
        "a": pair_action(lft["a"], one),
        "b": pair_action(lft["b"], one),
        "c": pair_action(one, lft["a"]),
        "d": pair_action(one, lft["b"]),
        "s": pair_action(lft["s"], one),
        "t": pair_action(lft["t"], one),
        "α": pair_action(lft["alpha"], lft["alpha"]),
        "β": beta,
    }
    p["u"] = p["s"].conj(beta)
    p["v"] = p["t"].conj(beta)
    ident = Permutation.identity(64)
    p["g1"] = evaluate_word("a^4c^5", p, ident)
    p["g2"] = evaluate_word("a^2c^3d^2", p, ident)
    return p


def _word_set(words, symbols, identity) -> list[Permutation]:
    return [evaluate_word(w, symbols, identity) for w in words]


def _set_product(xs, ys) -> list[Permutation]:
    return [x * y for x in xs for y in ys]


@dataclass
class SigmaInstance:
    perms: dict[str, Permutation]
    R: PermutationGroup
    G: PermutationGroup
    H: PermutationGroup
    elements: list[Permutation]
    labels: list[str]
    subsets: dict[str, list[Permutation]]
    blocks: list[tuple[str, list[Permutation]]]
    connection_set: list[Permutation]
    digraph: Digraph
    _coset_action: CosetAction | None = field(default=None, repr=False)

    def __getitem__(self, name: str) -> Permutation:
        return self.perms[name]

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(64)

    def word(self, text: str) -> Permutation:
        return evaluate_word(text, self.perms, self.identity)

    def gamma(self, x: Permutation) -> Permutation:
        """The swap ``a <-> c``, ``b <-> d`` on ``R``, realized by conjugating with ``β``."""
        return x.conj(self.perms["β"])

    @property
    def coset_action(self) -> CosetAction:
        if self._coset_action is None:
            self._coset_action = CosetAction(self.G, self.H)
        return self._coset_action

    @cached_property
    def N(self) -> PermutationGroup:
        p = self.perms
        return PermutationGroup([p["s"], p["t"], p["u"], p["v"]])

    def manifest(self) -> dict:
        named = ("a", "b", "c", "d", "s", "t", "u", "v", "α", "β", "g1", "g2")
        return {
            "family": "sigma",
            "degree": 64,
            "point_encoding": "(x, y) -> 8*x + y with ∞ encoded as 7",
            "generators": {k: self.perms[k].to_cycle_string() for k in named},
            "orders": {"R": self.R.order(), "G": self.G.order(), "H": self.H.order()},
            "connection_set_size": len(self.connection_set),
            "vertices": self.digraph.n,
            "valency": self.digraph.valency(),
        }


def _r_normal_form_elements(p: dict[str, Permutation]):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    elements, labels = [], []
    for i, j, k, l in product(range(7), range(3), range(7), range(3)):
        elements.append((a**i) * (b**j) * (c**k) * (d**l))
        parts = [f"{x}^{e}" if e > 1 else x for x, e in (("a", i), ("b", j), ("c", k), ("d", l)) if e]
        labels.append("".join(parts) or "1")
    return elements, labels


def build_sigma(enumeration_bound: int = 2_000_000) -> SigmaInstance:
    p = sigma_generators()
    ident = Permutation.identity(64)
    R = PermutationGroup([p["a"], p["b"], p["c"], p["d"]], enumeration_bound=enumeration_bound)
    G = PermutationGroup(
        [p[k] for k in ("a", "b", "c", "d", "t", "v", "α", "β")], enumeration_bound=enumeration_bound
    )
    H = PermutationGroup([p[k] for k in ("s", "t", "u", "v", "α", "β")], enumeration_bound=enumeration_bound)

    gamma = lambda x: x.conj(p["β"])
    if [gamma(p[k]) for k in "abcd"] != [p[k] for k in "cdab"]:
        raise ConstructionError("conjugation by β does not swap a <-> c and b <-> d")

    S1, S2, S3, S4 = (_word_set(w, p, ident) for w in (S1_WORDS, S2_WORDS, S3_WORDS, S4_WORDS))
    inv = lambda xs: [x.inverse() for x in xs]
    img = lambda xs: [gamma(x) for x in xs]
    blocks = [
        ("(S1 ∪ S1^-1)(S3 ∪ S3^-1)^γ", _set_product(S1 + inv(S1), img(S3 + inv(S3)))),
        ("(S3 ∪ S3^-1)(S1 ∪ S1^-1)^γ", _set_product(S3 + inv(S3), img(S1 + inv(S1)))),
        ("S1 S2^γ", _set_product(S1, img(S2))),
        ("S2 S1^γ", _set_product(S2, img(S1))),
        ("S1^-1 S4^γ", _set_product(inv(S1), img(S4))),
        ("S4 (S1^-1)^γ", _set_product(S4, img(inv(S1)))),
    ]
    for name, block in blocks:
        if len(set(block)) != len(block):
            raise ConstructionError(f"block {name} has repeated products")
    for (n1, b1), (n2, b2) in combinations(blocks, 2):
        if set(b1) & set(b2):
            raise ConstructionError(f"blocks {n1} and {n2} intersect")
    conn = [x for _, block in blocks for x in block]

    elements, labels = _r_normal_form_elements(p)
    if len(set(elements)) != R.order():
        raise ConstructionError("normal forms a^i b^j c^k d^l do not enumerate R")
    if any(x.is_identity() or x not in R for x in conn):
        raise ConstructionError("connection set must lie in R minus the identity")
    sigma = cayley_digraph(elements, conn, labels)
    subsets = {"S1": S1, "S2": S2, "S3": S3, "S4": S4}
    return SigmaInstance(p, R, G, H, elements, labels, subsets, blocks, conn, sigma)


def sigma_identities(inst: SigmaInstance) -> dict[str, bool]:
    """Named permutation identities of the 64-point model."""
    p = inst.perms
    w = inst.word
    order = lambda x: x.order()
    return {
        "|a| = |c| = 7": order(p["a"]) == order(p["c"]) == 7,
        "|b| = |d| = 3": order(p["b"]) == order(p["d"]) == 3,
        "b^-1 a b = a^2": p["a"].conj(p["b"]) == p["a"] ** 2,
        "d^-1 c d = c^2": p["c"].conj(p["d"]) == p["c"] ** 2,
        "|s^2| = |u^2| = |t| = |v| = |α| = |β| = 2": all(
            order(x) == 2 for x in (p["s"] ** 2, p["u"] ** 2, p["t"], p["v"], p["α"], p["β"])
        ),
        "s = (αt)^2": p["s"] == w("(αt)^2"),
        "u = (αv)^2": p["u"] == w("(αv)^2"),
        "s^t = s^-1": p["s"].conj(p["t"]) == p["s"].inverse(),
        "u^v = u^-1": p["u"].conj(p["v"]) == p["u"].inverse(),
        "s^α = s^3": p["s"].conj(p["α"]) == p["s"] ** 3,
        "t^α = st": p["t"].conj(p["α"]) == w("st"),
        "u^α = u^3": p["u"].conj(p["α"]) == p["u"] ** 3,
        "v^α = uv": p["v"].conj(p["α"]) == w("uv"),
        "g1: (x, y) -> (x + 4, y + 5)": all(
            p["g1"](8 * x + y) == 8 * ((x + 4) % 7) + (y + 5) % 7 for x in range(7) for y in range(7)
        ),
        "g2: (x, y) -> (x + 2, 4y + 5)": all(
            p["g2"](8 * x + y) == 8 * ((x + 2) % 7) + (4 * y + 5) % 7 for x in range(7) for y in range(7)
        ),
    }


def r_is_transversal(inst: SigmaInstance) -> bool:
    """The 441 elements of ``R`` lie in 441 distinct right cosets of ``H``."""
    ca = inst.coset_action
    return len({ca.label(r) for r in inst.elements}) == len(inst.elements) == ca.degree


# fixtures


def _load_data(name: str) -> dict:
    return json.loads(resources.files("symdg.data").joinpath(name).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class TableRow:
    index: int
    table: int
    x: str
    h: str
    k: str
    j: int


def tables_fixture() -> list[TableRow]:
    """Rows ``(x, h, k, j)`` asserting ``x = h g_j k`` for elements ``x`` of ``S``."""
    data = _load_data("tables.json")
    return [TableRow(i, r["table"], r["x"], r["h"], r["k"], r["j"]) for i, r in enumerate(data["rows"])]


def check_table_rows(inst: SigmaInstance, rows: list[TableRow] | None = None) -> int:
    """Check every row; raise :class:`FixtureMismatchError` listing each failing row."""
    rows = tables_fixture() if rows is None else rows
    mismatches = []
    for row in rows:
        lhs = inst.word(row.x)
        rhs = inst.word(row.h) * inst.perms[f"g{row.j}"] * inst.word(row.k)
        if lhs != rhs:
            mismatches.append(
                f"row {row.index} (table {row.table}): x = {row.x} is {lhs.to_cycle_string()} "
                f"but h·g{row.j}·k = ({row.h})·g{row.j}·({row.k}) is {rhs.to_cycle_string()}"
            )
    if mismatches:
        raise FixtureMismatchError(f"{len(mismatches)} of {len(rows)} table rows fail", mismatches)
    return len(rows)


def table_rows_in_connection_set(inst: SigmaInstance, rows: list[TableRow] | None = None) -> bool:
    rows = tables_fixture() if rows is None else rows
    conn = set(inst.connection_set)
    return all(inst.word(r.x) in conn for r in rows)


def involution_fixture() -> dict:
    return _load_data("involutions.json")


def _subset_elements(inst: SigmaInstance, key: str) -> list[Permutation]:
    p = inst.perms
    if key == "st":
        return PermutationGroup([p["s"], p["t"]]).elements()
    if key == "uv":
        return PermutationGroup([p["u"], p["v"]]).elements()
    tail = {"N_alpha": p["α"], "N_beta": p["β"], "N_alphabeta": p["α"] * p["β"]}[key]
    return [n * tail for n in inst.N.elements()]


def conjugate_involutions(inst: SigmaInstance, key: str, conjugator: str) -> set[Permutation]:
    """Involutions of ``X^g`` where ``X`` is the named subset of ``H``."""
    g = inst.perms[conjugator]
    return {y for y in (x.conj(g) for x in _subset_elements(inst, key)) if y.order() == 2}


@dataclass(frozen=True)
class InvolutionSetResult:
    subset: str
    conjugator: str
    expected: int
    computed: int
    match: bool
    missing: tuple[str, ...]
    unexpected: int


def involution_set_results(inst: SigmaInstance) -> list[InvolutionSetResult]:
    results = []
    for entry in involution_fixture()["sets"]:
        computed = conjugate_involutions(inst, entry["subset"], entry["conjugator"])
        listed = {w: inst.word(w) for w in entry["words"]}
        expected = set(listed.values())
        missing = tuple(w for w, x in listed.items() if x not in computed)
        results.append(
            InvolutionSetResult(
                entry["subset"],
                entry["conjugator"],
                len(entry["words"]),
                len(computed),
                computed == expected and len(expected) == len(entry["words"]),
                missing,
                len(computed - expected),
            )
        )
    return results


def h_meets_conjugate_involutions(inst: SigmaInstance, conjugator: str) -> set[Permutation]:
    """``H ∩ I_2(H^g)``."""
    g = inst.perms[conjugator]
    H = inst.H
    return {y for y in (x.conj(g) for x in H.elements()) if y.order() == 2 and y in H}


def involution_check(inst: SigmaInstance) -> bool:
    """All listed involution sets match, and ``H ∩ I_2(H^g)`` is as listed for both ``g``."""
    mismatched = [r for r in involution_set_results(inst) if not r.match]
    if mismatched:
        detail = [
            f"{r.subset}^{r.conjugator}: {r.computed} computed vs {r.expected} listed, "
            f"missing {list(r.missing)}, {r.unexpected} unexpected"
            for r in mismatched
        ]
        raise FixtureMismatchError(f"{len(mismatched)} involution sets differ", detail)
    for conj, words in involution_fixture()["h_meets_conjugate"].items():
        expected = {inst.word(w) for w in words}
        if h_meets_conjugate_involutions(inst, conj) != expected or len(expected) != len(words):
            raise FixtureMismatchError(f"H ∩ I_2(H^{conj}) differs from {words}", [conj])
    return True
