"""Permutation groups: composition, stabilizer chains, orbits, blocks and coset actions.

Conventions
-----------
Points are ``0 .. degree-1``.  Permutations act on the right, so ``p * q`` means
"apply ``p``, then ``q``" and ``p.conj(q)`` is ``q**-1 * p * q``.  The cycle
parser accepts 1-based cycle notation such as ``"(3,4)(7,8)"``.
"""

from __future__ import annotations

import json
import math
import re
from collections.abc import Iterable, Sequence
from operator import itemgetter
from pathlib import Path

import numpy as np

from .errors import (
    DegreeMismatchError,
    EnumerationBoundError,
    InvalidCyclesError,
    NotInGroupError,
    NotTransitiveError,
    ParseError,
)

DEFAULT_ENUMERATION_BOUND = 2_000_000


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as its image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatchError(f"degrees {self.degree} and {other.degree} differ")
        if self.degree < 2:
            return Permutation(self.images, check=False)
        return Permutation(itemgetter(*self.images)(other.images), check=False)

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def __invert__(self) -> Permutation:
        return self.inverse()

    def __pow__(self, exponent: int) -> Permutation:
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = Permutation.identity(self.degree)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self, other: Permutation) -> Permutation:
        """Return ``other**-1 * self * other``."""
        return other.inverse() * self * other

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def smallest_moved_point(self) -> int | None:
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point (0-based)."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def to_cycle_string(self) -> str:
        """1-based disjoint-cycle notation; the identity is ``"()"``."""
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        return f"Permutation({self.to_cycle_string()}, degree={self.degree})"


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
    """Build a permutation from disjoint 1-based cycles; unmentioned points are fixed."""
    if degree < 1:
        raise InvalidCyclesError(f"degree must be positive, got {degree}")
    images = list(range(degree))
    seen = set()
    for cycle in cycles:
        for point in cycle:
            if not 1 <= point <= degree:
                raise InvalidCyclesError(f"point {point} outside 1..{degree}")
            if point in seen:
                raise InvalidCyclesError(f"point {point} repeated")
            seen.add(point)
        for i, point in enumerate(cycle):
            images[point - 1] = cycle[(i + 1) % len(cycle)] - 1
    return Permutation(images, check=False)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse ``"(3,4)(7,8)"`` style text (1-based).  ``"()"`` is the identity."""
    stripped = re.sub(r"\s", "", text)
    if _CYCLE_RE.sub("", stripped):
        raise ParseError(f"could not parse cycles {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        if not body:
            continue
        try:
            cycles.append([int(tok) for tok in body.split(",")])
        except ValueError:
            raise ParseError(f"could not parse cycles {text!r}") from None
    return perm_from_cycles(cycles, degree)


def _array_dtype(degree: int):
    return np.uint8 if degree <= 256 else np.uint16 if degree <= 65536 else np.uint32


class _Level:
    __slots__ = ("base", "gens", "trans", "inv", "done")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[Permutation] = []
        self.trans: dict[int, Permutation] = {}
        self.inv: dict[int, Permutation] = {}
        self.done: set[tuple[int, int]] = set()

    def extend_orbit(self, degree: int) -> None:
        if not self.trans:
            ident = Permutation.identity(degree)
            self.trans[self.base] = ident
            self.inv[self.base] = ident
        queue = list(self.trans)
        while queue:
            p = queue.pop()
            u = self.trans[p]
            for x in self.gens:
                q = x.images[p]
                if q not in self.trans:
                    w = u * x
                    self.trans[q] = w
                    self.inv[q] = w.inverse()
                    queue.append(q)


class PermutationGroup:
    """Group generated by permutations of a common degree.

    The stabilizer chain is built on first use by a deterministic Schreier-Sims
    procedure whose base point at each level is the smallest point moved by the
    residue that created the level.
    """

    def __init__(
        self,
        generators: Iterable[Permutation],
        degree: int | None = None,
        enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
    ):
        generators = list(generators)
        degrees = {g.degree for g in generators}
        if len(degrees) > 1:
            raise DegreeMismatchError(f"generators have mixed degrees {sorted(degrees)}")
        if degree is None:
            if not generators:
                raise ValueError("degree required for a group without generators")
            degree = generators[0].degree
        elif degrees and degrees != {degree}:
            raise DegreeMismatchError(f"generator degree {degrees.pop()} != {degree}")
        self.degree = degree
        self.generators = generators
        self.enumeration_bound = enumeration_bound
        self._levels: list[_Level] | None = None
        self._elements: np.ndarray | None = None

    @classmethod
    def from_json(cls, source: str | Path | dict, **kwargs) -> PermutationGroup:
        """Load ``{"degree": n, "generators": ["(1,2)(3,4)", ...]}``."""
        if isinstance(source, dict):
            data = source
        else:
            data = json.loads(Path(source).read_text())
        degree = int(data["degree"])
        gens = [parse_cycles(text, degree) for text in data["generators"]]
        return cls(gens, degree=degree, **kwargs)

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [g.to_cycle_string() for g in self.generators]}

    # stabilizer chain

    @property
    def chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    def _sift(self, levels, g: Permutation, start: int = 0):
        for m in range(start, len(levels)):
            level = levels[m]
            p = g.images[level.base]
            if p not in level.inv:
                return g, m
            g = g * level.inv[p]
        return g, len(levels)

    def _insert(self, levels, g: Permutation, lo: int) -> bool:
        h, j = self._sift(levels, g, lo)
        if h.is_identity():
            return False
        if j == len(levels):
            levels.append(_Level(h.smallest_moved_point()))
        for m in range(lo, j + 1):
            levels[m].gens.append(h)
            levels[m].extend_orbit(self.degree)
        return True

    def _schreier_sims(self) -> list[_Level]:
        levels: list[_Level] = []
        for g in self.generators:
            self._insert(levels, g, 0)
        changed = True
        while changed:
            changed = False
            for m in range(len(levels)):
                level = levels[m]
                for p in list(level.trans):
                    for xi in range(len(level.gens)):
                        if (p, xi) in level.done:
                            continue
                        level.done.add((p, xi))
                        x = level.gens[xi]
                        schreier = level.trans[p] * x * level.inv[x.images[p]]
                        if self._insert(levels, schreier, m + 1):
                            changed = True
        return levels

    @property
    def base(self) -> list[int]:
        return [level.base for level in self.chain]

    def order(self) -> int:
        result = 1
        for level in self.chain:
            result *= len(level.trans)
        return result

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(f"permutation degree {p.degree} != group degree {self.degree}")
        residue, depth = self._sift(self.chain, p)
        return depth == len(self.chain) and residue.is_identity()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def stabilizer_generators(self, depth: int = 1) -> list[Permutation]:
        """Strong generators of the pointwise stabilizer of the first ``depth`` base points."""
        if depth >= len(self.chain):
            return []
        return list(self.chain[depth].gens)

    def random_element(self, rng) -> Permutation:
        g = self.identity()
        for level in reversed(self.chain):
            points = sorted(level.trans)
            g = g * level.trans[points[rng.randrange(len(points))]]
        return g

    # orbits, transitivity, blocks

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def orbits(self) -> list[list[int]]:
        remaining = set(range(self.degree))
        out = []
        while remaining:
            orb = self.orbit(min(remaining))
            out.append(sorted(orb))
            remaining -= orb
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def minimal_block(self, first: int, second: int) -> list[int]:
        """Smallest block of imprimitivity containing ``first`` and ``second``."""
        parent = list(range(self.degree))

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        def union(x, y, queue):
            rx, ry = find(x), find(y)
            if rx == ry:
                return
            if ry < rx:
                rx, ry = ry, rx
            parent[ry] = rx
            queue.append(ry)

        queue: list[int] = []
        union(first, second, queue)
        while queue:
            gamma = queue.pop()
            for g in self.generators:
                union(g.images[gamma], g.images[find(gamma)], queue)
        root = find(first)
        return [x for x in range(self.degree) if find(x) == root]

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise NotTransitiveError("primitivity is only defined for transitive groups")
        if self.degree <= 2:
            return True
        # one test point per orbit of the stabilizer of 0 suffices
        if self.chain[0].base == 0:
            stab = PermutationGroup(self.stabilizer_generators(1), degree=self.degree)
            candidates = [orb[0] for orb in stab.orbits() if orb != [0]]
        else:
            candidates = range(1, self.degree)
        return all(len(self.minimal_block(0, b)) == self.degree for b in candidates)

    # enumeration

    def _check_bound(self) -> None:
        if self.order() > self.enumeration_bound:
            raise EnumerationBoundError(
                f"group order {self.order()} exceeds enumeration bound {self.enumeration_bound}"
            )

    def elements_array(self) -> np.ndarray:
        """All elements as image arrays, one per row, sorted lexicographically."""
        if self._elements is None:
            self._check_bound()
            dtype = _array_dtype(self.degree)
            elems = np.arange(self.degree, dtype=dtype)[None, :]
            for level in reversed(self.chain):
                trans = np.array([level.trans[p].images for p in sorted(level.trans)], dtype=dtype)
                elems = trans[:, elems].reshape(-1, self.degree)
            order = np.lexsort(elems.T[::-1])
            self._elements = elems[order]
            self._elements.setflags(write=False)
        return self._elements

    def elements(self) -> list[Permutation]:
        return [Permutation(row.tolist(), check=False) for row in self.elements_array()]

    def __iter__(self):
        return iter(self.elements())

    def __len__(self):
        return self.order()

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"


def _as_group(G) -> PermutationGroup:
    return G if isinstance(G, PermutationGroup) else PermutationGroup(G)


def group_order(gens: Sequence[Permutation]) -> int:
    return PermutationGroup(gens).order()


def membership(p: Permutation, G: PermutationGroup) -> bool:
    return p in G


def orbit(G: PermutationGroup, point: int) -> set[int]:
    return G.orbit(point)


def is_transitive(G: PermutationGroup) -> bool:
    return G.is_transitive()


def is_primitive(G: PermutationGroup) -> bool:
    return G.is_primitive()


def _lex_min_row(rows: np.ndarray) -> np.ndarray:
    cand = np.arange(rows.shape[0])
    col = 0
    while cand.size > 1 and col < rows.shape[1]:
        vals = rows[cand, col]
        cand = cand[vals == vals.min()]
        col += 1
    return rows[cand[0]]


class CosetAction:
    """Action of ``parent`` on the right cosets of ``subgroup`` by right multiplication.

    Each coset ``Hx`` is fingerprinted by the lexicographically least image array
    among its elements; labels are assigned in breadth-first order starting from
    ``H`` itself (label 0).
    """

    def __init__(self, parent: PermutationGroup, subgroup: PermutationGroup):
        if parent.degree != subgroup.degree:
            raise DegreeMismatchError("group and subgroup degrees differ")
        for h in subgroup.generators:
            if h not in parent:
                raise NotInGroupError(f"subgroup generator {h.to_cycle_string()} not in group")
        parent._check_bound()
        self.parent = parent
        self.subgroup = subgroup
        self._h_elements = subgroup.elements_array()
        self.labels: dict[bytes, int] = {}
        self.reps: list[Permutation] = []
        self._rep_actions: np.ndarray | None = None

        ident = parent.identity()
        self.labels[self.fingerprint(ident)] = 0
        self.reps.append(ident)
        self._parent_of = [(-1, -1)]
        images = [[] for _ in parent.generators]
        i = 0
        while i < len(self.reps):
            rep = self.reps[i]
            for gi, g in enumerate(parent.generators):
                y = rep * g
                key = self.fingerprint(y)
                label = self.labels.get(key)
                if label is None:
                    label = len(self.reps)
                    self.labels[key] = label
                    self.reps.append(y)
                    self._parent_of.append((i, gi))
                images[gi].append(label)
            i += 1
        self.degree = len(self.reps)
        if self.degree * subgroup.order() != parent.order():
            raise NotInGroupError("coset count inconsistent with |G|/|H|")
        self.induced_generators = [Permutation(img, check=False) for img in images]

    def fingerprint(self, g: Permutation) -> bytes:
        arr = np.asarray(g.images, dtype=self._h_elements.dtype)
        return _lex_min_row(arr[self._h_elements]).tobytes()

    def label(self, g: Permutation) -> int:
        """Label of the coset ``Hg``."""
        try:
            return self.labels[self.fingerprint(g)]
        except KeyError:
            raise NotInGroupError(f"{g.to_cycle_string()} is not in the parent group") from None

    def induced(self, g: Permutation) -> Permutation:
        """Permutation of coset labels induced by right multiplication by ``g``."""
        return Permutation([self.label(rep * g) for rep in self.reps], check=False)

    def induced_group(self) -> PermutationGroup:
        return PermutationGroup(self.induced_generators, degree=self.degree)

    @property
    def rep_actions(self) -> np.ndarray:
        """Row ``i`` is the permutation of labels induced by ``reps[i]``."""
        if self._rep_actions is None:
            gens = [np.array(p.images, dtype=np.int64) for p in self.induced_generators]
            acts = np.empty((self.degree, self.degree), dtype=np.int64)
            acts[0] = np.arange(self.degree)
            for i in range(1, self.degree):
                parent, gi = self._parent_of[i]
                acts[i] = gens[gi][acts[parent]]
            self._rep_actions = acts
        return self._rep_actions


def coset_action(G: PermutationGroup, H: PermutationGroup) -> CosetAction:
    return CosetAction(G, H)


def double_coset_cosets(ca: CosetAction, g: Permutation) -> set[int]:
    """Labels of the right cosets of ``H`` contained in the double coset ``HgH``."""
    if g not in ca.parent:
        raise NotInGroupError(f"{g.to_cycle_string()} is not in the parent group")
    return {ca.label(g * h) for h in ca.subgroup.elements()}


def conjugate_intersection_order(H: PermutationGroup, g: Permutation) -> int:
    """``|H ∩ H^g|`` by filtering the elements of ``H`` through membership in ``H^g``."""
    conjugate = PermutationGroup([h.conj(g) for h in H.generators], degree=H.degree)
    return sum(1 for x in H.elements() if x in conjugate)


def involutions_in(elements: Iterable[Permutation]) -> list[Permutation]:
    """Elements of order exactly two, deduplicated and sorted by image array."""
    found = {p for p in elements if not p.is_identity() and (p * p).is_identity()}
    return sorted(found)
