"""Exact permutation arithmetic on {1..N} and transitive-group analytics.

Conventions, fixed once for the whole package:

* points are 1-based;
* permutations act on the right, i.e. ``i ** (g * h) == (i ** g) ** h``;
* the text format for a permutation is a product of cycles like
  ``(1 2 3)(5 6)`` with whitespace-separated points, fixed points omitted
  and ``()`` for the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd


class NotTransitive(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


DEFAULT_DEGREE_BOUND = 16

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Perm:
    """An immutable permutation of {1..N}, stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection on 1..{n}: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Perm":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc!r}")
            for a, b in zip(cyc, cyc[1:]):
                images[a - 1] = b
            if cyc:
                images[cyc[-1] - 1] = cyc[0]
        return cls(images)

    @classmethod
    def transposition(cls, a: int, b: int, degree: int) -> "Perm":
        return cls.from_cycles([(a, b)], degree)

    @classmethod
    def cycle(cls, degree: int) -> "Perm":
        """The full cycle (1 2 ... degree)."""
        return cls.from_cycles([tuple(range(1, degree + 1))], degree)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse the cycle format, e.g. ``(1 2 3)(5 6)`` or ``()``."""
        stripped = text.strip()
        if not stripped:
            raise ValueError("empty permutation text")
        body = _CYCLE_RE.sub("", stripped)
        if body.strip():
            raise ValueError(f"stray characters in permutation: {text!r}")
        cycles = []
        maxpt = 0
        for m in _CYCLE_RE.finditer(stripped):
            inner = m.group(1).split()
            if not inner:
                continue
            pts = tuple(int(tok) for tok in inner)
            if any(p < 1 for p in pts):
                raise ValueError(f"points must be >= 1: {text!r}")
            maxpt = max(maxpt, max(pts))
            cycles.append(pts)
        n = degree if degree is not None else maxpt
        if maxpt > n:
            raise ValueError(f"point {maxpt} exceeds degree {n}")
        return cls.from_cycles(cycles, max(n, maxpt))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        oi = other.images
        return Perm(oi[i - 1] for i in self.images)

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(1, self.degree + 1):
            if seen[i - 1]:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self(i)
            while j != i:
                seen[j - 1] = True
                cyc.append(j)
                j = self(j)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_lengths(self) -> list[int]:
        """Lengths of all cycles, fixed points included."""
        return sorted(len(c) for c in self.cycles(include_fixed=True))

    def num_cycles(self) -> int:
        return len(self.cycles(include_fixed=True))

    def order(self) -> int:
        o = 1
        for ln in set(self.cycle_lengths()):
            o = o * ln // gcd(o, ln)
        return o

    def moved_points(self) -> list[int]:
        return [i for i in range(1, self.degree + 1) if self(i) != i]

    def format(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm[{self.degree}] {self.format()}"


@dataclass(frozen=True)
class Orbit:
    """An orbit plus its Schreier tree.

    ``tree[p]`` is a word (tuple of generator indices) moving the base
    point to ``p``; words are built breadth-first, points visited in
    ascending order, so the tree is reproducible.
    """

    base: int
    points: tuple[int, ...]
    tree: dict[int, tuple[int, ...]]


class PermGroup:
    """A permutation group given by generators of one common degree."""

    def __init__(self, degree: int, generators):
        generators = tuple(generators)
        if not generators:
            raise ValueError("need at least one generator")
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.degree = degree
        self.generators = generators

    def __repr__(self) -> str:
        gens = ", ".join(g.format() for g in self.generators)
        return f"PermGroup[{self.degree}] <{gens}>"

    def orbit(self, point: int) -> Orbit:
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} out of range 1..{self.degree}")
        tree = {point: ()}
        frontier = [point]
        while frontier:
            nxt = []
            for p in sorted(frontier):
                for gi, g in enumerate(self.generators):
                    q = g(p)
                    if q not in tree:
                        tree[q] = tree[p] + (gi,)
                        nxt.append(q)
            frontier = nxt
        points = tuple(sorted(tree))
        return Orbit(point, points, tree)

    def transversal(self, point: int) -> dict[int, Perm]:
        """Orbit representatives as explicit permutations u with point**u = p."""
        orb = self.orbit(point)
        out = {}
        for p in orb.points:
            u = Perm.identity(self.degree)
            for gi in orb.tree[p]:
                u = u * self.generators[gi]
            out[p] = u
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1).points) == self.degree

    def order(self, degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
        """Exact group order by orbit-stabilizer recursion.

        Intended for desk-scale degrees; raises DegreeTooLarge beyond the
        bound because the naive Schreier-generator recursion blows up.
        """
        if self.degree > degree_bound:
            raise DegreeTooLarge(
                f"degree {self.degree} exceeds bound {degree_bound}")
        gens = {g.images for g in self.generators}
        return _order_rec(gens, self.degree)

    def elements(self, cap: int = 20000) -> list[Perm]:
        """All elements, in breadth-first closure order from the identity.

        The order is deterministic: identity first, then products by the
        given generators in order.  Raises DegreeTooLarge past ``cap``.
        """
        ident = Perm.identity(self.degree)
        seen = {ident.images}
        out = [ident]
        queue = [ident]
        while queue:
            u = queue.pop(0)
            for g in self.generators:
                v = u * g
                if v.images not in seen:
                    seen.add(v.images)
                    out.append(v)
                    queue.append(v)
                    if len(out) > cap:
                        raise DegreeTooLarge(f"group larger than cap {cap}")
        return out

    def minimal_blocks(self) -> list[list[list[int]]]:
        """All minimal nontrivial block systems; empty list means primitive.

        Each system is a partition of {1..N}: blocks sorted by least
        element, points ascending inside a block.  Built pairwise: for each
        beta the finest invariant partition merging (1, beta), keeping the
        refinement-minimal nontrivial ones.
        """
        if not self.is_transitive():
            raise NotTransitive("blocks need a transitive group")
        n = self.degree
        if n <= 2:
            return []
        candidates = {}
        for beta in range(2, n + 1):
            part = self._finest_merge(1, beta)
            if len(part) > 1:
                key = tuple(tuple(b) for b in part)
                candidates[key] = part
        systems = list(candidates.values())
        minimal = []
        for p in systems:
            if not any(q is not p and _refines(q, p, n) for q in systems):
                minimal.append(p)
        minimal.sort(key=lambda part: [part[0], part])
        return minimal

    def _finest_merge(self, a: int, b: int) -> list[list[int]]:
        parent = list(range(self.degree + 1))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        work = [(a, b)]
        while work:
            p, q = work.pop()
            rp, rq = find(p), find(q)
            if rp == rq:
                continue
            parent[max(rp, rq)] = min(rp, rq)
            for g in self.generators:
                work.append((g(p), g(q)))
        blocks = {}
        for i in range(1, self.degree + 1):
            blocks.setdefault(find(i), []).append(i)
        return sorted(blocks.values())

    def stabilizer_core_index(self, point: int = 1,
                              degree_bound: int = DEFAULT_DEGREE_BOUND) -> int:
        """|G| / degree: the point-stabilizer order of a transitive group,
        equal to the index of the action core below the stabilizer."""
        if not self.is_transitive():
            raise NotTransitive("core index needs a transitive group")
        return self.order(degree_bound) // self.degree


def _refines(p: list[list[int]], q: list[list[int]], n: int) -> bool:
    """True if partition p strictly refines q."""
    if p == q:
        return False
    owner = [0] * (n + 1)
    for bi, block in enumerate(q):
        for pt in block:
            owner[pt] = bi
    return all(len({owner[pt] for pt in block}) == 1 for block in p)


def _order_rec(gens: set[tuple[int, ...]], degree: int) -> int:
    gens = {g for g in gens if any(v != i + 1 for i, v in enumerate(g))}
    if not gens:
        return 1
    base = min(min(i + 1 for i, v in enumerate(g) if v != i + 1)
               for g in gens)
    tree = {base: tuple(range(1, degree + 1))}
    frontier = [base]
    glist = sorted(gens)
    while frontier:
        nxt = []
        for p in sorted(frontier):
            up = tree[p]
            for g in glist:
                q = g[p - 1]
                if q not in tree:
                    tree[q] = tuple(g[i - 1] for i in up)
                    nxt.append(q)
        frontier = nxt
    inv_tree = {p: _inv(u) for p, u in tree.items()}
    schreier = set()
    for p, up in tree.items():
        for g in glist:
            q = g[p - 1]
            s = tuple(inv_tree[q][g[i - 1] - 1] for i in up)
            schreier.add(s)
    return len(tree) * _order_rec(schreier, degree)


def _inv(images: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(images)
    for i, j in enumerate(images, start=1):
        out[j - 1] = i
    return tuple(out)


def centralizer_of_transitive(group: PermGroup) -> PermGroup:
    """The full centralizer of a transitive group in Sym(1..N).

    A centralizing permutation is determined by the image of the base
    point: extend the candidate image along the Schreier tree and keep it
    when the extension is a bijection commuting with every generator.
    The returned group's generator list is the complete element list.
    """
    if not group.is_transitive():
        raise NotTransitive("centralizer formula needs a transitive group")
    n = group.degree
    parent: dict[int, tuple[int, int]] = {}
    disc = [1]
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for p in sorted(frontier):
            for gi, g in enumerate(group.generators):
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    parent[q] = (p, gi)
                    disc.append(q)
                    nxt.append(q)
        frontier = nxt
    elements = []
    for delta in range(1, n + 1):
        img = [0] * n
        img[0] = delta
        for q in disc[1:]:
            p, gi = parent[q]
            img[q - 1] = group.generators[gi](img[p - 1])
        if sorted(img) != list(range(1, n + 1)):
            continue
        cand = Perm(img)
        if all(cand * g == g * cand for g in group.generators):
            elements.append(cand)
    return PermGroup(n, elements)
