"""Oriented hypermaps (dessins) as transitive permutation pairs.

A dessin on N darts is a pair of permutations (x, y) of {1..N} with
<x, y> transitive; z is always derived as (x*y)^-1 so that x*y*z = 1.
Analytics: type, Euler characteristic / genus of the compactified Walsh
bipartite map, automorphism group via the centralizer, regularity,
isomorphism and chirality.

File format (line-oriented, LF, bit-exact):

    darts N
    x (1 2 3)(4 5)
    y (1 4)

with optional '#'-comment lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .perm import NotTransitive, Perm, PermGroup, centralizer_of_transitive


class NotConnected(ValueError):
    pass


class FormatError(ValueError):
    pass


class Dessin:
    """darts N >= 1 plus the monodromy pair (x, y); connected by invariant."""

    __slots__ = ("darts", "x", "y")

    def __init__(self, x: Perm, y: Perm):
        if x.degree != y.degree:
            raise ValueError("x and y must share one degree")
        if x.degree < 1:
            raise ValueError("need at least one dart")
        if not PermGroup(x.degree, [x, y]).is_transitive():
            raise NotConnected("monodromy group is not transitive")
        object.__setattr__(self, "darts", x.degree)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, *a):
        raise AttributeError("Dessin is immutable")

    @property
    def z(self) -> Perm:
        return (self.x * self.y).inverse()

    def monodromy(self) -> PermGroup:
        return PermGroup(self.darts, [self.x, self.y])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Dessin) and self.x == other.x
                and self.y == other.y)

    def __hash__(self) -> int:
        return hash((self.x.images, self.y.images))

    def __repr__(self) -> str:
        return f"Dessin[{self.darts}] x={self.x.format()} y={self.y.format()}"


@dataclass(frozen=True)
class DessinStats:
    darts: int
    type: tuple[int, int, int]
    euler_characteristic: int
    genus: int
    aut_order: int
    regular: bool
    chiral: bool


def _lcm_cycle_lengths(p: Perm) -> int:
    out = 1
    for ln in set(p.cycle_lengths()):
        out = out * ln // gcd(out, ln)
    return out


def automorphisms(d: Dessin) -> PermGroup:
    """Aut(d) = centralizer of the monodromy group; generator list is the
    full element list."""
    return centralizer_of_transitive(d.monodromy())


def analyze(d: Dessin) -> DessinStats:
    x, y, z = d.x, d.y, d.z
    chi = x.num_cycles() + y.num_cycles() + z.num_cycles() - d.darts
    assert chi % 2 == 0, "odd Euler characteristic on a connected dessin"
    aut = len(automorphisms(d).generators)
    return DessinStats(
        darts=d.darts,
        type=(_lcm_cycle_lengths(x), _lcm_cycle_lengths(y), _lcm_cycle_lengths(z)),
        euler_characteristic=chi,
        genus=(2 - chi) // 2,
        aut_order=aut,
        regular=(aut == d.darts),
        chiral=is_chiral(d),
    )


def are_isomorphic(d1: Dessin, d2: Dessin) -> Perm | None:
    """A dart bijection phi with phi(i*x1) = phi(i)*x2 and likewise for y,
    or None.

    Dart 1 of d1 is anchored; every dart of d2 is tried as its image and
    extended along d1's Schreier tree, first consistent extension wins.
    """
    if d1.darts != d2.darts:
        return None
    n = d1.darts
    gens1 = (d1.x, d1.y)
    gens2 = (d2.x, d2.y)
    parent: dict[int, tuple[int, int]] = {}
    disc = [1]
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for p in sorted(frontier):
            for gi, g in enumerate(gens1):
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    parent[q] = (p, gi)
                    disc.append(q)
                    nxt.append(q)
        frontier = nxt
    for delta in range(1, n + 1):
        img = [0] * n
        img[0] = delta
        for q in disc[1:]:
            p, gi = parent[q]
            img[q - 1] = gens2[gi](img[p - 1])
        if sorted(img) != list(range(1, n + 1)):
            continue
        phi = Perm(img)
        if d1.x * phi == phi * d2.x and d1.y * phi == phi * d2.y:
            return phi
    return None


def mirror(d: Dessin) -> Dessin:
    return Dessin(d.x.inverse(), d.y.inverse())


def is_chiral(d: Dessin) -> bool:
    return are_isomorphic(d, mirror(d)) is None


# ---------------------------------------------------------------------------
# file format

def format_dessin(d: Dessin) -> str:
    return f"darts {d.darts}\nx {d.x.format()}\ny {d.y.format()}\n"


def parse_dessin(text: str) -> Dessin:
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, rest = line.split(None, 1)
        except ValueError:
            raise FormatError(f"line {lineno}: expected 'key value'")
        if key in fields:
            raise FormatError(f"line {lineno}: duplicate '{key}'")
        fields[key] = rest.strip()
    for key in ("darts", "x", "y"):
        if key not in fields:
            raise FormatError(f"missing '{key}' line")
    try:
        n = int(fields["darts"])
    except ValueError:
        raise FormatError(f"bad dart count {fields['darts']!r}")
    if n < 1:
        raise FormatError("darts must be >= 1")
    x = Perm.parse(fields["x"], n)
    y = Perm.parse(fields["y"], n)
    return Dessin(x, y)


def read_dessin(path) -> Dessin:
    with open(path, encoding="ascii") as fh:
        return parse_dessin(fh.read())


def write_dessin(path, d: Dessin) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_dessin(d))


def to_dot(d: Dessin) -> str:
    """Walsh bipartite graph in DOT: black vertices are x-cycles, white
    vertices are y-cycles, one edge per dart labelled by its number."""
    bcycles = d.x.cycles(include_fixed=True)
    wcycles = d.y.cycles(include_fixed=True)
    bix = {}
    for i, cyc in enumerate(bcycles):
        for dart in cyc:
            bix[dart] = i
    wix = {}
    for i, cyc in enumerate(wcycles):
        for dart in cyc:
            wix[dart] = i
    lines = ["graph dessin {"]
    for i, cyc in enumerate(bcycles):
        lines.append(
            f'  b{i} [shape=circle style=filled fillcolor=black '
            f'label="" tooltip="x-cycle {" ".join(map(str, cyc))}"];')
    for i, cyc in enumerate(wcycles):
        lines.append(
            f'  w{i} [shape=circle style=filled fillcolor=white '
            f'label="" tooltip="y-cycle {" ".join(map(str, cyc))}"];')
    for dart in range(1, d.darts + 1):
        lines.append(f'  b{bix[dart]} -- w{wix[dart]} [label="{dart}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
