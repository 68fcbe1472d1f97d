"""Symmetric coset diagrams (x, y, t) and the handle-sewing join.

A symmetric diagram carries an extra involution t with t*x*t = x^-1 and
t*y*t = y^-1 (and y itself an involution here, since joins rewrite y's
fixed points).  A handle is a pair (alpha, beta) of distinct y-fixed
darts with beta = alpha*x = alpha*t; a join of two diagrams replaces the
four fixed points of two handles with the transpositions
(alpha1, alpha2) and (beta1, beta2), leaving x and t alone.  The
bookkeeping permutation w = y*x*t fixes each alpha; a join merges the
two alpha fixed points into a 2-cycle and splices the w-cycles through
beta1 and beta2 into one.

Diagram file format: "darts N" / "x ..." / "y ..." / "t ..." cycle lines.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .dessin import FormatError
from .perm import Perm


class InvalidDiagram(ValueError):
    pass


class InvalidHandle(ValueError):
    pass


class SymmetricDiagram:
    __slots__ = ("darts", "x", "y", "t")

    def __init__(self, x: Perm, y: Perm, t: Perm):
        if not (x.degree == y.degree == t.degree):
            raise InvalidDiagram("x, y, t must share one degree")
        if not (t * t).is_identity():
            raise InvalidDiagram("t must be an involution")
        if not (y * y).is_identity():
            raise InvalidDiagram("y must be an involution")
        if t * x * t != x.inverse():
            raise InvalidDiagram("t x t != x^-1")
        if t * y * t != y.inverse():
            raise InvalidDiagram("t y t != y^-1")
        object.__setattr__(self, "darts", x.degree)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "t", t)

    def __setattr__(self, *a):
        raise AttributeError("SymmetricDiagram is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymmetricDiagram) and self.x == other.x
                and self.y == other.y and self.t == other.t)

    def __repr__(self) -> str:
        return (f"SymmetricDiagram[{self.darts}] x={self.x.format()} "
                f"y={self.y.format()} t={self.t.format()}")

    def w(self) -> Perm:
        """The bookkeeping permutation w = y * x * t."""
        return self.y * self.x * self.t


@dataclass(frozen=True)
class Handle:
    alpha: int
    beta: int


def find_handles(d: SymmetricDiagram) -> list[Handle]:
    """All pairs (alpha, beta) of distinct y-fixed darts with
    beta = alpha*x = alpha*t, one Handle per unordered pair."""
    out = []
    seen = set()
    for alpha in range(1, d.darts + 1):
        if d.y(alpha) != alpha:
            continue
        beta = d.x(alpha)
        if beta == alpha or d.t(alpha) != beta or d.y(beta) != beta:
            continue
        key = frozenset((alpha, beta))
        if key not in seen:
            seen.add(key)
            out.append(Handle(alpha, beta))
    return out


def _is_handle(d: SymmetricDiagram, h: Handle) -> bool:
    return (1 <= h.alpha <= d.darts and h.alpha != h.beta
            and d.y(h.alpha) == h.alpha and d.y(h.beta) == h.beta
            and d.x(h.alpha) == h.beta and d.t(h.alpha) == h.beta)


def _shift(p: Perm, offset: int, total: int) -> list[int]:
    images = [0] * total
    for i in range(1, p.degree + 1):
        images[offset + i - 1] = p(i) + offset
    return images


def disjoint_union(d1: SymmetricDiagram, d2: SymmetricDiagram
                   ) -> SymmetricDiagram:
    """d1 and d2 side by side, d2's darts offset by d1's count."""
    n = d1.darts + d2.darts
    perms = []
    for a, b in ((d1.x, d2.x), (d1.y, d2.y), (d1.t, d2.t)):
        images = _shift(a, 0, n)
        for i in range(1, b.degree + 1):
            images[d1.darts + i - 1] = b(i) + d1.darts
        perms.append(Perm(images))
    return SymmetricDiagram(*perms)


def one_join(d1: SymmetricDiagram, h1: Handle, d2: SymmetricDiagram,
             h2: Handle) -> SymmetricDiagram:
    """Sew d2 onto d1 across the two handles.

    The four y-fixed darts become the transpositions (a1, a2), (b1, b2);
    x and t are the plain disjoint unions.  d2's handle darts are
    shifted by d1's dart count in the result.
    """
    if not _is_handle(d1, h1):
        raise InvalidHandle(f"{h1} is not a handle of the left diagram")
    if not _is_handle(d2, h2):
        raise InvalidHandle(f"{h2} is not a handle of the right diagram")
    u = disjoint_union(d1, d2)
    a1, b1 = h1.alpha, h1.beta
    a2, b2 = h2.alpha + d1.darts, h2.beta + d1.darts
    sew = Perm.from_cycles([(a1, a2), (b1, b2)], u.darts)
    return SymmetricDiagram(u.x, u.y * sew, u.t)


def w_cycle_structure(d: SymmetricDiagram) -> Counter:
    """Multiset of cycle lengths of w = y*x*t, fixed points included."""
    return Counter(len(c) for c in d.w().cycles(include_fixed=True))


def predicted_join_w(d1: SymmetricDiagram, h1: Handle, d2: SymmetricDiagram,
                     h2: Handle) -> Counter:
    """The merge rule: the two alpha fixed points of w become a 2-cycle
    and the w-cycles through beta1 and beta2 concatenate."""
    w1, w2 = d1.w(), d2.w()
    if w1(h1.alpha) != h1.alpha or w2(h2.alpha) != h2.alpha:
        raise InvalidHandle("handle alpha is not fixed by w")
    len1 = next(len(c) for c in w1.cycles(include_fixed=True)
                if h1.beta in c)
    len2 = next(len(c) for c in w2.cycles(include_fixed=True)
                if h2.beta in c)
    merged = w_cycle_structure(d1) + w_cycle_structure(d2)
    merged[1] -= 2
    merged[len1] -= 1
    merged[len2] -= 1
    merged[2] += 1
    merged[len1 + len2] += 1
    return Counter({k: v for k, v in merged.items() if v})


def verify_type(d: SymmetricDiagram, p: int, q: int, r: int,
                strict: bool = False) -> bool:
    """x^p = y^q = (xy)^r = 1; with strict=True the orders must be exact."""
    powers = ((d.x ** p).is_identity() and (d.y ** q).is_identity()
              and ((d.x * d.y) ** r).is_identity())
    if not powers:
        return False
    if strict:
        return (d.x.order(), d.y.order(), (d.x * d.y).order()) == (p, q, r)
    return True


def relabel(d: SymmetricDiagram, phi: Perm) -> SymmetricDiagram:
    """Conjugate all three permutations by phi."""
    inv = phi.inverse()
    return SymmetricDiagram(inv * d.x * phi, inv * d.y * phi, inv * d.t * phi)


def toy_diagram() -> SymmetricDiagram:
    """Two darts, x = t = (1 2), y = 1: the smallest diagram with a handle."""
    two = Perm.parse("(1 2)", 2)
    return SymmetricDiagram(two, Perm.identity(2), two)


# ---------------------------------------------------------------------------
# file format

def format_diagram(d: SymmetricDiagram) -> str:
    return (f"darts {d.darts}\nx {d.x.format()}\ny {d.y.format()}\n"
            f"t {d.t.format()}\n")


def parse_diagram(text: str) -> SymmetricDiagram:
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
    for key in ("darts", "x", "y", "t"):
        if key not in fields:
            raise FormatError(f"missing '{key}' line")
    try:
        n = int(fields["darts"])
    except ValueError:
        raise FormatError(f"bad dart count {fields['darts']!r}")
    if n < 1:
        raise FormatError("darts must be >= 1")
    try:
        return SymmetricDiagram(Perm.parse(fields["x"], n),
                                Perm.parse(fields["y"], n),
                                Perm.parse(fields["t"], n))
    except InvalidDiagram as exc:
        raise FormatError(str(exc))


def read_diagram(path) -> SymmetricDiagram:
    with open(path, encoding="ascii") as fh:
        return parse_diagram(fh.read())


def write_diagram(path, d: SymmetricDiagram) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_diagram(d))


# ---------------------------------------------------------------------------
# seeded generator of small valid diagrams (used by the join test suite)

def random_diagram(rng, min_cycle: int = 4, max_cycle: int = 9
                   ) -> SymmetricDiagram:
    """A random symmetric diagram with at least one handle.

    x is a single k-cycle, t the reflection i -> c - i (c = 2a + 1 picked
    so that (a, a+1) is a handle), and y a random t-symmetric involution
    avoiding the handle darts.
    """
    k = rng.randint(min_cycle, max_cycle)
    a = rng.randrange(k)
    c = 2 * a + 1
    x = Perm([(i % k) + 1 for i in range(1, k + 1)])
    t = Perm([((c - i) % k) + 1 for i in range(k)])
    alpha, beta = a + 1, (a + 1) % k + 1
    # grow y by symmetric transposition orbits that stay off the handle
    images = list(range(1, k + 1))
    pool = [i for i in range(1, k + 1) if i not in (alpha, beta)]
    rng.shuffle(pool)
    used = set()
    for i in pool:
        if i in used:
            continue
        for j in pool:
            if j in used or j == i or rng.random() < 0.4:
                continue
            ti, tj = t(i), t(j)
            orbit = {i, j, ti, tj}
            if orbit & used or orbit & {alpha, beta}:
                continue
            if ti == j and tj == i or (ti == i and tj == j):
                pairs = [(i, j)]
            elif len(orbit) == 4:
                pairs = [(i, j), (ti, tj)]
            else:
                continue
            for u, v in pairs:
                images[u - 1], images[v - 1] = v, u
                used.update((u, v))
            break
    y = Perm(images)
    return SymmetricDiagram(x, y, t)
