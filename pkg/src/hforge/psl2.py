"""PSL(2, n) arithmetic, triangle-type quotients and surface stabilizers.

For a cocompact hyperbolic type (p, q, r) and a prime n = -1 mod
lcm(2p, 2q, 2r), a generating pair (x, y) with orders (p, q) and x*y of
order r is searched for; the Moebius action on the projective line gives
a primitive dessin of degree n+1 whose cycles all have full length, and
the dart stabilizer presents as a surface group whose genus matches
2(g-1) = (n+1)(1 - 1/p - 1/q - 1/r).  A relator-aware voltage solver
lifts a finite group over such a dessin.

Projective points are indexed 1..n+1: value v in {0..n-1} is index v+1
and the point at infinity is index n+1.  Matrices act on row vectors
[z : w] from the right, so matrix product and permutation composition
agree.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from math import gcd

from .dessin import Dessin, analyze
from .freewalk import X, Y, SchreierData, VoltageAssignment, schreier_basis
from .perm import Perm, PermGroup
from .snf import abelianization


class NotHyperbolic(ValueError):
    pass


class NotCocompact(ValueError):
    pass


class NoPairFound(RuntimeError):
    pass


class TorsionDetected(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


DEFAULT_PAIR_BUDGET = 20000
DEFAULT_SOLVER_BUDGET = 10 ** 6


def solver_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("HFORGE_BUDGET")
    return int(env) if env else DEFAULT_SOLVER_BUDGET


class PSL2Elem:
    """A 2x2 determinant-1 matrix over F_n, canonical up to sign: the
    first nonzero entry lies in {1..(n-1)/2}."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, a: int, b: int, c: int, d: int):
        a, b, c, d = a % n, b % n, c % n, d % n
        if (a * d - b * c) % n != 1:
            raise ValueError("determinant must be 1")
        for v in (a, b, c, d):
            if v:
                if v > (n - 1) // 2:
                    a, b, c, d = (-a) % n, (-b) % n, (-c) % n, (-d) % n
                break
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", (a, b, c, d))

    def __setattr__(self, *x):
        raise AttributeError("PSL2Elem is immutable")

    @classmethod
    def identity(cls, n: int) -> "PSL2Elem":
        return cls(n, 1, 0, 0, 1)

    def __mul__(self, other: "PSL2Elem") -> "PSL2Elem":
        n = self.n
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return PSL2Elem(n, a * e + b * g, a * f + b * h,
                        c * e + d * g, c * f + d * h)

    def inverse(self) -> "PSL2Elem":
        a, b, c, d = self.entries
        return PSL2Elem(self.n, d, -b, -c, a)

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def order(self) -> int:
        acc = self
        for k in range(1, self.n + 2):
            if acc.is_identity():
                return k
            acc = acc * self
        raise ArithmeticError("order exceeded n+1")

    def __pow__(self, k: int) -> "PSL2Elem":
        if k < 0:
            return self.inverse() ** (-k)
        out = PSL2Elem.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def moebius_perm(self) -> Perm:
        """The action on P1(F_n) as a degree-(n+1) permutation."""
        n = self.n
        a, b, c, d = self.entries
        images = [0] * (n + 1)
        for v in range(n):
            num = (v * a + c) % n
            den = (v * b + d) % n
            if den:
                images[v] = (num * pow(den, -1, n)) % n + 1
            else:
                images[v] = n + 1
        if b:
            images[n] = (a * pow(b, -1, n)) % n + 1
        else:
            images[n] = n + 1
        return Perm(images)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PSL2Elem) and self.n == other.n
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.entries))

    def __repr__(self) -> str:
        a, b, c, d = self.entries
        return f"[[{a},{b}],[{c},{d}]] mod {self.n}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _lcm(*vals: int) -> int:
    out = 1
    for v in vals:
        out = out * v // gcd(out, v)
    return out


def check_type(p: int, q: int, r: int) -> None:
    for v in (p, q, r):
        if not isinstance(v, int) or v < 1:
            raise NotCocompact(f"periods must be finite integers >= 1: {v!r}")
    if q * r + p * r + p * q >= p * q * r:
        raise NotHyperbolic(f"type ({p},{q},{r}) is not hyperbolic")


def modulus_for_type(p: int, q: int, r: int) -> tuple[int, int]:
    """(l, n): l = lcm(2p, 2q, 2r) and n the least prime = -1 mod l."""
    check_type(p, q, r)
    l = _lcm(2 * p, 2 * q, 2 * r)
    k = 1
    while True:
        n = k * l - 1
        if is_prime(n):
            return l, n
        k += 1


def order_exists(m: int, n: int) -> bool:
    """Whether PSL(2, n) contains an element of order m (m > 1 divides n,
    (n-1)/2 or (n+1)/2)."""
    if m == 1:
        return True
    return n % m == 0 or ((n - 1) // 2) % m == 0 or ((n + 1) // 2) % m == 0


@dataclass(frozen=True)
class PairCertificate:
    p: int
    q: int
    r: int
    n: int
    seed: int
    attempts: int
    x: PSL2Elem
    y: PSL2Elem
    generation_witness: str

    def text(self) -> str:
        return "\n".join([
            f"type: ({self.p},{self.q},{self.r})",
            f"prime: {self.n}",
            f"seed: {self.seed}",
            f"attempts: {self.attempts}",
            f"x: {self.x!r}",
            f"y: {self.y!r}",
            f"generation: {self.generation_witness}",
        ]) + "\n"


def _random_sl2(rng: random.Random, n: int) -> PSL2Elem:
    while True:
        a, b, c = (rng.randrange(n) for _ in range(3))
        if a:
            d = ((1 + b * c) * pow(a, -1, n)) % n
            return PSL2Elem(n, a, b, c, d)
        if b * c % n == n - 1:
            return PSL2Elem(n, a, b, c, rng.randrange(n))


def _element_of_order(rng: random.Random, n: int, m: int,
                      tries: int = 5000) -> PSL2Elem:
    for _ in range(tries):
        g = _random_sl2(rng, n)
        o = g.order()
        if o % m == 0:
            return g ** (o // m)
    raise NoPairFound(f"no element of order {m} found in PSL(2,{n})")


def _two_transitive(group: PermGroup) -> bool:
    if not group.is_transitive():
        return False
    transversal = group.transversal(1)
    stab = []
    seen = set()
    for pt in sorted(transversal):
        u = transversal[pt]
        for g in group.generators:
            s = u * g * transversal[g(pt)].inverse()
            if not s.is_identity() and s.images not in seen:
                seen.add(s.images)
                stab.append(s)
    if not stab:
        return False
    sub = PermGroup(group.degree, stab)
    return set(sub.orbit(2).points) == set(range(2, group.degree + 1))


def psl2_order(n: int) -> int:
    return n * (n * n - 1) // 2


def find_generating_pair(p: int, q: int, r: int, n: int, seed: int = 0,
                         budget: int = DEFAULT_PAIR_BUDGET
                         ) -> tuple[PSL2Elem, PSL2Elem, PairCertificate]:
    """A pair x, y in PSL(2, n) of orders p, q with x*y of order r,
    generating the whole group.

    Seeded random search: x runs over order-p representatives collected by
    trace, y over random conjugates of one order-q element; each order-r
    hit is checked for generation (exact order for degree <= 16, double
    transitivity above).  Raises NoPairFound when the budget runs out.
    """
    check_type(p, q, r)
    if not is_prime(n) or n < 5:
        raise NoPairFound(f"{n} is not a usable prime")
    for m in (p, q, r):
        if not order_exists(m, n):
            raise NoPairFound(
                f"PSL(2,{n}) has no element of order {m}")
    rng = random.Random(seed)
    x_reps = []
    traces = set()
    for _ in range(200):
        g = _random_sl2(rng, n)
        o = g.order()
        if o % p == 0:
            cand = g ** (o // p)
            tr = cand.entries[0] + cand.entries[3]
            tr = min(tr % n, (-tr) % n)
            if tr not in traces:
                traces.add(tr)
                x_reps.append(cand)
    if not x_reps:
        raise NoPairFound(f"no element of order {p} found")
    y0 = _element_of_order(rng, n, q)
    attempts = 0
    while attempts < budget:
        attempts += 1
        x = x_reps[(attempts - 1) % len(x_reps)]
        g = _random_sl2(rng, n)
        y = g.inverse() * y0 * g
        if (x * y).order() != r:
            continue
        px, py = x.moebius_perm(), y.moebius_perm()
        group = PermGroup(n + 1, [px, py])
        if n + 1 <= 16:
            if group.order(degree_bound=16) != psl2_order(n):
                continue
            witness = f"order = {psl2_order(n)}"
        else:
            if not _two_transitive(group):
                continue
            witness = ("2-transitive; any 2-transitive subgroup exceeds "
                       "every proper subgroup order for prime n >= 13")
        cert = PairCertificate(p=p, q=q, r=r, n=n, seed=seed,
                               attempts=attempts, x=x, y=y,
                               generation_witness=witness)
        return x, y, cert
    raise NoPairFound(
        f"no ({p},{q},{r}) pair in PSL(2,{n}) within {budget} attempts; "
        "retry with another seed or prime")


def projective_dessin(x: PSL2Elem, y: PSL2Elem) -> Dessin:
    return Dessin(x.moebius_perm(), y.moebius_perm())


# ---------------------------------------------------------------------------
# Reidemeister-Schreier presentation of the dart stabilizer

@dataclass(frozen=True)
class StabilizerPresentation:
    """Schreier generators and rewritten relators of a dart stabilizer in
    the (p, q, r) triangle quotient acting on the dessin."""

    schreier: SchreierData
    relators: tuple[tuple[int, ...], ...]   # words in signed generator ids (1-based)
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def genus(self) -> int:
        return self.free_rank // 2


def _rewrite(sd: SchreierData, d: Dessin, start: int,
             word: tuple[int, ...]) -> tuple[int, ...]:
    """Reidemeister-Schreier rewrite of tree[start] * word * tree[end]^-1,
    valid because the breadth-first tree is a Schreier transversal."""
    gen_index = {pair: i for i, pair in enumerate(sd.gen_pairs)}
    perms = {X: d.x, Y: d.y}
    out = []
    pt = start
    for ltr in word:
        sym = abs(ltr)
        if ltr > 0:
            pair = (pt, sym)
            nxt = perms[sym](pt)
            if pair not in sd.tree_pairs:
                out.append(gen_index[pair] + 1)
            pt = nxt
        else:
            nxt = perms[sym].inverse()(pt)
            pair = (nxt, sym)
            if pair not in sd.tree_pairs:
                out.append(-(gen_index[pair] + 1))
            pt = nxt
    if pt != start:
        raise ValueError("relator scan did not close up")
    reduced = []
    for v in out:
        if reduced and reduced[-1] == -v:
            reduced.pop()
        else:
            reduced.append(v)
    return tuple(reduced)


def stabilizer_presentation(d: Dessin, p: int, q: int, r: int,
                            base: int = 1) -> StabilizerPresentation:
    """Present the stabilizer of a dart under the (p,q,r)-quotient action.

    One rewritten relator per cycle of x (for X^p), of y (for Y^q) and of
    x*y (for (XY)^r).  Raises TorsionDetected when the abelianization is
    not free, which signals a cycle of deficient length.
    """
    sd = schreier_basis(d, base)
    relators = []
    for word_gen, perm, m in (((X,), d.x, p), ((Y,), d.y, q),
                              ((X, Y), d.x * d.y, r)):
        for cyc in perm.cycles(include_fixed=True):
            start = min(cyc)
            relators.append(_rewrite(sd, d, start, word_gen * m))
    ngens = len(sd.schreier_gens)
    rows = []
    for rel in relators:
        row = [0] * ngens
        for v in rel:
            row[abs(v) - 1] += 1 if v > 0 else -1
        rows.append(row)
    free_rank, torsion = abelianization(rows, ngens)
    pres = StabilizerPresentation(schreier=sd, relators=tuple(relators),
                                  free_rank=free_rank,
                                  torsion=tuple(torsion))
    if torsion:
        raise TorsionDetected(
            f"abelianization has torsion {torsion}: some cycle is shorter "
            "than its period")
    return pres


def relators_act_trivially(d: Dessin, p: int, q: int, r: int) -> bool:
    return ((d.x ** p).is_identity() and (d.y ** q).is_identity()
            and ((d.x * d.y) ** r).is_identity())


def riemann_hurwitz_genus(p: int, q: int, r: int, n: int) -> int:
    """g from 2(g-1) = (n+1)(1 - 1/p - 1/q - 1/r), exact arithmetic."""
    num = (n + 1) * (p * q * r - q * r - p * r - p * q)
    den = p * q * r
    if num % den:
        raise ValueError("non-integral Riemann-Hurwitz value")
    t = num // den
    if t % 2:
        raise ValueError("odd Riemann-Hurwitz value")
    return t // 2 + 1


# ---------------------------------------------------------------------------
# relator-constrained voltage solver

def _cycle_constraints(d: Dessin) -> list[list[tuple[int, int]]]:
    """Voltage-product constraints: the (dart, generator) slots around
    every x-cycle, y-cycle and x*y-cycle, each product required trivial."""
    cons = []
    for cyc in d.x.cycles(include_fixed=True):
        cons.append([(pt, X) for pt in cyc])
    for cyc in d.y.cycles(include_fixed=True):
        cons.append([(pt, Y) for pt in cyc])
    for cyc in (d.x * d.y).cycles(include_fixed=True):
        slots = []
        for pt in cyc:
            slots.append((pt, X))
            slots.append((d.x(pt), Y))
        cons.append(slots)
    return cons


def solve_voltages_with_relators(d: Dessin, p: int, q: int, r: int,
                                 a: PermGroup, budget: int | None = None
                                 ) -> VoltageAssignment | None:
    """A voltage assignment over d whose covering keeps type (p, q, r),
    surjective onto A; None if the whole space is exhausted without one.

    Tree pairs are fixed to the identity; remaining voltages are solved
    cycle by cycle, branching over A's elements when a constraint has
    more than one free slot.  Budget counts backtrack nodes and raises
    BudgetExhausted (HFORGE_BUDGET overrides the default).
    """
    if not relators_act_trivially(d, p, q, r):
        raise ValueError(f"dessin is not of type ({p},{q},{r})")
    budget = solver_budget(budget)
    sd = schreier_basis(d)
    els = a.elements()
    ident = els[0]
    el_index = {e.images: k for k, e in enumerate(els)}
    target_set = set(el_index)
    var_index = {pair: i for i, pair in enumerate(sd.gen_pairs)}
    nvars = len(sd.gen_pairs)
    raw_cons = _cycle_constraints(d)
    cons: list[list[int | None]] = []
    for slots in raw_cons:
        row: list[int | None] = []
        for pair in slots:
            row.append(var_index.get(pair))  # None = tree pair (identity)
        cons.append(row)

    assignment: list[Perm | None] = [None] * nvars
    nodes = 0

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for row in cons:
                unknown = [v for v in row if v is not None
                           and assignment[v] is None]
                if len(unknown) > 1:
                    continue
                if not unknown:
                    acc = ident
                    for v in row:
                        if v is not None:
                            acc = acc * assignment[v]
                    if not acc.is_identity():
                        return False
                    continue
                hole = unknown[0]
                left = ident
                right = ident
                before = True
                for v in row:
                    if v is not None and assignment[v] is None:
                        before = False
                        continue
                    val = ident if v is None else assignment[v]
                    if before:
                        left = left * val
                    else:
                        right = right * val
                assignment[hole] = left.inverse() * right.inverse()
                trail.append(hole)
                changed = True
        return True

    def surjective() -> bool:
        gens = [assignment[i] for i in range(nvars)]
        closure = {ident.images}
        queue = [ident]
        while queue:
            u = queue.pop(0)
            for g in gens:
                v = u * g
                if v.images not in closure:
                    closure.add(v.images)
                    queue.append(v)
        return closure == target_set

    def search() -> bool:
        nonlocal nodes
        trail: list[int] = []
        if not propagate(trail):
            for v in trail:
                assignment[v] = None
            return False
        free = next((i for i in range(nvars) if assignment[i] is None), None)
        if free is None:
            if surjective():
                return True
            for v in trail:
                assignment[v] = None
            return False
        for cand in els:
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(
                    f"voltage search exceeded {budget} backtrack nodes")
            assignment[free] = cand
            if search():
                return True
            assignment[free] = None
        for v in trail:
            assignment[v] = None
        return False

    if not search():
        return None
    voltages: dict[tuple[int, int], Perm] = {}
    for pt in range(1, d.darts + 1):
        for sym in (X, Y):
            if (pt, sym) in sd.tree_pairs:
                voltages[(pt, sym)] = ident
    for pair, i in var_index.items():
        voltages[pair] = assignment[i]
    return VoltageAssignment(base=d, target=a, schreier=sd, voltages=voltages)


def recheck_voltages(va: VoltageAssignment, p: int, q: int, r: int) -> bool:
    """Independent re-check of a solution: every cycle product trivial and
    the voltage image generates the target."""
    d = va.base
    ident = Perm.identity(va.target.degree)
    for slots in _cycle_constraints(d):
        acc = ident
        for pair in slots:
            acc = acc * va.voltages[pair]
        if not acc.is_identity():
            return False
    gens = [va.voltages[pair] for pair in va.schreier.gen_pairs]
    closure = {ident.images}
    queue = [ident]
    while queue:
        u = queue.pop(0)
        for g in gens:
            v = u * g
            if v.images not in closure:
                closure.add(v.images)
                queue.append(v)
    return closure == {e.images for e in va.target.elements()}
