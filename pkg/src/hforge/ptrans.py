"""Exact arithmetic in the group of almost-translations of Z.

An almost-translation differs from a fixed shift in finitely many
places; these permutations form FSym(Z) extended by the shift.  An
element g = (sigma, k) acts by i * g = sigma(i) + k, so composition
works out to

    (s1, k1) * (s2, k2) = (i -> s2(s1(i) + k1) - k1,  k1 + k2)

which the associativity tests pin down.  Membership in the even
subgroup is parity of the finitary part; the shift carries no parity.
"""

from __future__ import annotations

from dataclasses import dataclass


class AlmostTranslation:
    """(finitary permutation of Z, integer shift), minimal support."""

    __slots__ = ("shift", "finitary")

    def __init__(self, finitary: dict[int, int] | None = None, shift: int = 0):
        finitary = dict(finitary or {})
        finitary = {i: j for i, j in finitary.items() if i != j}
        if sorted(finitary) != sorted(finitary.values()):
            raise ValueError(f"not a finite-support bijection: {finitary!r}")
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "finitary",
                           tuple(sorted(finitary.items())))

    def __setattr__(self, *a):
        raise AttributeError("AlmostTranslation is immutable")

    @classmethod
    def identity(cls) -> "AlmostTranslation":
        return cls()

    @classmethod
    def shift_by(cls, k: int) -> "AlmostTranslation":
        return cls({}, k)

    @classmethod
    def from_cycles(cls, *cycles) -> "AlmostTranslation":
        mapping: dict[int, int] = {}
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                if a in mapping:
                    raise ValueError("overlapping cycles")
                mapping[a] = b
            if len(cyc) > 1:
                if cyc[-1] in mapping:
                    raise ValueError("overlapping cycles")
                mapping[cyc[-1]] = cyc[0]
        return cls(mapping)

    def _fin(self, i: int) -> int:
        for a, b in self.finitary:
            if a == i:
                return b
        return i

    def apply(self, i: int) -> int:
        return self._fin(i) + self.shift

    def __mul__(self, other: "AlmostTranslation") -> "AlmostTranslation":
        k1, k2 = self.shift, other.shift
        support = {a for a, _ in self.finitary}
        support |= {a - k1 for a, _ in other.finitary}
        fin = {i: other._fin(self._fin(i) + k1) - k1 for i in support}
        return AlmostTranslation(fin, k1 + k2)

    def inverse(self) -> "AlmostTranslation":
        k = self.shift
        inv_fin = {b + k: a + k for a, b in self.finitary}
        return AlmostTranslation(inv_fin, -k)

    def __pow__(self, m: int) -> "AlmostTranslation":
        if m < 0:
            return self.inverse() ** (-m)
        out = AlmostTranslation.identity()
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def conjugate(self, by: "AlmostTranslation") -> "AlmostTranslation":
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return self.shift == 0 and not self.finitary

    def parity(self) -> int:
        """Parity (0 even, 1 odd) of the finitary part."""
        mapping = dict(self.finitary)
        seen = set()
        odd = 0
        for start in mapping:
            if start in seen:
                continue
            length = 0
            i = start
            while i not in seen:
                seen.add(i)
                i = mapping[i]
                length += 1
            odd ^= (length - 1) & 1
        return odd

    def in_even_subgroup(self) -> bool:
        return self.parity() == 0

    def cycles(self) -> list[tuple[int, ...]]:
        mapping = dict(self.finitary)
        seen = set()
        out = []
        for start in sorted(mapping):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            i = mapping[start]
            while i != start:
                seen.add(i)
                cyc.append(i)
                i = mapping[i]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlmostTranslation)
                and self.shift == other.shift
                and self.finitary == other.finitary)

    def __hash__(self) -> int:
        return hash((self.shift, self.finitary))

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        if not cyc:
            cyc = "()"
        return f"{cyc}+{self.shift}" if self.shift else cyc


SHIFT = AlmostTranslation.shift_by(1)
SWAP01 = AlmostTranslation.from_cycles((0, 1))


def conj_power(g: AlmostTranslation, k: int) -> AlmostTranslation:
    """g conjugated by the k-th power of the unit shift."""
    return g.conjugate(AlmostTranslation.shift_by(k))


@dataclass(frozen=True)
class CheckReport:
    name: str
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.checks)

    def text(self) -> str:
        lines = [f"report: {self.name}"]
        for label, value in self.checks:
            lines.append(f"{label}: {str(value).lower()}")
        lines.append(f"ok: {str(self.ok).lower()}")
        return "\n".join(lines) + "\n"


def relation_suite(imax: int) -> CheckReport:
    """Verify y^2 = (y y^x)^3 = (y y^(x^i))^2 = 1 for 2 <= i <= imax,
    with y = (0 1) and x the unit shift."""
    if imax < 2:
        raise ValueError("imax must be >= 2")
    x, y = SHIFT, SWAP01
    checks = [("y^2 = 1", (y * y).is_identity())]
    yx = conj_power(y, 1)
    checks.append(("(y y^x)^3 = 1", ((y * yx) ** 3).is_identity()))
    for i in range(2, imax + 1):
        yi = conj_power(y, i)
        checks.append((f"(y y^(x^{i}))^2 = 1", ((y * yi) ** 2).is_identity()))
    return CheckReport("almost-translation relations", tuple(checks))


def lemma_qcycle(q: int, kmax: int = 8) -> CheckReport:
    """With y = (1 2 ... q): y^x y^-1 = (1, q, q+1); conjugating by
    (y^x)^2 gives (1 2 3); conjugating that by x^(k-1) gives
    (k, k+1, k+2)."""
    if q < 2:
        raise ValueError("q must be >= 2")
    y = AlmostTranslation.from_cycles(tuple(range(1, q + 1)))
    yx = conj_power(y, 1)
    prod = yx * y.inverse()
    want = AlmostTranslation.from_cycles((1, q, q + 1))
    checks = [(f"y^x y^-1 = (1 {q} {q + 1})", prod == want)]
    three = prod.conjugate(yx * yx)
    checks.append(("conjugate by (y^x)^2 is (1 2 3)",
                   three == AlmostTranslation.from_cycles((1, 2, 3))))
    for k in range(1, kmax + 1):
        got = conj_power(three, k - 1)
        want_k = AlmostTranslation.from_cycles((k, k + 1, k + 2))
        checks.append((f"shift conjugate k={k} is ({k} {k + 1} {k + 2})",
                       got == want_k))
    return CheckReport(f"q-cycle lemma q={q}", tuple(checks))


def embed_symmetric(n: int) -> tuple[list[AlmostTranslation], CheckReport]:
    """Adjacent transpositions y_k = (k, k+1), k = 1..n-1: Coxeter
    relations hold and (for n <= 6) the closure has order n!."""
    if n < 2:
        raise ValueError("n must be >= 2")
    gens = [AlmostTranslation.from_cycles((k, k + 1)) for k in range(1, n)]
    checks = []
    ok_rel = True
    for a in range(len(gens)):
        for b in range(len(gens)):
            m = 1 if a == b else (3 if abs(a - b) == 1 else 2)
            if not ((gens[a] * gens[b]) ** m).is_identity():
                ok_rel = False
    checks.append((f"coxeter relations on {n - 1} generators", ok_rel))
    if n <= 6:
        closure = {AlmostTranslation.identity()}
        queue = [AlmostTranslation.identity()]
        while queue:
            u = queue.pop()
            for g in gens:
                v = u * g
                if v not in closure:
                    closure.add(v)
                    queue.append(v)
        import math
        checks.append((f"closure order = {n}!",
                       len(closure) == math.factorial(n)))
    return gens, CheckReport(f"symmetric embedding n={n}", tuple(checks))
