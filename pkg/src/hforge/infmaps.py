"""Finite windows onto three infinite planar maps built from flowers.

Each map carries a distinguished face cycle C hit by z = (x*y)^-1 as
label + 1; the integer labels and the handful of unlabelled darts (the
1-gon inside each loop, written ("P", n)) make up the whole dart set.
The transcription below stores the white rotations (the cycles of y) as
per-flower formulas; x is recovered from x = z^-1 * y^-1, i.e.
x(c) = y^-1(c - 1), so every structural invariant of the figures
(vertex valencies, stem pairings, the z increment) is checkable.

The three families:

* trivalent: stems topped by loops, flower 2 carrying two free edges
  instead; y is an involution with exactly three fixed points (0, 6, 7)
  and pairs the stem darts (4n-2, 4n) for n >= 3 and (5, 8) at n = 2.
* p-valent (p >= 4, period t = p+3): each flower n >= 1 grows a leaf
  whose two darts (nt, nt+1) are swapped by y; free-edge fans pad the
  valencies to p.
* bipartite of type (p, q) (p, q >= 3, period t = p+2q-2): white
  vertices of valency q or 1; weeds between flowers carry an x-fixed
  dart labelled nt.
"""

from __future__ import annotations

from dataclasses import dataclass

Dart = object  # ints for C labels, ("P", n) tuples for loop interiors


def pdart(n: int) -> tuple[str, int]:
    return ("P", n)


def is_pdart(d) -> bool:
    return isinstance(d, tuple) and len(d) == 2 and d[0] == "P"


def dart_name(d) -> str:
    return f"P{d[1]}" if is_pdart(d) else str(d)


class WindowTooSmall(ValueError):
    pass


class _MapModel:
    name: str
    period: int
    min_radius: int

    def cycle_of(self, dart):
        raise NotImplementedError

    def flower_indices(self, radius: int):
        """Flower numbers whose loop dart belongs to windows of this radius."""
        raise NotImplementedError

    def y_image(self, dart):
        cyc = self.cycle_of(dart)
        i = cyc.index(dart)
        return cyc[(i + 1) % len(cyc)]

    def y_preimage(self, dart):
        cyc = self.cycle_of(dart)
        i = cyc.index(dart)
        return cyc[(i - 1) % len(cyc)]

    def x_image(self, dart):
        if is_pdart(dart):
            return self.y_preimage(dart)
        return self.y_preimage(dart - 1)

    def z_image(self, dart):
        return dart if is_pdart(dart) else dart + 1


class TrivalentMap(_MapModel):
    name = "N3"
    period = 4
    min_radius = 10

    def cycle_of(self, dart):
        if is_pdart(dart):
            n = dart[1]
            if n == 1:
                return (2, pdart(1))
            if n >= 3:
                return (4 * n - 1, pdart(n))
            raise ValueError("flower 2 has no loop")
        c = dart
        if c == 0 or c in (6, 7):
            return (c,)
        if c in (1, 3):
            return (1, 3)
        if c in (4, -1):
            return (4, -1)
        if c in (5, 8):
            return (5, 8)
        if c in (9, -2):
            return (9, -2)
        if c == 2:
            return (2, pdart(1))
        if c <= -3:
            n = -c
            return (4 * n + 1, -n)
        n = (c + 2) // 4
        off = c - (4 * n - 2)
        if off in (0, 2):
            return (4 * n - 2, 4 * n)
        if off == 1:
            return (4 * n - 1, pdart(n))
        return (4 * n + 1, -n)

    def flower_indices(self, radius):
        out = [1] if radius >= 4 else []
        n = 3
        while 4 * n + 1 <= radius:
            out.append(n)
            n += 1
        return out

    def obstruction_pair(self, n: int):
        return (8, 5) if n == 2 else (4 * n, 4 * n - 2)


class PValentMap(_MapModel):
    def __init__(self, p: int):
        if p < 4:
            raise ValueError("p-valent map needs p >= 4")
        self.p = p
        self.period = p + 3
        self.name = f"Np({p})"
        self.min_radius = 3 * self.period - 1

    def cycle_of(self, dart):
        p, t = self.p, self.period
        if is_pdart(dart):
            n = dart[1]
            return (n * t + 3, pdart(n))
        c = dart
        if c >= 0:
            n, off = divmod(c, t)
            if n == 0 and off in (0, 1):
                return (c,)
            if n >= 1 and off in (0, 1):
                return (n * t, n * t + 1)
            if off == 2 or off == p + 1:
                return (n * t + 2, n * t + p + 1)
            if off == 3:
                return (n * t + 3, pdart(n))
            if off == p + 2:
                return (c, -(n + 1) * (p - 3))
            return (c,)           # free-edge fan at the stem top
        s = p - 3
        val = -c
        if val % s == 0:
            m = val // s
            return (m * t - 1, c)
        return (c,)               # free-edge fan at a flower base


class BipartiteMap(_MapModel):
    def __init__(self, p: int, q: int):
        if p < 3 or q < 3:
            raise ValueError("bipartite map needs p, q >= 3")
        self.p, self.q = p, q
        self.period = p + 2 * q - 2
        self.name = f"Npq({p},{q})"
        self.min_radius = 3 * self.period - 1

    def _stem_cycle(self, n: int):
        t, q = self.period, self.q
        lower = n * t + 1 if n >= 1 else 1
        return tuple((n + 1) * t - 2 - i for i in range(q - 1)) + (lower,)

    def _top_cycle(self, n: int):
        t, q = self.period, self.q
        return tuple(n * t + q - i for i in range(q - 1)) + (pdart(n),)

    def _hub_cycle(self, n: int):
        t, q = self.period, self.q
        s = self.p + q - 5
        a = -n * s
        return (a, n * t, n * t - 1) + tuple(a + q - 3 - i for i in range(q - 3))

    def cycle_of(self, dart):
        p, q, t = self.p, self.q, self.period
        if is_pdart(dart):
            return self._top_cycle(dart[1])
        c = dart
        if c == 0:
            return (0,)
        if c > 0:
            n, off = divmod(c, t)
            if off == 0:
                return self._hub_cycle(n)
            if off == 1:
                return self._stem_cycle(n)
            if 2 <= off <= q:
                return self._top_cycle(n)
            if q + 1 <= off <= q + p - 3:
                return (c,)       # fan at the top black vertex
            if off == t - 1:
                return self._hub_cycle(n + 1)
            return self._stem_cycle(n)
        s = p + q - 5
        val = -c
        n, j = divmod(val, s)
        if j == 0:
            return self._hub_cycle(n)
        if j <= p - 3:
            return (c,)           # fan below a flower base
        return self._hub_cycle(n + 1)


def map_model(map_id: str, p: int | None = None, q: int | None = None) -> _MapModel:
    key = map_id.upper()
    if key == "N3":
        return TrivalentMap()
    if key == "NP":
        if p is None:
            raise ValueError("p-valent map needs p")
        return PValentMap(p)
    if key == "NPQ":
        if p is None or q is None:
            raise ValueError("bipartite map needs p and q")
        return BipartiteMap(p, q)
    raise ValueError(f"unknown map {map_id!r} (want N3, Np or Npq)")


@dataclass(frozen=True)
class WindowAction:
    map_name: str
    radius: int
    darts: tuple
    x: dict
    y: dict
    z: dict

    def boundary(self) -> set:
        return {d for d in self.darts
                if self.x[d] is None or self.y[d] is None or self.z[d] is None}

    def table_text(self) -> str:
        lines = [f"map {self.map_name}", f"radius {self.radius}",
                 "dart x y z"]
        for d in self.darts:
            row = [dart_name(d)]
            for col in (self.x, self.y, self.z):
                v = col[d]
                row.append("?" if v is None else dart_name(v))
            lines.append(" ".join(row))
        return "\n".join(lines) + "\n"


def _flower_pdarts(model: _MapModel, radius: int):
    if isinstance(model, TrivalentMap):
        return [pdart(n) for n in model.flower_indices(radius)]
    t = model.period
    out = []
    n = 0
    while (n + 1) * t - 1 <= radius:
        out.append(pdart(n))
        n += 1
    return out


def window_action(model_or_id, radius: int, p: int | None = None,
                  q: int | None = None) -> WindowAction:
    """x, y, z restricted to C labels in [-radius, radius] plus the loop
    darts of fully-contained flowers; images outside the window are None."""
    model = (model_or_id if isinstance(model_or_id, _MapModel)
             else map_model(model_or_id, p, q))
    if radius < model.min_radius:
        raise WindowTooSmall(
            f"{model.name} needs radius >= {model.min_radius}")
    darts = list(range(-radius, radius + 1)) + _flower_pdarts(model, radius)
    inside = set(darts)

    def clip(v):
        return v if v in inside else None

    x = {d: clip(model.x_image(d)) for d in darts}
    y = {d: clip(model.y_image(d)) for d in darts}
    z = {d: clip(model.z_image(d)) for d in darts}
    return WindowAction(map_name=model.name, radius=radius,
                        darts=tuple(darts), x=x, y=y, z=z)


@dataclass(frozen=True)
class ObstructionReport:
    map_name: str
    modulus: int
    kind: str
    witness: tuple
    residues: tuple
    refuted: bool

    def text(self) -> str:
        a, b = self.witness
        return (f"map {self.map_name} modulus {self.modulus} kind {self.kind} "
                f"witness {dart_name(a)}->{dart_name(b)} "
                f"residues {self.residues[0]},{self.residues[1]} "
                f"refuted {str(self.refuted).lower()}\n")


def congruence_obstruction(model_or_id, n: int, p: int | None = None,
                           q: int | None = None) -> ObstructionReport:
    """Refute invariance of the mod-n label classes with an explicit dart.

    For the trivalent and p-valent maps this is a y-pair with exactly one
    label divisible by n; for the bipartite map it is the x-fixed weed
    dart labelled n*t, whose class must then absorb everything.
    """
    if n < 2:
        raise ValueError("modulus must be >= 2 (n = 1 is the universal relation)")
    model = (model_or_id if isinstance(model_or_id, _MapModel)
             else map_model(model_or_id, p, q))
    if isinstance(model, TrivalentMap):
        a, b = model.obstruction_pair(n)
        assert model.y_image(a) == b
        refuted = a % n == 0 and b % n != 0
        return ObstructionReport(model.name, n, "y-pair", (a, b),
                                 (a % n, b % n), refuted)
    if isinstance(model, PValentMap):
        a, b = n * model.period, n * model.period + 1
        assert model.y_image(a) == b
        refuted = a % n == 0 and b % n != 0
        return ObstructionReport(model.name, n, "y-pair", (a, b),
                                 (a % n, b % n), refuted)
    a = n * model.period
    assert model.x_image(a) == a and model.y_image(0) == 0
    return ObstructionReport(model.name, n, "x-fixed", (a, a),
                             (a % n, 0), True)
