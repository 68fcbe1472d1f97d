"""Free-group words, Schreier stabilizer bases, and voltage coverings.

Words live in the free group on X, Y; letters are encoded as +1/-1 for
X/X^-1 and +2/-2 for Y/Y^-1 and words are kept freely reduced.  The
Schreier tree of a dessin action is built breadth-first with generator
order X, X^-1, Y, Y^-1 and ascending point order, so stabilizer bases
and voltage placement are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dessin import Dessin, FormatError, read_dessin
from .perm import DegreeTooLarge, Perm, PermGroup

X, Y = 1, 2
_LETTER_NAMES = {1: "X", -1: "X^-1", 2: "Y", -2: "Y^-1"}


def free_reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for ltr in letters:
        if out and out[-1] == -ltr:
            out.pop()
        else:
            out.append(ltr)
    return tuple(out)


def word_inverse(word) -> tuple[int, ...]:
    return tuple(-ltr for ltr in reversed(word))


def word_concat(*words) -> tuple[int, ...]:
    flat: list[int] = []
    for w in words:
        flat.extend(w)
    return free_reduce(flat)


def format_word(word) -> str:
    if not word:
        return "1"
    return " ".join(_LETTER_NAMES[ltr] for ltr in word)


def word_action(x: Perm, y: Perm, point: int, word) -> int:
    for ltr in word:
        if ltr == X:
            point = x(point)
        elif ltr == -X:
            point = x.inverse()(point)
        elif ltr == Y:
            point = y(point)
        elif ltr == -Y:
            point = y.inverse()(point)
        else:
            raise ValueError(f"bad letter {ltr}")
    return point


@dataclass(frozen=True)
class SchreierData:
    """Schreier tree and stabilizer base for a dessin's F2 action.

    tree maps each dart to its coset-representative word; gen_pairs lists
    the non-tree (dart, X-or-Y) pairs in (ascending dart, X before Y)
    order and schreier_gens[i] is the reduced word
    tree[p] s tree[p*s]^-1 for gen_pairs[i] = (p, s).
    """

    base: int
    degree: int
    tree: dict[int, tuple[int, ...]]
    tree_pairs: frozenset[tuple[int, int]]
    gen_pairs: tuple[tuple[int, int], ...]
    schreier_gens: tuple[tuple[int, ...], ...]


def schreier_basis(d: Dessin, base: int = 1) -> SchreierData:
    if not 1 <= base <= d.darts:
        raise ValueError(f"base dart {base} out of range")
    x, y = d.x, d.y
    steps = ((X, x), (-X, x.inverse()), (Y, y), (-Y, y.inverse()))
    tree: dict[int, tuple[int, ...]] = {base: ()}
    tree_pairs: set[tuple[int, int]] = set()
    frontier = [base]
    while frontier:
        nxt = []
        for p in sorted(frontier):
            for ltr, perm in steps:
                q = perm(p)
                if q not in tree:
                    tree[q] = tree[p] + (ltr,)
                    # record the positive-direction pair this edge covers
                    tree_pairs.add((p, ltr) if ltr > 0 else (q, -ltr))
                    nxt.append(q)
        frontier = nxt
    gen_pairs = []
    gens = []
    for p in sorted(tree):
        for sym, perm in ((X, x), (Y, y)):
            if (p, sym) in tree_pairs:
                continue
            q = perm(p)
            word = word_concat(tree[p], (sym,), word_inverse(tree[q]))
            gen_pairs.append((p, sym))
            gens.append(word)
    return SchreierData(base=base, degree=d.darts, tree=dict(tree),
                        tree_pairs=frozenset(tree_pairs),
                        gen_pairs=tuple(gen_pairs),
                        schreier_gens=tuple(gens))


class NotSurjective(ValueError):
    pass


@dataclass(frozen=True)
class VoltageAssignment:
    """Voltages on the positive (dart, generator) pairs of a base dessin.

    Tree pairs carry the identity of the target group; the remaining pair
    gen_pairs[i] carries images[i].  The covering it defines acts on
    (dart, element) pairs by (i, a) * s = (i * s, a * v(i, s)).
    """

    base: Dessin
    target: PermGroup
    schreier: SchreierData
    voltages: dict[tuple[int, int], Perm]

    def voltage(self, dart: int, sym: int) -> Perm:
        return self.voltages[(dart, sym)]


def assign_epimorphism(sd: SchreierData, base: Dessin, target: PermGroup,
                       images) -> VoltageAssignment:
    """Voltage assignment sending the i-th Schreier generator to images[i].

    The images must generate the target group (checked by closure
    enumeration), otherwise the covering would be disconnected and the
    quotient map not onto.
    """
    images = list(images)
    if len(images) != len(sd.gen_pairs):
        raise ValueError(
            f"need {len(sd.gen_pairs)} images, got {len(images)}")
    for im in images:
        if im.degree != target.degree:
            raise ValueError("image degree mismatch with target")
    target_els = {p.images for p in target.elements()}
    ident = Perm.identity(target.degree)
    gen_els = {p.images for p in PermGroup(target.degree,
                                           list(images) + [ident]).elements()}
    if gen_els != target_els:
        raise NotSurjective("images do not generate the target group")
    voltages: dict[tuple[int, int], Perm] = {}
    for p in range(1, base.darts + 1):
        for sym in (X, Y):
            if (p, sym) in sd.tree_pairs:
                voltages[(p, sym)] = ident
    for (pair, im) in zip(sd.gen_pairs, images):
        voltages[pair] = im
    return VoltageAssignment(base=base, target=target, schreier=sd,
                             voltages=voltages)


def target_elements(va: VoltageAssignment) -> list[Perm]:
    """Canonical element order of the target group (breadth-first closure
    from the identity, generators in the given order)."""
    return va.target.elements()


def covering_dessin(va: VoltageAssignment) -> Dessin:
    """The covering dessin on darts {1..N} x A.

    Dart (i, a) is serialized as (i-1)*|A| + index(a) + 1 with the
    canonical element order of A.
    """
    els = target_elements(va)
    index = {a.images: k for k, a in enumerate(els)}
    n, m = va.base.darts, len(els)

    def build(sym: int, perm: Perm) -> Perm:
        images = [0] * (n * m)
        for i in range(1, n + 1):
            j = perm(i)
            v = va.voltage(i, sym)
            for k, a in enumerate(els):
                images[(i - 1) * m + k] = (j - 1) * m + index[(a * v).images] + 1
        return Perm(images)

    return Dessin(build(X, va.base.x), build(Y, va.base.y))


def deck_transformation(va: VoltageAssignment, a0: Perm) -> Perm:
    """The permutation (i, a) -> (i, a0 * a) of the covering darts."""
    els = target_elements(va)
    index = {a.images: k for k, a in enumerate(els)}
    n, m = va.base.darts, len(els)
    images = [0] * (n * m)
    for i in range(1, n + 1):
        for k, a in enumerate(els):
            images[(i - 1) * m + k] = (i - 1) * m + index[(a0 * a).images] + 1
    return Perm(images)


def deck_group(va: VoltageAssignment) -> list[tuple[Perm, Perm]]:
    """Pairs (a, deck(a)) over the canonical element order."""
    return [(a, deck_transformation(va, a)) for a in target_elements(va)]


# ---------------------------------------------------------------------------
# voltage file format

def format_voltages(va: VoltageAssignment, base_name: str) -> str:
    lines = [f"base {base_name}"]
    for pair in va.schreier.gen_pairs:
        p, sym = pair
        lines.append(f"v {p} {'X' if sym == X else 'Y'} "
                     f"{va.voltages[pair].format()}")
    return "\n".join(lines) + "\n"


def parse_voltages(text: str, target: PermGroup,
                   base_loader=read_dessin) -> VoltageAssignment:
    base_name = None
    entries: dict[tuple[int, int], str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if parts[0] == "base":
            if base_name is not None:
                raise FormatError(f"line {lineno}: duplicate base")
            base_name = parts[1].strip()
        elif parts[0] == "v":
            toks = line.split(None, 3)
            if len(toks) != 4 or toks[2] not in ("X", "Y"):
                raise FormatError(f"line {lineno}: expected 'v <point> <X|Y> <cycles>'")
            key = (int(toks[1]), X if toks[2] == "X" else Y)
            if key in entries:
                raise FormatError(f"line {lineno}: duplicate voltage for {key}")
            entries[key] = toks[3]
        else:
            raise FormatError(f"line {lineno}: unknown key {parts[0]!r}")
    if base_name is None:
        raise FormatError("missing base line")
    base = base_loader(base_name)
    sd = schreier_basis(base)
    images = []
    for pair in sd.gen_pairs:
        text_ = entries.pop(pair, "()")
        images.append(Perm.parse(text_, target.degree))
    if entries:
        raise FormatError(f"voltages on tree pairs or unknown pairs: {sorted(entries)}")
    return assign_epimorphism(sd, base, target, images)
