import itertools
import random

import pytest

from hforge.perm import Perm, PermGroup
from hforge.dessin import (Dessin, FormatError, NotConnected, analyze,
                           are_isomorphic, automorphisms, format_dessin,
                           is_chiral, mirror, parse_dessin, to_dot)

from helpers import random_perm


def P(text, degree):
    return Perm.parse(text, degree)


def brute_iso(d1, d2):
    """Oracle: try every dart bijection."""
    if d1.darts != d2.darts:
        return None
    for images in itertools.permutations(range(1, d1.darts + 1)):
        phi = Perm(images)
        if d1.x * phi == phi * d2.x and d1.y * phi == phi * d2.y:
            return phi
    return None


def connected_dessins(n):
    for xi in itertools.permutations(range(1, n + 1)):
        for yi in itertools.permutations(range(1, n + 1)):
            x, y = Perm(xi), Perm(yi)
            if PermGroup(n, [x, y]).is_transitive():
                yield Dessin(x, y)


def test_rejects_disconnected():
    with pytest.raises(NotConnected):
        Dessin(P("(1 2)", 4), P("(3 4)", 4))


def test_z_completes_the_triple():
    d = Dessin(P("(1 2 3 4)", 4), P("(1 3)(2 4)", 4))
    assert (d.x * d.y * d.z).is_identity()


def test_analyze_single_dart():
    d = Dessin(Perm.identity(1), Perm.identity(1))
    st = analyze(d)
    assert st.type == (1, 1, 1)
    assert st.euler_characteristic == 2
    assert st.genus == 0
    assert st.aut_order == 1
    assert st.regular


def test_analyze_torus_example():
    d = Dessin(P("(1 2 3 4)", 4), P("(1 3)(2 4)", 4))
    assert len(d.z.cycles()) == 1 and d.z.order() == 4
    st = analyze(d)
    assert st.euler_characteristic == 1 + 2 + 1 - 4 == 0
    assert st.genus == 1


def test_aut_order_divides_darts_and_regular_iff_equal():
    rng = random.Random(17)
    seen = 0
    while seen < 30:
        n = rng.randint(1, 7)
        x, y = random_perm(rng, n), random_perm(rng, n)
        if not PermGroup(n, [x, y]).is_transitive():
            continue
        st = analyze(Dessin(x, y))
        assert st.darts % st.aut_order == 0
        assert st.regular == (st.aut_order == st.darts)
        seen += 1


def test_automorphisms_fixed_point_free():
    d = Dessin(P("(1 2 3 4)", 4), P("(1 3)(2 4)", 4))
    for a in automorphisms(d).generators:
        assert a.is_identity() or not any(a(i) == i for i in range(1, 5))


def test_isomorphic_to_itself_is_identity():
    d = Dessin(P("(1 2 3)", 3), P("(1 2)", 3))
    assert are_isomorphic(d, d) == Perm.identity(3)


def test_isomorphic_to_random_relabelings():
    rng = random.Random(4)
    done = 0
    while done < 100:
        n = rng.randint(1, 6)
        x, y = random_perm(rng, n), random_perm(rng, n)
        if not PermGroup(n, [x, y]).is_transitive():
            continue
        d = Dessin(x, y)
        g = random_perm(rng, n)
        gi = g.inverse()
        d2 = Dessin(gi * x * g, gi * y * g)
        phi = are_isomorphic(d, d2)
        assert phi is not None
        assert d.x * phi == phi * d2.x and d.y * phi == phi * d2.y
        done += 1


def test_isomorphism_respects_generator_roles():
    d1 = Dessin(P("(1 2 3)", 3), Perm.identity(3))
    d2 = Dessin(Perm.identity(3), P("(1 2 3)", 3))
    assert are_isomorphic(d1, d2) is None


def test_isomorphism_is_an_equivalence():
    rng = random.Random(41)
    base = Dessin(P("(1 2 3 4 5)", 5), P("(1 2)", 5))
    for _ in range(10):
        g = random_perm(rng, 5)
        h = random_perm(rng, 5)
        d2 = Dessin(g.inverse() * base.x * g, g.inverse() * base.y * g)
        d3 = Dessin(h.inverse() * d2.x * h, h.inverse() * d2.y * h)
        ab = are_isomorphic(base, d2)
        bc = are_isomorphic(d2, d3)
        ac = are_isomorphic(base, d3)
        assert ab is not None and bc is not None and ac is not None
        # symmetry: the inverse bijection works backwards
        inv = ab.inverse()
        assert d2.x * inv == inv * base.x and d2.y * inv == inv * base.y


def test_mirror_is_an_involution_and_preserves_cycle_type():
    rng = random.Random(8)
    done = 0
    while done < 20:
        n = rng.randint(1, 6)
        x, y = random_perm(rng, n), random_perm(rng, n)
        if not PermGroup(n, [x, y]).is_transitive():
            continue
        d = Dessin(x, y)
        m = mirror(d)
        assert mirror(m) == d
        assert m.x.cycle_lengths() == x.cycle_lengths()
        assert m.y.cycle_lengths() == y.cycle_lengths()
        assert m.z.cycle_lengths() == d.z.cycle_lengths()
        done += 1


def test_mirror_fixed_when_both_involutions():
    d = Dessin(P("(1 2)(3 4)", 4), P("(2 3)", 4))
    assert mirror(d) == d


def test_star_map_not_chiral():
    d = Dessin(P("(1 2 3)", 3), Perm.identity(3))
    assert not is_chiral(d)


def test_regular_abelian_dessin_not_chiral():
    # regular C5 action, x and y both generators
    x = P("(1 2 3 4 5)", 5)
    d = Dessin(x, x * x)
    assert analyze(d).regular
    assert not is_chiral(d)


def test_mirror_invariance_of_stats():
    rng = random.Random(12)
    done = 0
    while done < 15:
        n = rng.randint(1, 6)
        x, y = random_perm(rng, n), random_perm(rng, n)
        if not PermGroup(n, [x, y]).is_transitive():
            continue
        d = Dessin(x, y)
        assert analyze(d) == analyze(mirror(d))
        done += 1


def test_smallest_chiral_dessin_has_five_darts():
    """Exhaustive scan: no chiral dessin below 5 darts; the first one found
    at 5 darts (scan order) is x=(2 3)(4 5), y=(1 2 3 4)."""
    for n in range(1, 5):
        for d in connected_dessins(n):
            assert not is_chiral(d)
    first = Dessin(P("(2 3)(4 5)", 5), P("(1 2 3 4)", 5))
    assert is_chiral(first)
    assert brute_iso(first, mirror(first)) is None


def test_chirality_agrees_with_bruteforce_up_to_4_darts():
    for n in range(1, 5):
        for d in connected_dessins(n):
            assert is_chiral(d) == (brute_iso(d, mirror(d)) is None)


def test_file_format_roundtrip():
    d = Dessin(P("(1 2 3 4)", 4), P("(1 3)(2 4)", 4))
    text = format_dessin(d)
    assert text == "darts 4\nx (1 2 3 4)\ny (1 3)(2 4)\n"
    assert parse_dessin(text) == d
    with_comments = "# a torus\ndarts 4\n# rotations\nx (1 2 3 4)\ny (1 3)(2 4)\n"
    assert parse_dessin(with_comments) == d


def test_file_format_errors():
    with pytest.raises(FormatError):
        parse_dessin("darts 4\nx (1 2 3 4)\n")
    with pytest.raises(FormatError):
        parse_dessin("darts 0\nx ()\ny ()\n")
    with pytest.raises(FormatError):
        parse_dessin("darts x\nx ()\ny ()\n")
    with pytest.raises(FormatError):
        parse_dessin("darts 2\ndarts 2\nx (1 2)\ny ()\n")


def test_dot_export_mentions_every_dart():
    d = Dessin(P("(1 2 3)", 3), P("(1 2)", 3))
    dot = to_dot(d)
    assert dot.startswith("graph dessin {")
    for dart in range(1, 4):
        assert f'[label="{dart}"]' in dot
    assert "fillcolor=black" in dot and "fillcolor=white" in dot
