import pytest

from hforge.infmaps import (BipartiteMap, ObstructionReport, PValentMap,
                            TrivalentMap, WindowTooSmall,
                            congruence_obstruction, is_pdart, map_model,
                            pdart, window_action)


def complete_cycles(mapping, darts):
    """Cycles of a partial permutation that close up inside the window."""
    out = []
    seen = set()
    for start in darts:
        if start in seen:
            continue
        cyc = [start]
        cur = mapping[start]
        ok = cur is not None
        while ok and cur != start:
            if cur in seen:
                ok = False
                break
            cyc.append(cur)
            cur = mapping[cur]
            ok = cur is not None
        if ok and cur == start:
            seen.update(cyc)
            out.append(tuple(cyc))
    return out


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        window_action("N3", 5)


def test_map_model_dispatch():
    assert isinstance(map_model("N3"), TrivalentMap)
    assert isinstance(map_model("Np", 5), PValentMap)
    assert isinstance(map_model("Npq", 3, 4), BipartiteMap)
    with pytest.raises(ValueError):
        map_model("bogus")
    with pytest.raises(ValueError):
        map_model("Np")


def test_trivalent_key_values():
    w = window_action("N3", 25)
    assert w.y[0] == 0
    assert w.y[6] == 6 and w.y[7] == 7
    assert w.y[12] == 10          # stem pair of flower 3
    assert w.y[20] == 18          # stem pair of flower 5
    assert w.y[5] == 8            # stem pair of flower 2
    assert w.y[1] == 3            # stem pair of flower 1
    assert w.y[13] == -3          # axis pair
    assert w.y[4] == -1
    assert w.z[11] == 12 and w.z[-7] == -6
    assert w.z[pdart(3)] == pdart(3)


def test_trivalent_y_is_involution_with_three_fixed_points():
    w = window_action("N3", 40)
    fixed = []
    for d in w.darts:
        img = w.y[d]
        if img is None:
            continue
        assert w.y[img] == d
        if img == d:
            fixed.append(d)
    assert fixed == [0, 6, 7]


def test_trivalent_x_cycles_all_length_three():
    w = window_action("N3", 40)
    cycles = complete_cycles(w.x, w.darts)
    assert cycles
    assert all(len(c) == 3 for c in cycles)
    # every dart of a fully-contained flower sits in a closed 3-cycle
    # (dart -n lives at the vertex of flower n, whose labels reach 4n+1)
    covered = {d for c in cycles for d in c}
    for d in range(0, 36):
        assert d in covered
    for n in range(1, 9):
        assert -n in covered


def test_trivalent_triple_relation_closes():
    w = window_action("N3", 40)
    for d in w.darts:
        a = w.x[d]
        if a is None:
            continue
        b = w.y[a]
        if b is None:
            continue
        c = w.z[b]
        if c is None:
            continue
        assert c == d, f"xyz != 1 at {d}"


def test_trivalent_flower_periodicity():
    w = window_action("N3", 60)
    for n in range(3, 13):
        assert w.y[4 * n] == 4 * n - 2
        assert w.y[4 * n + 1] == -n
        assert w.y[4 * n - 1] == pdart(n)


def test_window_consistency_radii_30_vs_60():
    big = window_action("N3", 60)
    small = window_action("N3", 30)
    for d in small.darts:
        for sm, bg in ((small.x, big.x), (small.y, big.y), (small.z, big.z)):
            if sm[d] is not None:
                assert bg[d] == sm[d]


@pytest.mark.parametrize("p", [4, 5, 7])
def test_pvalent_structure(p):
    model = PValentMap(p)
    t = p + 3
    w = window_action(model, 3 * t + 10)
    # y involution; leaf pairs (nt, nt+1); stem pairs (nt+2, nt+p+1)
    for n in (1, 2):
        assert w.y[n * t] == n * t + 1
        assert w.y[n * t + 2] == n * t + p + 1
        assert w.y[n * t + 3] == pdart(n)
    assert w.y[0] == 0 and w.y[1] == 1
    assert w.y[2] == p + 1
    # closed x-cycles have length p (vertices) or 1 (leaf tips)
    cycles = complete_cycles(w.x, w.darts)
    assert cycles
    assert {len(c) for c in cycles} <= {1, p}
    assert any(len(c) == p for c in cycles)
    fixed_x = sorted(c[0] for c in cycles if len(c) == 1)
    for n in (1, 2):
        assert n * t + 1 in fixed_x  # leaf-back darts
    for d in w.darts:
        img = w.y[d]
        if img is not None:
            assert w.y[img] == d


@pytest.mark.parametrize("p,q", [(3, 3), (4, 3), (3, 5), (5, 4)])
def test_bipartite_structure(p, q):
    model = BipartiteMap(p, q)
    t = p + 2 * q - 2
    w = window_action(model, 3 * t + 12)
    # y-cycles close with length q or 1
    ycycles = complete_cycles(w.y, w.darts)
    assert {len(c) for c in ycycles} <= {1, q}
    assert any(len(c) == q for c in ycycles)
    # x-cycles close with length p or 1
    xcycles = complete_cycles(w.x, w.darts)
    assert {len(c) for c in xcycles} <= {1, p}
    assert any(len(c) == p for c in xcycles)
    # the weed dart nt is fixed by x, the stub dart 0 by y
    for n in (1, 2):
        assert w.x[n * t] == n * t
    assert w.y[0] == 0
    # triple relation
    for d in w.darts:
        a = w.x[d]
        b = w.y[a] if a is not None else None
        c = w.z[b] if b is not None else None
        if c is not None:
            assert c == d


def test_bipartite_z_is_plus_one():
    w = window_action("Npq", 40, 3, 3)
    for d in range(-39, 39):
        assert w.z[d] == d + 1


def test_obstruction_rejects_n_below_two():
    with pytest.raises(ValueError):
        congruence_obstruction("N3", 1)


def test_obstruction_n3_examples():
    r5 = congruence_obstruction("N3", 5)
    assert r5.refuted and r5.kind == "y-pair"
    assert r5.witness == (20, 18)
    assert r5.residues == (0, 3)
    r2 = congruence_obstruction("N3", 2)
    assert r2.refuted
    assert r2.witness == (8, 5)


def test_obstruction_n3_full_range():
    for n in range(2, 51):
        r = congruence_obstruction("N3", n)
        assert r.refuted, n
        a, b = r.witness
        assert a % n == 0 and b % n != 0
        # and the witness pair really is a y-pair of the map
        assert map_model("N3").y_image(a) == b


def test_obstruction_np():
    model = PValentMap(6)
    for n in range(2, 20):
        r = congruence_obstruction(model, n)
        assert r.refuted
        a, b = r.witness
        assert a % n == 0 and b % n != 0


def test_obstruction_npq_x_fixed():
    model = BipartiteMap(4, 3)
    r = congruence_obstruction(model, 7)
    assert r.refuted and r.kind == "x-fixed"
    a, _ = r.witness
    assert a == 7 * model.period and a % 7 == 0
    assert model.x_image(a) == a


def test_window_table_text():
    w = window_action("N3", 12)
    text = w.table_text()
    lines = text.splitlines()
    assert lines[0] == "map N3"
    assert lines[1] == "radius 12"
    assert lines[2] == "dart x y z"
    assert any(line.startswith("0 ") for line in lines)
    assert "P1" in text


def test_pdart_helpers():
    assert is_pdart(pdart(3)) and not is_pdart(12)
