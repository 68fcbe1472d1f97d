import math

import pytest

from hforge.perm import Perm, PermGroup
from hforge.dessin import analyze
from hforge.freewalk import schreier_basis
from hforge.realize import (BadDegree, base_action, catalog, choose_degree,
                            format_group, parse_group, realize,
                            verify_realization)

from helpers import brute_centralizer


def P(text, degree):
    return Perm.parse(text, degree)


def test_base_action_rejects_small_n():
    with pytest.raises(BadDegree):
        base_action(2)


def test_base_action_n3_monodromy_and_primitivity():
    d = base_action(3)
    g = d.monodromy()
    assert g.order() == 6
    assert g.minimal_blocks() == []


def test_base_action_core_index_n4():
    assert base_action(4).monodromy().stabilizer_core_index() == 6


def test_base_action_schreier_rank_n5():
    assert len(schreier_basis(base_action(5)).schreier_gens) == 6


def test_choose_degree():
    assert choose_degree(1, 1) == 3
    assert choose_degree(2, 1) == 4   # 3! = 6 > 2, 2! = 2 not > 2
    assert choose_degree(5, 1) == 4
    assert choose_degree(6, 1) == 5
    assert choose_degree(12, 2) == 5
    # generator-count constraint can push n up
    assert choose_degree(1, 9) == 8


def test_catalog_orders_and_structure():
    want = {"C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6,
            "V4": 4, "S3": 6, "D4": 8, "Q8": 8, "A4": 12}
    cat = catalog()
    assert set(cat) == set(want)
    for name, order in want.items():
        assert len(cat[name].elements()) == order, name
    q8 = cat["Q8"]
    orders = sorted(p.order() for p in q8.elements())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert q8.is_transitive()  # regular representation


def test_realize_trivial_group_is_base_action():
    triv = PermGroup(1, [Perm.identity(1)])
    cover, cert, _ = realize(triv)
    assert cert.degree_n == 3
    assert cover == base_action(3)
    assert cert.aut_order == 1
    assert cert.ok()


def test_realize_c2():
    cover, cert, _ = realize(catalog()["C2"])
    assert cert.degree_n == 4
    assert cover.darts == 8
    assert cert.aut_order == 2
    assert cert.ok()
    assert len(brute_centralizer(cover.monodromy())) == 2


def test_realize_s3():
    cover, cert, va = realize(catalog()["S3"])
    assert cert.degree_n == 5
    assert cover.darts == 30
    assert cert.aut_order == 6
    assert cert.ok()
    assert verify_realization(cover, catalog()["S3"], va).ok


@pytest.mark.parametrize("name", sorted(catalog()))
def test_realize_catalog_exact_aut_and_iso(name):
    a = catalog()[name]
    cover, cert, va = realize(a)
    order = len(a.elements())
    assert cert.aut_order == order
    assert cert.core_index == math.factorial(cert.degree_n - 1) > order
    assert cert.ok()
    report = verify_realization(cover, a, va)
    assert report.ok, report.text()


def test_minimal_degree_certificate():
    a = catalog()["C2"]
    _, cert, _ = realize(a)
    assert cert.minimal_degree
    assert math.factorial(cert.degree_n - 2) <= len(a.elements())


def test_distinct_degrees_give_distinct_dessins():
    a = catalog()["C3"]
    c1, cert1, _ = realize(a)
    c2, cert2, _ = realize(a, force_degree=5)
    assert cert1.degree_n == 4 and cert2.degree_n == 5
    assert cert1.aut_order == cert2.aut_order == 3
    assert c2.darts != c1.darts


def test_force_degree_must_satisfy_constraints():
    with pytest.raises(BadDegree):
        realize(catalog()["A4"], force_degree=4)  # 3! = 6 not > 12


def test_verify_rejects_wrong_group_of_same_order():
    cover, _, _ = realize(catalog()["V4"])
    report = verify_realization(cover, catalog()["C4"])
    assert not report.ok


def test_verify_base_action_vs_trivial_group():
    triv = PermGroup(1, [Perm.identity(1)])
    assert verify_realization(base_action(4), triv).ok


def test_group_file_roundtrip():
    g = catalog()["S3"]
    text = format_group(g)
    assert text == "degree 3\ngen (1 2 3)\ngen (1 2)\n"
    g2 = parse_group(text)
    assert g2.degree == 3 and g2.generators == g.generators
    triv = parse_group("degree 1\n")
    assert triv.generators == (Perm.identity(1),)
