import pytest

from sfkit import algebra as alg
from sfkit import corpus
from sfkit.diskcount import (
    EMPTY_BIGON,
    EMPTY_RECTANGLE,
    UNSUPPORTED,
    classify,
    enumerate_mu1_classes,
    niceness_report,
)
from sfkit.domains import DomainCalculator


def classes_table(name):
    d = corpus.load_diagram(name)
    calc = DomainCalculator(d)
    tilde = alg.diagram_algebra(d, variant=alg.TILDE)
    gens = d.generators()
    out = {}
    for i, x in enumerate(gens):
        for j, y in enumerate(gens):
            cls = enumerate_mu1_classes(d, x, y, tilde, calc)
            if cls:
                out[(i, j)] = [(tuple(c.domain), c.classification, c.n_z) for c in cls]
    return out


def test_unknot_no_classes():
    assert classes_table("unknot") == {}


def test_generator_self_classes_empty_on_admissible_diagrams():
    for name in ["unknot", "trefoil", "grid2", "special_hs"]:
        table = classes_table(name)
        assert all(i != j for (i, j) in table)


def test_trefoil_classes():
    table = classes_table("trefoil")
    # two visible bigons out of the middle generator
    assert table[(1, 0)] == [((1, 0, 0), EMPTY_BIGON, (0, 1))]
    assert table[(1, 2)] == [((0, 1, 0), EMPTY_BIGON, (1, 0))]
    # two annular classes whose counts are not combinatorially determined
    assert table[(0, 1)] == [((0, 1, 1), UNSUPPORTED, (1, 0))]
    assert table[(2, 1)] == [((1, 0, 1), UNSUPPORTED, (0, 1))]
    assert set(table) == {(1, 0), (1, 2), (0, 1), (2, 1)}


def test_grid2_rectangles():
    table = classes_table("grid2")
    # each direction sees two single-square rectangles through one mark each
    assert [c[1] for c in table[(0, 1)]] == [EMPTY_RECTANGLE, EMPTY_RECTANGLE]
    assert [c[1] for c in table[(1, 0)]] == [EMPTY_RECTANGLE, EMPTY_RECTANGLE]
    marks = sorted(c[2] for pair in table.values() for c in pair)
    assert marks == [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def test_genus2_pair_single_bigon():
    table = classes_table("genus2_pair")
    assert table == {(0, 1): [((1, 0), EMPTY_BIGON, (0,))]}


def test_classification_rejects_bad_shapes():
    # a coefficient-2 domain is never a supported shape
    d = corpus.load_diagram("trefoil")
    gens = d.generators()
    cls, count = classify(d, [2, 0, 0], gens[1], gens[0])
    assert cls == UNSUPPORTED and count is None


def test_unsupported_annulus_signature():
    # 0/1 coefficients but euler measure -1/2: hexagon-like, unsupported
    d = corpus.load_diagram("trefoil")
    gens = d.generators()
    cls, _ = classify(d, [0, 1, 1], gens[0], gens[1])
    assert cls == UNSUPPORTED


def test_special_fixture_bigon_pairs_found():
    # on the handle-slide fixture both bigons of each isotopic pair show up
    # (the canceling configuration: equal counts mod 2)
    table = classes_table("special_hs")
    bigons = sorted(
        cls[0]
        for classes in table.values()
        for cls in classes
        if cls[1] == EMPTY_BIGON
    )
    # D_1^+ (region 0) with its partner W (region 2); C_a (4) with C_b (5)
    for dom in [
        (1, 0, 0, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 0, 1, 0),
    ]:
        assert dom in bigons


def test_niceness_reports():
    d = corpus.load_diagram("torus_min")
    tilde = alg.diagram_algebra(d, variant=alg.TILDE)
    rep = niceness_report(d, tilde)
    assert rep.hat_countable and rep.minus_countable

    d2 = corpus.load_diagram("trefoil")
    tilde2 = alg.diagram_algebra(d2, variant=alg.TILDE)
    rep2 = niceness_report(d2, tilde2)
    assert rep2.hat_countable  # every n_z = 0 class is supported (there are none)
    assert not rep2.minus_countable  # the annular classes are unsupported
    assert len(rep2.unsupported) == 2

    d3 = corpus.load_diagram("grid2")
    tilde3 = alg.diagram_algebra(d3, variant=alg.TILDE)
    rep3 = niceness_report(d3, tilde3)
    assert rep3.minus_countable
    shapes = {s["region"]: s["shape"] for s in rep3.region_shapes}
    assert set(shapes.values()) == {"square"}
