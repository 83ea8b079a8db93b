import pytest

from hfl.alexander import (
    WirtingerPresentation,
    goeritz_determinant,
    multivariable_alexander,
    signature,
)
from hfl.laurent import MultiLaurent
from hfl.linkdiag import (
    LinkDiagram,
    braid_closure,
    connected_sum,
    corpus,
    mirror,
    reverse,
    two_bridge,
)


def poly(nvars, terms):
    return MultiLaurent(nvars, terms)


TREFOIL = poly(1, {(2,): 1, (0,): -1, (-2,): 1})
FIG8 = poly(1, {(2,): 1, (0,): -3, (-2,): 1})
CLASP = poly(2, {(1, 1): 1, (1, -1): -1, (-1, 1): -1, (-1, -1): 1})


def test_wirtinger_generator_count():
    for name in ("trefoil_right", "figure8", "L7n1", "two_bridge(8,3)"):
        d = corpus(name)
        w = WirtingerPresentation(d)
        assert w.n_generators == len(d.crossings)
        assert len(w.relators) == len(d.crossings)


def test_wirtinger_needs_connected():
    h = corpus("hopf_plus")
    split = LinkDiagram(h.crossings + [tuple(e + 10 for e in x) for x in h.crossings])
    with pytest.raises(ValueError):
        WirtingerPresentation(split)
    with pytest.raises(ValueError):
        signature(split)


# the fixed table every other module leans on
CORPUS_TABLE = {
    "unknot": (poly(1, {(0,): 1}), 0, 1),
    "hopf_plus": (poly(2, {(0, 0): 1}), -1, 2),
    "hopf_minus": (poly(2, {(0, 0): 1}), 1, 2),
    "trefoil_right": (TREFOIL, -2, 3),
    "trefoil_left": (TREFOIL, 2, 3),
    "figure8": (FIG8, 0, 5),
    "torus_2_2n(2)": (poly(2, {(1, 1): 1, (-1, -1): 1}), -3, 4),
    "torus_2_2n(3)": (poly(2, {(2, 2): 1, (0, 0): 1, (-2, -2): 1}), -5, 6),
    "torus_2_2n(4)": (
        poly(2, {(3, 3): 1, (1, 1): 1, (-1, -1): 1, (-3, -3): 1}),
        -7,
        8,
    ),
    "two_bridge(8,3)": (CLASP, -1, 8),
    "L7n1": (poly(2, {(1, 3): 1, (-1, -3): 1}), -5, 4),
    "L7n2": (CLASP, 1, 8),
}


@pytest.mark.parametrize("name", sorted(CORPUS_TABLE))
def test_corpus_invariants(name):
    delta, sigma, det = CORPUS_TABLE[name]
    d = corpus(name)
    assert multivariable_alexander(d).delta == delta
    assert signature(d) == sigma
    assert goeritz_determinant(d) == det


def test_result_conventions():
    r = multivariable_alexander(corpus("hopf_plus"))
    assert r.conventions["torres_factor"] == "T1-1"
    assert r.conventions["deleted_row"] == 0
    assert multivariable_alexander(corpus("figure8")).conventions["torres_factor"] is None


def test_mirror_flips_signature():
    for name in ("trefoil_right", "torus_2_2n(2)", "two_bridge(8,3)", "L7n2"):
        d = corpus(name)
        assert signature(mirror(d)) == -signature(d), name


def test_mirror_preserves_normalized_delta():
    for name in ("trefoil_right", "figure8", "torus_2_2n(3)", "two_bridge(8,3)"):
        d = corpus(name)
        assert (
            multivariable_alexander(mirror(d)).delta
            == multivariable_alexander(d).delta
        ), name


def test_reverse_knot_keeps_delta():
    t = corpus("trefoil_right")
    assert multivariable_alexander(reverse(t, 0)).delta == TREFOIL


def test_reverse_component_reflects_variable():
    """Reversing one torus-link component moves Delta to the antidiagonal."""
    d = reverse(corpus("torus_2_2n(2)"), 1)
    assert multivariable_alexander(d).delta == poly(2, {(1, -1): 1, (-1, 1): 1})
    assert signature(d) == 1
    d3 = reverse(corpus("torus_2_2n(3)"), 1)
    assert multivariable_alexander(d3).delta == poly(
        2, {(2, -2): 1, (0, 0): 1, (-2, 2): 1}
    )


# same link, different diagrams: values must agree construction-free
VARIANTS = [
    ("hopf_plus", (2, 1)),
    ("trefoil_right", (3, 1)),
    ("torus_2_2n(2)", (4, 1)),
    ("torus_2_2n(3)", (6, 1)),
    ("figure8", (5, 2)),
]


@pytest.mark.parametrize("name,pq", VARIANTS)
def test_two_bridge_variants_match(name, pq):
    a, b = corpus(name), two_bridge(*pq)
    assert multivariable_alexander(a).delta == multivariable_alexander(b).delta
    assert signature(a) == signature(b)
    assert goeritz_determinant(a) == goeritz_determinant(b)


@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (5, 2), (7, 3), (8, 3), (8, 5), (9, 2), (12, 5), (13, 5)])
def test_goeritz_determinant_two_bridge(p, q):
    assert goeritz_determinant(two_bridge(p, q)) == p


def test_connected_sum_multiplies_delta():
    t = corpus("trefoil_right")
    h = corpus("hopf_plus")
    assert multivariable_alexander(connected_sum(t, t)).delta == TREFOIL * TREFOIL
    th = multivariable_alexander(connected_sum(t, h))
    assert th.delta == poly(2, {(2, 0): 1, (0, 0): -1, (-2, 0): 1})
    assert signature(connected_sum(t, h)) == -3


def test_connected_sum_three_components():
    h = corpus("hopf_plus")
    chain = connected_sum(h, h)
    assert chain.n_components == 3
    # both Hopf factors are trivial; only the Torres factor of the
    # merged middle component remains
    assert multivariable_alexander(chain).delta == poly(
        3, {(1, 0, 0): 1, (-1, 0, 0): -1}
    )
    assert signature(chain) == -2


def test_kinked_unknot():
    kink = braid_closure([1], 2)
    assert multivariable_alexander(kink).delta == poly(1, {(0,): 1})
    assert signature(kink) == 0
    assert goeritz_determinant(kink) == 1


def test_unknot_trivial_cases():
    d = corpus("unknot")
    assert multivariable_alexander(d).delta == poly(1, {(0,): 1})
    assert signature(d) == 0
    assert goeritz_determinant(d) == 1
