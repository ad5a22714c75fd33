from itertools import combinations, product

import pytest
from conftest import EX_ALIAS, edge_id
from oracles import c3_by_endpoints

from biconed.activity import activity
from biconed.biconing import CONE_BAR
from biconed.corpus import biconed_corpus
from biconed.forests import (
    BijectionError,
    BirootedForest,
    birooted_violations,
    connecting_vertices,
    degree,
    enumerate_birooted,
    format_monomial,
    is_2erf,
    monomial,
    parse_monomial,
    phi,
    phi1,
    phi1_inv,
    phi2,
    phi2_inv,
    phi_inv,
    validate_2erf,
)
from biconed.graph import GraphError, enumerate_forests, enumerate_spanning_trees
from biconed.multicomplex import count_birooted


def _m(bg, text):
    return parse_monomial(text, EX_ALIAS)


# ------------------------------------------------------------ monomials


def test_monomial_canonical_form():
    assert monomial({5: 1, 2: 3}) == ((2, 3), (5, 1))
    assert monomial([(2, 1), (2, 1), (4, 0)]) == ((2, 2),)
    assert degree({1: 2, 3: 1}) == 3
    with pytest.raises(GraphError):
        monomial({1: -1})


@pytest.mark.parametrize("text", ["1", "e0", "e3^2*e5", "e1*e10^4"])
def test_monomial_text_round_trip(text):
    assert format_monomial(parse_monomial(text)) == text


def test_alias_round_trip():
    m = parse_monomial("a^2*d*f^2", EX_ALIAS)
    assert m == ((0, 2), (3, 1), (5, 2))
    assert format_monomial(m, EX_ALIAS) == "a^2*d*f^2"
    assert parse_monomial("e0^2 * e3 * f^2", EX_ALIAS) == m


@pytest.mark.parametrize("bad", ["a^", "2*a", "q", "e1^-1", "a**2"])
def test_monomial_parse_errors(bad):
    with pytest.raises(GraphError):
        parse_monomial(bad, EX_ALIAS)


# ------------------------------------------------------------ worked examples


def test_twelve_vertex_chain(big_bg, big_tree):
    full = big_bg.full
    assert connecting_vertices(big_bg, big_tree) == {2, 3, 6, "2b", "4b"}
    r = phi1(big_bg, big_tree)
    assert r.roots == {CONE_BAR, 2, 3, 6, "2b", "4b"}
    m = phi2(big_bg, r)
    red = big_bg.reduced().graph
    doubled = {tuple(sorted(map(str, (red.edge[e].u, red.edge[e].v)))) for e, k in m.items() if k == 2}
    assert doubled == {("1b", "2"), ("1b", "2b"), ("4", "4b")}
    assert sorted(m.values()) == [1, 1, 1, 1, 2, 2, 2]
    singles = {tuple(sorted(map(str, (red.edge[e].u, red.edge[e].v)))) for e, k in m.items() if k == 1}
    assert singles == {("5b", "6"), ("3b", "4b"), ("4b", "5"), ("0b", "1")}
    assert degree(m) == len(activity(full, big_tree).internally_passive) == 10
    assert phi2_inv(big_bg, m) == r
    assert phi1_inv(big_bg, r) == big_tree
    assert phi_inv(big_bg, phi(big_bg, big_tree)) == big_tree
    assert edge_id(full, 4, "4b") in m


@pytest.mark.parametrize("text", ["c^3*e*f", "a^2*d*f^2", "a^2*f^2", "c^2*e^2*f"])
def test_example_members_validate(ex_bg, text):
    report = validate_2erf(ex_bg, _m(ex_bg, text))
    assert report["valid"], report["detail"]


def test_dividing_out_d_stays_inside(ex_bg):
    p = _m(ex_bg, "a^2*d*f^2")
    q = dict(p)
    del q[3]
    assert monomial(q) == _m(ex_bg, "a^2*f^2")
    assert is_2erf(ex_bg, q)


@pytest.mark.parametrize(
    "text, failing",
    [
        ("a^2*d^2*f", "C3"),  # two bridging edges on the rooted path
        ("a*b*d", "C0"),  # a triangle
        ("a^2*c^2*f^2", "C2"),
        ("a^4", "C2"),
    ],
)
def test_example_non_members(ex_bg, text, failing):
    report = validate_2erf(ex_bg, _m(ex_bg, text))
    assert not report["valid"]
    assert report[failing] is False


def test_two_components_both_doubly_rooted_fail_c1():
    from biconed.biconing import bicone
    from biconed.graph import Multigraph

    g = Multigraph([1, 2, 3, 4], [(1, 2), (3, 4)])
    bg = bicone(g, [1, 3], [2, 4])
    report = validate_2erf(bg, {0: 3, 1: 3})
    assert report["C1"] is False and not report["valid"]


def test_unknown_edges_fail_c0(ex_bg):
    report = validate_2erf(ex_bg, {ex_bg.zero_edge(): 1})
    assert report["C0"] is False and report["C3"] is None


# ------------------------------------------------------------ C3 against the endpoint-side rule


def _box(bg):
    """Exponents up to 3 on every forest: a superset of all members."""
    red = bg.reduced().graph
    for f in enumerate_forests(red):
        f = sorted(f)
        for exps in product((1, 2, 3), repeat=len(f)):
            yield dict(zip(f, exps))


@pytest.mark.parametrize("which", [0, 57, 301, 602, 899])
def test_c3_matches_endpoint_sides(which):
    bg = list(biconed_corpus(4))[which]
    for mult in _box(bg):
        report = validate_2erf(bg, mult)
        if report["C1"] is not True or report["C2"] is not True:
            continue
        side = c3_by_endpoints(bg, mult)
        if side is None:
            assert report["C3"] is True
        else:
            assert report["C3"] is side, (mult, report)


def test_c3_matches_endpoint_sides_on_example(ex_bg):
    seen = 0
    for mult in _box(ex_bg):
        report = validate_2erf(ex_bg, mult)
        side = c3_by_endpoints(ex_bg, mult)
        if report["C1"] and report["C2"] and side is not None:
            assert report["C3"] is side
            seen += 1
    assert seen > 100


# ------------------------------------------------------------ bijection round trips


def _sample(step=7):
    return list(biconed_corpus(4))[::step]


@pytest.mark.parametrize("bg", _sample(), ids=lambda bg: repr(bg)[:60])
def test_phi_round_trips(bg):
    red = bg.reduced().graph
    seen = set()
    for t in enumerate_spanning_trees(bg.full):
        r = phi1(bg, t)
        assert birooted_violations(bg, r) == []
        assert phi1_inv(bg, r) == t
        m = phi2(bg, r)
        assert is_2erf(bg, m)
        assert set(m) == r.support <= set(red.edge_ids)
        assert phi2_inv(bg, m) == r
        seen.add(monomial(m))
    assert len(seen) == count_birooted(bg)


@pytest.mark.parametrize("bg", _sample(13), ids=lambda bg: repr(bg)[:60])
def test_birooted_enumeration_matches_phi1_image(bg):
    direct = set(enumerate_birooted(bg))
    image = {phi1(bg, t) for t in enumerate_spanning_trees(bg.full)}
    assert direct == image
    assert len(direct) == count_birooted(bg)


def test_phi1_rejects_non_trees(ex_bg):
    with pytest.raises(BijectionError):
        phi1(ex_bg, [0, 1, 2])


def test_birooted_violations_are_reported(ex_bg):
    r = BirootedForest(frozenset({0}), frozenset({1}))
    bad = birooted_violations(ex_bg, r)
    assert any("0bar" in b for b in bad)
    same_side = BirootedForest(frozenset({1}), frozenset({CONE_BAR, 1, 2, "1b", "2b"}))
    assert any("one root in A" in b for b in birooted_violations(ex_bg, same_side))
    with pytest.raises(BijectionError):
        phi1_inv(ex_bg, r)
    with pytest.raises(BijectionError):
        phi2(ex_bg, r)


def test_phi2_inv_rejects_invalid(ex_bg):
    with pytest.raises(BijectionError, match="C3"):
        phi2_inv(ex_bg, _m(ex_bg, "a^2*d^2*f"))


def test_every_degree_two_forest_pair_is_consistent(ex_bg):
    """phi and its inverse agree on all trees of the six-edge example."""
    trees = list(enumerate_spanning_trees(ex_bg.full))
    assert len(trees) == 225
    images = {phi(ex_bg, t) for t in trees}
    assert len(images) == 225
    for a, b in combinations(sorted(images)[:20], 2):
        assert phi_inv(ex_bg, a) != phi_inv(ex_bg, b)
