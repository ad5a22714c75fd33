from itertools import product

import pytest
from conftest import EX_ALIAS

from biconed import multicomplex as mc
from biconed.biconing import bicone, gen_family
from biconed.corpus import biconed_corpus
from biconed.forests import BijectionError, parse_monomial, phi, validate_2erf
from biconed.graph import Multigraph, enumerate_forests, enumerate_spanning_trees
from biconed.multicomplex import (
    MonomialSet,
    degree_sequence,
    enumerate_2erf,
    extend,
    extend_to_facet,
    extension_check,
    facets,
    is_downward_closed,
    is_pure,
    verify_stanley,
)


def _by_filter(bg):
    """Every valid candidate in a box that contains all 2-edge-rooted forests."""
    red = bg.reduced().graph
    out = set()
    for f in enumerate_forests(red):
        f = sorted(f)
        for exps in product((1, 2, 3), repeat=len(f)):
            mult = dict(zip(f, exps))
            if validate_2erf(bg, mult)["valid"]:
                out.add(tuple(sorted(mult.items())))
    return out


@pytest.mark.parametrize("which", range(0, 1182, 97))
def test_direct_enumeration_matches_definition_filter(which):
    bg = list(biconed_corpus(4))[which]
    assert enumerate_2erf(bg).monomials == _by_filter(bg)


@pytest.mark.parametrize("which", range(3, 1182, 89))
def test_direct_enumeration_matches_phi_image(which):
    bg = list(biconed_corpus(4))[which]
    image = {phi(bg, t) for t in enumerate_spanning_trees(bg.full)}
    assert enumerate_2erf(bg).monomials == image


def test_six_edge_example(ex_bg):
    s = enumerate_2erf(ex_bg)
    assert len(s) == 225
    assert degree_sequence(s) == [1, 6, 21, 50, 79, 68]
    for text in ("c^3*e*f", "a^2*d*f^2", "a^2*f^2"):
        assert parse_monomial(text, EX_ALIAS) in s
    assert parse_monomial("a^2*d^2*f", EX_ALIAS) not in s
    assert is_downward_closed(s) == (True, None)
    assert is_pure(s)


def test_downward_closure_witness():
    s = MonomialSet([(), ((1, 1),), ((1, 2), (2, 1))])
    ok, (p, q) = is_downward_closed(s)
    assert not ok and p == ((1, 2), (2, 1))
    assert q in (((1, 1), (2, 1)), ((1, 2),))


def test_facets_and_purity():
    closed = MonomialSet([(), ((1, 1),), ((2, 1),), ((1, 1), (2, 1)), ((3, 1),)])
    assert facets(closed).monomials == {((1, 1), (2, 1)), ((3, 1),)}
    assert not is_pure(closed)
    pure = MonomialSet([(), ((1, 1),), ((1, 2),)])
    assert facets(pure).monomials == {((1, 2),)}
    assert is_pure(pure)
    # not downward closed: falls back to pairwise divisibility
    gappy = MonomialSet([((1, 1),), ((1, 3),)])
    assert facets(gappy).monomials == {((1, 3),)}


def test_degree_sequence_of_empty_set():
    assert degree_sequence(MonomialSet()) == []


def test_extend_climbs_to_a_facet(ex_bg):
    s = enumerate_2erf(ex_bg)
    chain = extend_to_facet(ex_bg, ())
    assert chain[0] == ()
    assert len(chain) == 6
    assert all(m in s for m in chain)
    assert chain[-1] in facets(s).monomials
    assert extend(ex_bg, chain[-1]) is None


def test_extend_rejects_invalid(ex_bg):
    with pytest.raises(BijectionError):
        extend(ex_bg, parse_monomial("a^2*d^2*f", EX_ALIAS))


def test_extension_check_on_bridged_graph():
    # A empty: the reduced graph has no bridging edge and h_d = 0
    bg = gen_family("coned", [Multigraph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])])
    s = enumerate_2erf(bg)
    rep = extension_check(bg, s)
    assert rep["ok"] and rep["longest_chain"] == 3


@pytest.mark.parametrize(
    "kind, params",
    [("complete-bipartite", [2, 2]), ("complete-multipartite", [2, 1, 1]), ("ferrers", [3, 2, 2]), ("complete", [5])],
)
def test_verify_stanley_families(kind, params):
    rep = verify_stanley(gen_family(kind, params))
    assert rep["status"] == "PASS", rep["failed"]
    assert rep["h"]["from_f"] == rep["h"]["from_activity"] == rep["h"]["from_multicomplex"]
    assert rep["bijection"]["checked"]
    assert rep["extension"]["ok"]


def test_verify_stanley_k33_numbers():
    rep = verify_stanley(gen_family("complete-bipartite", [2, 2]))
    assert rep["h"]["from_activity"] == [1, 4, 10, 20, 26, 20]
    assert rep["counts"]["spanning_trees"] == 81
    assert rep["mobius_coinvariant"] == rep["top_degree_facets"] == 20


def test_verify_stanley_skips_bijection_above_limit():
    rep = verify_stanley(gen_family("complete-bipartite", [2, 2]), bijection_limit=10)
    assert rep["status"] == "PASS"
    assert rep["bijection"] == {"checked": False}
    assert rep["extension"] is None


def test_verify_stanley_reports_a_broken_multicomplex(monkeypatch):
    real = mc.enumerate_2erf

    def lossy(bg):
        s = real(bg)
        drop = sorted(s.monomials, key=lambda m: (sum(k for _, k in m), m))[1]
        return MonomialSet(s.monomials - {drop}, s.ground_set)

    monkeypatch.setattr(mc, "enumerate_2erf", lossy)
    rep = verify_stanley(gen_family("complete-bipartite", [1, 2]))
    assert rep["status"] == "FAIL"
    assert "downward_closed" in rep["failed"]
    assert rep["first_failure"]


def test_activity_characterization_counts(ex_bg):
    rep = verify_stanley(ex_bg)
    ch = rep["activity_characterization"]
    assert ch["active_iff_root_is_smallest_and_not_birooted"] == ch["connecting_edges"] == 440
    assert ch["active_iff_root_is_not_smallest"] < ch["connecting_edges"]


def test_bicone_with_shared_vertices_passes():
    g = Multigraph([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    rep = verify_stanley(bicone(g, [1, 2, 3], [2, 3, 4]))
    assert rep["status"] == "PASS", rep["failed"]
    assert rep["graph"]["a_and_b"] == 2
