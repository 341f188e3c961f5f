"""Tests for the splitting enumerator and case catalog.

The oracle here is a deliberately dumb generate-and-filter enumerator
with loose bounds justified by the Euler-characteristic budget; it must
agree exactly with the production enumerator, whose bounds are tighter.
"""
from __future__ import annotations

import itertools

import pytest

from raagdisk.decompositions import (
    CaseKey,
    Connector,
    Decomposition,
    Side,
    alpha,
    case_catalog,
    case_label,
    catalog_to_json,
    decomposition_to_json,
    enumerate_decompositions,
    validate_decomposition,
    verify_xi_identity,
)
from raagdisk.surfaces import Mode, SurfaceType, admits_two_disjoint_disks, complexity


def brute_force_decompositions(ambient, mode):
    """Independent oracle: huge generate-and-filter sweep.

    chi budget: every side has chi <= -1, so the connectors' total -chi
    is at most -chi(ambient) - 2; annuli cost 0 there but each needs an
    attaching-circle class, and xi(side1) + xi(side2) + #classes <=
    xi(ambient) caps any connector count at xi - 2.  The caps below sit
    strictly above both limits for xi <= 5.
    """
    xi = complexity(ambient)
    neg_chi_budget = (2 * ambient.genus + ambient.marks - 2) - 2
    cands = []
    for genus in range(ambient.genus + 1):
        for c1 in range(6):
            for c2 in range(6):
                for punct in range(ambient.marks + 1):
                    c = Connector(genus, c1, c2, punct)
                    if c.circles < 1:
                        continue
                    if c.genus == 0 and c.circles == 1 and c.punctures <= 1:
                        continue
                    if 2 * genus + c.marks - 2 <= neg_chi_budget:
                        cands.append(c)
    found = set()
    # each connector consumes one attaching-circle class and both sides
    # consume complexity 1, so more than xi - 2 connectors can't fit
    for size in range(1, max(xi - 2, 0) + 1):
        for combo in itertools.combinations_with_replacement(cands, size):
            if sum(2 * c.genus + c.marks - 2 for c in combo) > neg_chi_budget:
                continue
            b1 = sum(c.circles_to_side1 for c in combo)
            b2 = sum(c.circles_to_side2 for c in combo)
            conn_punct = sum(c.punctures for c in combo)
            for g1 in range(ambient.genus + 1):
                for p1 in range(ambient.marks + 1):
                    for g2 in range(ambient.genus + 1):
                        p2 = ambient.marks - conn_punct - p1
                        if p2 < 0:
                            continue
                        d = Decomposition(
                            ambient, Side(g1, b1, p1), Side(g2, b2, p2), combo
                        )
                        if validate_decomposition(d):
                            continue
                        if not admits_two_disjoint_disks(d.side1.surface_type, mode):
                            continue
                        if not admits_two_disjoint_disks(d.side2.surface_type, mode):
                            continue
                        found.add(d.canonical())
    return found


@pytest.mark.parametrize(
    "gn,mode",
    [
        ((0, 6), Mode.HANDLEBODY),
        ((1, 3), Mode.SURFACE),
        ((0, 7), Mode.HANDLEBODY),
        ((1, 4), Mode.HANDLEBODY),
        ((2, 1), Mode.SURFACE),
        ((0, 8), Mode.HANDLEBODY),
        ((1, 5), Mode.HANDLEBODY),
        ((2, 2), Mode.HANDLEBODY),
        ((1, 5), Mode.SURFACE),
        ((2, 2), Mode.SURFACE),
    ],
)
def test_enumerator_matches_brute_force(gn, mode):
    ambient = SurfaceType(*gn)
    fast = set(enumerate_decompositions(ambient, mode))
    slow = brute_force_decompositions(ambient, mode)
    assert fast == slow


def test_low_complexity_empty():
    for gn in [(0, 0), (0, 4), (0, 5), (1, 2), (1, 0)]:
        assert enumerate_decompositions(SurfaceType(*gn), Mode.HANDLEBODY) == ()


def test_every_enumerated_decomposition_is_coherent():
    for gn in [(0, 8), (1, 5), (2, 2), (0, 7), (1, 4), (0, 6)]:
        for mode in (Mode.HANDLEBODY, Mode.SURFACE):
            for d in enumerate_decompositions(SurfaceType(*gn), mode):
                assert validate_decomposition(d) == []
                assert verify_xi_identity(d)
                assert d == d.canonical()
                assert d.swapped().canonical() == d


def test_alpha_examples():
    amb = SurfaceType(0, 8)
    one_annulus = Decomposition(
        amb, Side(0, 1, 3), Side(0, 1, 3), (Connector(0, 1, 1, 0),)
    )
    assert alpha(one_annulus) == 1
    crossing_pants = Decomposition(
        amb, Side(0, 1, 3), Side(0, 1, 3), (Connector(0, 1, 1, 1),)
    )
    assert alpha(crossing_pants) == 2
    lopsided_pants = Decomposition(
        SurfaceType(1, 5), Side(0, 2, 2), Side(0, 1, 3), (Connector(0, 2, 1, 0),)
    )
    assert alpha(lopsided_pants) == 3


def test_xi_identity_examples():
    ok = Decomposition(
        SurfaceType(0, 8), Side(0, 1, 3), Side(0, 1, 5), (Connector(0, 1, 1, 0),)
    )
    assert verify_xi_identity(ok)  # 5 = 1 + 3 + 0 + 1
    ok2 = Decomposition(
        SurfaceType(0, 7), Side(0, 1, 3), Side(0, 1, 3), (Connector(0, 1, 1, 1),)
    )
    assert verify_xi_identity(ok2)  # 4 = 1 + 1 + 0 + 2


def test_validator_reports_problems():
    amb = SurfaceType(0, 8)
    unattached = Decomposition(
        amb, Side(0, 0, 4), Side(0, 1, 3), (Connector(0, 0, 1, 0),)
    )
    probs = validate_decomposition(unattached)
    assert any("side1" in p for p in probs)
    assert any("inessential" in p for p in probs)
    bad_punct = Decomposition(
        amb, Side(0, 1, 3), Side(0, 1, 3), (Connector(0, 1, 1, 0),)
    )
    assert any("puncture balance" in p for p in validate_decomposition(bad_punct))
    loose = Decomposition(
        SurfaceType(2, 2),
        Side(0, 1, 1),
        Side(0, 1, 1),
        (Connector(0, 1, 0, 0, ), Connector(0, 0, 1, 0)),
    )
    probs = validate_decomposition(loose)
    assert any("disconnected" in p for p in probs)


# ---------------------------------------------------------------- catalog

def test_catalog_key_counts():
    # the labeled classification covers 17 of the 18 keys at complexity 5;
    # the extra key (two three-marked spheres, one crossing) satisfies
    # every invariant and realizes only on the planar ambient
    assert len(case_catalog(5, Mode.HANDLEBODY)) == 18
    assert len(case_catalog(4, Mode.HANDLEBODY)) == 5
    assert len(case_catalog(3, Mode.HANDLEBODY)) == 1
    assert len(case_catalog(5, Mode.SURFACE)) == 18
    assert len(case_catalog(4, Mode.SURFACE)) == 5
    assert len(case_catalog(3, Mode.SURFACE)) == 1


def test_catalog_labels_xi5():
    cat = case_catalog(5, Mode.HANDLEBODY)
    by_label = {e.label: e for e in cat}
    expected = {f"({i})" for i in range(1, 18)}
    assert {lab for lab in by_label if lab} == expected
    unlabeled = [e for e in cat if e.label is None]
    assert len(unlabeled) == 1
    extra = unlabeled[0]
    assert str(extra.key) == "pants(0,1)+pants(1,1)"
    assert [(a.genus, a.marks) for a in extra.ambients] == [(0, 8)]
    # labeled entries come first, in numeric order
    assert [e.label for e in cat][:17] == [f"({i})" for i in range(1, 18)]


def test_catalog_labels_xi4():
    cat = case_catalog(4, Mode.HANDLEBODY)
    assert [e.label for e in cat] == ["(1)'", "(2)'", "(3)'", "(4)'", "(5)'"]


def test_realizable_ambients_xi5():
    cat = case_catalog(5, Mode.HANDLEBODY)
    table = {
        e.label: [(a.genus, a.marks) for a in e.ambients] for e in cat if e.label
    }
    assert table["(1)"] == [(0, 8), (1, 5), (2, 2)]
    assert table["(2)"] == [(0, 8), (1, 5)]
    assert table["(6)"] == [(0, 8)]
    assert table["(8)"] == [(1, 5)]
    assert table["(17)"] == [(0, 8)]
    by_ambient = {}
    for e in cat:
        for a in e.ambients:
            by_ambient.setdefault((a.genus, a.marks), set()).add(e.label)
    assert by_ambient[(0, 8)] == {"(1)", "(2)", "(5)", "(6)", "(7)", "(17)", None}
    assert by_ambient[(1, 5)] == {
        "(1)", "(2)", "(3)", "(4)", "(5)", "(7)", "(8)", "(9)", "(10)", "(11)",
        "(15)", "(16)",
    }
    assert by_ambient[(2, 2)] == {"(1)", "(3)", "(4)", "(12)", "(13)", "(14)"}


def test_realizable_ambients_xi4():
    cat = case_catalog(4, Mode.HANDLEBODY)
    table = {e.label: [(a.genus, a.marks) for a in e.ambients] for e in cat}
    assert table == {
        "(1)'": [(0, 7), (1, 4)],
        "(2)'": [(0, 7)],
        "(3)'": [(1, 4)],
        "(4)'": [(1, 4)],
        "(5)'": [(0, 7)],
    }


def test_xi3_catalog():
    cat = case_catalog(3, Mode.HANDLEBODY)
    (entry,) = cat
    assert entry.label is None  # labels exist only at complexities 4 and 5
    assert str(entry.key) == "ann(1,1)"
    assert [(a.genus, a.marks) for a in entry.ambients] == [(0, 6)]
    sf = case_catalog(3, Mode.SURFACE)
    assert [(a.genus, a.marks) for a in sf[0].ambients] == [(0, 6), (1, 3), (2, 0)]


def test_surface_mode_widens_realizability_not_keys():
    # one-holed-torus sides exist for boundary subsurfaces of surfaces but
    # not of handlebodies; at these complexities that changes where a case
    # lives, never which cases exist
    for xi in (3, 4, 5):
        hb = case_catalog(xi, Mode.HANDLEBODY)
        sf = case_catalog(xi, Mode.SURFACE)
        assert {e.key for e in hb} == {e.key for e in sf}
        hb_pairs = {(e.key, a) for e in hb for a in e.ambients}
        sf_pairs = {(e.key, a) for e in sf for a in e.ambients}
        assert hb_pairs < sf_pairs
    sf4 = {e.label: [(a.genus, a.marks) for a in e.ambients]
           for e in case_catalog(4, Mode.SURFACE)}
    assert sf4["(2)'"] == [(0, 7), (1, 4), (2, 1)]


def test_per_ambient_decomposition_counts():
    counts = {
        (0, 8): 10, (1, 5): 16, (2, 2): 6,  # handlebody, complexity 5
        (0, 7): 3, (1, 4): 3, (2, 1): 0,    # handlebody, complexity 4
    }
    for gn, want in counts.items():
        got = len(enumerate_decompositions(SurfaceType(*gn), Mode.HANDLEBODY))
        assert got == want, f"{gn}: {got} != {want}"
    surface_counts = {(0, 8): 10, (1, 5): 23, (2, 2): 16}
    for gn, want in surface_counts.items():
        got = len(enumerate_decompositions(SurfaceType(*gn), Mode.SURFACE))
        assert got == want, f"surface {gn}: {got} != {want}"


def test_positive_genus_connectors_only_in_torus_family():
    # at complexity 5 the only key realized with a positive-genus connector
    # is the one pairing a crossing annulus with a one-holed torus
    hits = set()
    for gn in [(0, 8), (1, 5), (2, 2)]:
        for d in enumerate_decompositions(SurfaceType(*gn), Mode.HANDLEBODY):
            if any(c.genus > 0 for c in d.connectors):
                hits.add(CaseKey.of(d))
    assert {str(k) for k in hits} == {"ann(1,1)+piece(xi=1,0,1)"}
    assert case_label(hits.pop(), 5) == "(7)"


def test_case_label_lookup():
    one_ann = CaseKey(((1, 1, 0, False),))
    assert case_label(one_ann, 5) is None  # not a valid case shape
    cat5 = {e.label: e.key for e in case_catalog(5, Mode.HANDLEBODY)}
    assert case_label(cat5["(1)"], 5) == "(1)"
    assert case_label(cat5["(1)"], 4) == "(1)'"  # same shape, primed at 4
    assert case_label(cat5["(12)"], 4) is None  # no three-annuli case at 4
    assert case_label(cat5["(8)"], 5) == "(8)"
    assert case_label(cat5["(8)"], 3) is None


def test_swap_and_canonical():
    d = Decomposition(
        SurfaceType(1, 5), Side(0, 2, 2), Side(0, 1, 3), (Connector(0, 2, 1, 0),)
    )
    s = d.swapped()
    assert s.side1 == d.side2
    assert s.connectors[0].circles_to_side1 == 1
    assert d.canonical() == s.canonical()
    assert CaseKey.of(d) == CaseKey.of(s)


def test_json_round_trip_shapes():
    cat = case_catalog(4, Mode.HANDLEBODY)
    blob = catalog_to_json(cat)
    assert blob[0]["label"] == "(1)'"
    assert blob[0]["ambients"] == [[0, 7], [1, 4]]
    rep = blob[0]["representative"]
    assert rep["case_key"] == "ann(1,1)"
    assert rep["ambient"] == [0, 7]
    assert len(rep["side1"]) == 3 and len(rep["connectors"][0]) == 4
    d = enumerate_decompositions(SurfaceType(0, 7), Mode.HANDLEBODY)[0]
    j = decomposition_to_json(d)
    assert j["ambient"] == [0, 7]
