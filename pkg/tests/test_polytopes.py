"""Tests for the polytope partition and its separation certificates."""
from collections import Counter
from fractions import Fraction as F

import pytest

from kitebilliards.polytopes import (
    certify_pair,
    containing_polytopes,
    facets,
    format_table,
    gamma,
    iota,
    lattice_translate,
    polytope_table,
    shift,
    strictly_inside,
    verify_embedding,
    verify_iota_identities,
    verify_pairwise,
    verify_partition,
    verify_samples,
    with_label,
)


def _centroid(vertices):
    n = len(vertices)
    return tuple(F(sum(v[i] for v in vertices), n) for i in range(4))


def test_table_has_fourteen_polytopes():
    table = polytope_table()
    assert len(table) == 14
    assert [p.index for p in table] == list(range(1, 15))
    counts = Counter(p.label for p in table)
    assert counts == {
        (0, 1): 4,
        (-1, 0): 3,
        (1, 0): 2,
        (0, 0): 2,
        (1, 1): 1,
        (-1, 1): 1,
        (-1, -1): 1,
    }
    assert len(format_table().splitlines()) == 14


def test_with_label():
    assert [p.index for p in with_label((0, 0))] == [13, 14]


def test_simplex_has_five_facets():
    simplex = polytope_table()[5]
    assert len(simplex.vertices) == 5
    assert len(facets(simplex.vertices)) == 5


@pytest.mark.parametrize("index", range(14))
def test_centroid_lies_in_its_own_polytope_only(index):
    poly = polytope_table()[index]
    centre = _centroid(poly.vertices)
    assert strictly_inside(centre, poly.vertices)
    assert containing_polytopes(centre) == [poly]


def test_maps_on_parameter_space():
    v = (0, 1, 1, 1)
    assert iota(iota(v)) == v
    assert lattice_translate(v, 1, 0) == gamma(v, 1)
    assert lattice_translate(v, 0, 1) == gamma(v, 2)
    assert gamma(v, 3) == (-1, 0, 2, 1)
    assert shift(v, (1, 1, 0, 0)) == (1, 2, 1, 1)


def test_far_translate_is_separated_by_unit_functional():
    poly = polytope_table()[0]
    moved = [shift(v, (5, 0, 0, 0)) for v in poly.vertices]
    cert = certify_pair("P1", poly.vertices, "P1+5e", moved)
    assert cert.ok
    assert cert.method == "functional"


def test_pairwise_disjoint():
    report, certificates = verify_pairwise()
    assert report.passed, report.failures
    assert report.checked == 91
    assert all(cert.ok for cert in certificates)


def test_iota_identities():
    report = verify_iota_identities()
    assert report.passed, report.failures


def test_embedding_separation_small_range(settings):
    report, _ = verify_embedding(bound=2, settings=settings)
    assert report.passed, report.failures[:3]
    assert report.checked > 0


@pytest.mark.parametrize("a", [F(1, 3), F(2, 3)])
def test_classifier_agrees_with_polytopes_on_full_slice(a, settings):
    assert settings.master.sample_count == 10_000
    report = verify_samples(a, settings=settings)
    assert report.passed, report.failures[:3]
    assert report.checked > 0
    assert report.details["skipped"] < settings.master.sample_count


def test_mirror_on_boundary_is_skipped(settings):
    a = F(1, 3)
    v = (F(1), F(368, 997), F(199, 997))
    assert len(containing_polytopes(v + (a,))) == 1
    assert containing_polytopes(iota(v + (a,))) == []
    report = verify_samples(a, settings=settings, points=[v])
    assert report.passed, report.failures
    assert report.details == {"skipped": 0, "mirror_skipped": 1}
    assert report.checked == 1


def test_partition_report_carries_certificates(settings, monkeypatch):
    monkeypatch.setattr(settings.master, "sample_count", 200)
    report = verify_partition(F(2, 3), bound=1, settings=settings)
    assert report.passed, report.failures[:3]
    assert len(report.details["certificates"]) >= 91
