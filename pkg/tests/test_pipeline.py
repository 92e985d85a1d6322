import json
from pathlib import Path

import pytest

from mutations import ray_mutations
from toricert.exact import Lattice, primitive
from toricert.fan import fan_predicates
from toricert.interchange import FormatError
from toricert.pipeline import (
    build_counterexample,
    certificate_checks,
    seed_monoid_Mr,
    mirror_seed,
    verify_certificate,
)
from toricert.polyhedra import cone_predicates, facets, multiplicity


def test_seed_monoid_generators():
    assert set(seed_monoid_Mr(2).generators) == {(1, 1), (2, 0), (0, 2)}
    assert set(seed_monoid_Mr(3).generators) == {(1, 1, 1), (3, 0, 0), (0, 3, 0), (0, 0, 3)}
    with pytest.raises(ValueError):
        seed_monoid_Mr(1)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_seed_monoid_hilbert_cardinality(r):
    assert len(seed_monoid_Mr(r).hilbert_basis) == r + 1


@pytest.mark.parametrize("n", [3, 4])
def test_seed_cone_has_one_bad_facet(n):
    sd = mirror_seed(n)
    assert sd.e in sd.n_plus.hilbert_basis
    zn = Lattice.standard(n)
    bad = [u for u, f in facets(sd.cone) if not cone_predicates(f, zn).unimodular]
    assert len(bad) == 1 and primitive(bad[0]) == sd.e
    assert multiplicity(sd.cone.rays, zn) == n - 1


def test_rejects_small_dimension():
    with pytest.raises(ValueError):
        build_counterexample(2)
    with pytest.raises(ValueError):
        build_counterexample(3, path="nope")


def test_n3_certificate(built3):
    cert = built3.cert
    assert cert.checks.passed
    assert len(cert.configuration.M.hilbert_basis) == 3 and cert.configuration.M.rank == 2
    after = cert.fan_after
    pred = fan_predicates(after, after.distinguished)
    assert pred.complete and pred.simplicial
    assert pred.smooth_except == set(after.distinguished)
    assert cert.support is not None
    assert (len(after), len(after.rays), len(cert.history)) == (14, 9, 5)


def test_check_names_are_unique_and_ordered(built3):
    names = built3.cert.checks.names()
    assert len(names) == len(set(names))
    assert names[0] == "hilbert_bases_recorded"
    assert names[-1] == "projectivity"
    for name in ("condition_ii", "tower_union", "admissibility", "final_face_property", "termination_measure"):
        assert name in names


def test_verify_fresh_certificate(built3):
    rep = verify_certificate(built3.path)
    assert rep.passed
    assert rep.names() == built3.cert.checks.names()


def test_mutated_ray_is_detected(cert3_data, tmp_path: Path):
    muts = list(ray_mutations(cert3_data))
    for label, data in muts[:: max(1, len(muts) // 6)]:
        assert not certificate_checks(data).passed, label


def test_tampered_report_is_detected(cert3_data, tmp_path: Path):
    data = cert3_data
    data["checks"][0]["passed"] = False
    path = tmp_path / "c.json"
    path.write_text(json.dumps(data))
    rep = verify_certificate(path)
    assert not rep.passed and not rep["embedded_report"].passed


def test_truncated_certificate(built3, tmp_path: Path):
    path = tmp_path / "c.json"
    path.write_text(built3.text[: len(built3.text) // 2])
    with pytest.raises(FormatError):
        verify_certificate(path)


def test_missing_field(cert3_data, tmp_path: Path):
    del cert3_data["configuration"]["alpha"]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cert3_data))
    with pytest.raises(FormatError):
        verify_certificate(path)


def test_flank_path(tmp_path: Path):
    cert = build_counterexample(3, path="flank")
    assert cert.checks.passed
    assert cert.fan_after is None and cert.configuration.flank_t == 1
    assert "admissibility" not in cert.checks
    assert len(cert.fan_before) == 2


def test_larger_certificates_verify(built4, built5):
    for built in (built4, built5):
        assert verify_certificate(built.path).passed
