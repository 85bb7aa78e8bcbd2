import cmath
import math

import pytest

import circsym


def mobius(z):
    return 3 + (z + 0.5) / (1 + z / 2)


def test_series_basics():
    s = circsym.PowerSeries([4, 1, 0.4j])
    assert s.degree == 2
    assert s(0) == 4
    assert circsym.dirichlet_area(s) == pytest.approx(1.32 * math.pi)
    value, underflow = circsym.integral_mean(circsym.PowerSeries([0, 1]), "exp2", 0.5)
    assert value == pytest.approx(math.pi / 2)
    assert not underflow
    assert all(row[3] for row in circsym.littlewood_check(s))


def test_sample_round_trip():
    samples = [mobius(0.5 * cmath.exp(2j * math.pi * j / 64)) - 3 for j in range(64)]
    c = circsym.coefficients_from_samples(samples, 0.5, 5).coefficients
    assert abs(c[0] - 0.5) < 1e-6
    assert abs(c[3] - 0.1875) < 1e-6


def test_errors_carry_kind():
    with pytest.raises(circsym.Error) as info:
        circsym.PowerSeries([0, 1], 0.5)(0.9)
    assert info.value.kind == "domain"
    with pytest.raises(circsym.Error) as info:
        circsym.verify([0.5, 1], boundary_vertices=128, slices=64, degree=8)
    assert info.value.kind == "scope"


def test_symmetrization_of_a_disk():
    curve = circsym.BoundaryCurve([2 + cmath.exp(2j * math.pi * j / 4096) for j in range(4096)])
    assert circsym.slice_measure(curve, 2.0) == pytest.approx(2 * math.acos(7 / 8), abs=1e-6)
    p = circsym.radial_profile(curve, 64)
    s = circsym.symmetrize(p)
    assert s.measures == p.measures
    assert circsym.area_by_profile(s) == circsym.area_by_profile(p)
    assert circsym.area_by_shoelace(circsym.symmetrized_boundary(s)) == pytest.approx(math.pi, rel=1e-2)


def test_disk_map_matches_mobius():
    curve = circsym.BoundaryCurve([3 + cmath.exp(2j * math.pi * j / 512) for j in range(512)])
    f = circsym.build_map(curve, 3.5)
    assert abs(f(0) - 3.5) < 1e-8
    assert abs(f(0.5) - 3.8) < 1e-4
    assert abs(f.inverse(f(0.3 + 0.2j)) - (0.3 + 0.2j)) < 1e-8
    again = circsym.ZipperMap.from_json(f.to_json())
    assert again(0.4j) == f(0.4j)
    A = circsym.series_of_map(f, 0.8, 256, 4).coefficients
    assert abs(A[1] - 0.75) < 1e-3


def test_verify_finds_witness():
    report = circsym.verify([4, 1, 0.4j], boundary_vertices=256, slices=128, degree=16)
    assert report["classification"] == "witness-found"
    assert report["witness"]["n1"] >= 1
    assert report["witness"]["confirmed"]
    assert report["area_identity"]["residual"] < 1e-2


def test_cli_in_process(tmp_path):
    code, out, err = circsym.run_cli(["verify", "--input", str(tmp_path / "missing.json")])
    assert code == 1
    assert "missing.json" in err
