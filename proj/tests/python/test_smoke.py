import json
import math

import pytest

import tempered as t


def theta(s, terms=40):
    return sum(math.exp(-math.pi * n * n * s) for n in range(-terms, terms + 1))


def test_comb_pairing_matches_theta_sum():
    f = t.GeneratorSum.comb(t.Lattice.identity(1), [0.0])
    g = t.TestFunction.gaussian([0.0], 0.8)
    assert abs(t.pair(f, g) - theta(1 / 0.64)) < 1e-14


def test_spectral_side_matches_direct_side():
    f = t.GeneratorSum.comb(t.Lattice.identity(1, 0.5), [0.1], 2.0)
    g = t.TestFunction.gaussian([0.3], 1.3)

    def g_hat(y):
        return 1.3 * math.exp(-math.pi * 1.69 * y * y) * complex(math.cos(2 * math.pi * 0.3 * y), -math.sin(2 * math.pi * 0.3 * y))

    oracle = sum(2.0 * g_hat(0.1 + 0.5 * n) for n in range(-60, 61))
    assert abs(t.pair(f, g.fourier()) - oracle) < 1e-13
    assert abs(t.spectral_pair(t.spectrum(f), g) - oracle) < 1e-12


def test_conv_transform_agrees():
    f = t.gallery("moment-comb")["distribution"]
    psi = t.TestFunction.gaussian([0.0], 0.7)
    direct, spectral = t.conv_transform(f, psi, [0.25])
    assert abs(direct - spectral) < 1e-10 * max(1.0, abs(direct))


def test_dual_of_scaled_lattice():
    lat = t.Lattice([[2.0, 0.0], [0.0, 0.5]])
    expected = t.Lattice([[0.5, 0.0], [0.0, 2.0]])
    assert t.lattices_equal(t.dual(lat), expected)
    assert t.dual(lat).abs_det == pytest.approx(1.0)


def test_coefficient_probe_recovers_coefficients():
    f = t.GeneratorSum.comb(t.Lattice.identity(1), [0.0], 3 - 1j)
    assert abs(t.coefficient_probe(f, [2.0], [0], 0.2) - (3 - 1j)) < 1e-14
    with pytest.raises(t.ContractError) as err:
        t.coefficient_probe(f, [2.0], [0], 0.7)
    assert err.value.code == "probe-precondition"


def test_remark_kappa_and_expand():
    f = t.GeneratorSum.remark(5)
    assert t.kappa(f, [3.0]) == 8.0
    atoms = t.expand(f, 6.0)
    assert len(atoms) == 10
    assert {round(p[0]) for p, _ in atoms} == {1, 2, 3, 4, 5}


def test_point_set_geometry():
    pts = [[float(i), float(j)] for i in range(-6, 7) for j in range(-6, 7) if i * i + j * j < 36]
    a = t.PointSet(pts, 6.0)
    assert t.separating_constant(a) == pytest.approx(1.0)
    assert t.counting(a, 1.5) == 9


def test_crystal_detection():
    assert t.detect_crystal(t.gallery("zd-comb", {"d": 2, "window": 8})["points"])["type"] == "crystal"
    assert t.detect_crystal(t.gallery("fibonacci-window", {"radius": 30})["points"])["type"] == "not-crystal"


def test_hypotheses_report():
    f = t.GeneratorSum.comb(t.Lattice.identity(1), [0.0])
    report = t.verify_hypotheses(f, 20.0)
    status = {v["name"]: v["status"] for v in report["verdicts"]}
    assert status["uniformly-discrete"] == "pass"
    assert status["pure-crystal"] == "pass"


def test_growth_fit_detects_power_law():
    samples = [(r, 3.0 * r**2) for r in (2.0, 4.0, 8.0, 16.0, 32.0, 64.0)]
    fit = t.growth_fit(samples)
    assert fit["exponent"] == pytest.approx(2.0, abs=1e-9)
    assert not fit["divergence"]


def test_integer_almost_periods():
    f = t.GeneratorSum.comb(t.Lattice.identity(1), [0.0])
    psi = t.TestFunction.gaussian([0.0], 0.6)
    g = t.sample_convolution(f, psi, 12.0, 0.05)
    taus = t.almost_periods(g, 1e-6)
    assert taus
    for (tau,) in taus:
        assert abs(tau - round(tau)) < 1e-9


def test_cli_round_trip():
    code, out, err = t.run_cli(["gallery", "emit", "zd-comb", "--what", "distribution"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    f = t.GeneratorSum.from_json(out)
    assert f.dim == doc["dim"] == 1
    code, _, err = t.run_cli(["spectrum"])
    assert code == 2
    assert json.loads(err)["error"] == "usage"
