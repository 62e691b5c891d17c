import math

import pytest

import taskcode as tc


def test_entropy_values():
    p = tc.Pmf([0.25, 0.75])
    assert tc.renyi_entropy(p, 1.0) == pytest.approx(0.899968626952992, rel=1e-12)
    assert tc.shannon_entropy(p) == pytest.approx(0.811278124459133, rel=1e-12)
    assert tc.renyi_entropy(tc.Pmf([0.25] * 4), 3.0) == pytest.approx(2.0)


def test_pmf_validation():
    with pytest.raises(tc.InvalidArgument):
        tc.Pmf([0.25, 0.5])
    assert tc.Pmf([1, 3], normalize=True).probs == pytest.approx([0.25, 0.75])
    assert issubclass(tc.InvalidArgument, ValueError)


def test_divergence():
    p = tc.Pmf([0.5, 0.5])
    q = tc.Pmf([0.9, 0.1])
    assert tc.sundaresan_divergence(p, p, 0.5) == pytest.approx(0.0, abs=1e-12)
    assert tc.sundaresan_divergence(p, q, 0.5) > 0.0
    assert math.isinf(tc.kl_divergence(p, tc.Pmf([1.0, 0.0])))


def test_encoder_sandwich():
    p = tc.Pmf([0.4, 0.2, 0.15, 0.1, 0.1, 0.05])
    rho, m = 1.0, 6
    enc = tc.build_encoder(p, rho, m)
    lower, upper = tc.moment_bounds(p, rho, m)
    best, blocks = tc.exact_min_moment(p, rho, m)
    got = tc.moment(enc, p, rho)
    assert lower <= best + 1e-12 <= got + 2e-12
    assert upper is None or got < upper
    assert sorted(x for b in blocks for x in b) == list(range(6))


def test_universal_code():
    code = tc.UniversalCode(4, 1.0, 2)
    p = tc.Pmf([0.25, 0.75])
    assert code.descriptions == 16
    assert code.moment(p, 1.0) == pytest.approx(1.0)
    assert code.moment(p, 1.0) <= tc.universal_moment_bound(4, 1.0, 1.0, p)
    enc = code.materialize()
    assert tc.moment(enc, tc.product_pmf(p, 4), 1.0) == pytest.approx(code.moment(p, 1.0))


def test_rate_distortion_closed_form():
    d = tc.Distortion.hamming(2)
    p = tc.Pmf([0.25, 0.75])
    for level in (0.0, 0.1, 0.2):
        assert tc.renyi_rd(p, d, level, 1.0) == pytest.approx(tc.binary_hamming_renyi_rd(0.25, level, 1.0), abs=1e-6)


def test_lossy_codec_fidelity():
    d = tc.Distortion.hamming(2)
    codec = tc.build_lossy_codec(6, 0.8, d, 0.2)
    assert tc.codec_worst_distortion(codec, d) <= 0.2 + 1e-12
    assert tc.lossy_moment(codec, tc.Pmf([0.25, 0.75]), 1.0) >= 1.0


def test_infeasible_is_numeric_failure():
    with pytest.raises(tc.NumericFailure):
        tc.build_lossy_codec(1, 0.9, tc.Distortion.hamming(2), 0.0)


def test_selftest_deterministic():
    ok, text = tc.selftest(0)
    assert ok
    assert text == tc.selftest(0)[1]
