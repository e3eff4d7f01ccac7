import math

import pytest

import expwalk


def test_k4_spectrum():
    s = expwalk.spectrum(expwalk.complete(4))
    assert s["eigenvalues"][0] == pytest.approx(1.0, abs=1e-12)
    assert s["lambda_star"] == pytest.approx(1 / 3, abs=1e-12)


def test_k4_small_law():
    law = expwalk.weight_law(expwalk.complete(4), expwalk.Labelling("1100"), 2)
    assert law["offset"] == 0
    assert law["probabilities"] == pytest.approx([1 / 6, 2 / 3, 1 / 6], abs=1e-15)


def test_k4_variance_and_sigma2():
    g, lab = expwalk.complete(4), expwalk.Labelling("1100")
    assert expwalk.variance(g, lab, 512) == pytest.approx(512 / 8 + 3 / 32, abs=1e-9)
    assert expwalk.sigma2(g, lab) == pytest.approx(0.125, abs=1e-12)
    assert expwalk.matching_sticky_p(0.125) == pytest.approx(-1 / 3, abs=1e-15)


def test_sticky_law_mass():
    law = expwalk.sticky_law(0.3, 50)
    assert math.fsum(law["probabilities"]) == pytest.approx(1.0, abs=1e-12)


def test_random_graph_is_regular_and_seeded():
    g = expwalk.random_regular(16, 3, 7)
    assert (g.n, g.d) == (16, 3)
    assert all(len(g.neighbors(v)) == 3 for v in range(g.n))
    assert g.edges() == expwalk.random_regular(16, 3, 7).edges()
    lab = expwalk.random_balanced_labelling(g, 1)
    assert lab.balanced and len(lab) == 16


def test_errors_carry_kind():
    with pytest.raises(expwalk.ExpwalkError, match="^parse-error"):
        expwalk.parse_graph("4 3\n0 x\n")
    with pytest.raises(expwalk.ExpwalkError, match="^out-of-hypothesis"):
        expwalk.tv_to_sticky(expwalk.complete(4), expwalk.Labelling("1000"), 10)


def test_kstar_k4():
    k = expwalk.kstar(expwalk.complete(4), expwalk.Labelling("1100"))
    assert k["k_star"] == 1
    assert k["class_size"] == 2
