from fractions import Fraction

import pytest

from emclab.certify import (certify_calculate_lemma, certify_maxvalue_coeffs,
                            eval_calculate_margin, replay_certificate)
from emclab.intervals import Interval, parse_certificate
from emclab.scalars import DELTA, eval_C_coeffs

Z = Fraction(1, 10**5)


@pytest.fixture(scope="module")
def calc_cert():
    return certify_calculate_lemma(Z)


@pytest.fixture(scope="module")
def maxvalue_cert():
    return certify_maxvalue_coeffs()


class TestCalculateLemma:
    def test_proved(self, calc_cert):
        assert calc_cert.status == "proved"
        assert calc_cert.boxes

    def test_leaves_cover_region(self, calc_cert):
        # every sampled point of the open region lies in some leaf whose
        # recorded margin is strictly positive
        probes = [
            (Fraction(3, 4), Fraction(3, 4), Z / 2),
            (Fraction(5, 8), Fraction(1, 100), Fraction(1, 10**6)),
            (Fraction(2, 3), Fraction(1, 3), Z),
            (Fraction(1, 10), Fraction(1, 20), Fraction(1, 10**6)),
        ]
        for x, y, z in probes:
            assert eval_calculate_margin(x, y, z) > 0
            mu = y / x
            hit = [m for box, m in calc_cert.boxes
                   if box.coords["mu"].contains(mu)
                   and box.coords["x"].contains(x)
                   and box.coords["z"].contains(z)]
            assert hit and all(m.lo > 0 for m in hit)

    def test_exact_margin_examples(self):
        # at y = x the first piece simplifies: (1-d)(4-d-1)^3 x^3 vs ...
        x = Fraction(1, 2)
        val = eval_calculate_margin(x, x, Fraction(1, 10**6))
        assert val > 0

    def test_zmax_domain(self):
        with pytest.raises(ValueError):
            certify_calculate_lemma(Fraction(1, 100))
        with pytest.raises(ValueError):
            certify_calculate_lemma(0)

    def test_mutation_finds_counterexample(self):
        cert = certify_calculate_lemma(Z, mutation="negate-lead")
        assert cert.status == "counterexample"
        pt = cert.counterexample
        assert eval_calculate_margin(pt["x"], pt["y"], pt["z"],
                                     mutation="negate-lead") <= 0
        # the point satisfies the region constraints
        assert 5 * pt["z"] < pt["y"] <= pt["x"] <= Fraction(3, 4)
        assert 0 < pt["z"] <= Z
        # and the unmutated inequality holds there
        assert eval_calculate_margin(pt["x"], pt["y"], pt["z"]) > 0

    def test_flip_p_mutation_still_proved(self):
        # flipping the sign of the perturbation term makes the inequality
        # weaker, so the prover still closes it
        cert = certify_calculate_lemma(Z, mutation="flip-p-sign")
        assert cert.status == "proved"

    def test_unknown_mutation(self):
        with pytest.raises(ValueError):
            eval_calculate_margin(1, 1, Fraction(1, 10**6), mutation="wat")


class TestMaxvalueCoeffs:
    def test_proved(self, maxvalue_cert):
        assert maxvalue_cert.status == "proved"
        tags = {box.region_tag for box, _ in maxvalue_cert.boxes}
        assert tags == {"C1", "C2", "C3", "C4", "C5"}

    def test_agrees_with_scalar_evaluator(self, maxvalue_cert):
        # positivity certified by the prover must hold for the direct
        # (a, b)-coordinate evaluator on a sample grid
        for num_a in (8, 10, 12, 15):
            a = Fraction(num_a, 16)
            for num_b in (4, 5, 6):
                b = Fraction(num_b, 16)
                for i in (1, 4, 5):
                    assert eval_C_coeffs(Fraction(1, 5), a, b, i) > 0

    def test_mutation_finds_counterexample(self):
        cert = certify_maxvalue_coeffs(mutation="negate-c5-term")
        assert cert.status == "counterexample"
        pt = cert.counterexample
        assert int(pt["i"]) == 5
        assert Fraction(1, 4) <= pt["b"] <= pt["a"] < 1


class TestReplay:
    def test_replay_ok(self, calc_cert, maxvalue_cert):
        for cert in (calc_cert, maxvalue_cert):
            out = replay_certificate(cert)
            assert out["ok"]
            assert out["boxes"] == len(cert.boxes)
            assert not out["failures"]

    def test_replay_survives_serialization(self, calc_cert):
        again = parse_certificate(calc_cert.serialize())
        assert replay_certificate(again)["ok"]

    def test_tampered_margin_detected(self, calc_cert):
        box, margin = calc_cert.boxes[0]
        forged = Interval(margin.lo + 1, margin.hi + 1)
        tampered = type(calc_cert)(
            target=calc_cert.target, status="proved",
            boxes=((box, forged),) + calc_cert.boxes[1:],
            splits=calc_cert.splits)
        out = replay_certificate(tampered)
        assert not out["ok"]
        assert "stored margin does not match recomputation" in out["failures"]

    def test_unknown_target(self, calc_cert):
        bad = type(calc_cert)(target="nope", status="proved", boxes=(), splits=0)
        with pytest.raises(ValueError):
            replay_certificate(bad)


class TestBudget:
    def test_tiny_box_budget_reported(self):
        cert = certify_calculate_lemma(Z, max_boxes=2)
        assert cert.status == "budget_exhausted"

    def test_depth_zero_cannot_close(self):
        cert = certify_maxvalue_coeffs(max_depth=0)
        assert cert.status == "budget_exhausted"
