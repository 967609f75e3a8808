import pytest

from hopfmi import verify
from hopfmi.errors import BoundError
from hopfmi.linear import LinComb
from hopfmi.verify import ALL_IDENTITIES, IDENTITIES, verify_identity


@pytest.mark.parametrize("name", ALL_IDENTITIES)
def test_each_identity_passes(name):
    report = verify_identity(name, 4)
    assert report.passed, report.failures[:3]
    assert report.cases > 0


@pytest.mark.parametrize("name", IDENTITIES)
def test_two_letter_alphabet(name):
    report = verify_identity(name, 3, ("a", "b"))
    assert report.passed, report.failures[:3]


def test_bounds_and_names():
    with pytest.raises(BoundError):
        verify_identity("phib", 9)
    with pytest.raises(ValueError):
        verify_identity("no-such-identity", 3)


def test_report_shape():
    r = verify_identity("sym-forest-count", 4)
    d = r.as_dict()
    assert d["identity"] == "sym-forest-count" and d["passed"] and d["alphabet"] == ["a"]
    assert r.summary().startswith("PASS")


def test_detects_a_broken_embedding(monkeypatch):
    real = verify.jmath

    def skewed(x):
        out = real(x)
        return out + out if out and max(F.degree for F in out.keys()) == 4 else out

    monkeypatch.setattr(verify, "jmath", skewed)
    report = verify_identity("hopf-morphism", 4)
    assert not report.passed
    assert report.failures[0].startswith("Δ∘ȷ(x{-1} x{0}^3)")


def test_detects_a_broken_coproduct(monkeypatch):
    real = verify.coproduct_lot

    def dropped(x, order=2):
        out = real(x, order)
        keys = list(out.keys())
        return out - LinComb.basis(keys[len(keys) // 2]) * out[keys[len(keys) // 2]] if len(keys) > 3 else out

    monkeypatch.setattr(verify, "coproduct_lot", dropped)
    assert not verify_identity("duality", 4).passed
    assert not verify_identity("coassoc-lot", 4).passed


def test_deterministic_failures_order(monkeypatch):
    monkeypatch.setattr(verify, "tree_sigma", lambda t: 1)
    a = verify_identity("main-lemma", 4).failures
    b = verify_identity("main-lemma", 4).failures
    assert a and a == b
