import json
import logging

import pytest

from hopfmi import fertility
from hopfmi.errors import WeightError
from hopfmi.fertility import jmath, load_fiber_cache, phi, phi_preimage, save_fiber_cache
from hopfmi.multiindex import MultiIndex, weight_minus_one_monomials
from hopfmi.textio import parse, parse_key


def F(text):
    return parse_key(text, "forest", ("a",))


def k(text):
    return parse_key(text, "multiindex", ("a",))


def test_phi_examples():
    assert phi(F("a[a]")) == parse_key("x{-1} x{0}", "bag", ("a",))
    assert phi(F("a[a,a]")) == parse_key("x{-1}^2 x{1}", "bag", ("a",))
    assert phi(F("a·a[a]")) == parse_key("x{-1} (.) x{-1} x{0}", "bag", ("a",))


def test_preimages():
    assert [t.to_text() for t in phi_preimage(k("x{-1} x{0}"))] == ["a[a]"]
    assert {t.to_text() for t in phi_preimage(k("x{-1}^2 x{0} x{1}"))} == {"a[a,a[a]]", "a[a[a,a]]"}
    assert sum(len(phi_preimage(m)) for m in weight_minus_one_monomials(5)) == 9
    with pytest.raises(WeightError):
        phi_preimage(k("x{0}"))


def test_preimages_two_letters():
    for m in weight_minus_one_monomials(4, ("a", "b")):
        for t in phi_preimage(m):
            assert fertility.phi_tree(t) == m


@pytest.mark.parametrize(
    "mono, image",
    [
        ("x{-1} x{0}", "a[a]"),
        ("x{-1}^2 x{1}", "a[a,a]"),
        ("x{-1}^2 x{0} x{1}", "2 a[a,a[a]] + a[a[a,a]]"),
        ("x{-1}^3 x{0} x{2}", "a[a[a,a,a]] + 3 a[a,a,a[a]]"),
    ],
)
def test_embedding_examples(mono, image):
    assert jmath(k(mono)) == parse(image, "forest", ("a",))


def test_embedding_is_multiplicative():
    bag = parse_key("x{-1} (.) x{-1} x{0}", "bag", ("a",))
    assert jmath(bag) == parse("a·a[a]", "forest", ("a",))


def test_cache_round_trip(tmp_path):
    for m in weight_minus_one_monomials(4):
        phi_preimage(m)
    path = tmp_path / "fibers.json"
    save_fiber_cache(path, ("a",))
    doc = json.loads(path.read_text())
    assert doc["format"] == "hopfmi-fiber-cache"
    assert load_fiber_cache(path) == len(doc["fibers"])


def test_cache_revalidates(tmp_path, caplog, monkeypatch):
    monkeypatch.setattr(fertility, "_FIBERS", {})
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "format": "hopfmi-fiber-cache", "version": 1, "alphabet": ["a"],
        "fibers": {"x{a,-1} x{a,0}": ["a[a,a]"], "x{a,-1}^2 x{a,1}": ["a[a,a]"]},
    }))
    with caplog.at_level(logging.WARNING):
        assert load_fiber_cache(path) == 1
    assert "dropping" in caplog.text
    assert phi_preimage(MultiIndex({("a", -1): 1, ("a", 0): 1}))[0].to_text() == "a[a]"


def test_cache_wrong_format(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"format": "other"}')
    with pytest.raises(ValueError):
        load_fiber_cache(path)


@pytest.mark.parametrize("alphabet,top", [(("a",), 6), (("a", "b"), 5)])
def test_fibers_nonempty_and_partition_trees(alphabet, top):
    from hopfmi.forests import enumerate_trees

    for n in range(1, top + 1):
        monos = weight_minus_one_monomials(n, alphabet)
        fibers = {m: phi_preimage(m) for m in monos}
        assert all(fibers.values())
        trees = [t for fib in fibers.values() for t in fib]
        assert sorted(trees) == sorted(enumerate_trees(n, alphabet))


def test_jmath_coefficients_are_integers():
    for n in range(1, 7):
        for m in weight_minus_one_monomials(n):
            x = jmath(m)
            assert x and all(c.denominator == 1 and c > 0 for _, c in x.items())
