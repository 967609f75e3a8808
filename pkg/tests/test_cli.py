import json
import os
import subprocess
import sys

import pytest

from hopfmi.cli import main
from hopfmi.textio import from_json_doc, parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coproduct_golden(capsys):
    code, out, _ = run(capsys, "coproduct", "--algebra", "lot", "x{-1}^2 x{0} x{1}")
    assert code == 0
    value = parse(out.strip(), "bag", ("a",))
    assert len(value) == 8
    assert sorted(c for _, c in value.items()) == [1, 1, 1, 2, 2, 2, 2, 3]


def test_embed_golden(capsys):
    code, out, _ = run(capsys, "embed", "x{-1}^3 x{0} x{2}")
    assert code == 0
    assert parse(out, "forest", ("a",)) == parse("a[a[a,a,a]] + 3 a[a,a,a[a]]", "forest", ("a",))


def test_json_output_round_trips(capsys):
    code, out, _ = run(capsys, "--format", "json", "coproduct", "--algebra", "bck", "a[a,a]")
    doc = json.loads(out)
    assert doc["sort"] == "forest" and doc["rank"] == 2
    code2, text, _ = run(capsys, "coproduct", "--algebra", "bck", "a[a,a]")
    assert from_json_doc(doc) == parse(text, "forest", ("a",))


def test_global_flags_after_subcommand(capsys):
    a = run(capsys, "--alphabet", "a,b", "embed", "x{b,-1} x{a,0}")
    b = run(capsys, "embed", "x{b,-1} x{a,0}", "--alphabet", "a,b")
    assert a == b and a[0] == 0
    assert a[1].strip() == "a[b]"


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["product", "--op", "gl", "a", "a"], "a·a + a[a]"),
        (["product", "--op", "graft", "x{-1}", "x{-1}"], "x{-1} x{0}"),
        (["product", "--op", "odot", "x{-1}", "x{-1} x{0}"], "x{-1} (.) x{-1} x{0}"),
        (["phi", "a·a[a]"], "x{-1} (.) x{-1} x{0}"),
        (["antipode", "x{-1} x{0}"], "x{-1} (.) x{-1} - x{-1} x{0}"),
        (["antipode", "a[a]"], "a·a - a[a]"),
        (["lbar", "--decoration", "a", "x{-1}^2 x{0} x{1}"], "2 x{-1} (.) x{-1} x{0} + x{-1}^2 x{1}"),
        (["enumerate", "--what", "trees", "--degree", "3"], "a[a,a]\na[a[a]]"),
        (["enumerate", "--what", "monomials", "--degree", "3"], "x{-1} x{0}^2\nx{-1}^2 x{1}"),
        (["coproduct", "--algebra", "lot", "--order", "1", "x{-1}"], "x{-1}"),
    ],
)
def test_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_cuts(capsys):
    code, out, _ = run(capsys, "--format", "json", "cuts", "--algebra", "lot", "x{-1}^2 x{0} x{1}")
    doc = json.loads(out)
    assert len(doc["cuts"]) == 7
    assert sum(c["multiplicity"] for c in doc["cuts"]) == 10
    code, out, _ = run(capsys, "cuts", "--algebra", "bck", "a[a,a]")
    assert out.count("\n") == 5


def test_bseries(capsys, tmp_path):
    alpha = tmp_path / "alpha.json"
    alpha.write_text('{"default": "1"}')
    code, out, _ = run(capsys, "bseries", "--alpha", str(alpha), "--field", "y", "--degree", "3")
    assert (code, out.strip()) == (0, "5/2*y")
    alpha.write_text('{"x{-1}": "1"}')
    code, out, _ = run(capsys, "bseries", "--alpha", str(alpha), "--field", "y^2", "--degree", "1")
    assert out.strip() == "y^2"


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "phib", "--degree", "4")
    assert code == 0 and out.startswith("PASS phib")
    code, out, _ = run(capsys, "--format", "json", "verify", "--identity", "duality", "--degree", "3")
    assert json.loads(out)["passed"] is True


def test_usage_errors(capsys):
    assert run(capsys, "embed", "x{-1")[0] == 2
    assert run(capsys, "embed", "x{b,-1}")[0] == 2
    assert run(capsys, "lbar", "--decoration", "z", "x{-1}")[0] == 2
    assert run(capsys, "verify", "--identity", "phib", "--degree", "9")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["coproduct", "--algebra", "nope", "x{-1}"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "--algebra" in err


def test_deterministic_output():
    argv = [sys.executable, "-m", "hopfmi", "coproduct", "--algebra", "lot", "x{-1}^3 x{0} x{2}"]
    env = dict(os.environ, PYTHONHASHSEED="1")
    first = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    env["PYTHONHASHSEED"] = "2"
    second = subprocess.run(argv, capture_output=True, env=env, check=True).stdout
    assert first == second and first


def test_cache_file(tmp_path, capsys, monkeypatch):
    cache = tmp_path / "fibers.json"
    monkeypatch.setenv("HOPFMI_CACHE", str(cache))
    code, out, _ = run(capsys, "--cache", str(cache), "embed", "x{-1}^2 x{0} x{1}")
    assert code == 0 and cache.exists()
    code, again, _ = run(capsys, "--cache", str(cache), "embed", "x{-1}^2 x{0} x{1}")
    assert again == out
