from __future__ import annotations

import json

import pytest

from bianchi9 import cli


def _run(capsys, *argv) -> dict:
    cli.main(list(argv))
    out = capsys.readouterr().out
    assert out.endswith("\n")
    return json.loads(out)


def _exit_code(*argv) -> int:
    with pytest.raises(SystemExit) as exc:
        cli.main(list(argv))
    return exc.value.code


def test_theta_value(capsys):
    doc = _run(capsys, "theta", "--p", "0", "--q", "0", "--mu-re", "1.0")
    assert doc["value"][0] == pytest.approx(1.0864348112133080, abs=1e-10)
    assert doc["value"][1] == pytest.approx(0.0, abs=1e-12)


def test_theta_series_exponents(capsys):
    doc = _run(capsys, "theta", "--p", "1/2", "--q", "0", "--series", "--trunc", "4")
    exps = [t["exp"] for t in doc["series"]["terms"]]
    assert exps == ["1/8", "9/8", "25/8"]


def test_theta_invalid_order():
    assert _exit_code("theta", "--p", "0", "--q", "0", "--n", "7") == 2


def test_theta_domain_error():
    assert _exit_code("theta", "--p", "0", "--q", "0", "--mu-re", "-1.0") == 3


def test_invalid_rational():
    assert _exit_code("orbit", "--p", "zebra", "--q", "0") == 2


def test_orbit_output(capsys):
    doc = _run(capsys, "orbit", "--p", "1/6", "--q", "5/6")
    assert doc["n"] == 8 and doc["n0"] == 0 and doc["budget"] == "2/3"
    assert ["1/6", "1/6"] in doc["points"]
    doc = _run(capsys, "orbit", "--p", "0", "--q", "1/3")
    assert doc["n"] == 24 and doc["n0"] == 4 and doc["budget"] == "0"


def test_exceptional_orbit_exit_code():
    assert _exit_code("orbit", "--p", "1/2", "--q", "1/2") == 5
    assert _exit_code("coeff", "--p", "0", "--q", "0", "--order", "0") == 5


def test_coeff_deterministic_and_cached(tmp_path, capsys):
    argv = (
        "--cache-dir",
        str(tmp_path),
        "coeff",
        "--p",
        "1/6",
        "--q",
        "5/6",
        "--order",
        "0",
        "--trunc",
        "3",
    )
    cli.main(list(argv))
    first = capsys.readouterr().out
    cached = list(tmp_path.glob("*.json"))
    assert len(cached) == 1
    cli.main(list(argv))
    second = capsys.readouterr().out
    assert first == second  # byte-identical, second run from cache
    doc = json.loads(first)
    assert doc["order"] == 0
    assert json.loads(cached[0].read_text()) == doc


def test_cache_dir_env_fallback(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SDW_CACHE_DIR", str(tmp_path))
    cli.main(["coeff", "--p", "1/6", "--q", "5/6", "--order", "0", "--trunc", "3"])
    capsys.readouterr()
    assert list(tmp_path.glob("*.json"))


def test_cache_key_depends_on_inputs():
    from fractions import Fraction

    base = cli.cache_key("f", Fraction(1, 6), Fraction(5, 6), 0, 3)
    assert base != cli.cache_key("f", Fraction(1, 6), Fraction(5, 6), 2, 3)
    assert base != cli.cache_key("f", Fraction(1, 6), Fraction(5, 6), 0, 4)
    assert base == cli.cache_key("f", Fraction(1, 6), Fraction(5, 6), 0, 3)


def test_corrupt_cache_recomputed(tmp_path, capsys):
    argv = ["--cache-dir", str(tmp_path), "coeff", "--p", "1/6", "--q", "5/6", "--order", "0", "--trunc", "3"]
    cli.main(list(argv))
    first = capsys.readouterr().out
    path = next(tmp_path.glob("*.json"))
    path.write_text("{not json")
    cli.main(list(argv))
    assert capsys.readouterr().out == first


def test_identify_requires_depth():
    assert _exit_code("identify", "--p", "0", "--q", "1/3", "--order", "0", "--trunc", "2") == 2


def test_identify_output(capsys):
    doc = _run(capsys, "identify", "--p", "0", "--q", "1/3", "--order", "0", "--trunc", "4")
    assert doc["target"] == "G14/Delta"
    assert doc["constant"] == "-6081075"
    assert doc["multiplier"] == {"delta": 1, "e4": 0, "e6": 0}
    assert doc["pi_exp"] == -17 and doc["lambda_exp"] == -2


def test_check_dirac(capsys):
    doc = _run(capsys, "check", "dirac", "--p", "1/6", "--q", "5/6", "--mu-re", "1.05")
    assert doc["pass"] and doc["max_residual"] <= doc["tol"]


def test_check_crossval(capsys):
    doc = _run(
        capsys, "check", "crossval", "--p", "0", "--q", "1/3", "--order", "0", "--trunc", "6"
    )
    assert doc["pass"] and doc["relative_residual"] < 1e-6
