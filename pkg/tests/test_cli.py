import csv
import io

import pytest

from fracvar.cli import parse_real, run


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def _csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# fracvar ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


@pytest.mark.parametrize("text,b,value", [
    ("0.5", None, 0.5), ("1/4", None, 0.25), ("b^(-1/3)", 3, 3 ** (-1 / 3)),
    ("-3^(-1/3)", None, -(3 ** (-1 / 3))), ("2**(-0.5)", None, 2**-0.5),
    ("0.4807498...", None, 0.4807498),
])
def test_parse_real(text, b, value):
    assert parse_real(text, b) == pytest.approx(value)


def test_classify_critical(capsys):
    code, out = _run(capsys, "classify", "--phi", "tent", "--b", "2", "--alpha", "0.5")
    assert code == 0
    assert _csv(out.out)[0]["regime"] == "CriticalVanishing"


def test_moments_recursion(capsys):
    code, out = _run(capsys, "moments", "--mu", "-0.75", "--nu", "1.5", "--p", "1/3",
                     "--gamma", "3^(-2/3)", "--k", "3")
    assert code == 0
    rows = _csv(out.out)
    assert float(rows[3]["moment"]) == pytest.approx(27 / 256, rel=1e-12)


def test_variation_rows(capsys):
    code, out = _run(capsys, "variation", "--phi", "tent", "--b", "2", "--hurst", "0.5",
                     "--p", "2", "--n", "2:12")
    assert code == 0 and len(_csv(out.out)) == 11


def test_signed_limit_negative_alpha(capsys):
    code, out = _run(capsys, "signed-limit", "--phi", "skewed:l=1", "--b", "3",
                     "--alpha=-b^(-1/3)")
    assert code == 0
    assert _csv(out.out)[0]["kind"] == "OscillatingPair"


def test_seeded_output_is_stable(capsys):
    argv = ["slope", "--phi", "tent", "--b", "3", "--alpha", "0.6", "--method", "mc",
            "--samples", "20000", "--seed", "9"]
    first = _run(capsys, *argv)
    assert first == _run(capsys, *argv)


def test_usage_error_exit_code(capsys):
    code, out = _run(capsys, "classify", "--phi", "tent", "--b", "2")
    assert code == 1 and "alpha" in out.err


def test_budget_exit_code(capsys):
    code, out = _run(capsys, "variation", "--phi", "tent", "--b", "2", "--alpha", "0.7",
                     "--p", "2", "--n", "40")
    assert code == 2 and "budget" in out.err


def test_regime_exit_code(capsys):
    code, _ = _run(capsys, "slope", "--phi", "tent", "--b", "2", "--alpha", "0.4")
    assert code == 2


def test_plain_format(capsys):
    code, out = _run(capsys, "eval", "--phi", "tent", "--b", "2", "--alpha", "0.5",
                     "--t", "1/3", "--format", "plain")
    assert code == 0 and out.out.split()[:2] == ["t", "value"]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    code, _ = _run(capsys, "sweep", "--phi", "tent", "--b", "2,3", "--H", "0.4,0.6",
                   "--out", str(path))
    assert code == 0
    assert len(_csv(path.read_text())) == 4
