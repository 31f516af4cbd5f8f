import io
import json
from fractions import Fraction
from pathlib import Path

import pytest

from jordanian.cli import main
from jordanian.exact import QMat
from jordanian.repspace import Rep, conjugate_rep
from jordanian.schema import encode_qmat, encode_rep
from jordanian.structure import canonical_pair_rep


def _write(tmp_path: Path, name: str, document: dict) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


def test_nf_json(capsys: pytest.CaptureFixture[str]):
    code, out, _ = _run(capsys, "nf", "x*y")

    assert code == 0
    assert json.loads(out)["text"] == "y*x + y^2"


def test_nf_text(capsys: pytest.CaptureFixture[str]):
    code, out, _ = _run(capsys, "--format", "text", "nf", "x^2*y")

    assert code == 0
    assert out.strip() == "y*x^2 + 2*y^2*x + 2*y^3"


def test_nf_parse_error(capsys: pytest.CaptureFixture[str]):
    code, out, err = _run(capsys, "nf", "x*")

    assert code == 2
    assert out == ""
    assert "position 2" in err


def test_unknown_command(capsys: pytest.CaptureFixture[str]):
    code, _, _ = _run(capsys, "frobnicate")

    assert code == 2


# ---------------------------------------------------------------------------
# Builders and validation
# ---------------------------------------------------------------------------


def test_build_epsilon(capsys: pytest.CaptureFixture[str], eps3: Rep):
    code, out, _ = _run(capsys, "build", "--partition", "3")

    assert code == 0
    assert json.loads(out) == encode_rep(eps3)


def test_build_with_lambdas(capsys: pytest.CaptureFixture[str]):
    code, out, _ = _run(capsys, "build", "--partition", "2,1", "--lambda", "0,1/2")

    assert code == 0
    document = json.loads(out)
    assert document["partition"] == [2, 1]
    assert document["X"]["entries"][2][2] == "1/2"


def test_build_from_params_file(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    params = _write(tmp_path, "params.json", {"partition": [2, 1], "lambda": ["0", "0"], "toeplitz": {"0,1": ["3"]}})

    code, out, _ = _run(capsys, "build", "--params", params)

    assert code == 0
    assert json.loads(out)["X"]["entries"][0] == ["0", "0", "3"]


@pytest.mark.parametrize(
    "argv",
    [
        ("build",),
        ("build", "--partition", "1,2"),
        ("build", "--partition", "a"),
        ("build", "--partition", "2", "--lambda", "0.5"),
    ],
)
def test_build_usage_errors(capsys: pytest.CaptureFixture[str], argv: tuple[str, ...]):
    code, _, _ = _run(capsys, *argv)

    assert code == 2


def test_build_lambda_count_is_a_domain_error(capsys: pytest.CaptureFixture[str]):
    code, _, err = _run(capsys, "build", "--partition", "2,1", "--lambda", "0")

    assert code == 3
    assert "PARAM_COUNT_MISMATCH" in err


def test_validate_from_stdin(capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch, eps4: Rep):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(encode_rep(eps4))))

    code, out, _ = _run(capsys, "validate", "--rep", "-")

    assert code == 0
    assert json.loads(out)["partition"] == [4]


def test_validate_invalid_json(capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{"))

    code, _, err = _run(capsys, "validate", "--rep", "-")

    assert code == 2
    assert "invalid JSON" in err


def test_validate_relation_failure(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    document = {
        "n": 2,
        "X": encode_qmat(QMat.from_rows([[0, 0], [1, 0]])),
        "Y": encode_qmat(QMat.from_rows([[0, 1], [0, 0]])),
    }

    code, _, err = _run(capsys, "validate", "--rep", _write(tmp_path, "bad.json", document))

    assert code == 3
    assert "RELATION_FAILS" in err


def test_missing_file(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    code, _, _ = _run(capsys, "validate", "--rep", str(tmp_path / "missing.json"))

    assert code == 2


# ---------------------------------------------------------------------------
# Evaluation and structure
# ---------------------------------------------------------------------------


def test_eval(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps3: Rep):
    rep = _write(tmp_path, "eps3.json", encode_rep(eps3))

    code, out, _ = _run(capsys, "eval", "--poly", "y^2", "--rep", rep)

    assert code == 0
    assert json.loads(out)["entries"] == [["0", "0", "1"], ["0", "0", "0"], ["0", "0", "0"]]


def test_image(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps3: Rep):
    code, out, _ = _run(capsys, "image", "--rep", _write(tmp_path, "eps3.json", encode_rep(eps3)))

    assert code == 0
    assert json.loads(out) == {"dim": 4, "radical_dims": [3, 1], "vertices": ["0"], "arrows": [[2]]}


def test_quiver_text(capsys: pytest.CaptureFixture[str], tmp_path: Path, diag12: Rep):
    code, out, _ = _run(capsys, "--format", "text", "quiver", "--rep", _write(tmp_path, "d.json", encode_rep(diag12)))

    assert code == 0
    assert out.strip() == "no arrows"


def test_quiver_irrational(capsys: pytest.CaptureFixture[str], tmp_path: Path, irrational_rep: Rep):
    code, _, err = _run(capsys, "quiver", "--rep", _write(tmp_path, "irr.json", encode_rep(irrational_rep)))

    assert code == 3
    assert "EIGENVALUES_NOT_RATIONAL" in err


def test_decompose(capsys: pytest.CaptureFixture[str], tmp_path: Path, two_block_rep: Rep):
    code, out, _ = _run(capsys, "decompose", "--rep", _write(tmp_path, "two.json", encode_rep(two_block_rep)))

    assert code == 0
    document = json.loads(out)
    assert document["eigenvalues"] == ["0", "1"]
    assert [s["rep"]["n"] for s in document["summands"]] == [2, 3]


def test_canon(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps4: Rep, unimodular4: QMat):
    moved = conjugate_rep(eps4, unimodular4)

    code, out, _ = _run(capsys, "canon", "--rep", _write(tmp_path, "moved.json", encode_rep(moved)))

    assert code == 0
    document = json.loads(out)
    assert (document["lambda"], document["mu"]) == ("0", "0")


def test_canon_not_full_block(capsys: pytest.CaptureFixture[str], tmp_path: Path, diag12: Rep):
    code, _, err = _run(capsys, "canon", "--rep", _write(tmp_path, "d.json", encode_rep(diag12)))

    assert code == 3
    assert "NOT_FULL_BLOCK" in err


def test_iso(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps4: Rep, unimodular4: QMat):
    first = _write(tmp_path, "a.json", encode_rep(eps4))
    second = _write(tmp_path, "b.json", encode_rep(conjugate_rep(eps4, unimodular4)))

    code, out, _ = _run(capsys, "iso", "--rep", first, "--other", second, "--seed", "3")

    assert code == 0
    document = json.loads(out)
    assert document["isomorphic"] is True
    assert document["reason"] == "intertwiner"


def test_iso_dimension(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps3: Rep, eps4: Rep):
    first, second = _write(tmp_path, "a.json", encode_rep(eps3)), _write(tmp_path, "b.json", encode_rep(eps4))

    code, out, _ = _run(capsys, "iso", "--rep", first, "--other", second)

    assert code == 0
    assert json.loads(out) == {"isomorphic": False, "reason": "dimension", "witness": None}


def test_jacobian(capsys: pytest.CaptureFixture[str]):
    code, out, _ = _run(capsys, "jacobian", "--n", "5", "--params", "1,0,2,-1,1/2")

    assert code == 0
    assert json.loads(out) == {"n": 5, "rank": 3, "expected": 3}


def test_autoeq(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps4: Rep):
    target = canonical_pair_rep(4, Fraction(1), Fraction(2))
    first, second = _write(tmp_path, "a.json", encode_rep(eps4)), _write(tmp_path, "b.json", encode_rep(target))

    code, out, _ = _run(capsys, "autoeq", "--rep", first, "--other", second)

    assert code == 0
    document = json.loads(out)
    assert document["equivalent"] is True
    assert document["automorphism"] == {"p": ["1", "2"], "c": "1"}
    assert document["conjugator"] == encode_qmat(QMat.identity(4))


# ---------------------------------------------------------------------------
# Acceptance suites
# ---------------------------------------------------------------------------


def test_check_suite(capsys: pytest.CaptureFixture[str]):
    code, out, _ = _run(capsys, "check", "normal-form", "--seed", "5", "--max-n", "4")

    assert code == 0
    document = json.loads(out)
    assert document["passed"] is True
    assert [s["name"] for s in document["suites"]] == ["normal-form"]


def test_check_unknown_suite(capsys: pytest.CaptureFixture[str]):
    code, _, _ = _run(capsys, "check", "no-such-suite")

    assert code == 2

@pytest.mark.parametrize(
    "argv",
    [
        ("jacobian", "--n", "1"),
        ("jacobian", "--n", "0"),
        ("jacobian", "--n", "two"),
        ("check", "all", "--max-n", "1"),
    ],
)
def test_sizes_below_two_are_usage_errors(capsys: pytest.CaptureFixture[str], argv: tuple[str, ...]):
    code, out, _ = _run(capsys, *argv)

    assert code == 2
    assert out == ""


def test_check_is_deterministic(capsys: pytest.CaptureFixture[str]):
    argv = ("check", "automorphisms", "--seed", "9", "--max-n", "3")

    first = _run(capsys, *argv)
    second = _run(capsys, *argv)

    assert first[0] == 0
    assert first[1] == second[1]


def test_iso_is_deterministic(capsys: pytest.CaptureFixture[str], tmp_path: Path, eps4: Rep, unimodular4: QMat):
    first = _write(tmp_path, "a.json", encode_rep(eps4))
    second = _write(tmp_path, "b.json", encode_rep(conjugate_rep(eps4, unimodular4)))
    argv = ("iso", "--rep", first, "--other", second, "--seed", "11")

    outputs = {_run(capsys, *argv)[1] for _ in range(2)}

    assert len(outputs) == 1
