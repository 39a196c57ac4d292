import json

import pytest

from app.cli import EXIT_INCOMPLETE, EXIT_INPUT, EXIT_INVALID, EXIT_OK, exit_code, main, run
from app.errors import InputError, NotClosedError, PoleError
from app.models import CompletenessCertificate, Report, RunRequest


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_builtins(capsys):
    code, report = run_json(capsys, "builtins")
    assert code == EXIT_OK
    names = {b["name"] for b in report["data"]["builtins"]}
    assert "sweedler" in names and "kappa-poincare" in names


def test_validate_builtin(capsys):
    code, report = run_json(capsys, "validate", "--builtin", "sweedler")
    assert code == EXIT_OK
    assert report["ok"] is True
    assert report["data"]["dim"] == 4
    assert report["validation"]["violations"] == []


def test_validate_filtered_builtin(capsys):
    code, report = run_json(capsys, "validate", "--builtin", "uqbplus", "--trunc", "3")
    assert code == EXIT_OK
    assert report["data"]["bound"] == 3


def test_validate_broken_document(tmp_path, capsys):
    doc = {
        "basis": ["a", "b"],
        "coproduct": {"a": [["a", "a", "1"]], "b": [["b", "b", "1"]]},
        "counit": {"a": "1", "b": "2"},
    }
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, report = run_json(capsys, "validate", "--input", str(path))
    assert code == EXIT_INVALID
    assert report["ok"] is False
    assert {v["axiom"] for v in report["validation"]["violations"]} >= {"left counit"}


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "--builtin", "nope"],
        ["validate", "--input", "/nonexistent/structure.json"],
        ["validate"],
        ["graph-classify", "--points", "4"],
        ["generate", "--builtin", "m2x2"],
        ["dual", "--builtin", "uqsl2"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_input_must_be_json(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text("not json", encoding="utf-8")
    assert main(["validate", "--input", str(path)]) == EXIT_INPUT


def test_unknown_command_is_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_universal(capsys):
    code, report = run_json(capsys, "universal", "--builtin", "m2x2")
    assert code == EXIT_OK
    assert report["data"]["dim"] == 12
    assert report["data"]["kernel_dim"] == 9


def test_generate_singleton(capsys):
    code, report = run_json(capsys, "generate", "--builtin", "m2x2", "--singleton", "[y⊗x]")
    assert code == EXIT_OK
    assert report["data"]["dim"] == 4
    assert report["data"]["simplicity"] == "Simple"


def test_generate_sweeps_parameters(capsys):
    code, report = run_json(
        capsys, "generate", "--builtin", "sweedler-coalgebra", "--singleton", "[X⊗X] + a*[X⊗1]", "--param", "a"
    )
    assert code == EXIT_OK
    runs = report["data"]["runs"]
    assert [r["params"]["a"] for r in runs] == ["0", "1", "2", "-1"]
    fixed_code, fixed = run_json(
        capsys, "generate", "--builtin", "sweedler-coalgebra", "--singleton", "[X⊗X] + a*[X⊗1]", "--param", "a=2"
    )
    assert fixed_code == EXIT_OK
    assert fixed["data"]["dim"] == runs[2]["dim"]


def test_decompose_and_cointegral(capsys):
    code, report = run_json(capsys, "decompose", "--builtin", "m2x2")
    assert code == EXIT_OK
    assert sorted(p["dim"] for p in report["data"]["pieces"]) == [4, 4, 4]
    _, report = run_json(capsys, "cointegral", "--builtin", "m2x2")
    assert report["data"]["coseparable"] is True
    _, report = run_json(capsys, "cointegral", "--builtin", "sweedler-coalgebra")
    assert report["data"]["coseparable"] is False


def test_graph_classify_dot(capsys):
    code = main(["graph-classify", "--points", "6", "--dim", "1", "--format", "dot"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("digraph class0 {")


def test_dot_needs_graphs(capsys):
    assert main(["builtins", "--format", "dot"]) == EXIT_INPUT


def test_truncation_limited_exit_code(capsys):
    argv = ["yd-generate", "--builtin", "uqbplus", "--generators", "g^2", "--trunc", "6"]
    code, report = run_json(capsys, *argv)
    assert code == EXIT_OK
    assert report["certificate"]["status"] == "TruncationLimited"
    code, _ = run_json(capsys, *argv, "--require-complete")
    assert code == EXIT_INCOMPLETE
    code, report = run_json(capsys, "yd-generate", "--builtin", "uqbplus", "--generators", "g^-1", "--require-complete")
    assert code == EXIT_OK
    assert report["data"]["dim"] == 2


def test_bicovariant_on_sweedler(capsys):
    code, report = run_json(capsys, "bicovariant", "--builtin", "sweedler", "--generators", "X")
    assert code == EXIT_OK
    assert report["data"]["dim"] == 1
    assert report["data"]["focc"]["dim"] == 4


def test_qlie_commands(capsys):
    code, report = run_json(capsys, "qlie-certify", "--builtin", "uqsl2", "--generators", "K")
    assert code == EXIT_OK
    assert report["data"]["basis"] == ["υ00", "υ10", "υ01", "υ11"]
    code, report = run_json(capsys, "limit", "--builtin", "uqsl2", "--generators", "K", "--at", "1", "--drop", "υ00")
    assert code == EXIT_OK
    assert report["data"]["flip"] is True
    assert report["data"]["bracket"]["[υ10,υ01]"] == "υ11"
    assert main(["limit", "--builtin", "uqsl2", "--generators", "K"]) == EXIT_INPUT


def test_qlie_on_a_non_submodule_fails(capsys):
    code = main(["qlie", "--builtin", "uqsl2", "--basis", "K", "--basis", "E"])
    assert code == EXIT_INVALID


def test_dual_and_pair(capsys):
    code, report = run_json(capsys, "dual", "--builtin", "z2")
    assert code == EXIT_OK
    assert report["data"]["tangent_dim"] == 1
    assert report["data"]["v_kernel"] == []
    code, report = run_json(capsys, "pair", "--builtin", "sweedler")
    assert code == EXIT_OK
    assert report["data"]["rank"] == 12


def test_text_rendering(capsys):
    assert main(["validate", "--builtin", "z3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("validate z3: ok")
    assert "violations 0" in out


def test_run_rejects_unknown_commands():
    with pytest.raises(InputError):
        run(RunRequest(command="nope"))


def test_exit_code_mapping():
    ok = Report(command="c", structure="s")
    limited = Report(
        command="c", structure="s", certificate=CompletenessCertificate(status="TruncationLimited", bound=4)
    )
    assert exit_code(ok) == EXIT_OK
    assert exit_code(Report(command="c", structure="s", ok=False)) == EXIT_INVALID
    assert exit_code(limited) == EXIT_OK
    assert exit_code(limited, require_complete=True) == EXIT_INCOMPLETE
    assert exit_code(error=InputError("x")) == EXIT_INPUT
    assert exit_code(error=PoleError("x")) == EXIT_INPUT
    assert exit_code(error=NotClosedError("x")) == EXIT_INVALID
