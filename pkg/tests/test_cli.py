import json
import subprocess
import sys

from fpf.cli import main

from .conftest import CORPUS


def run(args):
    return subprocess.run(
        [sys.executable, "-m", "fpf.cli", *args],
        capture_output=True,
        text=True,
        timeout=120,
    )


def test_check_accepts_corpus(capsys):
    assert main(["check", str(CORPUS / "and_commutativity.fpf")]) == 0
    out = capsys.readouterr().out
    assert "accepted" in out


def test_check_wrong_start_exit_and_message(capsys):
    rc = main(["check", str(CORPUS / "wrong_start_and_comm.fpf")])
    assert rc == 1
    err = capsys.readouterr().err
    assert "GOAL_NOT_CONJUNCTION" in err
    assert (
        "prove_and expects the current goal to be a conjunction; "
        "the goal here is an implication (A ∧ B → B ∧ A)" in err
    )


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.fpf"
    bad.write_text("Theorem t : A. prove_and", encoding="utf-8")
    assert main(["check", str(bad)]) == 2
    assert "PARSE_ERROR" in capsys.readouterr().err


def test_missing_file_exit_code(capsys):
    assert main(["check", "/nonexistent/nope.fpf"]) == 3


def test_render_to_stdout(capsys):
    assert main(["render", str(CORPUS / "sub_suc.fpf"), "--level", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Theorem: ")
    assert "q.e.d." in out


def test_render_levels_to_file(tmp_path):
    for level in ("0", "1", "2", "3"):
        out = tmp_path / f"doc{level}.txt"
        rc = main(
            ["render", str(CORPUS / "and_commutativity.fpf"), "--level", level, "--out", str(out)]
        )
        assert rc == 0
        assert out.read_text(encoding="utf-8")


def test_render_records_export(capsys):
    assert main(["render", str(CORPUS / "and_commutativity.fpf"), "--level", "2", "--records"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    recs = [json.loads(line) for line in out]
    assert all(set(r) == {"depth", "marker", "text", "nodes"} for r in recs)


def test_render_byte_identical_across_three_process_runs(tmp_path):
    outs = []
    for i in range(3):
        r = run(["render", str(CORPUS / "sub_suc.fpf"), "--level", "3"])
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1] == outs[2]


def test_step_subprocess_transcript():
    requests = [
        {"kind": "step_forward"},
        {"kind": "step_forward"},
        {"kind": "step_back"},
        {"kind": "run_to_end"},
    ]
    stdin = "\n".join(json.dumps(r) for r in requests) + "\n"
    r = run(["step", str(CORPUS / "and_commutativity.fpf")])
    # no input: only the initial load response
    assert r.returncode == 0
    r = subprocess.run(
        [sys.executable, "-m", "fpf.cli", "step", str(CORPUS / "and_commutativity.fpf")],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=120,
    )
    lines = [json.loads(l) for l in r.stdout.strip().splitlines()]
    assert lines[0]["kind"] == "state_view"
    assert [l["kind"] for l in lines[1:]] == ["accepted", "accepted", "accepted", "accepted"]
    assert lines[-1]["state"]["open_goals"] == 0


def test_catalog_flag(tmp_path, capsys):
    import json as _json

    from fpf.render.catalog import load_catalog

    data = load_catalog().data
    data = _json.loads(_json.dumps(data))
    data["templates"]["reflexivity"]["rule"] = "Equal by computation: {goal}."
    path = tmp_path / "cat.json"
    path.write_text(_json.dumps(data), encoding="utf-8")
    src = tmp_path / "t.fpf"
    src.write_text("Theorem t : 0 = 0. reflexivity. Qed.", encoding="utf-8")
    assert main(["render", str(src), "--level", "1", "--catalog", str(path)]) == 0
    assert "Equal by computation: 0 = 0." in capsys.readouterr().out


def test_fpf_stdlib_env_override(tmp_path, monkeypatch):
    # an override directory with a tiny nat module only
    (tmp_path / "nat.fpf").write_text(
        "Inductive ℕ := 0 | Suc ℕ.\n", encoding="utf-8"
    )
    script = tmp_path / "use.fpf"
    script.write_text("Theorem t : Suc 0 = 1. reflexivity. Qed.", encoding="utf-8")
    r = subprocess.run(
        [sys.executable, "-m", "fpf.cli", "check", str(script)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "FPF_STDLIB": str(tmp_path)},
        timeout=120,
    )
    assert r.returncode == 0, r.stderr
    # the catalog from the packaged stdlib is gone under the override
    script2 = tmp_path / "use2.fpf"
    script2.write_text(
        "Theorem t : ∀ n : ℕ, n ⊖ 0 = n. prove_all n. rewrite n_sub_0. reflexivity. Qed.",
        encoding="utf-8",
    )
    r2 = subprocess.run(
        [sys.executable, "-m", "fpf.cli", "check", str(script2)],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "FPF_STDLIB": str(tmp_path)},
        timeout=120,
    )
    assert r2.returncode != 0


def test_render_multi_theorem_file(tmp_path, capsys):
    src = tmp_path / "two.fpf"
    src.write_text(
        "Theorem a : 0 = 0. reflexivity. Qed.\n"
        "Theorem b : 1 = 1. reflexivity. Qed.\n",
        encoding="utf-8",
    )
    assert main(["render", str(src), "--level", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("q.e.d.") == 2
    assert out.count("Theorem: ") == 2
