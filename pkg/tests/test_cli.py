"""Command-line flows: exit codes, reports, census files, classification."""

from __future__ import annotations

import json
import random
import subprocess
import sys

import yangbaxter as yb
from yangbaxter.cli import main
from yangbaxter.solution import solution_to_text


def write(tmp_path, name, payload):
    path = tmp_path / name
    if isinstance(payload, str):
        path.write_text(payload)
    else:
        path.write_text(json.dumps(payload))
    return str(path)


def test_verify_solution_json(tmp_path, capsys):
    path = write(tmp_path, "sol.json", yb.projection_solution(3).to_dict())
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "two_reductive: True" in out
    assert "mp_level: 1" in out


def test_verify_solution_text_format(tmp_path, capsys):
    path = write(tmp_path, "sol.txt", solution_to_text(yb.projection_solution(2)))
    assert main(["verify", path, "--format", "text"]) == 0
    assert main(["verify", path]) == 0  # sniffed


def test_verify_irretractable_brace_solution(tmp_path, capsys):
    s = yb.associated_solution(yb.z2n_brace(3))
    path = write(tmp_path, "z6sol.json", s.to_dict())
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "irretractable" in out
    assert "left_distributive: True" in out
    assert "right_distributive: False" in out


def test_verify_union_file(tmp_path, capsys):
    u = yb.enumerate_2reductive(3)[0]
    path = write(tmp_path, "union.json", u.to_dict())
    assert main(["verify", path]) == 0
    assert "two_reductive: True" in capsys.readouterr().out


def test_verify_brace_file(tmp_path, capsys):
    path = write(tmp_path, "brace.json", yb.z2n_brace(3).to_dict())
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "kind: brace" in out
    assert "bi_skew: True" in out


def test_verify_bad_row_exits_1(tmp_path, capsys):
    path = write(
        tmp_path, "bad.json",
        {"n": 2, "sigma": [[0, 0], [0, 1]], "tau": [[0, 1], [0, 1]]},
    )
    assert main(["verify", path]) == 1
    assert "sigma-row" in capsys.readouterr().err


def test_verify_parse_error_exits_2(tmp_path, capsys):
    path = write(tmp_path, "broken.json", '{"sigma": [[0]], ')
    assert main(["verify", path]) == 2
    err = capsys.readouterr().err
    assert "invalid JSON" in err
    missing = str(tmp_path / "missing.json")
    assert main(["verify", missing]) == 2


def test_verify_unknown_schema_exits_2(tmp_path, capsys):
    path = write(tmp_path, "odd.json", {"foo": 1})
    assert main(["verify", path]) == 2
    assert "unrecognized schema" in capsys.readouterr().err


def test_enumerate_summary_and_file(tmp_path, capsys):
    out_path = str(tmp_path / "census3.jsonl")
    assert main(["enumerate", "3", "--out", out_path]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["n"] == 3
    assert summary["count"] == 20
    lines = open(out_path).read().splitlines()
    assert len(lines) == 21  # 20 entries + summary record
    tail = json.loads(lines[-1])
    assert tail["count"] == 20
    assert sum(tail["by_orbit_type"].values()) == 20


def test_enumerate_cap(tmp_path, capsys, monkeypatch):
    assert main(["enumerate", "9"]) == 2
    monkeypatch.setenv("YANGBAXTER_ENUM_CAP", "4")
    assert main(["enumerate", "5"]) == 2
    assert main(["enumerate", "4"]) == 0
    monkeypatch.setenv("YANGBAXTER_ENUM_CAP", "5")
    assert main(["enumerate", "5", "--out", str(tmp_path / "c5.jsonl")]) == 0


def test_enumerate_deterministic_across_jobs(tmp_path, capsys):
    p1 = str(tmp_path / "a.jsonl")
    p2 = str(tmp_path / "b.jsonl")
    assert main(["enumerate", "4", "--out", p1]) == 0
    assert main(["enumerate", "4", "--jobs", "2", "--out", p2]) == 0
    assert open(p1, "rb").read() == open(p2, "rb").read()


def test_enumerate_entries_reverify(tmp_path, capsys):
    out_path = str(tmp_path / "census3.jsonl")
    assert main(["enumerate", "3", "--out", out_path]) == 0
    capsys.readouterr()
    lines = open(out_path).read().splitlines()
    for i, line in enumerate(lines[:-1]):
        entry = str(tmp_path / f"entry{i}.json")
        with open(entry, "w") as fh:
            fh.write(line)
        assert main(["verify", entry]) == 0
        capsys.readouterr()


def test_classify_self_gives_identity_witness(tmp_path, capsys):
    u = yb.enumerate_2reductive(3)[5]
    path = write(tmp_path, "u.json", u.to_dict())
    assert main(["classify", path, path]) == 0
    out = capsys.readouterr().out
    assert "isomorphic" in out and f"pi={list(range(u.k))}" in out


def test_classify_scrambled_census_entry(tmp_path, capsys):
    rng = random.Random(4242)
    u = yb.enumerate_2reductive(4)[100]
    s = yb.union_to_solution(u)
    phi = list(range(s.n))
    rng.shuffle(phi)
    scrambled = yb.relabel(s, phi)
    p1 = write(tmp_path, "u.json", u.to_dict())
    p2 = write(tmp_path, "scrambled.json", scrambled.to_dict())
    assert main(["classify", p1, p2]) == 0
    assert "isomorphic" in capsys.readouterr().out


def test_classify_non_isomorphic(tmp_path, capsys):
    z3 = yb.abelian_group([3])
    u1 = yb.abelian_union([z3], [[0]], [[1]])
    u2 = yb.abelian_union([z3], [[1]], [[0]])
    p1 = write(tmp_path, "u1.json", u1.to_dict())
    p2 = write(tmp_path, "u2.json", u2.to_dict())
    assert main(["classify", p1, p2]) == 1
    assert "not isomorphic" in capsys.readouterr().out


def test_classify_non_2reductive_brute_force(tmp_path, capsys):
    s = yb.associated_solution(yb.trivial_brace(yb.symmetric_group(3)))
    phi = [3, 0, 5, 1, 4, 2]
    t = yb.relabel(s, phi)
    p1 = write(tmp_path, "s.json", s.to_dict())
    p2 = write(tmp_path, "t.json", t.to_dict())
    assert main(["classify", p1, p2]) == 0
    assert "phi=" in capsys.readouterr().out
    p3 = write(tmp_path, "proj.json", yb.projection_solution(6).to_dict())
    assert main(["classify", p1, p3]) == 1


def test_classify_large_non_2reductive_exits_2(tmp_path, capsys):
    big = yb.product_brace(
        yb.trivial_brace(yb.symmetric_group(3)),
        yb.trivial_brace(yb.cyclic_group(2)),
    )
    s = yb.associated_solution(big)
    assert not yb.is_2reductive(s).holds and s.n == 12
    path = write(tmp_path, "big.json", s.to_dict())
    assert main(["classify", path, path]) == 2
    assert "brute-force" in capsys.readouterr().err


def test_classify_rejects_brace_input(tmp_path, capsys):
    path = write(tmp_path, "b.json", yb.z2n_brace(1).to_dict())
    assert main(["classify", path, path]) == 2


def test_brace_report_and_solution_out(tmp_path, capsys):
    path = write(tmp_path, "z6.json", yb.z2n_brace(3).to_dict())
    sol_out = str(tmp_path / "assoc.json")
    assert main(["brace", path, "--report", "full", "--solution-out", sol_out]) == 0
    out = capsys.readouterr().out
    assert "bi_skew: True" in out
    assert "not nilpotent" in out
    assert "socle: [0]" in out
    assert "ker_rho: [0, 3] ideal: False" in out
    assert "associated_solution:" in out
    written = yb.solution_from_dict(json.load(open(sol_out)))
    assert written == yb.associated_solution(yb.z2n_brace(3))


def test_brace_command_rejects_solution_file(tmp_path, capsys):
    path = write(tmp_path, "sol.json", yb.projection_solution(2).to_dict())
    assert main(["brace", path]) == 2


def test_brace_law_violation_exits_1(tmp_path, capsys):
    s3 = yb.symmetric_group(3)
    z6 = yb.cyclic_group(6)
    path = write(tmp_path, "bad.json", {"n": 6, "dot": [list(r) for r in s3.table],
                                        "circle": [list(r) for r in z6.table]})
    assert main(["brace", path]) == 1
    assert "brace-law" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "yangbaxter.cli", "enumerate", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == 4
