import json

from precut.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None


def test_enum_perm_classes(capsys):
    code, data = run_json(capsys, "enum", "--instance", "perm_f", "--n", "3", "--classes")
    assert code == 0
    assert len(data["classes"]) == 6


def test_enum_preorders_count(capsys):
    code, data = run_json(capsys, "enum", "--instance", "preorders", "--n", "3")
    assert code == 0
    assert len(data["elements"]) == 29


def test_enum_unknown_instance(capsys):
    assert main(["enum", "--instance", "who", "--n", "1"]) == 2


def test_verify_pass_and_fail_exit_codes(capsys):
    code, data = run_json(
        capsys, "verify", "--instance", "colored", "--check", "intertwined", "--nmax", "3"
    )
    assert code == 0 and data["passed"]
    code, data = run_json(
        capsys, "verify", "--instance", "broken_dc", "--check", "intertwined", "--nmax", "2"
    )
    assert code == 1 and not data["passed"]
    assert data["witness"]["completions"] == 0


def test_verify_threads_match_serial(capsys):
    code1, d1 = run_json(
        capsys, "verify", "--instance", "graphs", "--check", "intertwined", "--nmax", "3"
    )
    code2, d2 = run_json(
        capsys,
        "verify",
        "--threads",
        "3",
        "--instance",
        "graphs",
        "--check",
        "intertwined",
        "--nmax",
        "3",
    )
    assert (code1, d1["passed"]) == (code2, d2["passed"]) == (0, True)


def test_verify_bimonoid_parking(capsys):
    code, data = run_json(
        capsys, "verify", "--instance", "parking", "--check", "bimonoid", "--nmax", "3"
    )
    assert code == 0 and data["passed"]


def test_avoid_preset_dims(capsys):
    code, data = run_json(capsys, "avoid", "--preset", "213", "--nmax", "4")
    assert code == 0
    assert data["dimensions"] == [1, 1, 2, 5, 14]


def test_avoid_check_irreducible(capsys):
    code, data = run_json(
        capsys, "avoid", "--preset", "213", "--check-irreducible", "1", "--nmax", "3"
    )
    assert code == 0 and data["irreducible"]["passed"]


def test_fock_summary_and_export(tmp_path, capsys):
    out = tmp_path / "table.json"
    code, data = run_json(
        capsys,
        "fock",
        "--instance",
        "perm_f",
        "--N",
        "3",
        "--out",
        str(out),
    )
    assert code == 0
    assert data["dimensions"] == [1, 1, 2, 6]
    assert data["axioms_pass"]
    exported = json.loads(out.read_text())
    assert exported["N"] == 3 and len(exported["classes"]) == 10


def test_fock_csv_export(tmp_path, capsys):
    out = tmp_path / "table.csv"
    code, _ = run_json(
        capsys,
        "fock",
        "--instance",
        "colored",
        "--palette",
        "1",
        "--N",
        "2",
        "--out",
        str(out),
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "kind,a,b,left,right,c,coeff"
    assert len(lines) > 5


def test_fock_cache_determinism(tmp_path, capsys):
    args = (
        "fock",
        "--instance",
        "graphs",
        "--N",
        "3",
        "--cache-dir",
        str(tmp_path),
        "--out",
    )
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_json(capsys, *args, str(out1))[0] == 0
    assert run_json(capsys, *args, str(out2))[0] == 0
    assert out1.read_text() == out2.read_text()


def test_fock_refuses_unverified_instance(capsys):
    code = main(["fock", "--instance", "cc", "--N", "3"])
    assert code == 2
    code, data = run_json(capsys, "fock", "--instance", "cc", "--N", "3", "--force")
    assert code == 1 and not data["axioms_pass"]


def test_check_square_from_file(tmp_path, capsys):
    ident = {"source": [1, 2], "target": [1, 2], "coeff": [[1, 0], [0, 1]]}
    square = {"alpha": ident, "beta": ident, "gamma": ident, "delta": ident}
    f = tmp_path / "sq.json"
    f.write_text(json.dumps(square))
    code, data = run_json(capsys, "check-square", "--file", str(f))
    assert code == 0 and data["ok"]
    bad = dict(square, delta={"source": [1, 2], "target": [1, 2], "coeff": [[1, 0], [1, 0]]})
    f.write_text(json.dumps(bad))
    code, data = run_json(capsys, "check-square", "--file", str(f), "--mode", "dual-commute")
    assert code == 1 and not data["ok"]


def test_preorder_calculator(capsys):
    chain = {"ground": ["a", "b"], "rel": [[True, True], [False, True]]}
    rev = {"ground": ["a", "b"], "rel": [[True, False], [True, True]]}
    code, data = run_json(
        capsys, "preorder", "--op", "join", "--p", json.dumps(chain), "--q", json.dumps(rev)
    )
    assert code == 0
    assert all(all(row) for row in data["rel"])
    code, data = run_json(
        capsys,
        "preorder",
        "--op",
        "closure",
        "--p",
        json.dumps({"ground": ["a", "b", "c"], "pairs": [["a", "b"], ["b", "c"]]}),
    )
    assert code == 0 and data["rel"][0][2] is True
    code, data = run_json(capsys, "preorder", "--op", "cuts", "--p", json.dumps(chain))
    assert code == 0 and data == [[], ["a"], ["a", "b"]]
    code, data = run_json(capsys, "preorder", "--op", "predicates", "--p", json.dumps(chain))
    assert code == 0 and data["total_order"]


def test_parking_calculator(capsys):
    payload = {"ground": ["a", "b", "c"], "chain": [["a"], ["a"], ["a", "b", "c"], ["a", "b", "c"]]}
    code, data = run_json(capsys, "parking", "--chain", json.dumps(payload))
    assert code == 0
    assert data["dilation"] == [0, 1, 3, 4]
    assert data["break_points"] == [0, 1, 3]
    assert data["parkization"] == [["a"], ["a", "b", "c"], ["a", "b", "c"]]


def test_parking_enumeration(capsys):
    code, data = run_json(capsys, "parking", "--enumerate", "3")
    assert code == 0 and data["count"] == 16


def test_pairs_calculator(capsys):
    d = {"ground": [1, 2], "rel": [[True, False], [False, True]]}
    c = {"ground": [1, 2], "rel": [[True, True], [True, True]]}
    code, data = run_json(
        capsys, "pairs", "--op", "membership", "--data", json.dumps({"p": d, "q": d})
    )
    assert code == 0
    assert data == {"cc": False, "nc": False, "nn": True}
    code, data = run_json(
        capsys, "pairs", "--op", "matrix", "--data", json.dumps({"p": c, "q": c})
    )
    assert code == 0 and data == [[2]]
    payload = {
        "kind": "nn",
        "frame1": d,
        "frame2": d,
        "refine1": [],
        "refine2": [],
    }
    code, data = run_json(capsys, "pairs", "--op", "generate", "--data", json.dumps(payload))
    assert code == 0
    assert data["p"] == d


def test_bad_json_is_usage_error(capsys):
    assert main(["parking", "--chain", "{broken"]) == 2
