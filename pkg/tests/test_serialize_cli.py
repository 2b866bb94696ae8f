import json

import pytest

from consep.cli import main, run
from consep.errors import InvalidGraph
from consep.graphs import Graph, LabeledGraph
from consep.serialize import dumps, graph_from_dict, graph_to_dict, parse_graph_text

SPLIT_CONFIG = "n = 2\nM = 3\nN = 2\nN' = 0\nN'' = 0\nT = 3\n"


def structured(capsys, argv):
    code, _ = run(argv + ["--format", "structured"])
    return code, json.loads(capsys.readouterr().out)


def test_dumps_is_deterministic_and_handles_infinity():
    a = dumps({"b": 1, "a": float("inf"), "c": [float("inf"), (1, 2)]})
    assert a == dumps({"c": [float("inf"), [1, 2]], "a": float("inf"), "b": 1})
    assert json.loads(a)["a"] == "inf"


def test_graph_round_trip():
    for g in (Graph(3, ((0, 1), (1, 2), (2, 2))), LabeledGraph(2, 2, ((0, 1, 1), (1, 0, 2), (0, 0, 2)))):
        assert graph_from_dict(json.loads(dumps(graph_to_dict(g)))) == g


def test_edge_list_parsing():
    g = parse_graph_text("# triangle\n3\n0 1\n1 2\n2 0\n")
    assert g == Graph(3, ((0, 1), (1, 2), (2, 0)))
    lg = parse_graph_text("rank 2\n1\n0 0 1\n0 0 2\n")
    assert isinstance(lg, LabeledGraph) and lg.rank == 2
    for bad in ("", "2\n0 x\n", "3\n0 1\n1 2 1\n"):
        with pytest.raises(InvalidGraph):
            parse_graph_text(bad)


def test_con_separate_witness(capsys):
    code, out = structured(capsys, ["con-separate", "--rank", "2", "--h1", "a", "--h2", "b"])
    assert code == 0
    assert out["result"]["kind"] == "Witness"
    assert all(c["passed"] for c in out["checks"])


def test_con_separate_conjugator(capsys):
    code, out = structured(capsys, ["con-separate", "--rank", "2", "--h1", "ab", "--h2", "ba"])
    assert code == 0 and out["result"] == {"kind": "Conjugator", "g": "a"}


def test_trivial_h2_is_an_error(capsys):
    assert main(["con-separate", "--rank", "2", "--h1", "a", "--h2", ""]) == 2
    assert "TrivialH2" in capsys.readouterr().err


def test_parse_error_reports_position(capsys):
    assert main(["scs", "--rank", "2", "--h1", "a", "--h2", "aq"]) == 2
    assert "2" in capsys.readouterr().err


def test_scs_verdicts(capsys):
    _, out = structured(capsys, ["scs", "--rank", "2", "--h1", "a", "--h2", "Bab"])
    assert out["result"] == {"verdict": "Conjugate", "g": "b"}
    _, out = structured(capsys, ["scs", "--rank", "2", "--h1", "a", "--h2", "b"])
    assert out["result"]["verdict"] == "Separated"
    code, out = structured(capsys, ["scs", "--rank", "2", "--h1", "ab,Ba", "--h2", "ab,Ba"])
    assert code == 0 and out["result"] == {"verdict": "Conjugate", "g": "1"}


def test_cover_commands(capsys, tmp_path):
    code, out = structured(capsys, ["cover", "girth", "rose:2", "--m", "5"])
    assert code == 0 and out["result"]["girth"] >= 6
    tri = tmp_path / "tri.txt"
    tri.write_text("3\n0 1\n1 2\n2 0\n")
    code, out = structured(capsys, ["cover", "branched", str(tri), "--degrees", "1"])
    assert code == 0 and out["result"]["degrees"] == [1, 1, 1]
    path = tmp_path / "path.txt"
    path.write_text("3\n0 1\n1 2\n")
    assert main(["cover", "noncut", str(path), "--degrees", "1,2,1", "--vertex", "1"]) == 2
    assert "HypothesisViolated" in capsys.readouterr().err


def test_surface_commands(capsys):
    code, out = structured(capsys, ["surface", "check", "--genus", "1", "--n", "2",
                                    "--data", "R1(1,1),R2(1,1)"])
    assert code == 0 and out["result"]["verdict"] == "Realizable"
    assert main(["surface", "cor1", "--genus", "0", "--n", "2"]) == 2
    assert "HypothesisViolated" in capsys.readouterr().err
    assert main(["surface", "very-technical", "--genus", "1", "--n", "2", "--M", "7"]) == 2
    assert "NotMultipleOfM0" in capsys.readouterr().err
    for kind in ("corM", "corM1"):
        assert main(["surface", kind, "--genus", "1", "--n", "2", "--M", "4"]) == 0
    assert main(["surface", "corM", "--genus", "1", "--n", "2", "--M", "3"]) == 2
    assert "DivisibilityViolated" in capsys.readouterr().err


def test_assemble_split_base(capsys, tmp_path):
    cfg = tmp_path / "split.cfg"
    cfg.write_text(SPLIT_CONFIG)
    code, out = structured(capsys, ["assemble", str(cfg)])
    assert code == 0
    assert out["result"]["open_slots"] == []
    assert all(c["passed"] for c in out["checks"])


def test_assemble_rejects_bad_configs(capsys, tmp_path):
    even = tmp_path / "even.cfg"
    even.write_text(SPLIT_CONFIG.replace("T = 3", "T = 4"))
    assert main(["assemble", str(even)]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text(SPLIT_CONFIG + "piece.B_1 = R1/1*2 R1/3*2\n")
    assert main(["assemble", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "SlotMismatch" in err and "R1" in err


def test_output_is_byte_identical_and_written_atomically(capsys, tmp_path, monkeypatch):
    argv = ["con-separate", "--rank", "2", "--h1", "aa,b", "--h2", "ab", "--format", "structured"]
    main(argv + ["--out", str(tmp_path / "one.json")])
    main(argv + ["--out", str(tmp_path / "two.json")])
    capsys.readouterr()
    assert (tmp_path / "one.json").read_bytes() == (tmp_path / "two.json").read_bytes()
    monkeypatch.setenv("CONSEP_OUT_DIR", str(tmp_path / "sub"))
    main(argv + ["--out", "three.json"])
    assert (tmp_path / "sub" / "three.json").read_bytes() == (tmp_path / "one.json").read_bytes()
    assert not [p for p in (tmp_path / "sub").iterdir() if p.name.startswith(".consep-")]


def test_dot_output(capsys):
    assert main(["cover", "girth", "rose:2", "--m", "3", "--format", "dot"]) == 0
    text = capsys.readouterr().out
    assert text.lstrip().startswith(("graph", "digraph")) and "--" in text or "->" in text
