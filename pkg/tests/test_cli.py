import json
import subprocess
import sys

import pytest

from heu import io
from heu.cli import dispatch, main
from heu.interpretation import compose_capacity
from heu.scenarios import monty_hall, pivotal_voting


def run(*argv):
    res = dispatch(list(argv))
    return res.exit_code, (json.loads(res.render()) if res.text is None else res.text)


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(io.dumps(doc))
        return str(path)
    return _write


def test_help_and_unknown_commands():
    code, text = run("--help")
    assert code == 0
    code, report = run("no-such-command")
    assert code == 2 and report["error"] == "MalformedDocument"
    code, report = run("enumerate")
    assert code == 2


def test_check_pi_exit_codes(write):
    code, report = run("check-pi", "--in", write("id.json", {"table": ["00", "10", "01", "11"]}))
    assert code == 0 and report["class"] == "coherent"
    lit = io.interpretation_doc(monty_hall().pi_behavioral)
    code, report = run("check-pi", "--in", write("lit.json", lit))
    assert code == 1 and report["class"] == "none"
    assert report["properties"]["monotone"]["witness"] == ["1001", "1011"]


def test_malformed_input_exits_two(write, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert run("classify", "--in", str(bad))[0] == 2
    assert run("classify", "--in", str(tmp_path / "missing.json"))[0] == 2
    assert run("classify", "--in", write("x.json", {"table": {}}))[0] == 2


def test_relation_commands(write):
    pi_doc = io.interpretation_doc(pivotal_voting().pi_behavioral)
    code, rel = run("derive-implication", "--in", write("pi.json", pi_doc))
    assert code == 0
    code, report = run("check-relation", "--in", write("rel.json", rel))
    assert code == 0 and report["all"]
    code, built = run("build-pi", "--in", write("rel2.json", rel))
    assert code == 0 and built["table"] == pi_doc["table"]
    trv = {"pairs": [["00", "00"], ["10", "10"], ["10", "11"], ["01", "01"], ["01", "11"],
                     ["11", "11"], ["00", "10"], ["00", "01"], ["00", "11"], ["11", "00"]]}
    code, report = run("check-relation", "--in", write("trv.json", trv))
    assert code == 1 and not report["axioms"]["trv"]["holds"]
    code, report = run("build-pi", "--in", write("trv2.json", trv))
    assert code == 1 and report["axiom"] == "trv"


def test_build_from_constraints_and_generators(write):
    code, report = run("build-pi", "--in", write("c.json", {"constraints": {"00": "11", "11": "00"}}))
    assert code == 1 and report["error"] == "Infeasible"
    gens = {"generators": {"base": "000", "singletons": ["110", "110", "001"]}}
    code, report = run("build-pi", "--in", write("g.json", gens))
    assert code == 0 and report["class"] == "coherent"


def test_elicit_round_trip_and_value(write):
    sc = pivotal_voting()
    cap = write("cap.json", io.capacity_doc(compose_capacity(sc.mu, sc.pi_behavioral)))
    code, rep = run("elicit", "--capacity", cap)
    assert code == 0 and rep["verified"]
    assert rep["atom_masses"] == ["1/3", "1/6", "1/6", "1/3"]
    rep_path = write("rep.json", rep)
    act = write("act.json", {"payoffs": ["1"] * 8})
    code, report = run("value", "--rep", rep_path, "--act", act)
    assert code == 0 and report["value"] == "1/1"
    code, report = run("conditional", "--pi", write("pi.json", io.interpretation_doc(sc.pi_behavioral)),
                       "--mu", write("mu.json", io.measure_doc(sc.mu)),
                       "--hypothesis", "11110000", "--observed", "B,r,p; R,r,p")
    assert report["value"] == "1/3"


def test_elicit_snap_and_failures(write):
    cap = write("cap.json", {"values": ["0", "0.2500001", "0.2499999", "1"]})
    assert run("elicit", "--capacity", cap, "--snap", "0")[0] == 2
    code, report = run("elicit", "--capacity", cap, "--snap", "100")
    assert code == 1 and report["error"] == "ExtensionInfeasible"


def test_value_warns_on_incoherent_map(write):
    sc = monty_hall()
    code, report = run("value", "--pi", write("pi.json", io.interpretation_doc(sc.pi_behavioral)),
                       "--mu", write("mu.json", io.measure_doc(sc.mu)),
                       "--act", write("a.json", {"payoffs": ["1", "0", "0", "1"]}))
    assert code == 0 and report["value"] == "2/3" and "warning" in report


def test_compare(write):
    ident = write("i.json", {"table": ["00", "10", "01", "11"]})
    top = write("t.json", {"table": ["11"] * 4})
    code, report = run("compare", "--pi1", ident, "--pi2", top)
    assert report == {"verdict": "better", "witness": None, "fewer_implications": True}


def test_diagnose(write):
    sc = pivotal_voting()
    cap = write("cap.json", io.capacity_doc(compose_capacity(sc.mu, sc.pi_behavioral)))
    code, report = run("diagnose", "--capacity", cap, "--trials", "50")
    assert code == 0 and report["concave"]["holds"] and report["hedging"]["aversion_holds"]
    sq = write("sq.json", {"values": ["0", "1/4", "1/4", "1"]})
    code, report = run("diagnose", "--capacity", sq)
    assert report["concave"]["witness"] == ["10", "01"]
    assert not report["representation"]["found"]


def test_scenarios_and_params(write):
    code, report = run("scenario", "monty-hall")
    assert code == 0 and report["ok"]
    code, text = run("scenario", "pivotal-voting", "--format", "text")
    assert code == 0 and "2/3" in text
    code, report = run("scenario", "disclosure", "--params", write("p.json", {"n": 2, "beta": ["0", "1"]}))
    assert code == 0 and report["headline"][0]["computed"] == "1/2"
    assert run("scenario", "monty-hall", "--params", write("q.json", {"x": 1}))[0] == 2
    assert run("scenario", "disclosure", "--params", write("r.json", {"n": 9}))[0] == 2


def test_enumerate(monkeypatch):
    assert run("enumerate", "--n", "4", "--count-only")[1]["count"] == 500
    assert run("enumerate", "--n", "4", "--kind", "weakly-coherent", "--count-only")[1]["count"] == 2480
    code, report = run("enumerate", "--n", "1")
    assert report["tables"] == [["0", "1"], ["1", "1"]] or sorted(report["tables"]) == [["0", "1"], ["1", "1"]]
    assert run("enumerate", "--n", "5")[0] == 2


def test_verify_theorems_quick():
    code, text = run("verify-theorems", "--n", "2", "--quick")
    assert code == 0
    assert all(line.startswith("PASS") for line in text.splitlines())
    code, report = run("verify-theorems", "--n", "2", "--quick", "--format", "json")
    assert all(r["passed"] for r in report["results"])


def test_output_is_deterministic_and_written_to_file(tmp_path):
    out = tmp_path / "o.json"
    assert main(["scenario", "winners-curse", "--out", str(out)]) == 0
    first = out.read_text()
    assert main(["scenario", "winners-curse", "--out", str(out)]) == 0
    assert out.read_text() == first


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "heu.cli", "enumerate", "--n", "2", "--count-only"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 7
