import io
import json
import subprocess
import sys


from hochlift.cli import run
from hochlift.corpus import build_corpus, corpus_path
from hochlift.formats import dump_json


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    text = buf.getvalue()
    try:
        return code, json.loads(text)
    except json.JSONDecodeError:
        return code, text


def test_bundled_corpus_is_current():
    for name, obj in build_corpus().items():
        assert corpus_path(name).read_text() == dump_json(obj) + "\n", name


def test_lift_decide_positive(corpus):
    code, out = call("lift", "decide", corpus("mat2_f3.json"), corpus("conj.json"))
    assert code == 0
    assert out["liftable"] and out["lift_matrix"] is not None
    assert out["obstruction"] is None
    assert out["poisson_preserved"] is True


def test_lift_decide_negative(corpus):
    code, out = call("lift", "decide", corpus("logsymp_5_2_3.json"), corpus("y_to_ysq.json"))
    assert code == 1
    assert not out["liftable"] and out["lift_matrix"] is None
    assert out["obstruction"]["degree"] == 2 and out["obstruction"]["tensor"]
    assert out["poisson_preserved"] is False
    assert "left_certificate" in out["certificate"]


def test_lift_poisson_and_antisym(corpus):
    code, out = call("lift", "poisson", corpus("logsymp_5_2_3.json"))
    assert code == 0 and all(out["axioms"].values()) and out["center_dim"] == 6
    code, out = call("lift", "antisym", corpus("logsymp_5_2_3.json"), corpus("y_to_ysq.json"))
    assert code == 1 and out["identity_holds"] and out["defects"]


def test_algebra_commands(corpus):
    code, out = call("algebra", "validate", corpus("mat3_f2.json"))
    assert code == 0 and out == {"associative": True, "unital": True, "commutative": False}
    code, out = call("algebra", "center", corpus("f4_mat2_f4.json"))
    assert code == 0 and out["dim"] == 4


def test_hochschild_commands(corpus, tmp_path):
    code, out = call("hochschild", "dim", corpus("f2_dual.json"))
    assert code == 0 and out["hh_dim"] == {"0": 2, "1": 2, "2": 2}
    # x (x) x -> 1 is a cocycle on F_2[x]/(x^2) that is not a coboundary
    cochain = tmp_path / "c.json"
    cochain.write_text(json.dumps({"degree": 2, "tensor": [{"idx": [1, 1], "val": [1, 0]}]}))
    code, out = call("hochschild", "cocycle-check", corpus("f2_dual.json"), str(cochain))
    assert code == 0 and out["cocycle"]
    code, out = call("hochschild", "solve", corpus("f2_dual.json"), str(cochain), "--assert-formally-smooth")
    assert code == 1 and not out["solvable"] and out["symmetric"]
    assert out["formal_smoothness_contradicted"]


def test_azumaya_commands(corpus):
    code, out = call("azumaya", "check", corpus("mat2_f3_algebra.json"))
    assert code == 0 and out["separable_over_center"] and out["center_dim"] == 1
    code, out = call("azumaya", "center-preserved", corpus("f4_mat2_f4.json"), corpus("f4_mat2_f4_endo.json"))
    assert code == 1 and out["preserved"] is False and out["witness"]
    code, out = call("azumaya", "separability", corpus("mat3_f2.json"))
    assert code == 0 and out["found"] and out["projection_idempotent"]
    code, out = call("azumaya", "separability", corpus("f2_dual.json"), "--over-ground")
    assert code == 1 and not out["found"]


def test_weyl_commands(corpus):
    assert call("weyl", "endo-check", corpus("p2_example.json"))[0] == 0
    code, out = call("weyl", "decide", corpus("p2_example.json"))
    assert code == 0 and out["liftable"]
    code, out = call("weyl", "lift", corpus("p2_example.json"), "--degree-bound", "16")
    assert code == 0 and out["found"] and out["relations_verified"]
    code, out = call("weyl", "bracket-constants", "--p", "5")
    assert out["matrix"] == [[0, 1], [4, 0]]


def test_errors_are_structured(corpus, tmp_path):
    code, out = call("algebra", "validate", str(tmp_path / "missing.json"))
    assert code == 2 and out["error"]["kind"] == "input"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "coeffs": {"field": {"p": 4, "m": 1}}, "sc": []}))
    code, out = call("algebra", "validate", str(bad))
    assert code == 2 and out["error"]["kind"] == "domain"
    code, out = call("lift", "decide", corpus("mat2_f3.json"), corpus("y_to_ysq.json"))
    assert code == 2 and out["error"]["kind"] == "dimension-mismatch"
    assert call("nonsense")[0] == 2


def test_text_format(corpus):
    code, out = call("weyl", "decide", corpus("p2_example.json"), "--format", "text")
    assert code == 0
    assert "liftable: true" in out.splitlines()


def test_console_script_entry_point(corpus):
    proc = subprocess.run(
        [sys.executable, "-m", "hochlift.cli", "weyl", "decide", corpus("triangular_p3.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["liftable"]
