import io
import json

import pytest

from recenters.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_SINGULAR, run
from recenters.symmetry import make_dj
from recenters.tensor import dump, flip


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_centrality_critical_passes():
    code, text = call("centrality", "--symmetry", "dj:2:2", "--flavor", "trig", "--charge", "critical", "--k", "1")
    rep = json.loads(text)
    assert code == EXIT_OK and rep["passed"]
    rec = rep["checks"][0]
    for key in ("check", "braiding", "birank", "charge", "points", "residual_zero", "residual_norm_terms", "elapsed_ms"):
        assert key in rec
    assert rec["residual_zero"] and rec["charge"] == "16/1" and rec["condition_agrees"]
    assert len(rep["checks"]) == 3


def test_centrality_one_fails():
    code, text = call("centrality", "--symmetry", "dj:2:2", "--flavor", "trig", "--charge", "one", "--k", "1")
    assert code == EXIT_FAIL
    assert not json.loads(text)["checks"][0]["residual_zero"]


def test_charge_value_forms():
    for charge in ("value 5/3", "5/3"):
        code, text = call("centrality", "--symmetry", "dj:2:2", "--charge", charge, "--samples", "1")
        assert code == EXIT_FAIL and json.loads(text)["checks"][0]["charge"] == "5/3"


def test_birank_json():
    code, text = call("birank", "--symmetry", "superflip:1|1")
    rep = json.loads(text)
    assert code == EXIT_OK and (rep["m"], rep["n"]) == (1, 1) and rep["dims"][:3] == [1, 2, 2]


def test_reports_deterministic(monkeypatch):
    monkeypatch.setenv("RE_CENTERS_SEED", "17")
    a = json.loads(call("push-through", "--symmetry", "dj:2:2", "--k", "2", "--samples", "2")[1])
    b = json.loads(call("push-through", "--symmetry", "dj:2:2", "--k", "2", "--samples", "2")[1])
    for rep in (a, b):
        for c in rep["checks"]:
            c.pop("elapsed_ms")
    assert a == b and a["seed"] == 17 and a["passed"]


def test_identity_subcommand():
    code, text = call("identity-4-3", "--symmetry", "dj:2:2", "--k", "2", "--samples", "1")
    rec = json.loads(text)["checks"][0]
    assert code == EXIT_OK and rec["residual_zero"] and not rec["commutator_zero"]
    code, _ = call("identity-4-3", "--symmetry", "dj:2:2", "--k", "1", "--samples", "1", "--coefficient", "linear")
    assert code == EXIT_FAIL


def test_higher_centrality_unasserted_for_dj():
    code, text = call("centrality", "--symmetry", "dj:2:2", "--k", "2", "--samples", "1")
    rec = json.loads(text)["checks"][0]
    assert code == EXIT_OK and rec["asserted"] is False


def test_check_symmetry_and_csv():
    code, text = call("check-symmetry", "--symmetry", "qsuper:1|1:2", "--csv")
    lines = text.strip().splitlines()
    assert code == EXIT_OK and lines[0].startswith("check,braiding") and len(lines) == 8


def test_baxterize_check():
    code, text = call("baxterize-check", "--symmetry", "flip:2", "--samples", "2", "--seed", "3")
    rep = json.loads(text)
    assert code == EXIT_OK and rep["seed"] == 3 and len(rep["checks"]) == 4


def test_catalog():
    code, text = call("catalog")
    names = [row["name"] for row in json.loads(text)["catalog"]]
    assert code == EXIT_OK and "dj:2:2" in names


def test_custom_matrix(tmp_path):
    path = tmp_path / "r.txt"
    dump(make_dj(2, 3).R, path)
    code, text = call("check-symmetry", "--matrix", str(path), "--kind", "hecke", "--q", "3")
    assert code == EXIT_OK
    dump(flip(2), path)
    code, _ = call("birank", "--matrix", str(path), "--kind", "involutive")
    assert code == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        ("birank", "--symmetry", "nope"),
        ("birank",),
        ("check-symmetry", "--matrix", "/nonexistent/file"),
        ("centrality", "--symmetry", "flip:2", "--flavor", "trig"),
        ("centrality", "--symmetry", "dj:2:2", "--k", "0"),
    ],
)
def test_input_errors(argv):
    assert call(*argv)[0] == EXIT_INPUT


def test_singular_exit(monkeypatch):
    from recenters import cli
    from recenters.nc import SpecialParameterError

    def boom(*a, **k):
        raise SpecialParameterError("forced")

    monkeypatch.setattr(cli, "resampled", boom)
    assert call("push-through", "--symmetry", "dj:2:2")[0] == EXIT_SINGULAR


def test_bad_seed_env(monkeypatch):
    monkeypatch.setenv("RE_CENTERS_SEED", "x")
    assert call("centrality", "--symmetry", "dj:2:2")[0] == EXIT_INPUT


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["centrality", "--k", "x"])
    assert exc.value.code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == EXIT_INPUT
