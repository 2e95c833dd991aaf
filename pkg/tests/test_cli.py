import json
import os
import subprocess
import sys

from coulombhs.cli import main, parse_monomial, series_from_payload, series_to_payload
from coulombhs.monopole import hilbert_series
from coulombhs.series import FugacityGroup
from coulombhs.theory import GaugeTheory, MatterWeights
from coulombhs import rootdata

import oracles


def run_cli(args, env=None):
    merged = {k: v for k, v in os.environ.items() if not k.startswith("COULOMBHS_")}
    if env:
        merged.update(env)
    return subprocess.run(
        [sys.executable, "-m", "coulombhs.cli", *args],
        capture_output=True, text=True, env=merged,
    )


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def sqcd_doc(num_flavors, options=None):
    doc = {
        "schema_version": 1,
        "name": f"sqcd-u1-{num_flavors}",
        "gauge": [{"type": "u", "n": 1}],
        "matter": {"builder": "custom", "weights": [
            {"gauge": [1], "multiplicity": num_flavors},
            {"gauge": [-1], "multiplicity": num_flavors},
        ]},
    }
    if options:
        doc["options"] = options
    return doc


def split_flavored_doc():
    return {
        "schema_version": 1,
        "name": "u1-split",
        "gauge": [{"type": "u", "n": 1}],
        "flavor": [{"type": "u", "n": 1}],
        "matter": {"builder": "custom", "weights": [
            {"gauge": [1], "flavor": [1]},
            {"gauge": [-1], "flavor": [-1]},
            {"gauge": [1], "flavor": [0]},
            {"gauge": [-1], "flavor": [0]},
        ]},
    }


def test_hilbert_sqcd_closed_form(tmp_path):
    path = write(tmp_path, "sqcd.json", sqcd_doc(4, {"cutoff": 20}))
    result = run_cli(["hilbert", path, "--format", "json"])
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    numerator = [1] + [0] * 7 + [-1]
    expected = oracles.expand_rational(numerator, [2, 4, 4], 20)
    for k, value in enumerate(expected):
        row = payload["coefficients"].get(str(k), {})
        assert row.get("1", 0) == value


def test_classify_bad_exits_2(tmp_path):
    doc = {
        "schema_version": 1,
        "gauge": [{"type": "su", "n": 2}],
        "matter": {"builder": "custom", "weights": []},
    }
    path = write(tmp_path, "pure_su2.json", doc)
    result = run_cli(["classify", path])
    assert result.returncode == 2
    assert "Bad" in result.stdout
    assert "(1,)" in result.stdout and "-4" in result.stdout


def test_hilbert_bad_theory_refused(tmp_path):
    doc = {
        "schema_version": 1,
        "gauge": [{"type": "su", "n": 2}],
        "matter": {"builder": "custom", "weights": []},
    }
    path = write(tmp_path, "pure_su2.json", doc)
    result = run_cli(["hilbert", path])
    assert result.returncode == 2
    assert "witness" in result.stderr


def test_empty_gauge_is_one(tmp_path):
    doc = {
        "schema_version": 1,
        "gauge": [],
        "matter": {"builder": "custom", "weights": []},
    }
    path = write(tmp_path, "empty.json", doc)
    result = run_cli(["hilbert", path])
    assert result.returncode == 0
    assert result.stdout.splitlines()[0] == "1"


def test_schema_violations_exit_1(tmp_path):
    bad_docs = [
        {"schema_version": 2, "gauge": [], "matter": {"builder": "custom", "weights": []}},
        {"schema_version": 1, "gauge": [], "matter": {"builder": "nope"}},
        {"schema_version": 1, "gauge": [], "matter": {"builder": "custom", "weights": []},
         "surprise": 1},
        {"schema_version": 1, "matter": {"builder": "custom", "weights": []}},
        {"schema_version": 1, "gauge": [{"type": "u", "n": 1}],
         "matter": {"builder": "custom",
                    "weights": [{"gauge": [1], "multiplicity": 1}]}},
    ]
    for i, doc in enumerate(bad_docs):
        path = write(tmp_path, f"bad{i}.json", doc)
        result = run_cli(["hilbert", path])
        assert result.returncode == 1, (doc, result.stderr)
    result = run_cli(["hilbert", str(tmp_path / "missing.json")])
    assert result.returncode == 1


def test_usage_errors_exit_1():
    result = run_cli(["hilbert"])
    assert result.returncode == 1


def test_quiver_builder_forbids_gauge_field(tmp_path):
    doc = {
        "schema_version": 1,
        "gauge": [{"type": "u", "n": 2}],
        "matter": {"builder": "quiver", "vertices": ["v"], "edges": [["v", "v"]],
                   "dims": {"v": 2}},
    }
    path = write(tmp_path, "quiver.json", doc)
    result = run_cli(["hilbert", path])
    assert result.returncode == 1
    assert "builder determines" in result.stderr


def test_json_round_trip(tmp_path):
    doc = sqcd_doc(2, {"cutoff": 8, "refine": "pi1"})
    path = write(tmp_path, "sqcd2.json", doc)
    result = run_cli(["hilbert", path, "--format", "json"])
    payload = json.loads(result.stdout)
    matter = MatterWeights(1, 0, [((1,), (), 2), ((-1,), (), 2)])
    th = GaugeTheory(rootdata.torus(1), matter)
    expected = hilbert_series(th, 8, refine_pi1=True)
    assert series_from_payload(payload) == expected


def test_round_trip_with_torsion_group():
    group = FugacityGroup(free_rank=1, torsion_orders=(2,))
    from coulombhs.series import TruncatedSeries

    series = TruncatedSeries.from_dicts(
        4, group, [{(0, 0): 1}, {(2, 1): 3}, {(-1, 0): 7}]
    )
    assert series_from_payload(series_to_payload(series)) == series
    assert parse_monomial(group, "z1^2*w1") == (2, 1)
    assert parse_monomial(group, "1") == (0, 0)


def test_determinism_across_runs_and_workers(tmp_path):
    doc = {
        "schema_version": 1,
        "matter": {"builder": "quiver", "vertices": ["v"], "edges": [["v", "v"]],
                   "dims": {"v": 2}, "framing": {"v": 2}},
        "options": {"cutoff": 8, "refine": "pi1"},
    }
    path = write(tmp_path, "jordan.json", doc)
    runs = [
        run_cli(["hilbert", path, "--format", "json"]),
        run_cli(["hilbert", path, "--format", "json"]),
        run_cli(["hilbert", path, "--format", "json", "--workers", "2"]),
        run_cli(["hilbert", path, "--format", "json", "--workers", "3"]),
    ]
    outs = {r.stdout for r in runs}
    assert all(r.returncode == 0 for r in runs)
    assert len(outs) == 1


def test_option_precedence_flag_env_file(tmp_path):
    path = write(tmp_path, "sqcd.json", sqcd_doc(1, {"cutoff": 6}))

    result = run_cli(["hilbert", path])
    assert "t^6" in result.stdout and "t^7" not in result.stdout

    result = run_cli(["hilbert", path], env={"COULOMBHS_CUTOFF": "4"})
    assert "t^4" in result.stdout and "t^6" not in result.stdout

    result = run_cli(["hilbert", path, "--cutoff", "2"],
                     env={"COULOMBHS_CUTOFF": "4"})
    assert "t^2" in result.stdout and "t^4" not in result.stdout

    # built-in default when nothing else is given
    bare = write(tmp_path, "bare.json", sqcd_doc(1))
    result = run_cli(["hilbert", bare])
    assert "t^20" in result.stdout


def test_csv_format(tmp_path):
    path = write(tmp_path, "sqcd.json", sqcd_doc(1, {"cutoff": 2, "refine": "pi1"}))
    result = run_cli(["hilbert", path, "--format", "csv"])
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "t_exponent,fugacity_monomial,coefficient"
    assert "1,z1,1" in lines
    assert "1,z1^-1,1" in lines


def test_refine_flavor_needs_flux(tmp_path):
    path = write(tmp_path, "split.json", split_flavored_doc())
    result = run_cli(["hilbert", path, "--refine", "flavor", "--cutoff", "5"])
    assert result.returncode == 1
    result = run_cli(["hilbert", path, "--refine", "flavor", "--cutoff", "5",
                      "--lambda-f", "1"])
    assert result.returncode == 0
    assert result.stdout.splitlines()[0].startswith("2*t")


def test_glue_command(tmp_path):
    path = write(tmp_path, "split.json", split_flavored_doc())
    result = run_cli(["glue", path, path, "--cutoff", "4"])
    assert result.returncode == 0
    assert result.stdout.splitlines()[0] == "1 + 15*t^2 + 84*t^4"


def test_abelian_ring_command(tmp_path):
    doc = {
        "schema_version": 1,
        "matter": {"builder": "abelian", "alpha": [[1], [1], [1]]},
        "options": {"cutoff": 8},
    }
    path = write(tmp_path, "abelian.json", doc)
    result = run_cli(["abelian-ring", path])
    assert result.returncode == 0
    assert "z^(1) * z^(-1) = eta1^3" in result.stdout
    assert "graded dimensions" in result.stdout


def test_so_instanton_builder(tmp_path):
    doc = {
        "schema_version": 1,
        "matter": {"builder": "so_instanton", "N": 6, "k": 1},
        "options": {"cutoff": 6},
    }
    path = write(tmp_path, "inst.json", doc)
    result = run_cli(["hilbert", path])
    assert result.returncode == 0
    result = run_cli(["classify", path])
    assert result.returncode == 0 and "Good" in result.stdout


def test_refine_both(tmp_path):
    path = write(tmp_path, "split.json", split_flavored_doc())
    result = run_cli(["hilbert", path, "--refine", "both", "--cutoff", "5",
                      "--lambda-f", "1", "--format", "csv"])
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    # charges m = 0 and m = -1 both have dimension 1 under this flux
    assert "1,1,1" in lines and "1,z1^-1,1" in lines


def test_motivic_and_symprod_commands():
    result = run_cli(["motivic-check", "--group", "u", "--n", "2", "--box", "2"])
    assert result.returncode == 0
    assert "15/15" in result.stdout

    result = run_cli(["symprod-check", "--flavors", "2", "--order-t", "6",
                      "--order-lambda", "2"])
    assert result.returncode == 0
    assert "largest coefficient gap: 0" in result.stdout


def test_main_callable_in_process(tmp_path, capsys):
    path = write(tmp_path, "sqcd.json", sqcd_doc(1, {"cutoff": 4}))
    assert main(["hilbert", path]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("1 + 2*t")
