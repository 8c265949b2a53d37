"""End-to-end tests for the orbitlab commands, output files and exit codes."""

import csv
import io
import json
import os
import sys
import tempfile

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from database import DatabaseManager
from orbitlab import __version__, commands
from orbitlab.errors import CapExceededError, ConfigError, ParseError
from services import ExperimentService, exit_code_for, map_dimension

import main as cli

CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "configs")
TMP = tempfile.mkdtemp(prefix="orbitlab-test-")


def write_config(name: str, config) -> str:
    path = os.path.join(TMP, name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(config if isinstance(config, str) else json.dumps(config))
    return path


def shipped(name: str) -> str:
    return os.path.join(CONFIG_DIR, name)


def run(command: str, config_path: str, seed=None, workers: int = 1):
    buffer = io.StringIO()
    result = ExperimentService(workers=workers).run(command, config_path, None, seed, stream=buffer)
    return result, buffer.getvalue()


def rows(text: str):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(body))


def test_degrees_csv_and_header():
    print("Testing degrees on the Cremona involution...")
    result, text = run("degrees", shipped("cremona.json"))
    assert result["exit_code"] == 0, result
    lines = text.split("\n")
    assert lines[0] == f"# orbitlab {__version__}"
    assert lines[1] == "# command: degrees"
    assert lines[2].startswith("# config_hash: ") and len(lines[2].split(": ")[1]) == 64
    assert lines[3] == "# rng_seed: 0"
    assert lines[4] == "n,deg,deg_root,ratio"
    table = rows(text)
    assert [int(r["deg"]) for r in table] == [1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1]
    assert table[2]["ratio"] == "0.5"
    print("✅ d_n = 1, 2, 1, 2, ... with a provenance header")


def test_determinism_and_seed_override():
    print("\nTesting byte-identical reruns...")
    _, first = run("search", shipped("fibonacci.json"))
    _, second = run("search", shipped("fibonacci.json"))
    assert first == second

    result, reseeded = run("search", shipped("fibonacci.json"), seed=2**64 - 1)
    assert f"# rng_seed: {2**64 - 1}" in reseeded.split("\n")
    assert result["config_hash"] not in first
    print("✅ Same config and seed give the same bytes")


def test_out_file_line_endings():
    print("\nTesting output files...")
    out = os.path.join(TMP, "degrees.csv")
    buffer = io.StringIO()
    result = ExperimentService().run("degrees", shipped("cat_map.json"), out, None, stream=buffer)
    assert result["exit_code"] == 0
    assert buffer.getvalue() == ""
    with open(out, "rb") as f:
        data = f.read()
    assert b"\r" not in data
    assert data.decode("utf-8") == result["output"]
    degs = [int(r["deg"]) for r in rows(result["output"])]
    assert degs[:4] == [1, 3, 8, 21]
    print(f"✅ {out} written with LF line endings")


def test_worker_fan_out_is_ordered():
    print("\nTesting worker fan-out order...")
    config = write_config("verify2.json", {
        "params": {"samples": 12, "seed": 5, "verify": {"dim": 2, "entry_bound": 1, "horizon": 100}},
    })
    single, a = run("verify", config, workers=1)
    pooled, b = run("verify", config, workers=2)
    assert single["exit_code"] == pooled["exit_code"] == 0, single.get("error")
    assert a == b
    print("✅ Two workers reproduce the single-process table")


def test_exit_codes():
    print("\nTesting exit codes...")
    bad_poly = write_config("bad_poly.json", {
        "map": {"kind": "homogeneous", "n": 1, "coords": ["x0 + * x1", "x1^2"]},
    })
    assert run("degrees", bad_poly)[0]["exit_code"] == 2

    bad_json = write_config("bad_json.json", '{"map": {"kind": "named",,}}')
    result, _ = run("degrees", bad_json)
    assert result["exit_code"] == 2 and "line 1" in result["error"]

    assert run("degrees", os.path.join(TMP, "missing.json"))[0]["exit_code"] == 1
    assert run("bogus", shipped("cremona.json"))[0]["exit_code"] == 1

    lambda2 = write_config("lambda2.json", {
        "map": {"kind": "homogeneous", "n": 2, "coords": ["x1*x2", "x0*x2", "x0*x1"]},
        "params": {"indices": [2]},
    })
    assert run("dyndeg", lambda2)[0]["exit_code"] == 1

    bad_seed = write_config("bad_seed.json", {"map": {"kind": "named", "name": "cat"}, "params": {"seed": -3}})
    assert run("orbit", bad_seed)[0]["exit_code"] == 1
    print("✅ Usage 1, parse 2")


def test_caps_exit_three():
    print("\nTesting cap exits...")
    config = write_config("capped.json", {
        "map": {"kind": "homogeneous", "n": 2, "coords": ["x0^2 + x1^2", "x1^2", "x2^2"]},
        "params": {"horizon": 6},
    })
    os.environ["ORBITLAB_TERM_CAP"] = "3"
    try:
        result, text = run("degrees", config)
    finally:
        del os.environ["ORBITLAB_TERM_CAP"]
    assert result["exit_code"] == 3
    assert [int(r["deg"]) for r in rows(text)] == [1, 2]

    os.environ["ORBITLAB_BIT_CAP"] = "64"
    try:
        result, text = run("orbit", shipped("power.json"))
    finally:
        del os.environ["ORBITLAB_BIT_CAP"]
    assert result["exit_code"] == 3
    assert rows(text)[-1]["status"].startswith("truncated-at(")
    print("✅ Truncated output is kept and flagged with exit 3")


def test_zdo_json():
    print("\nTesting zdo reports...")
    result, text = run("zdo", shipped("fibonacci.json"))
    assert result["exit_code"] == 0
    document = json.loads(text)
    assert document["report"]["verdict"] == "criterion-satisfied"
    assert document["report"]["birational"] is True
    assert document["provenance"]["command"] == "zdo"

    swap = write_config("swap.json", {"map": {"kind": "monomial", "matrix": [[0, 1], [1, 0]]}})
    assert json.loads(run("zdo", swap)[1])["report"]["verdict"] == "criterion-fails"

    assert run("zdo", shipped("cremona.json"))[0]["exit_code"] == 1
    print("✅ Fibonacci map satisfies the criterion, the swap does not")


def test_alpha_and_orbit_on_cycle():
    print("\nTesting alpha and return sets on sigma([2:1:3])...")
    result, text = run("alpha", shipped("cremona.json"))
    assert result["exit_code"] == 0
    row = rows(text)[0]
    assert (row["slope"], row["cesaro"]) == ("1", "1")
    assert row["status"] == "periodic(2, 0)"

    result, text = run("orbit", shipped("cremona.json"))
    assert result["exit_code"] == 0
    table = rows(text)
    assert len(table) == 11
    assert [int(r["n"]) for r in table if r["in_return_set"] == "true"] == [0, 2, 4, 6, 8, 10]
    assert result["summary"]["return_sets"][0]["progressions"] == [[0, 2]]
    print("✅ Periodic orbit has alpha 1 and returns every other step")


def test_alpha_classes_on_monomial_map():
    print("\nTesting alpha classes on the cat map...")
    result, text = run("alpha", shipped("cat_map.json"))
    assert result["exit_code"] == 0
    row = rows(text)[0]
    assert row["alpha_class"] == "mu1"
    print(f"✅ alpha = {row['slope']} is classified as mu1")


def test_interpolate_and_search():
    print("\nTesting interpolate and search...")
    result, text = run("interpolate", shipped("criterion3.json"))
    assert result["exit_code"] == 0
    assert result["summary"]["kernel_dims"] == [0, 0, 0]
    assert [r["n_points"] for r in rows(text)] == ["40", "40", "40"]

    result, text = run("search", shipped("fibonacci.json"))
    assert result["exit_code"] == 0
    assert result["summary"]["hits"] > 0
    assert len(rows(text)) + result["summary"]["rejected"] == 20
    print(f"✅ {result['summary']['hits']} search hits, no interpolating forms")


def test_verify_passes():
    print("\nTesting verify...")
    config = write_config("verify_small.json", {
        "params": {"samples": 20, "seed": 11, "m_max": 3,
                   "verify": {"dim": 2, "entry_bound": 1, "horizon": 100}},
    })
    result, text = run("verify", config)
    assert result["exit_code"] == 0, result.get("error")
    table = rows(text)
    assert table and all(r["law_violations"] == "0" for r in table)
    assert len(table) + result["summary"]["skipped_singular"] == 20
    print(f"✅ {len(table)} matrices verified")


def test_verify_three_by_three():
    print("\nTesting verify on random 3x3 matrices...")
    result, text = run("verify", shipped("verify.json"))
    assert result["exit_code"] == 0, result.get("error")
    table = rows(text)
    assert len(table) + result["summary"]["skipped_singular"] == 20
    assert all(len(json.loads(r["matrix"])) == 3 for r in table)
    assert all(r["alpha_bound_ok"] == "true" for r in table)

    defaults = write_config("verify_defaults.json", {"params": {"seed": 0}})
    result, text = run("verify", defaults)
    assert result["exit_code"] == 0, result.get("error")
    assert len(rows(text)) + result["summary"]["skipped_singular"] == 100
    print(f"✅ {len(table)} shipped and {len(rows(text))} default matrices pass")


def test_property_failures_exit_four():
    print("\nTesting property failures...")
    config = write_config("verify_strict.json", {
        "params": {"samples": 4, "seed": 3, "verify": {"dim": 2, "entry_bound": 1, "horizon": 40}},
    })
    original = commands.check_alpha_bound
    commands.check_alpha_bound = lambda rec, lam1, slack: original(rec, lam1, -1.0)
    try:
        result, text = run("verify", config)
    finally:
        commands.check_alpha_bound = original
    assert result["exit_code"] == 4
    assert "property violations" in result["error"]
    assert rows(text) and all(r["alpha_bound_ok"] == "false" for r in rows(text))

    assert exit_code_for(ParseError("x", line=1, column=2)) == 2
    assert exit_code_for(CapExceededError("term cap")) == 3
    assert exit_code_for(ConfigError("bad")) == 1
    print("✅ Failed checks keep the table and exit 4")


def test_recorded_map_dimension():
    print("\nTesting map dimensions in the ledger...")
    db = DatabaseManager(os.path.join(TMP, "maps.db"))
    db.initialize()
    service = ExperimentService(db_manager=db, workers=1)
    for name, n in (("cat_map.json", 2), ("fibonacci.json", 2), ("cremona.json", 2)):
        config = service.config_service.merge_with_defaults(service.config_service.load(shipped(name)))
        result = service.run_config("degrees", config, os.path.join(TMP, "dims.csv"))
        assert result["exit_code"] == 0, result.get("error")
        entry = db.get_map_by_hash(service.config_service.map_hash(config))
        assert entry is not None and entry.dimension == n, (name, entry and entry.dimension)

    assert map_dimension({"kind": "named", "name": "cat"}) == 2
    assert map_dimension({"kind": "monomial", "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}) == 3
    assert map_dimension({"kind": "named", "name": "no-such-map"}) == 0
    print("✅ Named maps are catalogued with their dimension")


def test_main_entry_point():
    print("\nTesting the command-line entry point...")
    out = os.path.join(TMP, "zdo.json")
    db_path = os.path.join(TMP, "ledger.db")
    os.environ["ORBITLAB_DB_PATH"] = db_path
    try:
        for argv, expected in (
            (["nonsense", "--config", shipped("cremona.json")], 1),
            (["degrees"], 1),
            (["degrees", "--config", shipped("cremona.json"), "--seed", "-1"], 1),
            (["degrees", "--config", shipped("cremona.json"), "--workers", "0"], 1),
            (["zdo", "--config", shipped("fibonacci.json"), "--out", out, "--record"], 0),
        ):
            try:
                cli.main(argv)
                raise AssertionError(f"{argv} did not exit")
            except SystemExit as e:
                assert e.code == expected, (argv, e.code)
    finally:
        del os.environ["ORBITLAB_DB_PATH"]

    runs = DatabaseManager(db_path).list_runs()
    assert len(runs) == 1 and runs[0].command == "zdo" and runs[0].rng_seed == 7
    assert runs[0].summary["verdict"] == "criterion-satisfied"
    print("✅ argparse errors exit 1 and --record writes the ledger")


def main():
    """Run all tests."""
    print("=" * 50)
    print("orbitlab - Command Tests")
    print("=" * 50)

    tests = [
        test_degrees_csv_and_header,
        test_determinism_and_seed_override,
        test_out_file_line_endings,
        test_worker_fan_out_is_ordered,
        test_exit_codes,
        test_caps_exit_three,
        test_zdo_json,
        test_alpha_and_orbit_on_cycle,
        test_alpha_classes_on_monomial_map,
        test_interpolate_and_search,
        test_verify_passes,
        test_verify_three_by_three,
        test_property_failures_exit_four,
        test_recorded_map_dimension,
        test_main_entry_point,
    ]
    try:
        for test in tests:
            test()
        print("\n" + "=" * 50)
        print("✅ All tests passed!")
        print("=" * 50)
    except Exception as e:
        print(f"\n❌ Test failed with error: {e}")
        import traceback

        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
