#!/usr/bin/env python3
"""CLI contract: piping, exit codes and report schemas, run against the built binary.

usage: cli_contract.py AEQ_BINARY SCHEMA_DIR DATA_DIR
"""
import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

aeq, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

resources = []
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)
validators = {}

failures = []
checks = 0


def check(ok, what):
    global checks
    checks += 1
    if not ok:
        failures.append(what)


def run(args, stdin="", env=None):
    full_env = dict(os.environ, **(env or {}))
    return subprocess.run([aeq, *args], input=stdin, capture_output=True, text=True, env=full_env)


def report(args, stdin="", expect_code=0, env=None):
    proc = run(args, stdin, env)
    label = "aeq " + " ".join(args)
    check(proc.returncode == expect_code, f"{label}: exit {proc.returncode}, expected {expect_code}\n{proc.stderr}")
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError:
        check(False, f"{label}: stdout is not JSON")
        return None
    command = doc.get("command", "")
    if command not in validators:
        schema = registry.contents(f"{command}.schema.json")
        validators[command] = jsonschema.Draft202012Validator(schema, registry=registry)
    errors = sorted(validators[command].iter_errors(doc), key=lambda e: e.path)
    check(not errors, f"{label}: schema violation: {errors[0].message if errors else ''}")
    return doc


# construct | verify and construct | certify for every kind and dimension.
for kind, dims in (("simplex", range(1, 31)), ("two-simplices", range(1, 31)), ("rosenfeld", range(2, 31))):
    for d in dims:
        built = run(["construct", "--kind", kind, "--dim", str(d)])
        check(built.returncode == 0, f"construct {kind} d={d}: exit {built.returncode}")
        verified = report(["verify", "--input", "-"], built.stdout)
        if verified:
            check(verified["outcome"] == "pass", f"verify {kind} d={d}: {verified['outcome']}")
        certified = report(["certify", "--input", "-"], built.stdout)
        if certified:
            check(certified["outcome"] == "pass", f"certify {kind} d={d}: {certified['outcome']}")
            check(certified["payload"]["count_gt_one"] <= 1, f"certify {kind} d={d}: count_gt_one")

lifted = report(["construct", "--kind", "two-simplices", "--dim", "4", "--lift"])
check(lifted["payload"]["point_set"]["dim"] == 5, "lifted dimension")

# Exit codes.
bad = json.dumps({"dim": 3, "mode": "exact", "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})
doc = report(["verify", "--input", "-"], bad, expect_code=1)
check(doc and doc["payload"]["witness"]["triple"] == [0, 1, 2], "witness triple")
report(["verify", "--input", "-"], '{"dim": 2, "points": []}', expect_code=2)
report(["verify", "--input", "-"], '{"dim": 2, "points": [[0, 0], [1]]}', expect_code=2)
report(["construct", "--kind", "cube", "--dim", "2"], expect_code=2)
check(run(["construct", "--dim", "2"]).returncode == 2, "missing --kind exits 2")
check(run(["no-such-command"]).returncode == 2, "unknown subcommand exits 2")
check(run(["--help"]).returncode == 0, "--help exits 0")
infeasible = report(["search", "--dim", "2", "--n", "8", "--restarts", "8"], expect_code=1)
check(infeasible and infeasible["outcome"] == "infeasible", "infeasible search outcome")

# Remaining commands validate against their schemas.
feasible = report(["search", "--dim", "2", "--n", "7"])
check(feasible["payload"]["feasible"], "7-point planar search")
report(["certify", "--input", "-"], json.dumps(feasible))
report(["search", "--dim", "2", "--probe", "--restarts", "8"])
for args in (["--theorem", "sphere", "--dim", "3", "--radius", "0.5"],
             ["--theorem", "diameter", "--dim", "3"],
             ["--theorem", "ball", "--dim", "3", "--c0", "0.25"]):
    report(["bounds", *args])
rosenfeld = run(["construct", "--kind", "rosenfeld", "--dim", "5"]).stdout
general = report(["bounds", "--theorem", "general", "--input", "-"], rosenfeld)
check(general["payload"]["bound"] == 10, "general bound on the critical sphere is 2d")
report(["pipeline", "--input", "-"], rosenfeld)
report(["pipeline", "--input", "-", "--diameter"], rosenfeld, expect_code=1)
graphs = str(data_dir / "triangle_free_le8.txt")
tdrank = report(["tdrank", "--n", "5", "--graphs", graphs, "--exact"])
check(tdrank["payload"]["min_rank"] == 3, "tdrank n=5 min rank")

with tempfile.TemporaryDirectory() as tmp:
    a, b = pathlib.Path(tmp, "a.json"), pathlib.Path(tmp, "b.json")
    a.write_text("[[2, 1], [1, 2]]")
    b.write_text("[[0, 1], [1, 0]]")
    report(["weyl", "--a", str(a), "--b", str(b)])
    report(["perron", "--matrix", str(a)])
    report(["gershgorin", "--matrix", str(b)])
    report(["perron", "--matrix", "-"], "[[-1, 0], [0, 1]]", expect_code=1)
    out = pathlib.Path(tmp, "out.json")
    proc = run(["construct", "--kind", "simplex", "--dim", "3", "--out", str(out)])
    check(out.exists() and json.loads(out.read_text()) == json.loads(proc.stdout), "--out mirrors stdout")

# CSV output and thread override.
csv = run(["--format", "csv", "construct", "--kind", "simplex", "--dim", "2"]).stdout.strip().splitlines()
check(len(csv) >= 3 and all(len(line.split(",")) == 2 for line in csv if not line.startswith("#")), "construct csv")
threads = report(["verify", "--input", "-"], run(["construct", "--kind", "simplex", "--dim", "2"]).stdout,
                 env={"AEQ_THREADS": "3"})
check(threads["inputs"]["threads"] == 3, "AEQ_THREADS override")

for f in failures:
    print("FAIL", f)
print(f"{checks - len(failures)} of {checks} contract checks passed")
sys.exit(1 if failures else 0)
