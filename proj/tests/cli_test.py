"""End-to-end checks of the fano-rigidity command line.

Usage: cli_test.py <fano-rigidity binary> <report schema>
Covers exit codes, schema validity of every JSON report, byte-identical
reruns, candidate files, and the text rendering of every computed value.
"""
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BINARY, SCHEMA = sys.argv[1], sys.argv[2]
failures = []


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True)


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


with open(SCHEMA) as f:
    validator = jsonschema.Draft202012Validator(json.load(f))

VERIFY = [
    (["#25"], 0),
    (["#166"], 2),
    (["#166", "--isolating-product", "20"], 0),
    (["#282"], 2),
    (["#282", "--format", "g2"], 0),
    (["#282", "--format", "c2"], 0),
    (["#282", "--format", "c2", "--no-q-in-s6"], 2),
    (["#308"], 0),
    (["#25", "--automatic"], 0),
    (["#308", "--automatic"], 2),
]
for args, code in VERIFY:
    label = " ".join(args)
    first = run("verify", *args, "--json")
    expect(first.returncode == code, f"verify {label} exits {code} (got {first.returncode})")
    report = json.loads(first.stdout)
    errors = list(validator.iter_errors(report))
    expect(not errors, f"verify {label} report validates against the schema"
           + (f": {errors[0].message}" if errors else ""))
    expect(run("verify", *args, "--json").stdout == first.stdout, f"verify {label} JSON is byte-identical on rerun")
    text = run("verify", *args)
    expect(text.returncode == code, f"verify {label} text mode exits {code}")
    expect(run("verify", *args).stdout == text.stdout, f"verify {label} text is byte-identical on rerun")

    def values(v):
        yield from v["values"]
        for b in v.get("branches", []):
            yield from values(b["verdict"])
    missing = [nv for c in report["centers"] for nv in values(c) if f"{nv['name']} = {nv['value']}" not in text.stdout]
    expect(not missing, f"verify {label} text shows every computed value")

r282 = json.loads(run("verify", "#282", "--json").stdout)
expect(r282["unresolved"] == ["1/6(1,1,5)"], "#282 numeric-only is unresolved exactly at 1/6(1,1,5)")
c2 = json.loads(run("verify", "#282", "--format", "c2", "--json").stdout)
statements = " | ".join(a["statement"] for a in c2["assumptions"])
expect("S6 = q" in statements and "general" in statements, "c2 ledger lists q in S6 and generality")

timed = run("verify", "#308", "--json", "--timing")
t = json.loads(timed.stdout).get("timing", {}).get("seconds")
expect(t is not None and t < 10, f"--timing reports the run time ({t} s)")
expect(not list(validator.iter_errors(json.loads(timed.stdout))), "timed report validates")

OTHER = [
    (["list"], 0),
    (["verify", "#1"], 1),
    (["verify", "#29374"], 1),
    (["verify", "/nonexistent/candidate.json"], 1),
    (["verify", "#25", "--format", "g2"], 1),
    (["verify", "#25", "--json", "--text"], 1),
    (["verify", "#25", "--isolating-product", "0"], 1),
    (["verify", "#25", "--bogus"], 1),
    (["explain", "#25", "1/5"], 0),
    (["explain", "#25", "1/7(1,2,5)"], 0),
    (["explain", "#25", "1/4"], 1),
    (["explain", "#282", "1/6"], 2),
    (["explain", "#282", "1/6", "--format", "g2"], 0),
    (["explain", "#166", "smooth-points"], 2),
    (["export-equations", "g2"], 0),
    (["export-equations", "c2"], 0),
    (["export-equations", "x3"], 1),
    ([], 1),
]
for args, code in OTHER:
    got = run(*args).returncode
    expect(got == code, f"{' '.join(args) or '(no arguments)'} exits {code} (got {got})")

expect("assumptions:" in run("explain", "#282", "1/6", "--format", "c2").stdout, "explain lists the ledger")

CAND = {
    "id": "#25",
    "weights": [{"name": n, "weight": w} for n, w in zip("pqrstuvw", [2, 5, 6, 7, 8, 9, 10, 11])],
    "eq_degrees": [16, 17, 18, 18, 19, 20, 20, 21, 22],
    "k3": {"num": 1, "den": 70},
    "basket": [{"r": 2, "a": 1, "count": 7}, {"r": 5, "a": 1, "count": 1}, {"r": 7, "a": 2, "count": 1}],
}
with tempfile.TemporaryDirectory() as d:
    def write(name, obj):
        path = os.path.join(d, name)
        with open(path, "w") as f:
            f.write(obj if isinstance(obj, str) else json.dumps(obj, indent=2))
        return path

    same = json.loads(run("verify", write("c25.json", CAND), "--json").stdout)
    expect(same["strategy"] == "scripted" and same["verdict"] == "SUPERRIGID",
           "a candidate file carrying registry data gets the scripted strategy")
    user = dict(CAND, id="user-25")
    res = run("verify", write("user.json", user), "--json")
    expect(res.returncode == 0 and json.loads(res.stdout)["strategy"] == "automatic",
           "a user candidate gets the automatic strategy")
    bad = dict(CAND, basket=[{"r": 4, "a": 2, "count": 1}])
    res = run("verify", write("bad.json", bad))
    expect(res.returncode == 1 and "non-terminal" in res.stderr, "a non-terminal basket entry is an input error")
    res = run("verify", write("broken.json", '{"id": "x",\n "weights": ['))
    expect(res.returncode == 1 and "line 2" in res.stderr, "malformed JSON reports the line")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
