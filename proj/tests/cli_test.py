"""End-to-end checks of the gw CLI: JSON reports validate against the schema,
exit codes follow 0 pass / 1 fail / 2 error, and a few known values come out."""

import json
import subprocess
import sys
import tempfile

import jsonschema

GW, SCHEMA = sys.argv[1], sys.argv[2]

with open(SCHEMA) as f:
    validator = jsonschema.Draft202012Validator(json.load(f))

failures = []


def run(args, code):
    proc = subprocess.run([GW, "--json", *args], capture_output=True, text=True)
    label = " ".join(args)
    if proc.returncode != code:
        failures.append(f"{label}: exit {proc.returncode}, wanted {code}\n{proc.stderr}")
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{label}: output is not JSON ({e})\n{proc.stdout[:400]}")
        return {}
    for err in validator.iter_errors(doc):
        failures.append(f"{label}: schema violation at {list(err.absolute_path)}: {err.message}")
    return doc


def expect(label, got, want):
    if got != want:
        failures.append(f"{label}: got {got!r}, wanted {want!r}")


doc = run(["eval", "derived(wr(E(2,1),A(5)))"], 0)
expect("eval order", doc.get("result", {}).get("order"), "34587645138205409280")
expect("eval perfect", doc.get("result", {}).get("perfect"), True)

doc = run(["invariants", "prod(C(4),C(6))", "--primes", "2,3"], 0)
expect("invariants", doc.get("result", {}).get("abelian_invariants"), ["2", "12"])

doc = run(["count", "prod(C(2),C(2))", "-n", "2"], 0)
expect("count value", doc.get("result", {}).get("value"), "3")

doc = run(["count", "A(5)", "-n", "2", "-m", "60"], 0)
expect("uniform count", doc.get("result", {}).get("value"), "3")

doc = run(["subgroups", "A(5)", "-m", "5"], 0)
expect("subgroups", doc.get("result", {}).get("count"), "6")

doc = run(["verify", "stagewise-gap", "--S", "A(5)", "--p", "2", "--stages", "1"], 0)
witnesses = doc.get("result", {}).get("witnesses", [])
expect("stagewise bound", witnesses[0].get("bound") if witnesses else None, "576460752303423487")
expect("stagewise status", doc.get("status"), "pass")

doc = run(["verify", "rank-formula", "--G", "S(4)", "--p", "2"], 0)
expect("rank-formula status", doc.get("status"), "pass")

doc = run(["hensel", "root", "1 + t", "-n", "2", "--prec", "8"], 0)
expect("hensel command", doc.get("command"), "hensel-root")
expect("hensel coefficients", doc.get("result", {}).get("coefficients", [])[:4],
       ["1", "1/2", "-1/8", "1/16"])

doc = run(["hensel", "root", "2 + t", "-n", "2"], 2)
expect("hensel non-square", doc.get("error", {}).get("type"), "domain")

with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as f:
    f.write("# samples\n4 + t\n3*t^-1 + 1\n")
    good = f.name
with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False) as f:
    f.write("7\n")
    missing = f.name

doc = run(["classes", "-n", "2", "--reps", "1,2,3,6", "--samples", good], 0)
expect("classes status", doc.get("status"), "pass")
doc = run(["classes", "-n", "2", "--reps", "1,2", "--samples", missing], 1)
expect("classes missing rep", doc.get("status"), "fail")

doc = run(["eval", "b0(C(4))"], 2)
expect("parse error type", doc.get("error", {}).get("type"), "parse")
expect("parse error column", doc.get("error", {}).get("column"), "4")

doc = run(["eval", "E(4,1)"], 2)
expect("E(4,1)", doc.get("error", {}).get("type"), "parse")

doc = run(["--guard-order", "100", "eval", "S(5)"], 2)
expect("guard", doc.get("error", {}).get("guard"), "guard-order")

doc = run(["count"], 2)
expect("usage", doc.get("command"), "usage")

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli: all checks passed")
