"""Exit codes, text examples, JSON schema and witness replay for orthcheck on the golden models."""

import json
import os
import subprocess
import sys
import tempfile

BINARY = sys.argv[1]
MODELS = sys.argv[2]

failures = []


def run(args, env=None, check=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    proc = subprocess.run([BINARY] + args, capture_output=True, text=True, env=full_env, timeout=300)
    return proc.returncode, proc.stdout


def m(name):
    return os.path.join(MODELS, name)


def expect(label, cond, detail=""):
    if not cond:
        failures.append(f"{label}: {detail}")


# (arguments, exit code, substring of the text report)
GOLDEN = [
    (["classify", m("bornology_points.json")], 0, "scale: large"),
    (["classify", m("bornology_pair.json")], 0, "bounded points: {a,b}"),
    (["classify", m("line_metric.json")], 0, "scale: large"),
    (["check-axioms", m("bornology_pair.json")], 0, "status: pass"),
    (["check-axioms", m("embedded_pair.json")], 0, "small-scale symmetry"),
    (["check-axioms", m("explicit_asymmetric.json")], 1, "witness: {a} {b}"),
    (["check-axioms", m("line_metric.json")], 0, "sampled"),
    (["check-axioms", m("metric_large.json")], 3, "axiom scan points"),
    (["profile", m("metric_line.json")], 0, "normal: yes"),
    (["topology", m("topology_discrete.json"), "--variant", "closed"], 0, "(discrete)"),
    (["perp", m("bornology_pair.json"), "--set", "{a,c}"], 0, "{a,c}^⊥ = {b,d}"),
    (["translate", m("topology_discrete.json"), "--to", "proximity"], 0, "round trip recovers"),
    (["translate", m("topology_chain.json"), "--to", "nbhd"], 0, "nbhd axiom N4"),
    (["translate", m("topology_chain.json"), "--to", "proximity"], 1, "precondition"),
    (["translate", m("line_metric.json"), "--to", "resemblance"], 0, "agrees with the rule"),
    (["translate", m("bornology_pair.json"), "--to", "uniformity"], 2, "--to must be"),
    (["map-check", m("bornology_pair.json"), "--map", "swap"], 0, "[ok]   continuous"),
    (["map-check", m("bornology_pair.json"), "--map", "fold"], 1, "images of bounded sets"),
    (["map-check", m("line_metric.json"), "--map", "shift"], 0, "status: pass"),
    (["map-check", m("line_metric.json"), "--map", "constant"], 1, "[FAIL] continuous"),
    (["map-check", m("bornology_pair.json"), "--map", "nope"], 2, "/maps/nope"),
    (["quotient", m("bornology_pair.json"), "--map", "pair"], 0, "quotient on 2 points"),
    (["quotient", m("bornology_pair.json"), "--map", "fold"], 2, "not surjective"),
    (["parallel", m("bornology_pair.json"), "--set", "cd", "--set", "c"], 1, "[FAIL] cd parallel to c"),
    (["parallel", m("line_metric.json"), "--map", "shift", "--map", "flip"], 1, "[FAIL] maps are parallel"),
    (["parallel", m("line_metric.json"), "--map", "shift", "--map", "shift"], 0, "sup |f − g| = 0"),
    (["functions", "separate", m("topology_discrete.json"), "--set", "wx", "--set", "yz"], 0, "status: pass"),
    (["functions", "separate", m("topology_chain.json"), "--set", "p", "--set", "r"], 1, "component meets both"),
    (["functions", "paste", m("topology_discrete.json"), "--function", "low", "--function", "high"], 0, "pasted"),
    (["functions", "extend", m("topology_chain.json"), "--function", "split"], 1, "two levels"),
    (["functions", "bend", m("topology_chain.json")], 2, "separate, paste or extend"),
    (["hyperbolic", m("graph_free.json")], 0, "δ estimate: 0"),
    (["ends", m("graph_line.json")], 0, "ends: 2 (stabilized k=5..25)"),
    (["ends", m("graph_tree.json")], 1, "not stabilized"),
    (["ends", m("bornology_pair.json")], 2, "needs a graph model"),
    (["boundary", m("line_metric.json")], 0, "∂X: 2 classes"),
    (["boundary", m("line_lattice.json")], 0, "∂X: 2 classes"),
    (["boundary", m("line_metric.json"), "--map", "flip"], 0, "induced boundary map is defined"),
    (["verify-compactification", m("metric_line.json")], 0, "closure criterion"),
    (["verify-compactification", m("line_metric.json")], 0, "status: pass"),
    (["verify-compactification", m("line_metric.json"), "--ends", "glued-ends"], 1, "share an end"),
    (["oracle", m("bornology_pair.json")], 0, "orth agrees with the definition"),
    (["oracle", m("line_metric.json")], 0, "agrees with the window oracle"),
    (["oracle", m("graph_free.json")], 0, "agree with BFS"),
    (["classify", m("bad_missing_version.json")], 2, "/version: missing field"),
    (["classify", m("bad_unknown_point.json")], 2, "/bornology/0/1: unknown point 'zz'"),
    (["classify", m("bad_kind.json")], 2, "/kind"),
    (["classify", m("bad_syntax.json")], 2, "parse error"),
    (["classify", m("does_not_exist.json")], 2, "cannot open"),
    (["frobnicate", m("bornology_pair.json")], 2, "unknown command"),
]

for args, code, text in GOLDEN:
    got, out = run(args)
    label = " ".join(a.replace(MODELS + os.sep, "") for a in args)
    expect(label, got == code, f"exit {got}, wanted {code}")
    expect(label, text in out, f"missing {text!r} in:\n{out}")

# JSON documents: stable field order, status names, budget dimension, witnesses as name lists.
KEYS = ["command", "model", "status", "summary", "facts", "verdicts", "notes"]
with tempfile.TemporaryDirectory() as tmp:
    code, out = run(["classify", m("bornology_pair.json"), "--json"])
    doc = json.loads(out)
    expect("json pass", doc["status"] == "pass" and list(doc.keys()) == KEYS, str(list(doc.keys())))

    code, out = run(["check-axioms", m("metric_large.json"), "--json"])
    doc = json.loads(out)
    expect("json budget", code == 3 and doc["status"] == "budget", out)
    expect("json budget dimension", doc["error"]["dimension"] == "axiom scan points", out)

    code, out = run(["check-axioms", m("explicit_asymmetric.json"), "--json"])
    doc = json.loads(out)
    sym = [v for v in doc["verdicts"] if v["name"] == "symmetry"][0]
    expect("json witness names", sym["witness"] == [["a"], ["b"]], json.dumps(sym))

    code, out = run(["classify", m("bad_unknown_point.json"), "--json"])
    expect("json error", code == 2 and json.loads(out)["status"] == "error", out)

    # Env overrides: upper-cased flag names; an explicit flag wins.
    code, _ = run(["check-axioms", m("bornology_pair.json")], env={"BUDGET_N": "3"})
    expect("BUDGET_N override", code == 3, f"exit {code}")
    code, _ = run(["check-axioms", m("bornology_pair.json"), "--budget-n", "8"], env={"BUDGET_N": "3"})
    expect("flag beats env", code == 0, f"exit {code}")
    code, out = run(["ends", m("graph_line.json")], env={"RADIUS": "20"})
    expect("RADIUS override", "k=2..10" in out, out)
    code, out = run(["classify", m("bornology_pair.json")], env={"JSON": "1"})
    expect("JSON override", out.lstrip().startswith("{"), out)

    # Round trip: every replay stanza of every report reproduces under the oracle.
    replayed = 0
    for i, (args, code, _) in enumerate(GOLDEN):
        if code not in (0, 1) or args[0] == "oracle":
            continue
        _, out = run(args + ["--json"])
        path = os.path.join(tmp, f"report{i}.json")
        with open(path, "w") as f:
            f.write(out)
        doc = json.loads(out)
        stanzas = sum(len(v["replay"]) for v in doc["verdicts"])
        rc, rout = run(["oracle", "--replay", path])
        label = "replay " + " ".join(a.replace(MODELS + os.sep, "") for a in args)
        expect(label, rc == 0, rout)
        replayed += stanzas
        # A flipped expectation must be caught.
        if stanzas:
            for v in doc["verdicts"]:
                if v["replay"]:
                    s = v["replay"][0]
                    s["expected"] = (not s["expected"]) if isinstance(s["expected"], bool) else s["expected"] + 1
                    break
            bad = os.path.join(tmp, f"tampered{i}.json")
            with open(bad, "w") as f:
                json.dump(doc, f)
            rc, rout = run(["oracle", "--replay", bad])
            expect("tampered " + label, rc == 1, rout)
    expect("replayed stanzas", replayed >= 40, f"only {replayed}")

if failures:
    print("\n".join(failures))
    print(f"{len(failures)} CLI check(s) failed")
    sys.exit(1)
print(f"all {len(GOLDEN)} golden invocations and replay round trips passed")
