#!/usr/bin/env python3
"""Exit codes and output contract of the sumset CLI."""

import json
import os
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

CLI = sys.argv[1]
failed = []


def run(*args, env=None):
    e = dict(os.environ)
    if env:
        e.update(env)
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=e, timeout=300)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failed.append(name)


r = run("sumset", "--set", "1,2,8,10", "--h", "3")
check("profile exit 0", r.returncode == 0, r.stderr)
if r.returncode == 0:
    j = json.loads(r.stdout)
    check("profile size 19", j["size"] == 19 and j["deficit"] == 1)
    check("profile h_star 2", j["classification"]["h_star"] == 2)

r = run("sumset", "--set", "1,1,2,3", "--h", "2")
check("repeated element exit 2", r.returncode == 2, f"got {r.returncode}")
check("unknown option exit 2", run("census", "--bogus").returncode == 2)
check("help exit 0", run("--help").returncode == 0)

r = run("family", "--h", "2", "--q", "8000", "--verify-set", "1,6,17,7921")
check("tampered member exit 1", r.returncode == 1, f"got {r.returncode}")
r = run("family", "--h", "2", "--q", "8000", "--verify-set", "1,6,16,7921")
check("genuine member exit 0", r.returncode == 0, r.stdout + r.stderr)

r = run("census", "--q", "30", "--k", "4", "--h-cap", "3", env={"SUMSET_MAX_SUBSETS": "100"})
check("budget env exit 3", r.returncode == 3, f"got {r.returncode}")
r = run("census", "--q", "30", "--h-cap", "3", "--max-subsets", "100")
check("budget flag exit 3", r.returncode == 3, f"got {r.returncode}")

r = run("verify", "pairs", "--h-max", "12")
check("verify pairs exit 0", r.returncode == 0, r.stdout)
if r.returncode == 0:
    v = json.loads(r.stdout.splitlines()[0])
    check("verify pairs verdict", v["pass"] and v["instances"] == 12 and "elapsed_ms" not in v)

a = run("census", "--q", "24", "--h-cap", "5", "--shards", "8", "--threads", "2")
b = run("census", "--q", "24", "--h-cap", "5", "--shards", "1", "--threads", "1")
check("census shards 8 == shards 1", a.returncode == 0 and a.stdout == b.stdout)
if a.returncode == 0:
    j = json.loads(a.stdout)
    check("census keys", list(j) == ["q", "k", "h_cap", "histograms", "bstar_counts",
                                     "exceptional_counts", "capped", "gaps"])

a = run("family", "--h", "2", "--q", "8000", "--limit", "40", "--seed", "7")
b = run("family", "--h", "2", "--q", "8000", "--limit", "40", "--seed", "7")
check("family seed reproducible", a.returncode == 0 and a.stdout == b.stdout, a.stderr)
lines = a.stdout.splitlines()
check("family line count", len(lines) == 41, str(len(lines)))
if lines:
    head = json.loads(lines[0])
    check("family header size", head["family"]["size"] == 1215)

with tempfile.TemporaryDirectory() as tmp:
    svg = os.path.join(tmp, "h2.svg")
    csv = os.path.join(tmp, "h2.csv")
    r = run("gaps", "--q", "10", "--h", "2", "--svg", svg, "--csv", csv)
    check("gaps exit 0", r.returncode == 0, r.stderr)
    if r.returncode == 0:
        g = json.loads(r.stdout)
        check("gaps ladder", g["gap"]["ladder"] == [10, 9])
        check("gaps histogram total", sum(g["histogram"].values()) == 210)
        root = ET.parse(svg).getroot()
        rects = [e for e in root.iter() if e.tag.endswith("rect")]
        # sizes 10 - C(4,3) .. 10
        check("svg one bar per size", len(rects) == 5, str(len(rects)))
        with open(csv) as f:
            check("csv header", f.readline().strip() == "h,size,count")

r = run("pairs", "--x", "2,0,0,1", "--y", "0,2,1,0", "--q", "12")
check("pair solutions 54", r.returncode == 0 and json.loads(r.stdout)["count"] == 54, r.stderr)

print("FAILED: " + ", ".join(failed) if failed else "all CLI checks passed")
sys.exit(1 if failed else 0)
