"""End-to-end CLI checks: exit codes, artifacts, determinism, rollout
persistence, and the offline guarantee of --mock.

Driven by ctest with:  cli_tests.py <reviewkit-bin> <stubtex-bin> <fixtures-dir>
"""

import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

RK = pathlib.Path(sys.argv[1]).resolve()
STUBTEX = pathlib.Path(sys.argv[2]).resolve()
FIXTURES = pathlib.Path(sys.argv[3]).resolve()

failures = []


def check(condition, label):
    print(("ok   " if condition else "FAIL ") + label)
    if not condition:
        failures.append(label)


def run(args, env_extra=None, cwd=None):
    env = dict(os.environ)
    # --mock must not need (or touch) any endpoint: point the env at junk.
    env["MODEL_API_BASE"] = "http://127.0.0.1:1"
    env["MODEL_API_KEY"] = "invalid"
    if env_extra:
        env.update(env_extra)
    return subprocess.run([str(RK)] + args, capture_output=True, text=True, env=env,
                          cwd=cwd, timeout=120)


def listing(root):
    return sorted(str(p.relative_to(root)) for p in pathlib.Path(root).rglob("*"))


with tempfile.TemporaryDirectory(prefix="rk_cli_") as tmp:
    tmp = pathlib.Path(tmp)
    work = tmp / "work"
    work.mkdir()
    shutil.copytree(FIXTURES, work / "fixtures")

    # --- review run -------------------------------------------------------
    r = run(["review", "run", "--paper", "fixtures/paper-a.pdf", "--mock",
             "--out", "runs/r1"], cwd=work)
    check(r.returncode == 0, "review run exits 0")
    review_md = work / "runs/r1/papers/paper-a/review.md"
    records = work / "runs/r1/papers/paper-a/records.jsonl"
    check(review_md.exists(), "review.md written")
    check(records.exists() and len(records.read_text().strip().splitlines()) == 8,
          "8 stage records written")

    before = listing(work)
    r = run(["review", "run", "--paper", "fixtures/paper-a.pdf", "--mock",
             "--out", "runs/r2"], cwd=work)
    after = listing(work)
    new_files = [f for f in after if f not in before]
    check(all(f.startswith("runs/r2") for f in new_files),
          "command writes only under its output root")
    check((work / "runs/r1/papers/paper-a/records.jsonl").read_bytes() ==
          (work / "runs/r2/papers/paper-a/records.jsonl").read_bytes(),
          "mock reruns are byte-identical")

    r = run(["review", "run", "--paper", "missing.pdf", "--mock", "--out", "runs/r3"],
            cwd=work)
    check(r.returncode == 2, "missing input exits 2")

    # --- batch rollout ------------------------------------------------------
    r = run(["review", "batch", "--manifest", "fixtures/batch10.json",
             "--rollout-fraction", "0.3", "--gate", "manual", "--mock",
             "--out", "runs/b1", "--json"], cwd=work)
    check(r.returncode == 0, "gated batch exits 0")
    report = json.loads((work / "runs/b1/batch_report.json").read_text())
    check(report["state"] == "AWAITING_APPROVAL", "AWAITING_APPROVAL persisted")
    check(report["processed"] == 3, "exactly 3 of 10 processed before the gate")
    check(report["processed"] + report["failed"] + report["pending"] == 10,
          "batch conservation")
    stdout_report = json.loads(r.stdout)
    check(stdout_report["state"] == "AWAITING_APPROVAL", "--json status output")

    r = run(["review", "approve", "--manifest", "fixtures/batch10.json", "--mock",
             "--out", "runs/b1"], cwd=work)
    check(r.returncode == 0, "approve exits 0")
    report = json.loads((work / "runs/b1/batch_report.json").read_text())
    check(report["state"] == "COMPLETED" and report["processed"] == 10,
          "remainder processed only after approval")

    r = run(["review", "approve", "--manifest", "fixtures/batch10.json", "--mock",
             "--out", "runs/b1"], cwd=work)
    check(r.returncode == 2, "second approve exits 2 (wrong state)")

    # --- specs flow ---------------------------------------------------------
    r = run(["specs", "perturb", "--dataset", "ds", "--mock",
             "--compile-cmd", "definitely-missing-toolchain"], cwd=work)
    check(r.returncode == 5, "missing toolchain exits 5")
    check("toolchain" in r.stderr, "toolchain error message is actionable")

    r = run(["specs", "curate", "--proceedings", "fixtures/proceedings.json",
             "--sources", "fixtures/sources", "--out", "ds", "--mock",
             "--compile-cmd", str(STUBTEX)], cwd=work)
    check(r.returncode == 0, "curate exits 0")
    manifest = json.loads((work / "ds/manifest.json").read_text())
    check(len(manifest["paper_ids"]) == 2, "two papers curated")

    r = run(["specs", "perturb", "--dataset", "ds", "--criterion", "evaluations",
             "--mock", "--compile-cmd", str(STUBTEX)], cwd=work)
    check(r.returncode == 0, "perturb exits 0")
    manifest = json.loads((work / "ds/manifest.json").read_text())
    n_perts = manifest["total"]
    check(n_perts == 2, "one evaluations perturbation per paper")
    first = manifest["perturbations"][0]
    pert_dir = work / "ds" / first["paper_id"] / "perturbations" / first["perturbation_id"]
    check((pert_dir / "proposal.json").exists(), "proposal.json stored")
    check((pert_dir / "output.pdf").exists(), "output.pdf stored")
    check((pert_dir / "modified-tree" / "main.tex").exists(), "modified tree stored")

    r = run(["specs", "judge", "--dataset", "ds", "--out", "eval/run1",
             "--variants", "baseline,final", "--mock"], cwd=work)
    check(r.returncode == 0, "judge exits 0")
    judgments = (work / "eval/run1/judgments.jsonl").read_text().strip().splitlines()
    check(len(judgments) == n_perts * 2,
          f"judgment records = perturbations x variants ({len(judgments)})")

    first_judgments = (work / "eval/run1/judgments.jsonl").read_bytes()
    r = run(["specs", "judge", "--dataset", "ds", "--out", "eval/run1b",
             "--variants", "baseline,final", "--mock"], cwd=work)
    check(first_judgments == (work / "eval/run1b/judgments.jsonl").read_bytes(),
          "judge rerun produces byte-identical judgments")

    r = run(["specs", "report", "--judgments", "eval/run1"], cwd=work)
    check(r.returncode == 0, "report exits 0")
    check("overall baseline recall" in r.stdout, "report prints the overall baseline rate")
    check((work / "eval/run1/results.csv").exists(), "results.csv written")

    # --- report over the derived-count reference fixture ---------------------
    ref = work / "eval/ref"
    ref.mkdir(parents=True)
    counts = {"story": (153, 54), "presentation": (173, 72), "evaluations": (159, 82),
              "correctness": (144, 88), "significance": (154, 40)}
    finals = {"story": 103, "presentation": 98, "evaluations": 120,
              "correctness": 110, "significance": 69}
    lines = []
    criteria = {}
    for crit, (n, caught) in counts.items():
        for i in range(n):
            pid = f"{crit}-{i}"
            criteria[pid] = crit
            lines.append(json.dumps({"perturbation_id": pid, "variant": "baseline",
                                     "caught": i < caught, "supporting_excerpt": "",
                                     "justification": "fixture"}))
            lines.append(json.dumps({"perturbation_id": pid, "variant": "final",
                                     "caught": i < finals[crit], "supporting_excerpt": "",
                                     "justification": "fixture"}))
    (ref / "judgments.jsonl").write_text("\n".join(lines) + "\n")
    (ref / "criteria.json").write_text(json.dumps(criteria))
    r = run(["specs", "report", "--judgments", str(ref)], cwd=work)
    check(r.returncode == 0, "reference report exits 0")
    check("0.4291" in r.stdout, "overall baseline rate prints 0.4291")
    results = (ref / "results.csv").read_text()
    check("story,153,0.3529" in results, "story baseline 54/153 -> 0.3529 in results file")
    check("all,783,0.4291" in results, "overall 336/783 -> 0.4291 in results file")
    check(",0.2095," in results, "overall delta F-B +0.2095 in results file")

    # --- survey ---------------------------------------------------------------
    r = run(["survey", "analyze", "fixtures/responses.csv", "--out", "survey1.csv"],
            cwd=work)
    check(r.returncode == 0, "survey analyze exits 0")
    rows = (work / "survey1.csv").read_text().strip().splitlines()
    check(len(rows) == 3, "two item rows plus header")
    r = run(["survey", "analyze", "fixtures/responses.csv", "--out", "survey2.csv"],
            cwd=work)
    check((work / "survey1.csv").read_bytes() == (work / "survey2.csv").read_bytes(),
          "survey report rerun is byte-identical")

    bad = work / "bad.csv"
    bad.write_text("role,review_type,item_id,value\nauthor,AI,q1,3\n")
    r = run(["survey", "analyze", str(bad)], cwd=work)
    check(r.returncode == 2, "out-of-range likert value exits 2")
    check("row 2" in r.stderr, "malformed row number reported")

    # --- qa -----------------------------------------------------------------
    reviews = work / "reviews"
    reviews.mkdir()
    shutil.copy(review_md, reviews / "paper-a.md")
    r = run(["qa", "run", "--reviews", str(reviews), "--index",
             "fixtures/citations-index.jsonl", "--out", "qa", "--mock"], cwd=work)
    check(r.returncode == 0, "qa run exits 0")
    check((work / "qa/oversight.csv").exists() and (work / "qa/oversight.json").exists(),
          "oversight csv + sidecar written")

    # Nested run layout (papers/<id>/review.md) works directly.
    r = run(["qa", "run", "--reviews", "runs/b1/papers", "--index",
             "fixtures/citations-index.jsonl", "--out", "qa2", "--mock"], cwd=work)
    check(r.returncode == 0, "qa over a run directory exits 0")
    oversight = json.loads((work / "qa2/oversight.json").read_text())
    check(oversight["total"] == 10, "qa found all ten batch reviews")
    ids = {row["paper_id"] for row in oversight["rows"]}
    check("p0" in ids and "p9" in ids, "paper ids derive from run directories")

print()
if failures:
    print(f"{len(failures)} CLI check(s) failed")
    sys.exit(1)
print("all CLI checks passed")
