"""Run a small benchmark through the harness and diff two reports."""

import json
import pathlib
import tempfile

from hyperind import ExperimentConfig, diff_reports, run_experiment

config = ExperimentConfig.from_dict({
    "name": "demo",
    "seed": 11,
    "trials": 5,
    "generator": "gnp",
    "generator_params": {"n": 80, "k": 3, "p": 0.003},
    "algorithms": [
        {"algorithm": "greedy"},
        {"algorithm": "greedy", "params": {"order": "random"}},
        {"algorithm": "spencer"},
    ],
})

out = pathlib.Path(tempfile.mkdtemp())
report = run_experiment(config, out_dir=out)
for name, agg in sorted(report["aggregates"].items()):
    print(f"{name:>8}: {agg['runs']} runs, sizes {agg['min_size']}..{agg['max_size']}, "
          f"median ratio {agg['median_ratio']:.3f}, all verified: {agg['all_verified']}")

print()
print((out / "demo.csv").read_text().splitlines()[0])  # the column header

# reruns are byte identical, so a diff of two runs is empty
again = run_experiment(config, out_dir=pathlib.Path(tempfile.mkdtemp()))
print("differences vs rerun:", diff_reports(report, again))

# a doctored report is flagged path by path
doctored = json.loads(json.dumps(again))
doctored["rows"][0]["size"] += 1
for line in diff_reports(report, doctored):
    print("  ", line)
