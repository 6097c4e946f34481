"""Experiment driver: configs in, deterministic CSV plus JSON report out.

A config names a generator, a list of solver specs, and a trial count.  Every
trial gets its own generator stream derived from (seed, "trial", index), so
reports are reproducible run to run; wall-clock numbers go to the JSON report
only, never to the CSV, and diff_reports ignores them.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .algorithms import (
    PipelineConfig,
    akpss_run,
    greedy_set,
    pipeline_degree_gap,
    pipeline_graded_caps,
    pipeline_kminus2,
    spencer_set,
)
from .core import LayeredHypergraph, read_file
from .errors import HyperindError, InvalidArguments, OutOfDomain, SchemaError
from .generators import (
    gen_disjoint_cliques,
    gen_girth5,
    gen_gnp,
    gen_layered_bouquet,
)
from .rng import spawn_key, stream
from .schedule import build_schedule, reference_bound

SCHEMA_VERSION = 1

GENERATORS = ("gnp", "girth5", "cliques", "bouquet", "file")
ALGORITHMS = ("greedy", "spencer", "akpss", "pkm2", "appA", "appB")

# closed-form yardstick per solver; trivial fallback is the vertex count
_REFERENCE_FOR = {
    "greedy": "spencer",
    "spencer": "spencer",
    "akpss": "main",
    "pkm2": "loglog",
    "appA": "log",
    "appB": "main",
}

_CSV_COLUMNS = (
    "trial",
    "algorithm",
    "n",
    "k",
    "size",
    "verified",
    "reference",
    "ratio",
    "reference_kind",
)


@dataclass
class ExperimentConfig:
    name: str
    seed: int
    trials: int
    generator: str
    generator_params: dict
    algorithms: list[dict] = field(default_factory=list)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        required = {"name", "seed", "trials", "generator", "algorithms"}
        missing = required - set(data)
        if missing:
            raise InvalidArguments(f"config is missing {sorted(missing)}")
        unknown = set(data) - required - {"generator_params"}
        if unknown:
            raise InvalidArguments(f"config has unknown keys {sorted(unknown)}")
        cfg = cls(
            name=str(data["name"]),
            seed=int(data["seed"]),
            trials=int(data["trials"]),
            generator=str(data["generator"]),
            generator_params=dict(data.get("generator_params", {})),
            algorithms=[dict(a) for a in data["algorithms"]],
        )
        if cfg.trials < 1:
            raise InvalidArguments(f"trials must be positive, got {cfg.trials}")
        if cfg.generator not in GENERATORS:
            raise InvalidArguments(
                f"unknown generator {cfg.generator!r}; choose from {GENERATORS}"
            )
        for spec in cfg.algorithms:
            if "algorithm" not in spec:
                raise InvalidArguments(f"algorithm spec {spec} lacks 'algorithm'")
            if spec["algorithm"] not in ALGORITHMS:
                raise InvalidArguments(
                    f"unknown algorithm {spec['algorithm']!r}; "
                    f"choose from {ALGORITHMS}"
                )
        return cfg

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def _generate(cfg: ExperimentConfig, trial: int) -> LayeredHypergraph:
    params = dict(cfg.generator_params)
    rng = stream(cfg.seed, "trial", trial)
    if cfg.generator == "gnp":
        return gen_gnp(int(params["n"]), int(params["k"]), float(params["p"]), rng)
    if cfg.generator == "girth5":
        H, _ = gen_girth5(
            int(params["n"]), int(params["k"]), float(params["t"]), rng
        )
        return H
    if cfg.generator == "cliques":
        H, _ = gen_disjoint_cliques(
            int(params["n"]), int(params["k"]), int(params["s"])
        )
        return H
    if cfg.generator == "bouquet":
        counts = {int(i): int(c) for i, c in dict(params["counts"]).items()}
        H, _ = gen_layered_bouquet(
            int(params["n"]),
            int(params["k"]),
            counts,
            rng,
            vertex_caps=(
                {int(i): int(c) for i, c in dict(params["vertex_caps"]).items()}
                if "vertex_caps" in params
                else None
            ),
        )
        return H
    if cfg.generator == "file":
        return read_file(params["path"])
    raise InvalidArguments(f"unknown generator {cfg.generator!r}")


def _average_degree(H: LayeredHypergraph) -> tuple[int, float]:
    sizes = H.layer_sizes()
    active = [i for i, c in sizes.items() if c > 0]
    if not active or H.n == 0:
        return H.k, 0.0
    k = max(active)
    return k, k * H.num_edges() / H.n


def _reference_for(algorithm: str, H: LayeredHypergraph, params: dict) -> tuple[float, str]:
    kind = _REFERENCE_FOR[algorithm]
    k, d_avg = _average_degree(H)
    try:
        if kind == "main":
            T = float(params.get("T") or params.get("t") or 0.0)
            if T <= 1.0:
                raise OutOfDomain(f"reference 'main' needs T > 1, got {T}")
            return reference_bound(H.n, T, k, "main"), kind
        # pipelines are parameterized by their degree bound d, the baselines
        # by the observed average degree
        d = float(params["d"]) if "d" in params else d_avg
        if d <= 0:
            raise OutOfDomain("degree parameter is zero")
        return reference_bound(H.n, d, k, kind), kind
    except OutOfDomain:
        return float(H.n), "trivial"


def _run_algorithm(
    spec: dict, H: LayeredHypergraph, cfg: ExperimentConfig, trial: int
) -> tuple[tuple[int, ...], bool]:
    algorithm = spec["algorithm"]
    params = dict(spec.get("params", {}))
    seed = spawn_key(cfg.seed, "trial", trial, "algo", algorithm)
    if algorithm == "greedy":
        picked = greedy_set(
            H, rng=stream(seed), order=params.get("order", "mindegree")
        )
        return picked, H.is_independent(picked)[0]
    if algorithm == "spencer":
        picked = spencer_set(H, stream(seed), samples=int(params.get("samples", 20)))
        return picked, H.is_independent(picked)[0]
    pipe_cfg = PipelineConfig(
        retries=int(params.get("retries", 16)),
        akpss_retries=int(params.get("akpss_retries", 16)),
        delta=params.get("delta"),
        trust_preconditions=bool(params.get("trust_preconditions", False)),
    )
    if algorithm == "akpss":
        T = float(params["T"])
        sched = build_schedule(H.n, T, H.k, strict=bool(params.get("strict", False)))
        cert = akpss_run(
            H,
            sched,
            seed,
            retries_per_round=int(params.get("retries", 16)),
            check_input=not params.get("trust_preconditions", False),
        )
        return cert.independent_set, cert.verified
    if algorithm == "pkm2":
        cert = pipeline_kminus2(H, float(params["d"]), seed, pipe_cfg)
        return cert.independent_set, cert.verified
    if algorithm == "appA":
        cert = pipeline_degree_gap(
            H,
            float(params["d"]),
            int(params.get("case", 1)),
            seed,
            epsilon=params.get("epsilon"),
            config=pipe_cfg,
        )
        return cert.independent_set, cert.verified
    if algorithm == "appB":
        cert = pipeline_graded_caps(
            H, float(params["t"]), seed, float(params["epsilon"]), pipe_cfg
        )
        return cert.independent_set, cert.verified
    raise InvalidArguments(f"unknown algorithm {algorithm!r}")


def _run_trial(cfg: ExperimentConfig, trial: int) -> tuple[list[dict], list[dict]]:
    H = _generate(cfg, trial)
    rows: list[dict] = []
    runtimes: list[dict] = []
    for spec in cfg.algorithms:
        algorithm = spec["algorithm"]
        started = time.perf_counter()
        try:
            picked, verified = _run_algorithm(spec, H, cfg, trial)
        except HyperindError as exc:
            raise type(exc)(f"trial {trial}, {algorithm}: {exc}") from exc
        elapsed = time.perf_counter() - started
        reference, kind = _reference_for(
            algorithm, H, dict(spec.get("params", {}))
        )
        ratio = len(picked) / reference if reference > 0 else math.inf
        rows.append(
            {
                "trial": trial,
                "algorithm": algorithm,
                "n": H.n,
                "k": H.k,
                "size": len(picked),
                "verified": verified,
                "reference": round(reference, 6),
                "ratio": round(ratio, 6),
                "reference_kind": kind,
            }
        )
        runtimes.append(
            {"trial": trial, "algorithm": algorithm, "seconds": elapsed}
        )
    return rows, runtimes


def _aggregate(rows: list[dict]) -> dict:
    byalgo: dict[str, list[dict]] = {}
    for row in rows:
        byalgo.setdefault(row["algorithm"], []).append(row)
    out = {}
    for algorithm in sorted(byalgo):
        ratios = sorted(r["ratio"] for r in byalgo[algorithm])
        sizes = sorted(r["size"] for r in byalgo[algorithm])
        mid = len(ratios) // 2
        median = (
            ratios[mid]
            if len(ratios) % 2
            else (ratios[mid - 1] + ratios[mid]) / 2
        )
        out[algorithm] = {
            "runs": len(ratios),
            "min_ratio": ratios[0],
            "median_ratio": round(median, 6),
            "mean_ratio": round(sum(ratios) / len(ratios), 6),
            "min_size": sizes[0],
            "max_size": sizes[-1],
            "all_verified": all(r["verified"] for r in byalgo[algorithm]),
        }
    return out


def run_experiment(
    cfg: ExperimentConfig, out_dir: str | Path, threads: int | None = None
) -> dict:
    """Run all trials, write <name>.csv and <name>.json under out_dir, and
    return the report dict.

    threads defaults to the HYPERIND_THREADS environment variable (then 1).
    The CSV is deterministic for a fixed config; runtimes live only in the
    JSON report.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if threads is None:
        threads = int(os.environ.get("HYPERIND_THREADS", "1"))
    threads = max(1, threads)

    results: list[tuple[list[dict], list[dict]]] = []
    if threads == 1:
        for trial in range(cfg.trials):
            results.append(_run_trial(cfg, trial))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda i: _run_trial(cfg, i), range(cfg.trials))
            )

    rows = [row for trial_rows, _ in results for row in trial_rows]
    runtimes = [rt for _, trial_rts in results for rt in trial_rts]
    rows.sort(key=lambda r: (r["trial"], r["algorithm"]))
    runtimes.sort(key=lambda r: (r["trial"], r["algorithm"]))

    csv_path = out / f"{cfg.name}.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in _CSV_COLUMNS])

    report = {
        "schema_version": SCHEMA_VERSION,
        "name": cfg.name,
        "config": {
            "seed": cfg.seed,
            "trials": cfg.trials,
            "generator": cfg.generator,
            "generator_params": cfg.generator_params,
            "algorithms": cfg.algorithms,
        },
        "rows": rows,
        "aggregates": _aggregate(rows),
        "runtimes": runtimes,
        "threads": threads,
    }
    json_path = out / f"{cfg.name}.json"
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report


_VOLATILE_KEYS = ("runtimes", "seconds", "threads")


def diff_reports(a: dict | str | Path, b: dict | str | Path) -> list[str]:
    """Field-by-field comparison of two reports, ignoring runtime data.

    Returns human-readable difference lines; empty means the reports agree.
    Raises SchemaError when the schema versions differ.
    """

    def load(x):
        if isinstance(x, (str, Path)):
            with open(x, "r", encoding="utf-8") as fh:
                try:
                    return json.load(fh)
                except json.JSONDecodeError as exc:
                    raise SchemaError(f"{x} is not valid JSON: {exc}") from exc
        return x

    ra, rb = load(a), load(b)
    va, vb = ra.get("schema_version"), rb.get("schema_version")
    if va != vb:
        raise SchemaError(f"schema versions differ: {va} vs {vb}")

    diffs: list[str] = []

    def walk(pa, pb, path):
        if any(part in _VOLATILE_KEYS for part in path.split(".") if part):
            return
        if isinstance(pa, dict) and isinstance(pb, dict):
            for key in sorted(set(pa) | set(pb)):
                if key in _VOLATILE_KEYS:
                    continue
                sub = f"{path}.{key}" if path else key
                if key not in pa:
                    diffs.append(f"{sub}: missing on the left")
                elif key not in pb:
                    diffs.append(f"{sub}: missing on the right")
                else:
                    walk(pa[key], pb[key], sub)
        elif isinstance(pa, list) and isinstance(pb, list):
            if len(pa) != len(pb):
                diffs.append(f"{path}: list lengths {len(pa)} vs {len(pb)}")
                return
            for i, (xa, xb) in enumerate(zip(pa, pb)):
                walk(xa, xb, f"{path}[{i}]")
        else:
            if pa != pb:
                diffs.append(f"{path}: {pa!r} vs {pb!r}")

    walk(ra, rb, "")
    return diffs
