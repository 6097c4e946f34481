"""Vertex-sampling reductions that prepare rough inputs for the finishers.

Each pipeline samples a vertex subset, strips high-degree vertices, deletes
short cycles, trims to a target size, and hands the residue to either the
greedy finisher (pipeline_kminus2) or the semi-random rounds (the other two).
All of them return a RunCertificate whose set is re-verified against the
original input, whatever happened on the way.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..core import LayeredHypergraph
from ..errors import (
    InvalidArguments,
    PreconditionFailed,
    ResidueNotBouquet,
)
from ..rng import spawn_key, stream
from ..schedule import build_schedule
from ..structure import (
    check_bouquet,
    common_neighbor_max,
    count_two_cycles,
    find_clean_four_cycles,
    prune_short_cycles,
)
from .akpss import RunCertificate, akpss_run
from .basic import greedy_set


@dataclass
class PipelineConfig:
    retries: int = 16
    akpss_retries: int = 16
    split_exponent: float | None = None  # beta in (k/(2k-2), 1); None = midpoint
    delta: float | None = None  # case-2 sampling exponent, must be < 1/(4k^2)
    trust_preconditions: bool = False
    strict_schedule: bool = False
    greedy_order: str = "mindegree"
    prune_batch: int = 512


def _uniform_k(H: LayeredHypergraph) -> int:
    """The input must carry edges in its top layer only."""
    sizes = H.layer_sizes()
    for i in range(2, H.k):
        if sizes.get(i, 0) > 0:
            raise InvalidArguments(
                f"expected a {H.k}-uniform input, found edges of size {i}"
            )
    return H.k


def _sample(n: int, p: float, rng: np.random.Generator) -> set[int]:
    coins = rng.random(n)
    return set(int(x) for x in np.nonzero(coins < p)[0])


def _degrees_within(H: LayeredHypergraph, U: set[int]) -> dict[int, dict[int, int]]:
    """Per layer, per vertex: number of edges fully inside U."""
    out: dict[int, dict[int, int]] = {}
    for layer, e in H.edges():
        if all(v in U for v in e):
            bucket = out.setdefault(layer, {})
            for v in e:
                bucket[v] = bucket.get(v, 0) + 1
    return out


def pipeline_kminus2(
    H: LayeredHypergraph,
    d: float,
    seed: int | tuple[int, ...],
    config: PipelineConfig | None = None,
) -> RunCertificate:
    """Sample-and-split reduction for k-graphs with every (k-2)-set degree
    at most d*n.  The sampled residue is split into heavy (k-1)-sets and the
    edges avoiding them, and the greedy finisher runs on the union.
    """
    cfg = config or PipelineConfig()
    k = _uniform_k(H)
    if k < 4:
        raise InvalidArguments(f"needs uniformity at least 4, got {k}")
    if d <= 0:
        raise InvalidArguments("d must be positive")
    n = H.n
    warnings: list[str] = []
    if not cfg.trust_preconditions:
        observed = H.max_min_degree(k, k - 2)[0]
        if observed > d * n:
            raise PreconditionFailed(
                f"max ({k - 2})-set degree {observed} exceeds d*n = {d * n:.3f}"
            )
    ratio = n / d
    if ratio <= 1:
        warnings.append(f"n/d = {ratio:.3f} <= 1, the reduction degenerates")

    beta = cfg.split_exponent
    if beta is None:
        beta = (3 * k - 2) / (4 * k - 4)
    if not (k / (2 * k - 2) < beta < 1):
        raise InvalidArguments(
            f"split_exponent must lie in ({k / (2 * k - 2):.4f}, 1), got {beta}"
        )

    p = min(1.0, n ** (-(2 * k - 5) / (2 * k - 3)) * d ** (-2 / (2 * k - 3)))
    M = ratio ** (2 / (2 * k - 3))
    heavy_cut = 3 * k * math.sqrt(M)
    m_target = int(M / 9)

    diag: dict = {
        "p": p,
        "expected_sample": p * n,
        "heavy_cut": heavy_cut,
        "m_target": m_target,
        "split_exponent": beta,
    }

    last_fail = ""
    for attempt in range(max(1, cfg.retries)):
        rng = stream(seed, "kminus2", "sample", attempt)
        U = _sample(n, p, rng)
        deg_u = _degrees_within(H, U).get(k, {})
        ustar = set(v for v in U if deg_u.get(v, 0) >= heavy_cut)
        survivors, prune_info = prune_short_cycles(
            H,
            U - ustar,
            two_ells=tuple(range(2, k - 1)),
            linear3=False,
            clean4=False,
            batch=cfg.prune_batch,
        )
        if len(survivors) > m_target > 0:
            survivors = set(sorted(survivors)[:m_target])
        elif len(survivors) < m_target:
            warnings.append(
                f"residue {len(survivors)} below the trim target {m_target}"
            )
        if not survivors:
            last_fail = f"attempt {attempt}: nothing survived the pruning"
            continue

        order = sorted(survivors)
        res, _ = H.induce(order)
        m = res.n
        if m <= 1:
            theta = float(k + 2)
        else:
            theta = max(m ** (1 / (2 * k - 2)) / math.log(m) ** beta, float(k + 2))

        sub_deg: Counter = Counter()
        for _, e in res.edges():
            for s in combinations(e, k - 1):
                sub_deg[s] += 1
        heavy = sorted(s for s, c in sub_deg.items() if c >= theta)
        heavy_set = set(heavy)
        light = [
            e
            for _, e in res.edges()
            if not any(s in heavy_set for s in combinations(e, k - 1))
        ]

        G = LayeredHypergraph(m, k)
        for s in heavy:
            G.add_edge(s)
        for e in light:
            G.add_edge(e)

        grng = stream(seed, "kminus2", "greedy", attempt)
        picked = greedy_set(G, rng=grng, order=cfg.greedy_order)
        final = tuple(sorted(order[x] for x in picked))
        ok, witness = H.is_independent(final)
        if not ok:
            raise AssertionError(f"split residue produced a spanned edge: {witness}")

        g2only = LayeredHypergraph(m, k)
        for e in light:
            g2only.add_edge(e)
        split_checks = _split_hypotheses(G, g2only, m, k, beta, heavy)
        diag.update(
            {
                "attempt": attempt,
                "sample": len(U),
                "high_degree_removed": len(ustar),
                "pruning": prune_info,
                "residue": m,
                "heavy_threshold": theta,
                "heavy_sets": len(heavy),
                "light_edges": len(light),
                "residue_two_cycles": {
                    ell: count_two_cycles(res, ell) for ell in range(2, k - 1)
                },
                "split_hypotheses": split_checks,
            }
        )
        return RunCertificate(
            algorithm="pipeline_kminus2",
            independent_set=final,
            verified=True,
            diagnostics=diag,
            warnings=warnings,
        )
    raise ResidueNotBouquet(
        f"no usable residue after {cfg.retries} attempts: {last_fail}"
    )


def _split_hypotheses(
    G: LayeredHypergraph,
    g2only: LayeredHypergraph,
    m: int,
    k: int,
    beta: float,
    heavy: list,
) -> dict:
    """Audit data for the heavy/light split: the constants the finisher's
    guarantee wants, evaluated on the actual residue."""
    c_eff = 9 * k
    logm = math.log(m) if m > 1 else 1.0
    D = c_eff * (k - 1) * m ** ((k - 2) / (2 * k - 2)) * logm**beta
    dd = c_eff * math.sqrt(m)
    heavy_deg_max = G.max_min_degree(k - 1, 1)[0] if heavy else 0
    gamma_heavy = common_neighbor_max(G, layer=k - 1) if heavy else 0
    heavy_pair_max = 0
    if heavy:
        heavy_pair_max = max(
            G.max_min_degree(k - 1, i)[0] for i in range(2, k - 1)
        )
    return {
        "D": D,
        "d": dd,
        "omega": dd * (logm / D) ** ((k - 1) / (k - 2)),
        "heavy_degree_max": heavy_deg_max,
        "heavy_degree_ok": heavy_deg_max <= D,
        "heavy_pair_degree_max": heavy_pair_max,
        "heavy_pair_degree_ok": heavy_pair_max <= 1,
        "common_neighbor_max": gamma_heavy,
        "common_neighbor_ok": gamma_heavy == 0,
        "light_count_ok": k * g2only.num_edges() <= dd * m,
        "light_two_cycles": {
            ell: count_two_cycles(g2only, ell) for ell in range(2, k)
        },
    }


def pipeline_degree_gap(
    H: LayeredHypergraph,
    d: float,
    case: int,
    seed: int | tuple[int, ...],
    epsilon: float | None = None,
    config: PipelineConfig | None = None,
) -> RunCertificate:
    """Heavy/light reduction for k-graphs whose (k-1)-set degrees avoid a
    gap below n^((k-2)/(k-1)) d^(1/(k-1)).

    Case 1 needs the gap down to n^(..-eps) d^(..+eps) and deletes all short
    cycles from the sample.  Case 2 needs the gap down to the same cut over
    (log(n/d))^(k+1) plus a clean-4-free input, and keeps (2, k-1)-cycles.
    The two-layer residue goes to the semi-random rounds.
    """
    cfg = config or PipelineConfig()
    k = _uniform_k(H)
    if k < 4:
        raise InvalidArguments(f"needs uniformity at least 4, got {k}")
    if d <= 0:
        raise InvalidArguments("d must be positive")
    if case not in (1, 2):
        raise InvalidArguments(f"case must be 1 or 2, got {case}")
    n = H.n
    ratio = n / d
    if ratio <= 1:
        raise InvalidArguments(f"needs n/d > 1, got {ratio:.3f}")
    warnings: list[str] = []

    if case == 1:
        if epsilon is None or epsilon <= 0:
            raise InvalidArguments("case 1 needs epsilon > 0")
        eps_eff = min(epsilon, 1 / (4 * k))
        delta = eps_eff / (k + 1)
    else:
        delta = cfg.delta if cfg.delta is not None else 1 / (8 * k * k)
        if not (0 < delta < 1 / (4 * k * k)):
            raise InvalidArguments(
                f"case 2 needs 0 < delta < {1 / (4 * k * k):.6f}, got {delta}"
            )
        eps_eff = None

    heavy_cut = n ** ((k - 2) / (k - 1)) * d ** (1 / (k - 1))
    sub_deg: Counter = Counter()
    for _, e in H.edges():
        for s in combinations(e, k - 1):
            sub_deg[s] += 1

    if not cfg.trust_preconditions:
        observed = H.max_min_degree(k, k - 2)[0]
        if observed > d * n:
            raise PreconditionFailed(
                f"max ({k - 2})-set degree {observed} exceeds d*n = {d * n:.3f}"
            )
        if case == 1:
            gap_lo = n ** ((k - 2) / (k - 1) - eps_eff) * d ** (1 / (k - 1) + eps_eff)
        else:
            gap_lo = heavy_cut / math.log(ratio) ** (k + 1)
        for s, c in sub_deg.items():
            if gap_lo < c < heavy_cut:
                raise PreconditionFailed(
                    f"({k - 1})-set degree {c} falls in the forbidden gap "
                    f"({gap_lo:.4f}, {heavy_cut:.4f})",
                    witness=s,
                )
        if case == 2 and find_clean_four_cycles(H, limit=1):
            raise PreconditionFailed("case 2 needs a clean-4-free input")

    heavy = sorted(s for s, c in sub_deg.items() if c >= heavy_cut)
    heavy_set = set(heavy)
    HH = LayeredHypergraph(n, k)
    for s in heavy:
        HH.add_edge(s)
    light = 0
    for _, e in H.edges():
        if not any(s in heavy_set for s in combinations(e, k - 1)):
            HH.add_edge(e)
            light += 1

    p = min(1.0, n ** (delta - (k - 2) / (k - 1)) * d ** (-delta - 1 / (k - 1)))
    trim_target = int(0.5 * ratio ** (1 / (k - 1) + delta))
    d1 = {
        i: HH.max_min_degree(i, 1)[0] if HH.layer_sizes().get(i, 0) else 0
        for i in (k - 1, k)
    }
    if case == 1:
        two_ells = tuple(range(2, k))
        clean4 = True
    else:
        two_ells = tuple(range(2, k - 1))
        clean4 = False
    resid_cap = 2 * ratio**delta / math.log(ratio) ** (k + 1)

    diag: dict = {
        "case": case,
        "delta": delta,
        "epsilon_effective": eps_eff,
        "p": p,
        "heavy_cut": heavy_cut,
        "heavy_sets": len(heavy),
        "light_edges": light,
        "trim_target": trim_target,
        "residue_top_degree_cap": resid_cap if case == 2 else None,
    }

    last_fail = ""
    for attempt in range(max(1, cfg.retries)):
        rng = stream(seed, "degree_gap", "sample", attempt)
        U = _sample(n, p, rng)
        within = _degrees_within(HH, U)
        z_cut = {i: 40 * p ** (i - 1) * d1[i] for i in (k - 1, k)}
        Z = set()
        for i in (k - 1, k):
            for v, c in within.get(i, {}).items():
                if c > z_cut[i]:
                    Z.add(v)
        survivors, prune_info = prune_short_cycles(
            HH,
            U - Z,
            two_ells=two_ells,
            linear3=True,
            clean4=clean4,
            batch=cfg.prune_batch,
        )
        if len(survivors) > trim_target > 0:
            survivors = set(sorted(survivors)[:trim_target])
        if not survivors:
            last_fail = f"attempt {attempt}: nothing survived the pruning"
            continue
        order = sorted(survivors)
        res, _ = HH.induce(order)
        report = check_bouquet(res)
        if not report.holds:
            last_fail = (
                f"attempt {attempt}: residue violates "
                f"{sorted(report.violated_properties())}"
            )
            continue
        if case == 2:
            top = res.max_min_degree(k, k - 1)[0]
            if top > resid_cap:
                last_fail = (
                    f"attempt {attempt}: residue ({k - 1})-set degree {top} "
                    f"above {resid_cap:.4f}"
                )
                continue

        T = 3 * ratio**delta
        sched = build_schedule(max(1, res.n), T, k, strict=cfg.strict_schedule)
        warnings.extend(sched.warnings)
        inner = akpss_run(
            res,
            sched,
            spawn_key(seed, "degree_gap", "akpss", attempt),
            retries_per_round=cfg.akpss_retries,
            check_input=False,
        )
        final = tuple(sorted(order[x] for x in inner.independent_set))
        ok, witness = H.is_independent(final)
        if not ok:
            raise AssertionError(f"residue set spans an input edge: {witness}")
        diag.update(
            {
                "attempt": attempt,
                "sample": len(U),
                "degree_filtered": len(Z),
                "pruning": prune_info,
                "residue": res.n,
                "schedule": {"T": T, "M": sched.M, "N": res.n},
                "rounds": inner.rounds,
                "inner_diagnostics": inner.diagnostics,
                "greedy_residue_size": len(greedy_set(res)),
            }
        )
        warnings.extend(inner.warnings)
        return RunCertificate(
            algorithm="pipeline_degree_gap",
            independent_set=final,
            verified=True,
            rounds=inner.rounds,
            diagnostics=diag,
            warnings=warnings,
        )
    raise ResidueNotBouquet(
        f"no acceptable residue after {cfg.retries} attempts: {last_fail}"
    )


def pipeline_graded_caps(
    H: LayeredHypergraph,
    t: float,
    seed: int | tuple[int, ...],
    epsilon: float,
    config: PipelineConfig | None = None,
) -> RunCertificate:
    """Reduction for k-graphs with graded degree caps: deg <= t^(k-1) per
    vertex, t^(k-i-eps) per i-set for middle i, t/(log t)^(k+1) per
    (k-1)-set, and no clean 4-cycle.  Samples at rate t^(delta-1) with
    delta = eps/(4k), cleans the sample, and runs the semi-random rounds.
    """
    cfg = config or PipelineConfig()
    k = _uniform_k(H)
    if k < 4:
        raise InvalidArguments(f"needs uniformity at least 4, got {k}")
    if t <= 1:
        raise InvalidArguments(f"needs t > 1, got {t}")
    if epsilon <= 0:
        raise InvalidArguments("epsilon must be positive")
    n = H.n
    warnings: list[str] = []
    delta = epsilon / (4 * k)

    caps = {1: t ** (k - 1)}
    for i in range(2, k - 1):
        caps[i] = t ** (k - i - epsilon)
    caps[k - 1] = t / math.log(t) ** (k + 1)
    if not cfg.trust_preconditions:
        for i, cap in sorted(caps.items()):
            observed = H.max_min_degree(k, i)[0]
            if observed > cap:
                msg = f"max {i}-set degree {observed} exceeds cap {cap:.4f}"
                if cfg.strict_schedule:
                    raise PreconditionFailed(msg)
                warnings.append(msg)
        if find_clean_four_cycles(H, limit=1):
            msg = "input has a clean 4-cycle"
            if cfg.strict_schedule:
                raise PreconditionFailed(msg)
            warnings.append(msg)

    p = min(1.0, t ** (delta - 1))
    trim_target = int(0.5 * n * t ** (delta - 1))
    resid_cap = 2 * p * t / math.log(t) ** (k + 1)
    deg_h = [0] * n
    for x in range(n):
        deg_h[x] = len(H.incidence[x])

    diag: dict = {
        "delta": delta,
        "p": p,
        "trim_target": trim_target,
        "residue_top_degree_cap": resid_cap,
        "caps": caps,
    }

    last_fail = ""
    for attempt in range(max(1, cfg.retries)):
        rng = stream(seed, "graded", "sample", attempt)
        U = _sample(n, p, rng)
        within = _degrees_within(H, U).get(k, {})
        Z = set(
            v for v in U if within.get(v, 0) > 10 * p ** (k - 1) * deg_h[v]
        )
        survivors, prune_info = prune_short_cycles(
            H,
            U - Z,
            two_ells=tuple(range(2, k - 1)),
            linear3=True,
            clean4=False,
            batch=cfg.prune_batch,
        )
        if len(survivors) > trim_target > 0:
            survivors = set(sorted(survivors)[:trim_target])
        if not survivors:
            last_fail = f"attempt {attempt}: nothing survived the pruning"
            continue
        order = sorted(survivors)
        res, _ = H.induce(order)
        report = check_bouquet(res)
        if not report.holds:
            last_fail = (
                f"attempt {attempt}: residue violates "
                f"{sorted(report.violated_properties())}"
            )
            continue
        top = res.max_min_degree(k, k - 1)[0]
        if top > resid_cap:
            last_fail = (
                f"attempt {attempt}: residue ({k - 1})-set degree {top} "
                f"above {resid_cap:.4f}"
            )
            continue

        T = 10 ** (1 / (k - 1)) * t**delta
        sched = build_schedule(max(1, res.n), T, k, strict=cfg.strict_schedule)
        warnings.extend(sched.warnings)
        inner = akpss_run(
            res,
            sched,
            spawn_key(seed, "graded", "akpss", attempt),
            retries_per_round=cfg.akpss_retries,
            check_input=False,
        )
        final = tuple(sorted(order[x] for x in inner.independent_set))
        ok, witness = H.is_independent(final)
        if not ok:
            raise AssertionError(f"residue set spans an input edge: {witness}")
        diag.update(
            {
                "attempt": attempt,
                "sample": len(U),
                "degree_filtered": len(Z),
                "pruning": prune_info,
                "residue": res.n,
                "residue_top_degree": top,
                "schedule": {"T": T, "M": sched.M, "N": res.n},
                "rounds": inner.rounds,
                "inner_diagnostics": inner.diagnostics,
                "greedy_residue_size": len(greedy_set(res)),
            }
        )
        warnings.extend(inner.warnings)
        return RunCertificate(
            algorithm="pipeline_graded_caps",
            independent_set=final,
            verified=True,
            rounds=inner.rounds,
            diagnostics=diag,
            warnings=warnings,
        )
    raise ResidueNotBouquet(
        f"no acceptable residue after {cfg.retries} attempts: {last_fail}"
    )
