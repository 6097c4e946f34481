"""Input families for tests and experiments.

gen_gnp draws each k-set independently; gen_girth5 layers strict cycle
pruning on top of it; gen_disjoint_cliques has a closed-form optimum for
calibration; gen_layered_bouquet grows a multi-layer instance edge by edge
under the structural conditions.
"""

from __future__ import annotations

import math

import numpy as np

from .core import LayeredHypergraph
from .errors import InvalidArguments
from .structure import (
    check_bouquet,
    find_clean_four_cycles,
    find_linear_three_cycles,
    list_two_cycles,
    prune_short_cycles,
)

# refuse to materialize absurd instances rather than hang
MAX_EXPECTED_EDGES = 5_000_000


def _unrank_combination(idx: int, n: int, k: int) -> tuple[int, ...]:
    """Lexicographic k-combination of range(n) at position idx."""
    out = []
    x = 0
    r = idx
    for pos in range(k):
        m = n - x
        j = k - pos
        # combinations skipping the first i values of [x, n) number
        # C(m, j) - C(m - i, j); binary-search the block holding r
        head = math.comb(m, j)
        lo, hi = 0, m - j
        while lo < hi:
            mid = (lo + hi) // 2
            if head - math.comb(m - mid - 1, j) > r:
                hi = mid
            else:
                lo = mid + 1
        out.append(x + lo)
        r -= head - math.comb(m - lo, j)
        x += lo + 1
    return tuple(out)


def gen_gnp(
    n: int, k: int, p: float, rng: np.random.Generator
) -> LayeredHypergraph:
    """Binomial k-graph: every k-subset becomes an edge with probability p.

    Edges are visited by jumping geometric gaps through the lexicographic
    enumeration, so the cost is proportional to the number of edges drawn,
    not to C(n, k).
    """
    if k < 2:
        raise InvalidArguments(f"uniformity must be at least 2, got {k}")
    if n < 0:
        raise InvalidArguments(f"n must be nonnegative, got {n}")
    if not (0.0 <= p <= 1.0):
        raise InvalidArguments(f"p must lie in [0, 1], got {p}")
    H = LayeredHypergraph(n, k)
    total = math.comb(n, k)
    if total == 0 or p == 0.0:
        return H
    if p * total > MAX_EXPECTED_EDGES:
        raise InvalidArguments(
            f"expected edge count {p * total:.3g} exceeds {MAX_EXPECTED_EDGES}"
        )
    if p >= 1.0:
        for idx in range(total):
            H.add_edge(_unrank_combination(idx, n, k))
        return H
    log_q = math.log1p(-p)
    idx = -1
    while True:
        u = rng.random()
        # geometric gap: failures before the next success
        gap = int(math.log(u) / log_q) if u > 0.0 else total
        idx += gap + 1
        if idx >= total:
            break
        H.add_edge(_unrank_combination(idx, n, k))
    return H


def gen_girth5(
    n: int,
    k: int,
    t: float,
    rng: np.random.Generator,
    batch: int = 512,
) -> tuple[LayeredHypergraph, dict]:
    """Random k-graph with every 2-, 3-, and 4-cycle removed.

    Draws a binomial graph with mean vertex degree t^(k-1), then strips
    2-cycles, linear 3-cycles, and clean 4-cycles in stages; the other
    length-3 and length-4 cycles contain one of those, so none survive.
    The expected cycle counts scale with powers of t alone, which keeps the
    deletion stage small even for large n.
    """
    if k < 2:
        raise InvalidArguments(f"uniformity must be at least 2, got {k}")
    if n < k:
        return LayeredHypergraph(n, k), {"initial_edges": 0}
    if t <= 0:
        raise InvalidArguments(f"t must be positive, got {t}")
    p = min(1.0, t ** (k - 1) / math.comb(n - 1, k - 1))
    H = gen_gnp(n, k, p, rng)
    initial = H.num_edges()

    keep, info2 = prune_short_cycles(
        H, set(range(n)), two_ells=tuple(range(2, k)), batch=batch
    )
    H2, _ = H.induce(sorted(keep))
    keep3, info3 = prune_short_cycles(
        H2, set(range(H2.n)), linear3=True, batch=batch
    )
    H3, _ = H2.induce(sorted(keep3))
    keep4, info4 = prune_short_cycles(
        H3, set(range(H3.n)), clean4=True, batch=batch
    )
    H4, _ = H3.induce(sorted(keep4))

    report = check_bouquet(H4)
    leftovers = (
        sum(len(list_two_cycles(H4, ell=ell, limit=1)) for ell in range(2, k)),
        len(find_linear_three_cycles(H4, limit=1)),
        len(find_clean_four_cycles(H4, limit=1)),
    )
    if any(leftovers) or not report.holds:
        raise AssertionError(
            f"pruning left short cycles behind: {leftovers}, "
            f"violations {sorted(report.violated_properties())}"
        )
    info = {
        "initial_edges": initial,
        "p": p,
        "final_n": H4.n,
        "final_edges": H4.num_edges(),
        "two_cycle_stage": info2,
        "linear_three_stage": info3,
        "clean_four_stage": info4,
    }
    return H4, info


def gen_disjoint_cliques(n: int, k: int, s: int) -> tuple[LayeredHypergraph, dict]:
    """Disjoint complete k-graphs on s vertices each, leftovers edgeless.

    The optimum is known exactly: each clique of size s >= k contributes
    k - 1 vertices, smaller blocks and leftovers contribute everything.
    """
    if k < 2:
        raise InvalidArguments(f"uniformity must be at least 2, got {k}")
    if s < 1:
        raise InvalidArguments(f"block size must be at least 1, got {s}")
    if n < 0:
        raise InvalidArguments(f"n must be nonnegative, got {n}")
    blocks = n // s
    if s >= k and blocks * math.comb(s, k) > MAX_EXPECTED_EDGES:
        raise InvalidArguments("requested clique family is too large")
    H = LayeredHypergraph(n, k)
    for b in range(blocks):
        base = b * s
        if s >= k:
            for idx in range(math.comb(s, k)):
                H.add_edge(
                    tuple(base + v for v in _unrank_combination(idx, s, k))
                )
    leftover = n - blocks * s
    per_block = min(s, k - 1)
    alpha = blocks * per_block + leftover
    info = {
        "blocks": blocks,
        "block_size": s,
        "leftover": leftover,
        "alpha_exact": alpha,
    }
    return H, info


def gen_layered_bouquet(
    n: int,
    k: int,
    counts: dict[int, int],
    rng: np.random.Generator,
    vertex_caps: dict[int, int] | None = None,
    max_stall: int = 2000,
) -> tuple[LayeredHypergraph, dict]:
    """Grow a layered instance one random edge at a time, keeping the
    structural conditions after every addition.

    counts[i] asks for that many edges of size i; vertex_caps[i], when
    given, additionally bounds per-vertex degrees per layer.  Additions
    that break anything are rolled back; after max_stall consecutive
    rejections in a layer the generator gives up on it and reports the
    shortfall instead of looping forever.
    """
    if k < 2:
        raise InvalidArguments(f"uniformity must be at least 2, got {k}")
    for i in counts:
        if not (2 <= i <= k):
            raise InvalidArguments(f"layer {i} outside 2..{k}")
    vertex_caps = dict(vertex_caps or {})
    H = LayeredHypergraph(n, k)
    achieved = {i: 0 for i in sorted(counts)}
    stalled: list[int] = []
    deg = {i: [0] * n for i in counts}

    for i in sorted(counts):
        target = counts[i]
        if target < 0:
            raise InvalidArguments(f"counts[{i}] must be nonnegative")
        if n < i:
            if target:
                stalled.append(i)
            continue
        cap = vertex_caps.get(i)
        misses = 0
        while achieved[i] < target and misses < max_stall:
            e = tuple(sorted(int(v) for v in rng.choice(n, size=i, replace=False)))
            if cap is not None and any(deg[i][v] >= cap for v in e):
                misses += 1
                continue
            if not H.add_edge(e):
                misses += 1
                continue
            if check_bouquet(H).holds:
                achieved[i] += 1
                misses = 0
                for v in e:
                    deg[i][v] += 1
            else:
                H.pop_edge(i)
                misses += 1
        if achieved[i] < target:
            stalled.append(i)

    info = {
        "targets": dict(counts),
        "achieved": achieved,
        "stalled_layers": stalled,
    }
    return H, info
