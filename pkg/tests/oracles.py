"""Brute-force reference implementations for small instances.

Everything here trades speed for obviousness: exhaustive enumeration over
subsets, pairs, triples, and quadruples of edges, straight from the
definitions.  The real detectors are tested for exact agreement against
these on random instances with n <= 14.
"""

from __future__ import annotations

import itertools

from hyperind.core import LayeredHypergraph

EdgeKey = tuple[int, tuple[int, ...]]


def edge_keys(H: LayeredHypergraph) -> list[EdgeKey]:
    return sorted((layer, e) for layer, e in H.edges())


def brute_deg(H: LayeredHypergraph, vertices) -> int:
    s = set(vertices)
    return sum(1 for _, e in H.edges() if s <= set(e))


def brute_max_min_degree(H: LayeredHypergraph, layer: int, ell: int) -> tuple[int, int]:
    edges = H.layers[layer]
    if not edges:
        return (0, 0)
    if ell == 0:
        return (len(edges), len(edges))
    degs = []
    for sub in itertools.combinations(range(H.n), ell):
        s = set(sub)
        degs.append(sum(1 for e in edges if s <= set(e)))
    return (max(degs), min(degs))


def brute_two_cycles(H: LayeredHypergraph, ell: int | None = None) -> list[frozenset[EdgeKey]]:
    """Unordered pairs of distinct edges sharing exactly ell vertices
    (any count >= 2 when ell is None)."""
    keys = edge_keys(H)
    out = []
    for ka, kb in itertools.combinations(keys, 2):
        shared = len(set(ka[1]) & set(kb[1]))
        if (shared == ell) if ell is not None else (shared >= 2):
            out.append(frozenset((ka, kb)))
    return out


def brute_linear_three(H: LayeredHypergraph) -> list[frozenset[EdgeKey]]:
    """Unordered triples of distinct edges whose pairwise intersections are
    three distinct singletons."""
    keys = edge_keys(H)
    out = []
    for ka, kb, kc in itertools.combinations(keys, 3):
        sab = set(ka[1]) & set(kb[1])
        sac = set(ka[1]) & set(kc[1])
        sbc = set(kb[1]) & set(kc[1])
        if any(len(s) != 1 for s in (sab, sac, sbc)):
            continue
        if len(sab | sac | sbc) == 3:
            out.append(frozenset((ka, kb, kc)))
    return out


def _clean_arrangement(quad: tuple[EdgeKey, ...]) -> bool:
    """Whether the four edges admit a cyclic order with nonempty
    consecutive intersections and empty opposite ones."""
    for opp in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
        a, c, b, d = (set(quad[i][1]) for i in opp)
        if a & c or b & d:
            continue
        if a & b and b & c and c & d and d & a:
            return True
    return False


def brute_clean_four(H: LayeredHypergraph) -> list[frozenset[EdgeKey]]:
    keys = edge_keys(H)
    return [
        frozenset(quad)
        for quad in itertools.combinations(keys, 4)
        if _clean_arrangement(quad)
    ]


def brute_bouquet_violations(H: LayeredHypergraph) -> set[str]:
    """Names of the violated structural conditions, by direct enumeration."""
    violated: set[str] = set()
    keys = edge_keys(H)
    for ka, kb in itertools.combinations(keys, 2):
        shared = len(set(ka[1]) & set(kb[1]))
        if shared < 2:
            continue
        if ka[0] != kb[0]:
            violated.add("i")
        elif shared != ka[0] - 1:
            violated.add("ii")
    for triple in brute_linear_three(H):
        if sum(1 for layer, _ in triple if layer == 2) <= 1:
            violated.add("iii")
            break
    if brute_clean_four(H):
        violated.add("iv")
    edges3 = sorted(set(H.layers.get(3, [])))
    for ea, eb, ec in itertools.combinations(edges3, 3):
        sizes = sorted(
            (
                len(set(ea) & set(eb)),
                len(set(ea) & set(ec)),
                len(set(eb) & set(ec)),
            )
        )
        if sizes == [1, 2, 2]:
            violated.add("v")
            break
    return violated


def brute_vprime(H: LayeredHypergraph) -> list[frozenset[EdgeKey]]:
    """Triples where some middle edge meets the other two in s >= 2 vertices
    each while those two meet in s - 1."""
    keys = edge_keys(H)
    out = []
    for triple in itertools.combinations(keys, 3):
        for mid_idx in range(3):
            mid = set(triple[mid_idx][1])
            others = [set(triple[i][1]) for i in range(3) if i != mid_idx]
            s = len(others[0] & mid)
            if s >= 2 and len(others[1] & mid) == s and len(others[0] & others[1]) == s - 1:
                out.append(frozenset(triple))
                break
    return out


def brute_link_components(H: LayeredHypergraph, x: int) -> list[list[tuple[int, tuple[int, ...]]]]:
    elements = H.link(x)
    groups: list[set[int]] = []
    for idx, (_, residue) in enumerate(elements):
        merged = {idx}
        vset = set(residue)
        rest = []
        for group in groups:
            if any(set(elements[j][1]) & vset for j in group):
                merged |= group
            else:
                rest.append(group)
        groups = rest + [merged]
    components = [sorted(elements[j] for j in group) for group in groups]
    components.sort(key=lambda group: group[0])
    return components


def brute_classify(family) -> tuple[str, tuple[int, ...] | None]:
    """(kind, core) per the clique/sunflower dichotomy.

    Mirrors only the definition: sunflower = all pairwise intersections
    equal one common (i-1)-core; clique = all edges inside one (i+1)-set.
    """
    edges = sorted(set(tuple(sorted(e)) for e in family))
    sizes = set(len(e) for e in edges)
    if len(sizes) > 1:
        return ("not_applicable", None)
    i = sizes.pop()
    if len(edges) == 1:
        return ("sunflower", edges[0])
    for ea, eb in itertools.combinations(edges, 2):
        if len(set(ea) & set(eb)) != i - 1:
            return ("not_applicable", None)
    core = set(edges[0])
    for e in edges[1:]:
        core &= set(e)
    if len(core) == i - 1:
        return ("sunflower", tuple(sorted(core)))
    union = set()
    for e in edges:
        union |= set(e)
    if len(union) <= i + 1:
        return ("clique", None)
    return ("not_applicable", None)


def brute_common_neighbor_max(H: LayeredHypergraph, layer: int) -> int:
    edges = set(H.layers[layer])
    if not edges:
        return 0
    best = 0
    for x, y in itertools.combinations(range(H.n), 2):
        count = 0
        for e in edges:
            if x in e and y not in e:
                s = tuple(sorted(set(e) - {x}))
                if tuple(sorted(s + (y,))) in edges:
                    count += 1
        best = max(best, count)
    return best


def brute_alpha(H: LayeredHypergraph) -> int:
    """Exact independence number by subset enumeration; n <= 20 or so."""
    masks = []
    for _, e in H.edges():
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    best = 0
    for subset in range(1 << H.n):
        size = subset.bit_count()
        if size <= best:
            continue
        if all((subset & m) != m for m in masks):
            best = size
    return best


def random_layered(rng, n: int, k: int, edges: int) -> LayeredHypergraph:
    """Random mixed-layer instance for oracle comparisons."""
    H = LayeredHypergraph(n, k)
    for _ in range(edges):
        size = int(rng.integers(2, k + 1))
        e = rng.choice(n, size=size, replace=False)
        H.add_edge(tuple(int(v) for v in e))
    return H


def _replay_sample(n: int, p: float, rng) -> set[int]:
    coins = rng.random(n)
    return set(int(x) for x in (coins < p).nonzero()[0])


def _degrees_inside(H: LayeredHypergraph, U: set[int]) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for layer, e in H.edges():
        if all(v in U for v in e):
            bucket = out.setdefault(layer, {})
            for v in e:
                bucket[v] = bucket.get(v, 0) + 1
    return out


def replay_degree_gap_residue(H, d, case, seed, diag, prune_batch=512):
    """Rebuild the residue the degree-gap pipeline accepted, from the seed
    and the attempt number it recorded, so its claimed properties can be
    checked from outside."""
    from hyperind.rng import stream
    from hyperind.structure import prune_short_cycles

    k = H.k
    n = H.n
    heavy_cut = diag["heavy_cut"]
    sub: dict[tuple[int, ...], int] = {}
    for _, e in H.edges():
        for s in itertools.combinations(e, k - 1):
            sub[s] = sub.get(s, 0) + 1
    heavy = sorted(s for s, c in sub.items() if c >= heavy_cut)
    heavy_set = set(heavy)
    HH = LayeredHypergraph(n, k)
    for s in heavy:
        HH.add_edge(s)
    for _, e in H.edges():
        if not any(s in heavy_set for s in itertools.combinations(e, k - 1)):
            HH.add_edge(e)

    p = diag["p"]
    rng = stream(seed, "degree_gap", "sample", diag["attempt"])
    U = _replay_sample(n, p, rng)
    d1 = {
        i: HH.max_min_degree(i, 1)[0] if HH.layer_sizes().get(i, 0) else 0
        for i in (k - 1, k)
    }
    within = _degrees_inside(HH, U)
    Z = set()
    for i in (k - 1, k):
        cut = 40 * p ** (i - 1) * d1[i]
        for v, c in within.get(i, {}).items():
            if c > cut:
                Z.add(v)
    if case == 1:
        two_ells, clean4 = tuple(range(2, k)), True
    else:
        two_ells, clean4 = tuple(range(2, k - 1)), False
    survivors, _ = prune_short_cycles(
        HH, U - Z, two_ells=two_ells, linear3=True, clean4=clean4,
        batch=prune_batch,
    )
    trim = diag["trim_target"]
    if len(survivors) > trim > 0:
        survivors = set(sorted(survivors)[:trim])
    res, _ = HH.induce(sorted(survivors))
    return res


def replay_graded_caps_residue(H, t, epsilon, seed, diag, prune_batch=512):
    """Same replay for the graded-caps pipeline."""
    from hyperind.rng import stream
    from hyperind.structure import prune_short_cycles

    k = H.k
    n = H.n
    p = diag["p"]
    rng = stream(seed, "graded", "sample", diag["attempt"])
    U = _replay_sample(n, p, rng)
    within = _degrees_inside(H, U).get(k, {})
    Z = set(
        v for v in U
        if within.get(v, 0) > 10 * p ** (k - 1) * len(H.incidence[v])
    )
    survivors, _ = prune_short_cycles(
        H, U - Z, two_ells=tuple(range(2, k - 1)), linear3=True,
        clean4=False, batch=prune_batch,
    )
    trim = diag["trim_target"]
    if len(survivors) > trim > 0:
        survivors = set(sorted(survivors)[:trim])
    res, _ = H.induce(sorted(survivors))
    return res


def replay_kminus2_residue(H, seed, diag, prune_batch=512):
    """Rebuild the residue and the heavy-set graph of the sample-and-split
    pipeline from its recorded attempt."""
    import math

    from hyperind.rng import stream
    from hyperind.structure import prune_short_cycles

    k = H.k
    n = H.n
    rng = stream(seed, "kminus2", "sample", diag["attempt"])
    U = _replay_sample(n, diag["p"], rng)
    deg_u = _degrees_inside(H, U).get(k, {})
    ustar = set(v for v in U if deg_u.get(v, 0) >= diag["heavy_cut"])
    survivors, _ = prune_short_cycles(
        H, U - ustar, two_ells=tuple(range(2, k - 1)), batch=prune_batch
    )
    trim = diag["m_target"]
    if len(survivors) > trim > 0:
        survivors = set(sorted(survivors)[:trim])
    res, _ = H.induce(sorted(survivors))

    m = res.n
    beta = diag["split_exponent"]
    if m <= 1:
        theta = float(k + 2)
    else:
        theta = max(m ** (1 / (2 * k - 2)) / math.log(m) ** beta, float(k + 2))
    sub: dict[tuple[int, ...], int] = {}
    for _, e in res.edges():
        for s in itertools.combinations(e, k - 1):
            sub[s] = sub.get(s, 0) + 1
    g1 = LayeredHypergraph(m, k)
    for s in sorted(s for s, c in sub.items() if c >= theta):
        g1.add_edge(s)
    return res, g1
