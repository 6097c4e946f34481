"""Short-cycle detection and the bouquet property.

The cycle taxonomy this module works with:

* (2,l)-cycle: two distinct edges, any layers, sharing exactly l >= 2
  vertices.
* linear 3-cycle: three edges whose pairwise intersections are three
  distinct singletons.
* clean 4-cycle: four edges e1..e4 with nonempty consecutive intersections
  (indices mod 4) whose opposite pairs are disjoint, e1 & e3 = e2 & e4 = {}.

The bouquet property bundles five conditions on a layered hypergraph:

  i)   edges from different layers meet in at most one vertex;
  ii)  two layer-i edges meet in 0, 1, or i-1 vertices;
  iii) every linear 3-cycle uses at least two layer-2 edges;
  iv)  no clean 4-cycle;
  v)   no layer-3 triple with |e1 & e2| = |e2 & e3| = 2 and |e1 & e3| = 1.

A strengthened form of v) for every uniformity (the v' pattern,
|e1 & e2| = |e2 & e3| = l-1 with |e1 & e3| = l-2) follows from i), ii), v);
``check_property_vprime`` detects it directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import LayeredHypergraph
from .errors import InvalidArguments, InvalidVertex

__all__ = [
    "CycleWitness",
    "BouquetReport",
    "Classification",
    "count_two_cycles",
    "list_two_cycles",
    "find_linear_three_cycles",
    "find_clean_four_cycles",
    "check_bouquet",
    "check_property_vprime",
    "link_components",
    "classify_intersecting_family",
    "common_neighbor_max",
]

Edge = tuple[int, ...]
EdgeKey = tuple[int, Edge]  # (layer, sorted vertex tuple)


@dataclass
class CycleWitness:
    """One concrete short cycle.

    ``edges`` holds (layer, edge) pairs; ``meeting`` the distinguished
    meeting vertices (the shared set for a 2-cycle, one vertex per
    consecutive pair for the longer cycles).  ``h2_count`` is the number of
    participating layer-2 edges (only meaningful for linear 3-cycles).
    """

    kind: str
    edges: list[EdgeKey]
    meeting: tuple[int, ...]
    ell: int | None = None
    h2_count: int = 0

    def sort_key(self):
        return tuple(self.edges)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ell": self.ell,
            "edges": [[layer, list(e)] for layer, e in self.edges],
            "meeting": list(self.meeting),
            "h2_count": self.h2_count,
        }


@dataclass
class BouquetReport:
    """Outcome of ``check_bouquet``: first witness per violated property."""

    holds: bool
    violations: list[tuple[str, object]] = field(default_factory=list)

    def violated_properties(self) -> list[str]:
        return [prop for prop, _ in self.violations]

    def to_dict(self) -> dict:
        out = []
        for prop, witness in self.violations:
            if isinstance(witness, CycleWitness):
                out.append({"property": prop, "witness": witness.to_dict()})
            else:
                out.append({"property": prop, "witness": witness})
        return {"holds": self.holds, "violations": out}


@dataclass
class Classification:
    """Result of the clique/sunflower dichotomy for an intersecting family."""

    kind: str  # "clique" | "sunflower" | "not_applicable"
    uniformity: int | None = None
    core: Edge | None = None
    witness: object = None
    reason: str | None = None


# -- shared indexes -----------------------------------------------------------


def _all_edge_keys(H: LayeredHypergraph) -> list[EdgeKey]:
    return [(layer, e) for layer, e in H.edges()]


def _pair_buckets(H: LayeredHypergraph) -> dict[tuple[int, int], list[EdgeKey]]:
    """vertex pair -> edges containing it, across every layer."""
    buckets: dict[tuple[int, int], list[EdgeKey]] = {}
    for layer, e in H.edges():
        for pair in itertools.combinations(e, 2):
            buckets.setdefault(pair, []).append((layer, e))
    return buckets


def _subset_buckets(H: LayeredHypergraph, ell: int) -> dict[Edge, list[EdgeKey]]:
    buckets: dict[Edge, list[EdgeKey]] = {}
    for layer, e in H.edges():
        if len(e) < ell:
            continue
        for sub in itertools.combinations(e, ell):
            buckets.setdefault(sub, []).append((layer, e))
    return buckets


def _inter_size(a: Edge, b: Edge) -> int:
    sb = set(b)
    return sum(1 for v in a if v in sb)


# -- 2-cycles -----------------------------------------------------------------


def _two_cycle_iter(H: LayeredHypergraph, ell: int | None):
    """Yield (2,l)-cycles in deterministic order.

    With ell fixed, a pair sharing exactly ell vertices sits in exactly one
    shared ell-subset bucket, so the pass below emits each cycle once.  With
    ell None, every exact size >= 2 is reported (deduplicated via the pair
    bucket pass: a pair sharing j vertices is emitted only from its
    lexicographically least shared pair).
    """
    if ell is not None:
        if ell < 2:
            raise InvalidArguments(f"two-cycle overlap must be >= 2, got {ell}")
        buckets = _subset_buckets(H, ell)
        for sub in sorted(buckets):
            entries = buckets[sub]
            if len(entries) < 2:
                continue
            entries = sorted(entries)
            for (la, ea), (lb, eb) in itertools.combinations(entries, 2):
                if (la, ea) == (lb, eb):
                    continue
                if _inter_size(ea, eb) == ell:
                    yield CycleWitness(
                        kind="two_cycle",
                        ell=ell,
                        edges=[(la, ea), (lb, eb)],
                        meeting=sub,
                    )
        return
    buckets = _pair_buckets(H)
    for pair in sorted(buckets):
        entries = buckets[pair]
        if len(entries) < 2:
            continue
        entries = sorted(entries)
        for (la, ea), (lb, eb) in itertools.combinations(entries, 2):
            shared = tuple(sorted(set(ea) & set(eb)))
            if shared[:2] != pair:
                continue  # this pair of edges is emitted from its least shared pair
            yield CycleWitness(
                kind="two_cycle",
                ell=len(shared),
                edges=[(la, ea), (lb, eb)],
                meeting=shared,
            )


def list_two_cycles(H: LayeredHypergraph, ell: int | None = None, limit: int | None = None) -> list[CycleWitness]:
    """All (2,l)-cycles, mixed layers included; ell None means any l >= 2.

    ``limit`` truncates the enumeration deterministically.
    """
    out = []
    for w in _two_cycle_iter(H, ell):
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


def count_two_cycles(H: LayeredHypergraph, ell: int) -> int:
    """Exact number of unordered edge pairs sharing exactly ell vertices."""
    return sum(1 for _ in _two_cycle_iter(H, ell))


# -- linear 3-cycles ----------------------------------------------------------


def _linear_three_iter(H: LayeredHypergraph):
    """Yield linear 3-cycles once each, in deterministic order.

    The meeting vertices of a linear 3-cycle form a triangle in the graph of
    covered vertex pairs, so enumeration walks those triangles and filters
    edge combinations by the exact-singleton conditions.
    """
    buckets = _pair_buckets(H)
    adj: dict[int, set[int]] = {}
    for a, b in buckets:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for a, b in sorted(buckets):
        common = adj[a] & adj[b]
        for c in sorted(v for v in common if v > b):
            if (a, c) not in buckets or (b, c) not in buckets:
                continue
            # roles: e_ab meets e_ac at a, e_ab meets e_bc at b, e_ac meets e_bc at c
            for ke_ab in sorted(buckets[(a, b)]):
                set_ab = set(ke_ab[1])
                if c in set_ab:
                    continue
                for ke_ac in sorted(buckets[(a, c)]):
                    if ke_ac == ke_ab:
                        continue
                    set_ac = set(ke_ac[1])
                    if b in set_ac or len(set_ab & set_ac) != 1:
                        continue
                    for ke_bc in sorted(buckets[(b, c)]):
                        if ke_bc == ke_ab or ke_bc == ke_ac:
                            continue
                        set_bc = set(ke_bc[1])
                        if a in set_bc:
                            continue
                        if len(set_ab & set_bc) != 1 or len(set_ac & set_bc) != 1:
                            continue
                        edges = sorted([ke_ab, ke_ac, ke_bc])
                        h2 = sum(1 for layer, _ in edges if layer == 2)
                        yield CycleWitness(
                            kind="linear_three",
                            edges=edges,
                            meeting=(a, b, c),
                            h2_count=h2,
                        )


def find_linear_three_cycles(H: LayeredHypergraph, limit: int | None = None) -> list[CycleWitness]:
    """Linear 3-cycles with their layer-2 edge counts in ``h2_count``."""
    out = []
    for w in _linear_three_iter(H):
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


# -- clean 4-cycles -----------------------------------------------------------


def _edge_adjacency(H: LayeredHypergraph) -> tuple[list[EdgeKey], dict[EdgeKey, list[EdgeKey]]]:
    keys = sorted(_all_edge_keys(H))
    by_vertex: dict[int, list[EdgeKey]] = {}
    for key in keys:
        for v in key[1]:
            by_vertex.setdefault(v, []).append(key)
    adj: dict[EdgeKey, list[EdgeKey]] = {}
    for key in keys:
        seen: set[EdgeKey] = set()
        for v in key[1]:
            for other in by_vertex[v]:
                if other != key:
                    seen.add(other)
        adj[key] = sorted(seen)
    return keys, adj


def _orient_clean_cycle(quad: tuple[EdgeKey, EdgeKey, EdgeKey, EdgeKey]) -> CycleWitness:
    """Build the canonical witness for a clean 4-cycle given (e1,e2,e3,e4)
    where {e1,e3} and {e2,e4} are the disjoint opposite pairs."""
    e1, e2, e3, e4 = quad
    opposite = {e1: e3, e3: e1, e2: e4, e4: e2}
    first = min(quad)
    other_pair = (e2, e4) if first in (e1, e3) else (e1, e3)
    second = min(other_pair)
    cycle = [first, second, opposite[first], opposite[second]]
    meeting = []
    for idx in range(4):
        a = set(cycle[idx][1])
        b = set(cycle[(idx + 1) % 4][1])
        meeting.append(min(a & b))
    return CycleWitness(kind="clean_four", edges=cycle, meeting=tuple(meeting))


def _clean_four_iter(H: LayeredHypergraph):
    """Yield clean 4-cycles once each.

    For every middle edge, paths e1 - mid - e3 with e1 & e3 = {} are bucketed
    by the endpoint pair; two middles for one endpoint pair that are
    themselves disjoint close a clean cycle.  Each cycle shows up under both
    of its opposite pairs, so results are deduplicated by edge set.
    """
    _, adj = _edge_adjacency(H)
    buckets: dict[tuple[EdgeKey, EdgeKey], list[EdgeKey]] = {}
    emitted: set[frozenset[EdgeKey]] = set()
    for mid in sorted(adj):
        neighbors = adj[mid]
        for i, e1 in enumerate(neighbors):
            s1 = set(e1[1])
            for e3 in neighbors[i + 1 :]:
                if s1 & set(e3[1]):
                    continue
                pair = (e1, e3)
                prior = buckets.setdefault(pair, [])
                for other_mid in prior:
                    if set(mid[1]) & set(other_mid[1]):
                        continue
                    key = frozenset((e1, e3, mid, other_mid))
                    if len(key) < 4 or key in emitted:
                        continue
                    emitted.add(key)
                    yield _orient_clean_cycle((e1, other_mid, e3, mid))
                prior.append(mid)


def find_clean_four_cycles(H: LayeredHypergraph, limit: int | None = None) -> list[CycleWitness]:
    """Clean 4-cycles, one witness per dihedral equivalence class."""
    out = []
    for w in _clean_four_iter(H):
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    if limit is None:
        out.sort(key=CycleWitness.sort_key)
    return out


# -- bouquet ------------------------------------------------------------------


def _property_v_iter(H: LayeredHypergraph):
    """Layer-3 triples with overlap pattern (2, 2, 1); the middle edge is the
    unique one meeting both others in two vertices."""
    edges3 = sorted(set(H.layers.get(3, [])))
    if len(edges3) < 3:
        return
    buckets: dict[tuple[int, int], list[Edge]] = {}
    for e in edges3:
        for pair in itertools.combinations(e, 2):
            buckets.setdefault(pair, []).append(e)
    for mid in edges3:
        partners: list[Edge] = []
        seen: set[Edge] = set()
        for pair in itertools.combinations(mid, 2):
            for other in buckets.get(pair, ()):
                if other != mid and other not in seen and _inter_size(other, mid) == 2:
                    seen.add(other)
                    partners.append(other)
        partners.sort()
        for e1, e3 in itertools.combinations(partners, 2):
            if _inter_size(e1, e3) == 1:
                yield CycleWitness(
                    kind="property_v",
                    edges=sorted([(3, e1), (3, mid), (3, e3)]),
                    meeting=tuple(sorted(set(e1) & set(e3))),
                )


def check_bouquet(H: LayeredHypergraph) -> BouquetReport:
    """Evaluate the five bouquet conditions; first witness per violation.

    Properties iii) and iv) trigger full cycle scans, so on large inputs this
    costs what the cycle detectors cost.
    """
    violations: list[tuple[str, object]] = []

    buckets = _pair_buckets(H)
    witness_i = None
    witness_ii = None
    for pair in sorted(buckets):
        entries = buckets[pair]
        if len(entries) < 2:
            continue
        entries = sorted(entries)
        for (la, ea), (lb, eb) in itertools.combinations(entries, 2):
            shared = tuple(sorted(set(ea) & set(eb)))
            if shared[:2] != pair:
                continue  # count each pair of edges once, from its least shared pair
            if la != lb:
                if witness_i is None:
                    witness_i = CycleWitness(
                        kind="cross_layer_overlap", edges=[(la, ea), (lb, eb)], meeting=shared, ell=len(shared)
                    )
            else:
                if len(shared) != la - 1 and witness_ii is None:
                    witness_ii = CycleWitness(
                        kind="within_layer_overlap", edges=[(la, ea), (lb, eb)], meeting=shared, ell=len(shared)
                    )
        if witness_i is not None and witness_ii is not None:
            break
    if witness_i is not None:
        violations.append(("i", witness_i))
    if witness_ii is not None:
        violations.append(("ii", witness_ii))

    for w in _linear_three_iter(H):
        if w.h2_count <= 1:
            violations.append(("iii", w))
            break

    for w in _clean_four_iter(H):
        violations.append(("iv", w))
        break

    for w in _property_v_iter(H):
        violations.append(("v", w))
        break

    return BouquetReport(holds=not violations, violations=violations)


def check_property_vprime(H: LayeredHypergraph, limit: int | None = None) -> list[CycleWitness]:
    """Triples with |e1 & e2| = |e2 & e3| = l-1 and |e1 & e3| = l-2, l >= 3.

    Edges may come from any layers.  In a hypergraph satisfying bouquet
    conditions i), ii), v) no such triple exists; this detector checks the
    pattern directly.
    """
    keys = sorted(_all_edge_keys(H))
    buckets = _pair_buckets(H)
    out: list[CycleWitness] = []
    for mid_key in keys:
        mid = mid_key[1]
        partners: dict[EdgeKey, int] = {}
        seen: set[EdgeKey] = set()
        for pair in itertools.combinations(mid, 2):
            for other in buckets.get(pair, ()):
                if other != mid_key and other not in seen:
                    seen.add(other)
                    partners[other] = _inter_size(other[1], mid)
        plist = sorted(partners)
        for i, ka in enumerate(plist):
            s = partners[ka]
            if s < 2:
                continue
            for kb in plist[i + 1 :]:
                if partners[kb] != s:
                    continue
                if _inter_size(ka[1], kb[1]) == s - 1:
                    out.append(
                        CycleWitness(
                            kind="vprime",
                            ell=s + 1,
                            edges=sorted([ka, mid_key, kb]),
                            meeting=tuple(sorted(set(ka[1]) & set(kb[1]))),
                        )
                    )
                    if limit is not None and len(out) >= limit:
                        return out
    return out


# -- links and families --------------------------------------------------------


def link_components(H: LayeredHypergraph, x: int) -> list[list[tuple[int, Edge]]]:
    """Connected components of the link of x under shared-vertex adjacency.

    Components are sorted by their least element; inside a bouquet
    hypergraph every component of size >= 2 stays within one layer.
    """
    elements = H.link(x)
    parent = list(range(len(elements)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    by_vertex: dict[int, list[int]] = {}
    for idx, (_, residue) in enumerate(elements):
        for v in residue:
            by_vertex.setdefault(v, []).append(idx)
    for members in by_vertex.values():
        for other in members[1:]:
            union(members[0], other)
    groups: dict[int, list[tuple[int, Edge]]] = {}
    for idx, element in enumerate(elements):
        groups.setdefault(find(idx), []).append(element)
    components = [sorted(group) for group in groups.values()]
    components.sort(key=lambda group: group[0])
    return components


def classify_intersecting_family(family) -> Classification:
    """Clique/sunflower dichotomy for a pairwise-overlapping edge family.

    Precondition: every pair of distinct members shares at least two
    vertices (violations raise InvalidArguments).  Mixed uniformities, or a
    pair meeting in other than i-1 vertices, yield ``not_applicable`` with a
    witness pair.  A single edge counts as a sunflower whose core is the
    edge itself; when both descriptions fit (two edges), sunflower wins.
    """
    edges = sorted(set(tuple(sorted(e)) for e in family))
    if not edges:
        raise InvalidArguments("family must contain at least one edge")
    sizes = sorted(set(len(e) for e in edges))
    if len(sizes) > 1:
        small = next(e for e in edges if len(e) == sizes[0])
        big = next(e for e in edges if len(e) == sizes[-1])
        return Classification(kind="not_applicable", witness=(small, big), reason="mixed uniformities")
    i = sizes[0]
    if i < 2:
        raise InvalidArguments(f"edges must have at least 2 vertices, got {i}")
    if len(edges) == 1:
        return Classification(kind="sunflower", uniformity=i, core=edges[0])
    for ea, eb in itertools.combinations(edges, 2):
        overlap = _inter_size(ea, eb)
        if overlap < 2:
            raise InvalidArguments(f"family is not pairwise >= 2 intersecting: {ea} vs {eb}")
        if overlap != i - 1:
            return Classification(
                kind="not_applicable", uniformity=i, witness=(ea, eb), reason=f"pair shares {overlap} != {i - 1}"
            )
    core = set(edges[0])
    for e in edges[1:]:
        core &= set(e)
    if len(core) == i - 1:
        return Classification(kind="sunflower", uniformity=i, core=tuple(sorted(core)))
    union: set[int] = set()
    for e in edges:
        union |= set(e)
    if len(union) <= i + 1:
        return Classification(kind="clique", uniformity=i)
    first = edges[0]
    breaker = next(e for e in edges if len(core & set(e)) < i - 1 or not set(e) <= union)
    return Classification(kind="not_applicable", uniformity=i, witness=(first, breaker), reason="no common core and not inside an (i+1)-set")


def common_neighbor_max(H: LayeredHypergraph, layer: int | None = None) -> int:
    """Largest number of common completions shared by two vertices.

    For a single layer of i-uniform edges this is the maximum over vertex
    pairs x != y of the number of (i-1)-sets S with S + {x} and S + {y} both
    edges.  With ``layer`` omitted, the sole nonempty layer is used; an
    edgeless hypergraph reports 0.
    """
    if layer is None:
        nonempty = [i for i in range(2, H.k + 1) if H.layers[i]]
        if not nonempty:
            return 0
        if len(nonempty) > 1:
            raise InvalidArguments(f"multiple nonempty layers {nonempty}; pass layer explicitly")
        layer = nonempty[0]
    if layer not in H.layers:
        raise InvalidArguments(f"layer {layer} outside 2..{H.k}")
    completions: dict[Edge, list[int]] = {}
    for e in sorted(set(H.layers[layer])):
        for x in e:
            rest = tuple(v for v in e if v != x)
            completions.setdefault(rest, []).append(x)
    pair_counts: dict[tuple[int, int], int] = {}
    best = 0
    for rest in sorted(completions):
        ext = sorted(completions[rest])
        if len(ext) < 2:
            continue
        for x, y in itertools.combinations(ext, 2):
            count = pair_counts.get((x, y), 0) + 1
            pair_counts[(x, y)] = count
            if count > best:
                best = count
    return best

def prune_short_cycles(
    H: LayeredHypergraph,
    keep: set[int],
    two_ells: tuple[int, ...] = (),
    linear3: bool = False,
    clean4: bool = False,
    batch: int = 512,
) -> tuple[set[int], dict]:
    """Delete the lowest vertex of each detected cycle, in batches, until the
    graph induced on the kept vertices is clean for the requested kinds.

    Vertex deletion never creates new cycles, so kinds cleared in an earlier
    pass stay cleared.  Returns (surviving vertex ids, info) where info
    counts passes and witnesses seen per kind.
    """
    deleted = {"two_cycle": 0, "linear_three": 0, "clean_four": 0}
    passes = 0
    keep = set(keep)
    while True:
        passes += 1
        order = sorted(keep)
        sub, _ = H.induce(order)
        doomed: set[int] = set()
        for ell in two_ells:
            for w in list_two_cycles(sub, ell=ell, limit=batch):
                doomed.add(min(v for _, e in w.edges for v in e))
                deleted["two_cycle"] += 1
        if linear3:
            for w in find_linear_three_cycles(sub, limit=batch):
                doomed.add(min(v for _, e in w.edges for v in e))
                deleted["linear_three"] += 1
        if clean4:
            for w in find_clean_four_cycles(sub, limit=batch):
                doomed.add(min(v for _, e in w.edges for v in e))
                deleted["clean_four"] += 1
        if not doomed:
            break
        keep -= {order[v] for v in doomed}
    return keep, {"passes": passes, "witnesses": deleted}
