"""Layered hypergraphs and their basic queries.

A layered hypergraph on vertex set {0, ..., n-1} holds one edge family per
uniformity i = 2..k.  Edges are sorted vertex tuples; each layer rejects
duplicates, so the families are plain sets.  All mutation goes through
``add_edge``; every query below is read-only and safe to call concurrently.

The on-disk format is line-oriented:

    H k=4 n=10
    # comment lines start with '#'
    0 1 2
    0 3 4 5

The first line fixes k and n; every following non-comment line is one edge.
``write_file`` emits layers in ascending uniformity and edges in lexicographic
order, so read -> write round trips are byte identical.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import InvalidArguments, InvalidUniformity, InvalidVertex, ParseError

__all__ = [
    "LayeredHypergraph",
    "MultiEdgeBag",
    "contract",
    "read_file",
    "write_file",
]

Edge = tuple[int, ...]


class LayeredHypergraph:
    """Vertex set {0..n-1} with one edge layer per uniformity 2..k.

    Parameters
    ----------
    n : number of vertices (may be 0)
    k : maximum uniformity, k >= 2
    """

    __slots__ = ("n", "k", "layers", "_edge_sets", "incidence")

    def __init__(self, n: int, k: int):
        if n < 0:
            raise InvalidArguments(f"n must be nonnegative, got {n}")
        if k < 2:
            raise InvalidUniformity(f"k must be at least 2, got {k}")
        self.n = n
        self.k = k
        self.layers: dict[int, list[Edge]] = {i: [] for i in range(2, k + 1)}
        self._edge_sets: dict[int, set[Edge]] = {i: set() for i in range(2, k + 1)}
        # vertex -> list of (layer, index into layers[layer])
        self.incidence: list[list[tuple[int, int]]] = [[] for _ in range(n)]

    # -- construction -----------------------------------------------------

    def add_edge(self, vertices) -> bool:
        """Insert an edge; return True if new, False if already present.

        Raises
        ------
        InvalidUniformity : len(vertices) outside 2..k or repeated vertices
        InvalidVertex : any id outside 0..n-1
        """
        edge = tuple(sorted(vertices))
        size = len(edge)
        if size < 2 or size > self.k:
            raise InvalidUniformity(f"edge size {size} outside 2..{self.k}")
        if len(set(edge)) != size:
            raise InvalidUniformity(f"repeated vertex in edge {vertices}")
        for v in edge:
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        if edge in self._edge_sets[size]:
            return False
        self._edge_sets[size].add(edge)
        idx = len(self.layers[size])
        self.layers[size].append(edge)
        for v in edge:
            self.incidence[v].append((size, idx))
        return True

    def pop_edge(self, layer: int) -> Edge:
        """Remove and return the most recently added edge of the layer.

        Only the newest edge per layer can go: earlier removals would shift
        the indices the incidence lists point at.
        """
        if layer not in self.layers or not self.layers[layer]:
            raise InvalidArguments(f"layer {layer} has no edge to remove")
        edge = self.layers[layer].pop()
        idx = len(self.layers[layer])
        self._edge_sets[layer].discard(edge)
        for v in edge:
            self.incidence[v].remove((layer, idx))
        return edge

    def copy(self) -> "LayeredHypergraph":
        other = LayeredHypergraph(self.n, self.k)
        for i in range(2, self.k + 1):
            other.layers[i] = list(self.layers[i])
            other._edge_sets[i] = set(self._edge_sets[i])
        other.incidence = [list(entries) for entries in self.incidence]
        return other

    # -- basic queries -----------------------------------------------------

    def edges(self):
        """Iterate over (layer, edge) pairs, layers ascending, insertion order."""
        for i in range(2, self.k + 1):
            for e in self.layers[i]:
                yield i, e

    def num_edges(self) -> int:
        return sum(len(self.layers[i]) for i in range(2, self.k + 1))

    def layer_sizes(self) -> dict[int, int]:
        return {i: len(self.layers[i]) for i in range(2, self.k + 1)}

    def has_edge(self, vertices) -> bool:
        edge = tuple(sorted(vertices))
        size = len(edge)
        if size < 2 or size > self.k:
            return False
        return edge in self._edge_sets[size]

    def edge_at(self, layer: int, idx: int) -> Edge:
        return self.layers[layer][idx]

    def deg(self, vertices) -> int:
        """Number of edges (all layers) containing every vertex of the set.

        deg of the empty set is the total edge count.
        """
        s = tuple(sorted(set(vertices)))
        if not s:
            return self.num_edges()
        for v in s:
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        # scan the smallest incidence list among the queried vertices
        pivot = min(s, key=lambda v: len(self.incidence[v]))
        if len(s) == 1:
            return len(self.incidence[pivot])
        rest = [v for v in s if v != pivot]
        count = 0
        for layer, idx in self.incidence[pivot]:
            e = self.layers[layer][idx]
            if all(v in e for v in rest):
                count += 1
        return count

    def max_min_degree(self, layer: int, ell: int) -> tuple[int, int]:
        """(max, min) degree over ell-subsets within one layer.

        The max ranges over ell-subsets of edges (any uncovered subset has
        degree 0, so this loses nothing).  The min ranges over *all*
        ell-subsets of the vertex set, hence is 0 as soon as some ell-subset
        lies in no edge.  An empty layer reports (0, 0).

        Raises
        ------
        InvalidArguments : layer outside 2..k or ell not in 0..layer-1
        """
        if layer not in self.layers:
            raise InvalidArguments(f"layer {layer} outside 2..{self.k}")
        if not (0 <= ell < layer):
            raise InvalidArguments(f"ell={ell} must satisfy 0 <= ell < {layer}")
        edges = self.layers[layer]
        if not edges:
            return (0, 0)
        if ell == 0:
            m = len(edges)
            return (m, m)
        counts: dict[Edge, int] = {}
        for e in edges:
            for sub in itertools.combinations(e, ell):
                counts[sub] = counts.get(sub, 0) + 1
        dmax = max(counts.values())
        total_subsets = math.comb(self.n, ell)
        dmin = min(counts.values()) if len(counts) == total_subsets else 0
        return (dmax, dmin)

    def link(self, x: int) -> list[tuple[int, Edge]]:
        """Residues e \\ {x} of the edges through x, tagged with their layer.

        Residues of distinct edges through x are themselves distinct, so the
        result is duplicate-free by construction.
        """
        if not (0 <= x < self.n):
            raise InvalidVertex(f"vertex {x} outside 0..{self.n - 1}")
        out = []
        for layer, idx in self.incidence[x]:
            e = self.layers[layer][idx]
            out.append((layer, tuple(v for v in e if v != x)))
        out.sort()
        return out

    def closed_neighborhood(self, x: int) -> set[int]:
        """{x} plus every vertex sharing an edge with x."""
        if not (0 <= x < self.n):
            raise InvalidVertex(f"vertex {x} outside 0..{self.n - 1}")
        out = {x}
        for layer, idx in self.incidence[x]:
            out.update(self.layers[layer][idx])
        return out

    def neighborhood(self, vertices, radius: int = 1) -> set[int]:
        """Iterated closed neighborhood of a vertex set.

        radius 0 returns the set itself; radius r applies the closed
        neighborhood r times.
        """
        if radius < 0:
            raise InvalidArguments("radius must be nonnegative")
        current = set(vertices)
        for v in current:
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        for _ in range(radius):
            nxt = set(current)
            for v in current:
                for layer, idx in self.incidence[v]:
                    nxt.update(self.layers[layer][idx])
            if len(nxt) == len(current):
                break
            current = nxt
        return current

    def distance(self, x: int, y: int) -> int | None:
        """BFS distance where one hop crosses one edge; None if unreachable."""
        for v in (x, y):
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        if x == y:
            return 0
        seen = {x}
        frontier = deque([(x, 0)])
        while frontier:
            v, d = frontier.popleft()
            for layer, idx in self.incidence[v]:
                for w in self.layers[layer][idx]:
                    if w == y:
                        return d + 1
                    if w not in seen:
                        seen.add(w)
                        frontier.append((w, d + 1))
        return None

    # -- derived hypergraphs ------------------------------------------------

    def induce(self, vertices) -> tuple["LayeredHypergraph", dict[int, int]]:
        """Subhypergraph on a vertex subset, relabeled to 0..|U|-1.

        Keeps exactly the edges fully inside the subset.  Returns the new
        hypergraph and the old->new relabeling map (ascending ids map to
        ascending ids).
        """
        u = sorted(set(vertices))
        for v in u:
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        old_to_new = {v: i for i, v in enumerate(u)}
        sub = LayeredHypergraph(len(u), self.k)
        uset = set(u)
        for i in range(2, self.k + 1):
            for e in self.layers[i]:
                if all(v in uset for v in e):
                    sub.add_edge(tuple(old_to_new[v] for v in e))
        return sub, old_to_new

    def is_independent(self, vertices) -> tuple[bool, Edge | None]:
        """Whether no edge lies inside the set; returns a witness edge if one does."""
        s = set(vertices)
        for v in s:
            if not (0 <= v < self.n):
                raise InvalidVertex(f"vertex {v} outside 0..{self.n - 1}")
        for i in range(2, self.k + 1):
            for e in self.layers[i]:
                if all(v in s for v in e):
                    return False, e
        return True, None

    # -- canonical form ------------------------------------------------------

    def canonical_layers(self) -> dict[int, list[Edge]]:
        """Layers with edges in lexicographic order (the on-disk order)."""
        return {i: sorted(self.layers[i]) for i in range(2, self.k + 1)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LayeredHypergraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and all(self._edge_sets[i] == other._edge_sets.get(i, set()) for i in self._edge_sets)
        )

    def __repr__(self) -> str:
        sizes = ", ".join(f"{i}:{len(self.layers[i])}" for i in range(2, self.k + 1))
        return f"LayeredHypergraph(n={self.n}, k={self.k}, edges={{{sizes}}})"


@dataclass
class MultiEdgeBag:
    """Raw outcome of contracting edges onto a vertex subset.

    ``edges`` keeps one entry per source edge whose contraction has at least
    two vertices, multiplicities and nesting included.  ``sources`` aligns
    with ``edges`` and records the (layer, original edge) each entry came
    from.  ``dropped_small`` counts contractions of size <= 1, which carry no
    constraint and are discarded.
    """

    edges: list[Edge] = field(default_factory=list)
    sources: list[tuple[int, Edge]] = field(default_factory=list)
    dropped_small: int = 0

    def multiplicity(self, edge) -> int:
        target = tuple(sorted(edge))
        return sum(1 for e in self.edges if e == target)


def contract(H: LayeredHypergraph, vstar) -> tuple[MultiEdgeBag, LayeredHypergraph]:
    """Contract every edge of H onto a vertex subset and clean the result.

    The bag holds all contractions e & vstar with at least 2 vertices.  The
    cleaned hypergraph (same vertex ids as H) keeps one copy of each distinct
    contraction and then discards any contraction that properly contains
    another surviving one, so no edge of the result nests inside a smaller
    edge.  Contractions of size <= 1 are dropped and counted.
    """
    vset = set(vstar)
    for v in vset:
        if not (0 <= v < H.n):
            raise InvalidVertex(f"vertex {v} outside 0..{H.n - 1}")
    bag = MultiEdgeBag()
    for layer, e in H.edges():
        ce = tuple(v for v in e if v in vset)
        if len(ce) >= 2:
            bag.edges.append(ce)
            bag.sources.append((layer, e))
        else:
            bag.dropped_small += 1
    distinct = set(bag.edges)
    # drop proper supersets of surviving contractions, smallest first
    by_size = sorted(distinct, key=len)
    kept: set[Edge] = set()
    for ce in by_size:
        ce_set = set(ce)
        nested = False
        for other in kept:
            if len(other) < len(ce) and set(other) <= ce_set:
                nested = True
                break
        if not nested:
            kept.add(ce)
    cleaned = LayeredHypergraph(H.n, H.k)
    for ce in sorted(kept, key=lambda e: (len(e), e)):
        cleaned.add_edge(ce)
    return bag, cleaned


# -- file format ------------------------------------------------------------


def write_file(H: LayeredHypergraph, path: str) -> None:
    """Write in the canonical text format (layers ascending, edges sorted)."""
    lines = [f"H k={H.k} n={H.n}"]
    canon = H.canonical_layers()
    for i in range(2, H.k + 1):
        for e in canon[i]:
            lines.append(" ".join(str(v) for v in e))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_file(path: str) -> LayeredHypergraph:
    """Parse the text format; see the module docstring for the grammar.

    Raises
    ------
    ParseError : malformed header or edge line (carries the line number)
    InvalidVertex / InvalidUniformity : structurally invalid edge
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw_lines = fh.read().splitlines()
    header_idx = None
    for lineno, raw in enumerate(raw_lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        header_idx = lineno
        break
    if header_idx is None:
        raise ParseError("missing header line 'H k=<k> n=<n>'")
    header = raw_lines[header_idx - 1].strip()
    parts = header.split()
    if len(parts) != 3 or parts[0] != "H" or not parts[1].startswith("k=") or not parts[2].startswith("n="):
        raise ParseError("header must be 'H k=<k> n=<n>'", line=header_idx)
    try:
        k = int(parts[1][2:])
        n = int(parts[2][2:])
    except ValueError:
        raise ParseError("header k and n must be integers", line=header_idx) from None
    try:
        H = LayeredHypergraph(n, k)
    except (InvalidArguments, InvalidUniformity) as exc:
        raise ParseError(str(exc), line=header_idx) from None
    for lineno in range(header_idx + 1, len(raw_lines) + 1):
        text = raw_lines[lineno - 1].strip()
        if not text or text.startswith("#"):
            continue
        try:
            vertices = [int(tok) for tok in text.split()]
        except ValueError:
            raise ParseError(f"non-integer token in edge line {text!r}", line=lineno) from None
        if len(set(vertices)) != len(vertices):
            raise ParseError(f"repeated vertex in edge line {text!r}", line=lineno)
        for v in vertices:
            if not (0 <= v < n):
                raise InvalidVertex(f"line {lineno}: vertex {v} outside 0..{n - 1}")
        if not (2 <= len(vertices) <= k):
            raise InvalidUniformity(f"line {lineno}: edge size {len(vertices)} outside 2..{k}")
        H.add_edge(vertices)
    return H
