"""Almost-regular completion, then the three sampling reductions.

Completion pads a clean instance with fresh edges until every vertex sits
exactly at its per-layer cap, except for a small deficient set B.  The
reductions go the other way: sample a vertex subset, carve out the heavy
part, and hand a small clean residue to a finisher.
"""

from hyperind import (
    LayeredHypergraph,
    almost_regular_complete,
    check_bouquet,
    gen_girth5,
    gen_gnp,
    gen_layered_bouquet,
    pipeline_degree_gap,
    pipeline_graded_caps,
    pipeline_kminus2,
    stream,
)
import math

# out of nothing: a clean, exactly 3-regular pair graph
H2, B, info = almost_regular_complete(LayeredHypergraph(60, 2), {2: 3})
degs = sorted(len(H2.incidence[x]) for x in range(H2.n))
print(f"empty start, pair cap 3: added {info['added_per_layer'][2]} edges, "
      f"degrees {degs[0]}..{degs[-1]}, |B|={len(B)}, "
      f"clean: {check_bouquet(H2).holds}")

# on a grown instance the ball-exclusion rule stalls early at this size,
# so most vertices land in the deficient set; the original edges and the
# structural conditions survive regardless
H, _ = gen_layered_bouquet(60, 3, {2: 8, 3: 6}, stream(4, "completion"))
caps = {i: H.max_min_degree(i, 1)[0] + 2 for i in (2, 3)}
H2, B, info = almost_regular_complete(H, caps)
kept = all(set(H.layers[i]) <= set(H2.layers[i]) for i in (2, 3))
print(f"grown instance, caps {caps}: added {info['added_per_layer']}, "
      f"|B|={len(B)} (bound {info['b_bound']}), originals kept: {kept}, "
      f"still clean: {check_bouquet(H2).holds}")

print()

G = gen_gnp(300, 4, 60 / math.comb(300, 4), stream(5, "pk"))
cert = pipeline_kminus2(G, 16.0, seed=1)
d = cert.diagnostics
print(f"(k-2)-wise split: sampled {d['sample']} of {G.n}, residue {d['residue']}, "
      f"found {len(cert.independent_set)}, verified={cert.verified}")

S = gen_gnp(300, 4, 50 / math.comb(300, 4), stream(6, "dg"))
cert = pipeline_degree_gap(S, 1.0, case=1, seed=2, epsilon=1 / 16)
d = cert.diagnostics
print(f"degree gap, low-degree case: residue {d['residue']}, "
      f"found {len(cert.independent_set)}, verified={cert.verified}")

C, _ = gen_girth5(240, 4, 1.8, stream(7, "gc"))
cert = pipeline_graded_caps(C, 3.0, seed=3, epsilon=0.5)
d = cert.diagnostics
print(f"graded caps: accepted on attempt {d['attempt']}, residue {d['residue']} "
      f"(top (k-1)-degree {d['residue_top_degree']}), "
      f"found {len(cert.independent_set)}, verified={cert.verified}")
