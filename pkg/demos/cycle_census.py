"""Census the short cycles of a random triple system, then prune them away.

The structural conditions the solver needs are all about what is absent:
no pair of edges sharing two vertices without pair-edge support, no
unsupported linear triangles, no clean four-cycles.  check_bouquet bundles
the five conditions into one report.
"""

from hyperind import (
    check_bouquet,
    classify_intersecting_family,
    count_two_cycles,
    find_clean_four_cycles,
    find_linear_three_cycles,
    gen_gnp,
    list_two_cycles,
    prune_short_cycles,
    stream,
)

H = gen_gnp(120, 3, 360 / 280840, stream(7, "census"))
print(f"instance: n={H.n}, edges={len(H.layers[3])}")

print("(2,2)-cycles:", count_two_cycles(H, 2))
w = list_two_cycles(H, ell=2, limit=1)
if w:
    print("  first witness:", w[0].edges, "meeting at", w[0].meeting)
print("linear triangles:", len(find_linear_three_cycles(H)))
print("clean 4-cycles:", len(find_clean_four_cycles(H)))

report = check_bouquet(H)
print("all structural conditions hold?", report.holds)
for v in report.violated_properties():
    print("  violated:", v)

# overlapping families at one vertex: sunflower or clique?
family = [(0, 1, 2), (0, 1, 3), (0, 1, 5)]
c = classify_intersecting_family(family)
print("family", family, "->", c.kind, "core", c.core)

keep, info = prune_short_cycles(
    H, set(range(H.n)), two_ells=(2,), linear3=True, clean4=True
)
sub, _ = H.induce(sorted(keep))
print(f"pruned to n={sub.n}, edges={len(sub.layers[3])}, "
      f"passes={info['passes']}, deleted per kind: {info['witnesses']}")
print("clean after pruning?", check_bouquet(sub).holds)
