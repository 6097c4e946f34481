"""One sampling round in full view, then an honest look at desk scale.

The pair-uniformity regime (k=2, T=e^2) is the one setting small enough
that a round actually executes: completion reaches its caps, a sample is
drawn, dominated and wasted vertices drop out, and the survivors come back
relabeled with an independent harvest banked.  Higher uniformities need
caps near t_m, far beyond any desk-size instance; those runs collapse,
bank an empty certificate and say so in their warnings.
"""

import math

from hyperind import LayeredHypergraph, akpss_run, build_schedule, gen_layered_bouquet, stream

H = LayeredHypergraph(1000, 2)
sched = build_schedule(1000, math.e ** 2, 2)
print(f"k=2 run: n={H.n}, M={sched.M}, round-0 pair cap={sched.vertex_cap(0, 2)}")

cert = akpss_run(H, sched, seed=23, retries_per_round=4, verify_rounds=True)
for info in cert.rounds:
    print(f"  round {info['round']}: n {info['n_before']} -> {info['n_after']}, "
          f"sampled={info['sampled']}, dominated={info['dominated']}, "
          f"waste={info['waste']}, harvested={info['harvested']}, "
          f"window ok={info['good']}, structure ok={info['structure_ok']}")
print(f"harvest: {len(cert.independent_set)} vertices, verified={cert.verified}")
for w in cert.warnings:
    print("  warning:", w)

print()

G, _ = gen_layered_bouquet(300, 3, {2: 20, 3: 15}, stream(9, "round-demo"))
sched3 = build_schedule(G.n, math.e ** 3, 3)
print(f"k=3 run: n={G.n}, M={sched3.M}, round-0 caps "
      f"{[sched3.vertex_cap(0, i) for i in (2, 3)]} (unreachable here)")
cert3 = akpss_run(G, sched3, seed=10, retries_per_round=2, verify_rounds=True)
print(f"harvest: {len(cert3.independent_set)} vertices, "
      f"verified={cert3.verified}, collapsed={cert3.diagnostics['collapsed']}")
for w in cert3.warnings:
    print("  warning:", w)
