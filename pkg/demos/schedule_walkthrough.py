"""Print the round schedule a solver run would follow.

The schedule is pure arithmetic: given the input size N, the horizon T and
the uniformity k it fixes how many rounds run, how hard each round samples,
and which degree caps the completion step must restore afterwards.  Nothing
here touches a graph, which is why schedules for astronomic N are cheap.
"""

import math

from hyperind import build_schedule, reference_bound

N, T, k = 10 ** 9, math.e ** 12, 5
sched = build_schedule(N, T, k)

print(f"N={N:.2e}  T=e^12  k={k}")
print(f"epsilon={sched.epsilon:.4f}  beta={sched.beta:.6f}  rounds M={sched.M}")
lo, hi = sched.gamma_window()
print(f"gamma window: [{lo:.3e}, {hi:.3e}]")
print()
print(f"{'m':>3} {'t_m':>12} {'alpha_m':>10} {'gamma_m':>12} {'p_m':>12} "
      f"{'cap(m,2)':>12} {'cap(m,k)':>12}")
for m in range(sched.M + 1):
    gamma = f"{sched.gamma_at(m):.3e}" if m >= 1 else "-"
    p = f"{sched.p_at(m):.3e}" if m >= 1 else "-"
    print(f"{m:>3} {sched.t[m]:>12.4e} {sched.alpha[m]:>10.4f} {gamma:>12} "
          f"{p:>12} {float(sched.vertex_cap(m, 2)):>12.4e} "
          f"{float(sched.vertex_cap(m, k)):>12.4e}")

# alpha_m^(k-1) walks from log T to at most 1.5 log T, one shrinking
# beta-power per round
print()
print("alpha_0^(k-1) =", f"{sched.alpha[0] ** (k - 1):.6f}", "(= log T)")
print(f"alpha_{sched.M}^(k-1) =", f"{sched.alpha[sched.M] ** (k - 1):.6f}",
      "(<= 1.5 log T =", f"{1.5 * 12:.1f})")

print()
print("matching guarantee-scale reference bound, main regime:")
print("  ", f"{reference_bound(N, T, k, 'main'):.4e}")
