"""How the guess-and-cover solvers scale with the modulator size k.

With no edges inside the modulator every guess leaves the rest of the
modulator to be covered, which is the worst case. For plain domination the
total table size is then exactly 2 m 3^k. For threshold domination the
guessed vertices still need neighbours themselves, so the universe keeps
all k modulator vertices and the count grows like (2(r+1))^k.
"""

from domsolve import gen_planted
from domsolve.cvd import solve_ds_cvd, solve_thds_cvd

cliques = [3, 3, 3, 3]
m = sum(cliques)
print(f"{'k':>2} {'DS states':>10} {'2m3^k':>10} {'ThDS r=1':>10} {'6m3^k':>10} {'6m4^k':>10}")
for k in (2, 4, 6, 8):
    ds = gen_planted(0, "cvd", cliques, k, p=0.5, variant="ds", p_modulator=0.0)
    th = gen_planted(0, "cvd", cliques, k, p=0.5, variant="thds", r=1, p_modulator=0.0)
    a = solve_ds_cvd(ds).counters["dp_states"]
    b = solve_thds_cvd(th).counters["dp_states"]
    print(f"{k:>2} {a:>10} {2 * m * 3**k:>10} {b:>10} {6 * m * 3**k:>10} {6 * m * 4**k:>10}")

print("\nDS sits exactly on 2m 3^k. ThDS with r = 1 sits exactly on 6m 4^k,")
print("so it outgrows any fixed multiple of 3^k.")
