"""Efficient domination near a split graph: guessing versus branch-and-reduce.

An efficient dominating set hits every closed neighbourhood exactly once,
so most random graphs have none. For each k we take the first planted
instance (clique of 4, independent side of 5, sparse edges) that has one.

There are two exact methods: try all 2^k subsets of the modulator, or
branch on pairs of modulator vertices that are close to each other. The
branching count is checked against 3^(k/2) (|C|+1).
"""

from domsolve import DomInstance, Modulator, build_graph, gen_planted
from domsolve.svd import solve_eds_svd_branch, solve_eds_svd_simple


def first_feasible(k: int):
    for seed in range(200):
        inst = gen_planted(seed, "svd", [4, 5], k, p=0.15, variant="eds", p_modulator=0.1)
        sol = solve_eds_svd_branch(inst)
        if sol.feasible:
            return seed, inst, sol
    raise RuntimeError(f"no feasible instance for k={k}")


print(f"{'k':>2} {'seed':>4} {'size':>4} {'guesses':>8} {'branch nodes':>13} {'allowed':>8}")
for k in (2, 4, 6, 8, 10):
    seed, inst, branch = first_feasible(k)
    simple = solve_eds_svd_simple(inst)
    assert simple.size == branch.size
    print(f"{k:>2} {seed:>4} {branch.size:>4} {simple.counters['guesses']:>8} "
          f"{branch.counters['branch_nodes']:>13} {branch.counters['branch_bound']:>8}")

c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
answer = solve_eds_svd_branch(DomInstance(c4, Modulator("svd", {0}), "eds"))
print(f"\nA 4-cycle has no efficient dominating set at all: {answer.status.value}")
