"""The hardness constructions, run forwards and backwards.

Set cover becomes domination on a split graph: elements form an
independent set, sets form a clique. A 3-CNF formula becomes an efficient
domination instance whose modulator is a vertex cover; any efficient
dominating set of size n + m spells out a satisfying assignment.
"""

from domsolve import (
    CnfFormula,
    Variant,
    VariantSpec,
    brute_min,
    extract_assignment,
    reduce_3sat_to_eds,
    reduce_setcover_to_split,
)
from domsolve.oracle import efficient_dominating_sets

family = [{0, 1}, {2, 3}, {1, 2}, {3, 4}, {0, 4}]
inst = reduce_setcover_to_split(5, family, 3)
print(f"Set cover on 5 elements with {len(family)} sets -> graph with {inst.graph.n} vertices")
for variant in (Variant.DS, Variant.DC, Variant.TDS):
    sol = brute_min(inst.graph, VariantSpec(variant))
    names = [inst.graph.labels[v] for v in sorted(sol.vertices)]
    print(f"  min {variant.name:<3} = {sol.size}  {names}")
print("  every answer is 3, the size of the smallest cover\n")

phi = CnfFormula(3, [[1, -2, 3], [-1, 2, 2], [-3, -3, 2]])
red = reduce_3sat_to_eds(phi)
print(f"Formula with 3 variables and 3 clauses -> {red.graph.n} vertices, "
      f"vertex cover modulator of size {len(red.S)}")
seen = set()
for D in efficient_dominating_sets(red.graph):
    if len(D) == red.budget:
        seen.add(extract_assignment(red, D))
for assignment in sorted(seen):
    print("  satisfying assignment:", assignment, phi.satisfied_by(assignment))
