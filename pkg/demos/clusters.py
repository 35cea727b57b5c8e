"""Proximity, unloading and minimal clusters on the tree of x^3 = y^5."""
from multiplane.enriques import (Cluster, build_tpq_tree, cluster_colength, minimal_cluster,
                                 satisfies_star, unload)
from multiplane.multiplier import SingularityType, jumping_numbers, multiplier_cluster

tree = build_tpq_tree(3, 5)
print("arcs:", tree.arcs)
print("proximity matrix:\n", tree.pi.entries)

k = Cluster(tree, (0, 0, 0, 4))
u = unload(k)
print("unloading", k.weights, "->", u.weights, "colength", cluster_colength(u))
print("exceptional coefficients", u.exceptional, "passes the chain criterion:", bool(satisfies_star(u)))

for a, b in [(1, 0), (0, 1), (1, 1), (2, 1)]:
    m = minimal_cluster(3, 5, a, b)
    print(f"K(3,5)({a},{b}) weights {m.weights} colength {cluster_colength(m)}")

t = SingularityType(3, 5, 1)
for j in jumping_numbers(t):
    m = multiplier_cluster(t, j.value)
    print(f"xi = {j.value}: pairs {j.pairs}, cluster {m.weights}")
