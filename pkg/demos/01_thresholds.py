"""Information thresholds on a small chain, and what they imply for sample size.

Run: python3 demos/01_thresholds.py
"""

from infothresh import BinaryCorrelationModel, chain, enumerate_ev2, information_threshold
from infothresh.bounds import BoundQuery, failure_probability_bound, sufficient_n
from infothresh.model import exact_mi_matrix

# A three-node chain: a moderately correlated edge next to a strong one.
model = BinaryCorrelationModel.from_correlations(chain(3), [0.5, 0.8])

# Correlations multiply along paths, so nodes 1 and 3 are correlated at 0.4.
print("corr(1, 3) =", model.correlation(1, 3))
print("pairwise MI (bits):")
print(exact_mi_matrix(model).round(6))

# The feasible (edge, pair) tuples: each edge with every non-adjacent pair
# whose path runs through it.
for t in enumerate_ev2(model.tree):
    print("  edge", t.edge, "pair", (t.u, t.v))

# Half the smallest gap between an edge and a pair routed through it.
rep = information_threshold(model)
print(f"threshold = {rep.value:.6f} bits at {rep.argmin}")
# Checking only neighbors of the edge endpoints gives the same answer.
print("local search agrees:", information_threshold(model, "local").value == rep.value)

# How many samples make Chow-Liu exact with probability 0.95? The finite
# alphabet bound needs a bias constant; 0.01 is an illustrative value.
query = BoundQuery(rep.value, p=3, delta=0.05, regime="finite_alphabet", C=0.01)
res = sufficient_n(query)
print("sufficient n (theorem form):", res.n)
print("failure bound there:", failure_probability_bound(res.n, query, form="theorem").value)
