"""The lower-bound construction: models that differ in a single edge.

M0 is a 7-node chain alternating a strong edge (rho 0.6) and a weak one
(rho 0.3). Each Mi moves one weak edge (i, i+1) to (i-1, i+1). As the weak
joints are blended toward independence the models become indistinguishable
and their thresholds shrink together.

Run: python3 demos/04_fano_family.py
"""

import numpy as np

from infothresh.converse import binary_fano_family, fano_sample_bound, kl_between_models, kl_closed_forms
from infothresh.information import LN2
from infothresh.thresholds import information_threshold

fam = binary_fano_family(7, 0.6, 0.3)
for i, m in fam.models.items():
    print(f"M{i}: {m.tree.edges}")

print("\n  i   D(M0||Mi) enum   closed form   D(Mi||M0) enum   closed form")
for i in fam.indices:
    fwd, bwd = kl_closed_forms(fam, i)
    e_fwd = kl_between_models(fam.models[0], fam.models[i])
    e_bwd = kl_between_models(fam.models[i], fam.models[0])
    print(f"{i:3d}   {e_fwd:14.10f}  {fwd:12.10f}   {e_bwd:14.10f}  {bwd:12.10f}")

print("\n ell   threshold(M0) nats   D(M0||M2)")
for ell in range(0, 11, 2):
    f = binary_fano_family(7, 0.6, 0.3, ell)
    thr = information_threshold(f.models[0]).value * LN2
    print(f"{ell:4d}   {thr:18.3e}   {kl_between_models(f.models[0], f.models[2]):.3e}")

# Below this many samples every estimator errs with probability >= 1/2 on
# some model whose threshold is at most eta.
for p in (15, 31, 101):
    print(f"p = {p:3d}: n_max =", [fano_sample_bound(p, eta) for eta in np.logspace(-1, -4, 4)])
