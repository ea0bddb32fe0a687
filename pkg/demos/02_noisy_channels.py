"""Noise can reorder mutual informations, and a known channel can be undone.

The chain 1 - 2 - 3 has edge correlations 0.7 and 0.8. Node 1 sees almost no
noise while nodes 2 and 3 flip 30% of the time, which shrinks the (2, 3)
correlation far more than the others. Raw Chow-Liu then drops the true edge
(2, 3); dividing each correlation by its known attenuation fixes it.

Run: python3 demos/02_noisy_channels.py [--trials 200]
"""

import argparse

from infothresh import BinaryCorrelationModel, ChannelSpec, chain, iop_check
from infothresh.experiments import ExperimentConfig, run_error_rate
from infothresh.thresholds import (bsc_feasibility, erasure_feasibility, information_threshold,
                                   noisy_information_threshold)

parser = argparse.ArgumentParser()
parser.add_argument("--trials", type=int, default=200)
parser.add_argument("--seed", type=int, default=0)
args = parser.parse_args()

model = BinaryCorrelationModel.from_correlations(chain(3), [0.7, 0.8])
q = [0.01, 0.3, 0.3]
bsc = ChannelSpec.bsc(q, 3)

print("clean threshold :", information_threshold(model).value)
print("noisy threshold :", noisy_information_threshold(model, bsc).value, "(negative: raw learning fails)")
print("order preserved :", iop_check(model, bsc))
print("BSC test passes :", bsc_feasibility(model, q))

# Erasures with equal rates only scale every MI, so nothing is reordered.
print("equal erasures keep order:", iop_check(model, ChannelSpec.erasure(0.4, 3)).holds,
      "| feasibility:", erasure_feasibility(model, 0.4))

for estimator in ("plugin_mi", "corrected_correlation"):
    cfg = ExperimentConfig(model, (1000, 3000, 10000), args.trials, args.seed, bsc, estimator)
    curve = run_error_rate(cfg)
    print(f"\n{estimator}:")
    print(curve.to_csv(), end="")
