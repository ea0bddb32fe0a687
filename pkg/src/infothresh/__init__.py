"""Chow-Liu tree learning with exact information thresholds, noisy channels,
sample-size bounds and a Fano-type converse."""

from .tree import Tree, chain, random_tree, star
from .model import (BinaryCorrelationModel, DiscreteTreeModel, exact_mutual_information,
                    exact_pairwise_joint, joint_probability, sample, validate)
from .channels import ChannelSpec, apply, exact_noisy_mi, exact_noisy_pairwise_joint, iop_check
from .estimation import EmpiricalJoint, empirical_pairwise, plugin_entropy, plugin_mi
from .chow_liu import chow_liu, mst, two_trees_witness
from .thresholds import (enumerate_ev2, erasure_feasibility, bsc_feasibility, information_threshold,
                         noisy_information_threshold)
from .bounds import BoundQuery, TailParams, bias_constant, failure_probability_bound, sufficient_n

__version__ = "0.1.0"
