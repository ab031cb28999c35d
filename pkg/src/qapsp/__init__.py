"""Quantum-cost-modelled shortest-path algorithms with exact classical execution."""
from .apsp import (AlgoConfig, apnp, apsp_geometric, apsp_geometric_bounded, apsp_node_weighted,
                   apsp_small_L, min_triangle_quantum)
from .graph import DistanceMatrix, WeightedGraph, generate_instance, validate_instance
from .hitting import HittingSet, sample_hitting_set, verify_and_repair_hitting
from .oracles import brute_apnp, brute_apsp, brute_min_triangle
from .params import ParameterPlan, select_parameters
from .qmodel import CostLedger, GroverConfig

__all__ = [
    "AlgoConfig", "CostLedger", "DistanceMatrix", "GroverConfig", "HittingSet", "ParameterPlan",
    "WeightedGraph", "apnp", "apsp_geometric", "apsp_geometric_bounded", "apsp_node_weighted",
    "apsp_small_L", "brute_apnp", "brute_apsp", "brute_min_triangle", "generate_instance",
    "min_triangle_quantum", "sample_hitting_set", "select_parameters", "validate_instance",
    "verify_and_repair_hitting",
]
