"""Optimal reflection-coefficient design for M-ary ASK backscatter tags.

The package answers one question: given a link budget, a symbol alphabet
with skewed probabilities, and minimum-power floors for both the tag and
the reader, which M reflection coefficients maximize the tag's average
harvested power?  Closed-form solvers carry the production path; dense
grid scans, an exhaustive permutation search, and a Monte-Carlo symbol
detector certify them independently.
"""

from .baselines import average_power, bask_benchmark, floor_violations, symmetric_benchmark
from .bask import BaskDesign, solve_bask
from .errors import (DegenerateCircuitError, DesignError, InfeasibleError,
                     OpenCircuitError, SustainabilityError, TagStarvedError)
from .feasibility import (CoefficientBounds, DesignConstraints, bounds,
                          harvest_limit, is_feasible,
                          max_modulation_threshold, reader_backscatter_power)
from .linkbudget import (LinkConfig, available_power, induced_voltage,
                         matched_received_power, stored_energy)
from .mask import (MaskDesign, PlacedSolution, SequenceMatrix,
                   constraint_margins, sequence_matrix, solve_mask,
                   solve_placed)
from .oracle import grid_search_bask, grid_search_complex_bask, permutation_search
from .reflection import (ComplexImpedance, ReflectionCoefficient,
                         backscattered_power, from_impedance, harvested_power,
                         modulation_index, received_power, to_impedance)
from .ser import NoiseModel, SimulatedSer, noise_sigma, pairwise_ser, simulate_ser
from .symbols import SymbolSet, from_bit_probability

__version__ = "0.1.0"

__all__ = [
    "BaskDesign", "CoefficientBounds", "ComplexImpedance",
    "DegenerateCircuitError", "DesignConstraints", "DesignError",
    "InfeasibleError", "LinkConfig", "MaskDesign", "NoiseModel",
    "OpenCircuitError", "PlacedSolution", "ReflectionCoefficient",
    "SequenceMatrix", "SimulatedSer", "SustainabilityError", "SymbolSet",
    "TagStarvedError", "available_power", "average_power",
    "constraint_margins",
    "backscattered_power", "bask_benchmark", "bounds", "floor_violations",
    "from_bit_probability", "from_impedance", "grid_search_bask",
    "harvest_limit",
    "grid_search_complex_bask", "harvested_power", "induced_voltage",
    "is_feasible", "matched_received_power", "max_modulation_threshold",
    "modulation_index", "noise_sigma", "pairwise_ser", "permutation_search",
    "reader_backscatter_power", "received_power", "sequence_matrix",
    "simulate_ser", "solve_bask",
    "solve_mask", "solve_placed", "stored_energy", "symmetric_benchmark",
    "to_impedance",
]
