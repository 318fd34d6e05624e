"""Exact simulation of linear-optical sampling with Fock, displaced-Fock and
photon-added coherent state inputs."""

from .distributions import OutputDistribution
from .exact import (
    InputSpec,
    SectorDecomposition,
    aa_amplitude,
    aa_distribution,
    dspfs_distribution,
    predicted_distribution,
    propagate_displacements,
    spacs_distribution,
    spacs_sector_weights,
)
from .fock import config_count, enumerate_configs, submatrix
from .numerics import (
    Beamsplitter,
    PhaseShifter,
    balanced_beamsplitter,
    compose_interferometer,
    haar_random_unitary,
    reck_decompose,
    unitarity_defect,
)
from .permanent import permanent_naive, permanent_ryser
from .sampling import SampleBatch, draw, empirical_distribution, postselect, total_variation

__version__ = "0.1.0"
