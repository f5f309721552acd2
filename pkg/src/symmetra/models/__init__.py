from .base import ModelHamiltonian, block_spectra_union, numerical_rank, restrict
from .h2 import H2Integrals, h2_hamiltonian, h2_sector_label
from .harper import harper_hamiltonian, harper_momentum_blocks, harper_pseudospin_half
from .ising import ising_hamiltonian, ising_projected_block, ising_symmetry_projectors
from .parastatistics import three_particle_projectors

__all__ = [
    "H2Integrals",
    "ModelHamiltonian",
    "block_spectra_union",
    "h2_hamiltonian",
    "h2_sector_label",
    "harper_hamiltonian",
    "harper_momentum_blocks",
    "harper_pseudospin_half",
    "ising_hamiltonian",
    "ising_projected_block",
    "ising_symmetry_projectors",
    "numerical_rank",
    "restrict",
    "three_particle_projectors",
]
