"""
fracsinc - Spectral Kernel Package

Estrutura dos modulos:
- base.py: FracOrder, SpectralKernel (octante + DFT do mergulho circulante)
- oracle.py: kernel_entry_oracle, cosine_integral, open_oracle_cache
- assembly.py: assemble_kernel (DCT-I + correcoes singular e de faces)
- storage.py: kernel_save, kernel_load, cached_kernel (formato FSK1)
"""

from .base import (
    FracOrder,
    SpectralKernel,
    check_dimension,
    check_order,
)
from .oracle import (
    cosine_integral,
    kernel_entry_oracle,
    open_oracle_cache,
)
from .assembly import (
    DEFAULT_OVERSAMPLE,
    assemble_kernel,
    default_oversample,
    estimate_assembly_bytes,
    lattice_zeta,
)
from .storage import (
    MAGIC,
    cached_kernel,
    kernel_cache_path,
    kernel_load,
    kernel_save,
)

__all__ = [
    "FracOrder",
    "SpectralKernel",
    "check_dimension",
    "check_order",
    "cosine_integral",
    "kernel_entry_oracle",
    "open_oracle_cache",
    "DEFAULT_OVERSAMPLE",
    "assemble_kernel",
    "default_oversample",
    "estimate_assembly_bytes",
    "lattice_zeta",
    "MAGIC",
    "cached_kernel",
    "kernel_cache_path",
    "kernel_load",
    "kernel_save",
]
