"""
fracsinc - Laplaciano fracionario de Dirichlet em base sinc

Resolve (-Delta)^s u = f em Omega, u = 0 fora de Omega, com Omega contido em
[0,1)^d, numa malha uniforme de N pontos por eixo.

Modulos:
- lattice.py: Lattice, formas (bola, caixa, poligono, distancia assinada), mascaras
- spectral/: kernel Phi(m) (oraculo, montagem por DCT, cache FSK1)
- operator.py: aplicacao FFT, caminho denso, precondicionador periodico
- rhs.py: amostragem direta ou mollificada, interpolacao sinc
- solver.py: gradiente conjugado projetado
- norms.py: normas L2/energia, relatorio de erro, ajuste de taxas
- problem.py: configuracao JSON, solucao exata na bola, estudo de convergencia
- cli/ + fracsinc_cli.py: linha de comando (python -m fracsinc)
"""

from .errors import FracSincError
from .lattice import Ball, Box, DomainMask, Lattice, Polygon, build_mask, enlarge_shape, shape_contains
from .spectral import SpectralKernel, assemble_kernel, cached_kernel, kernel_entry_oracle, kernel_load, kernel_save
from .operator import CoefficientField, MaskedOperator, apply_full, apply_masked
from .rhs import RhsSpec, prepare_rhs
from .solver import SolveConfig, SolveReport, solve
from .norms import ErrorReport, error_report, fit_rate
from .problem import ProblemConfig, load_problem_config, run_convergence, solve_problem

__version__ = "0.1.0"

__all__ = [
    "FracSincError",
    "Ball",
    "Box",
    "DomainMask",
    "Lattice",
    "Polygon",
    "build_mask",
    "enlarge_shape",
    "shape_contains",
    "SpectralKernel",
    "assemble_kernel",
    "cached_kernel",
    "kernel_entry_oracle",
    "kernel_load",
    "kernel_save",
    "CoefficientField",
    "MaskedOperator",
    "apply_full",
    "apply_masked",
    "RhsSpec",
    "prepare_rhs",
    "SolveConfig",
    "SolveReport",
    "solve",
    "ErrorReport",
    "error_report",
    "fit_rate",
    "ProblemConfig",
    "load_problem_config",
    "run_convergence",
    "solve_problem",
]
