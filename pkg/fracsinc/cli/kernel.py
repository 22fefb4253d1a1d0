#!/usr/bin/env python3
"""
fracsinc CLI - Modulo Kernel

Comandos do kernel espectral:
- cmd_kernel: Monta Phi^N e grava em arquivo FSK1
- cmd_validate_kernel: Compara entradas de um arquivo FSK1 com o oraculo
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .base import EXIT_OK, Colors, c, print_header, print_info, print_success, print_warning
from ..config import KERNEL_CACHE_DIR
from ..errors import KernelValidationError
from ..spectral import (
    SpectralKernel,
    assemble_kernel,
    kernel_cache_path,
    kernel_entry_oracle,
    kernel_load,
    kernel_save,
    open_oracle_cache,
)

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-10


@dataclass
class EntryCheck:
    m: Tuple[int, ...]
    assembled: float
    oracle: float
    deviation: float


def sample_indices(kernel: SpectralKernel, samples: int, seed: int = 0) -> List[Tuple[int, ...]]:
    """m = 0 seguido de multi-indices aleatorios com |m_i| <= N-1 (sinais aleatorios)."""
    rng = np.random.default_rng(seed)
    picked = [(0,) * kernel.d]
    while len(picked) < samples:
        m = rng.integers(-(kernel.n - 1), kernel.n, size=kernel.d)
        picked.append(tuple(int(v) for v in m))
    return picked[:max(samples, 0)]


def compare_with_oracle(
    kernel: SpectralKernel,
    indices: List[Tuple[int, ...]],
    oracle_tol: float = ORACLE_TOL,
    cache=None,
) -> List[EntryCheck]:
    """Desvio relativo |montado - oraculo| / max(|oraculo|, Phi(0)) por entrada."""
    phi0 = kernel.entry((0,) * kernel.d)
    checks = []
    for m in indices:
        assembled = kernel.entry(m)
        oracle = kernel_entry_oracle(kernel.d, kernel.s, m, tol=oracle_tol, cache=cache)
        deviation = abs(assembled - oracle) / max(abs(oracle), phi0)
        checks.append(EntryCheck(m, assembled, oracle, deviation))
    return checks


def cmd_kernel(args) -> int:
    """Monta o kernel e grava no formato FSK1.

    Args:
        args: Namespace do argparse contendo:
            - d (int), n (int), s (float)
            - oversample (int): fator da grade fina (None: 16, ou 8 em d=3)
            - out (str, opcional): arquivo de saida; default em FRACSINC_KERNEL_CACHE_DIR

    Examples:
        $ python -m fracsinc kernel --d 1 --n 8 --s 0.5 --out k.fsk
        * Kernel d=1 N=8 s=0.5 gravado em k.fsk
    """
    kernel = assemble_kernel(args.d, args.n, args.s, args.oversample)
    out = args.out or kernel_cache_path(KERNEL_CACHE_DIR, kernel.d, kernel.n, kernel.s, kernel.oversample)
    path = kernel_save(kernel, out)
    print_success(f"Kernel d={kernel.d} N={kernel.n} s={kernel.s} gravado em {path}")
    print_info(f"Phi(0) = {kernel.entry((0,) * kernel.d):.15g}  escala N^(2s) = {kernel.scale:.6g}")
    for message in kernel.metadata.get("warnings", []):
        print_warning(message)
    return EXIT_OK


def cmd_validate_kernel(args) -> int:
    """Valida um arquivo FSK1 contra o oraculo de quadratura.

    Falha (KernelValidationError, codigo 2) se algum desvio relativo passar de --tol.
    """
    kernel = kernel_load(args.file)
    cache = open_oracle_cache() if args.oracle_cache else None
    checks = compare_with_oracle(kernel, sample_indices(kernel, args.samples, args.seed), cache=cache)

    print_header(f"Validacao: d={kernel.d} N={kernel.n} s={kernel.s} ({len(checks)} entradas)")
    for check in checks:
        status = c("ok", Colors.GREEN) if check.deviation <= args.tol else c("FALHOU", Colors.RED)
        print(f"  m={check.m!s:<20} montado={check.assembled: .12e} oraculo={check.oracle: .12e} "
              f"desvio={check.deviation:.2e} {status}")

    worst = max((check.deviation for check in checks), default=0.0)
    if worst > args.tol:
        raise KernelValidationError(worst, args.tol)
    print_success(f"Kernel valido (maior desvio {worst:.2e} <= {args.tol:.1e})")
    return EXIT_OK
