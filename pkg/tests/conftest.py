#!/usr/bin/env python3
"""
Pytest Fixtures para fracsinc Tests

Este arquivo contém fixtures compartilhadas:
- rng: gerador numpy com semente fixa (campos aleatórios reprodutíveis)
- kernel_factory: kernels montados uma vez por sessão, por (d, N, s)
- mask_factory: máscaras de bola/caixa sobre a malha
- config_writer: grava ProblemConfig JSON em diretório temporário
- isolated_dirs: aponta os caches do fracsinc para tmp_path
"""

import json
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import pytest

from fracsinc.lattice import Ball, Box, DomainMask, Lattice, build_mask
from fracsinc.spectral import SpectralKernel, assemble_kernel


# ============================================================================
# FIXTURE 1: rng - Gerador com semente fixa
# ============================================================================

@pytest.fixture
def rng() -> np.random.Generator:
    """
    Gerador numpy determinístico.

    Campos aleatórios dos testes de propriedade usam uniform(-1, 1) com
    esta semente, então toda execução vê os mesmos vetores.
    """
    return np.random.default_rng(20240601)


# ============================================================================
# FIXTURE 2: kernel_factory - Kernels compartilhados na sessão
# ============================================================================

@pytest.fixture(scope="session")
def kernel_factory() -> Callable[..., SpectralKernel]:
    """
    Monta kernels sob demanda e memoriza por (d, N, s, oversample).

    A montagem inclui o spot-check contra o oráculo, então reaproveitar o
    kernel entre testes economiza bastante tempo.

    Exemplo de uso:
        def test_algo(kernel_factory):
            kernel = kernel_factory(1, 8, 0.5)
            assert kernel.entry((0,)) > 0
    """
    cache: Dict[Tuple[int, int, float, int], SpectralKernel] = {}

    def factory(d: int, n: int, s: float, oversample: Optional[int] = None) -> SpectralKernel:
        key = (d, n, s, oversample)
        if key not in cache:
            cache[key] = assemble_kernel(d, n, s, oversample)
        return cache[key]

    return factory


# ============================================================================
# FIXTURE 3: mask_factory - Máscaras de domínio
# ============================================================================

@pytest.fixture
def mask_factory() -> Callable[..., DomainMask]:
    """
    Cria máscaras para os domínios usados nos benchmarks.

    kinds:
    - "ball": bola centrada em 0.5 com raio 0.45 (default)
    - "box": caixa [0.25, 0.75]^d
    - "full": caixa unitária inteira
    """

    def factory(d: int, n: int, kind: str = "ball", radius: float = 0.45) -> DomainMask:
        lattice = Lattice(d, n)
        if kind == "ball":
            shape = Ball((0.5,) * d, radius)
        elif kind == "box":
            shape = Box((0.25,) * d, (0.75,) * d)
        elif kind == "full":
            shape = Box((0.0,) * d, (1.0,) * d)
        else:
            raise ValueError(kind)
        return build_mask(shape, lattice)

    return factory


# ============================================================================
# FIXTURE 4: config_writer - Arquivos de problema temporários
# ============================================================================

@pytest.fixture
def config_writer(tmp_path: Path) -> Callable[..., Path]:
    """
    Grava um ProblemConfig JSON em tmp_path e devolve o caminho.

    Saídas (csv/summary) e o cache de kernels vão para tmp_path, então
    nada escapa do diretório temporário do teste.

    Exemplo de uso:
        def test_converge(config_writer):
            path = config_writer(N_list=[16, 32])
            cfg = load_problem_config(path)
    """

    def writer(name: str = "problem.json", **overrides) -> Path:
        payload = {
            "d": 1,
            "s": 0.5,
            "N_list": [16, 32, 64],
            "shape": {"kind": "ball", "center": [0.5], "radius": 0.45},
            "rhs": {"f": "one", "mode": "direct"},
            "output": {
                "csv": str(tmp_path / "out" / "errors.csv"),
                "summary": str(tmp_path / "out" / "summary.txt"),
            },
            "kernel_cache_dir": str(tmp_path / "kernels"),
        }
        payload.update(overrides)
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return writer


# ============================================================================
# FIXTURE 5: isolated_dirs - Caches fora do HOME
# ============================================================================

@pytest.fixture
def isolated_dirs(tmp_path: Path, monkeypatch) -> Path:
    """Redireciona o cache do oráculo para tmp_path."""
    oracle_dir = tmp_path / "oracle"
    monkeypatch.setattr("fracsinc.spectral.oracle.ORACLE_CACHE_DIR", oracle_dir)
    return tmp_path
