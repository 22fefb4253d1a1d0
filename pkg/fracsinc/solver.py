"""
fracsinc - Solver

Resolve S Phi^N S^T u = S f por gradiente conjugado projetado:
- chute inicial zero; todo iterado, residuo e direcao vivem em Omega_N
- precondicionador opcional S P^{-1} S^T (P periodico, ver operator.py)
- parada pelo residuo relativo NAO precondicionado ||r|| / ||S f|| <= tol
- residuo verdadeiro recalculado a cada RECOMPUTE_EVERY iteracoes
- o melhor iterado (menor residuo) e guardado para o erro de nao convergencia

solve_dense_oracle resolve o mesmo sistema por Cholesky denso (count <= 2048).
"""

import logging
import time
from dataclasses import asdict, dataclass
from typing import Callable, List, Optional

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import (
    InvalidParameterError,
    MatrixNotSPDError,
    SizeGuardError,
    SolverDidNotConverge,
)
from .operator import CoefficientField, MaskedOperator

logger = logging.getLogger(__name__)

# ============ CONSTANTES ============

DEFAULT_TOL = 1e-10
MAX_TOL = 1e-2
ITER_PER_POINT = 10
RECOMPUTE_EVERY = 50
DENSE_SOLVE_GUARD = 2048


@dataclass(frozen=True)
class SolveConfig:
    tol: float = DEFAULT_TOL
    max_iter: Optional[int] = None
    precondition: bool = False
    record_history: bool = True

    def __post_init__(self):
        if not 0.0 < self.tol <= MAX_TOL:
            raise InvalidParameterError(f"tol deve estar em (0, {MAX_TOL}] (recebido {self.tol})")
        if self.max_iter is not None and self.max_iter < 1:
            raise InvalidParameterError(f"max_iter deve ser >= 1 (recebido {self.max_iter})")

    def iteration_limit(self, n: int) -> int:
        return self.max_iter if self.max_iter is not None else ITER_PER_POINT * n


@dataclass
class SolveReport:
    """
    Resultado do solve.

    residual_history: ||r_k|| / ||S f|| por iteracao (k = 0 e o residuo inicial)
    energy_error_history: ||u_final - u_k||_A^2 / ||S f||^2, nao crescente para CG
    """

    iterations: int
    final_relative_residual: float
    converged: bool
    preconditioned: bool
    wall_time: float
    residual_history: Optional[List[float]] = None
    energy_error_history: Optional[List[float]] = None

    def to_dict(self) -> dict:
        return asdict(self)


def solve(
    op: MaskedOperator,
    rhs: CoefficientField,
    cfg: Optional[SolveConfig] = None,
    callback: Optional[Callable[[int, np.ndarray], None]] = None,
):
    """
    Gradiente conjugado projetado.

    Args:
        op: operador mascarado (kernel + Omega_N)
        rhs: lado direito na malha (entradas fora de Omega_N sao ignoradas)
        cfg: tolerancia, max_iter (default 10 N), precondicionador
        callback: chamado como callback(k, u_k) a cada iterado

    Returns:
        (CoefficientField solucao, SolveReport)

    Raises:
        SolverDidNotConverge: max_iter atingido (carrega melhor iterado e relatorio)
    """
    cfg = cfg or SolveConfig()
    lattice = op.lattice
    if rhs.lattice != lattice:
        raise InvalidParameterError("lado direito e operador em malhas diferentes")
    limit = cfg.iteration_limit(lattice.n)
    inside = op.mask.inside
    start = time.perf_counter()

    b = inside * rhs.data
    b_norm = float(np.linalg.norm(b))
    x = np.zeros(lattice.shape)
    if b_norm == 0.0:
        report = SolveReport(0, 0.0, True, cfg.precondition, time.perf_counter() - start,
                             [0.0] if cfg.record_history else None,
                             [0.0] if cfg.record_history else None)
        return CoefficientField(lattice, x), report

    precondition = op.precondition if cfg.precondition else (lambda v: v)
    r = b.copy()
    z = precondition(r)
    p = z.copy()
    rz = float(np.vdot(r, z))

    rel = 1.0
    residuals = [rel]
    work = [0.0]  # b . u_k, nao decrescente para iterados de CG
    best_rel, best_x = rel, x.copy()
    iterations = 0
    converged = False

    while iterations < limit:
        ap = op.apply(p)
        pap = float(np.vdot(p, ap))
        if pap <= 0.0:
            logger.warning(f"Curvatura nao positiva na iteracao {iterations} (p.Ap = {pap:.3e})")
            break
        alpha = rz / pap
        x += alpha * p
        iterations += 1
        if iterations % RECOMPUTE_EVERY == 0:
            r = b - op.apply(x)
        else:
            r -= alpha * ap

        rel = float(np.linalg.norm(r)) / b_norm
        residuals.append(rel)
        work.append(float(np.vdot(b, x)))
        if rel < best_rel:
            best_rel, best_x = rel, x.copy()
        if callback is not None:
            callback(iterations, x)
        if rel <= cfg.tol:
            converged = True
            break

        z = precondition(r)
        rz_new = float(np.vdot(r, z))
        p = z + (rz_new / rz) * p
        rz = rz_new

    elapsed = time.perf_counter() - start
    final_work = work[-1]
    energy = [max(final_work - w, 0.0) / b_norm ** 2 for w in work]
    report = SolveReport(
        iterations=iterations,
        final_relative_residual=rel,
        converged=converged,
        preconditioned=cfg.precondition,
        wall_time=elapsed,
        residual_history=residuals if cfg.record_history else None,
        energy_error_history=energy if cfg.record_history else None,
    )

    if not converged:
        report.final_relative_residual = best_rel
        raise SolverDidNotConverge(CoefficientField(lattice, best_x), report)

    logger.info(
        f"CG convergiu: {iterations} iteracoes, residuo {rel:.2e} "
        f"(N={lattice.n}, d={lattice.d}, pontos={op.mask.count}, precond={cfg.precondition})"
    )
    return CoefficientField(lattice, x), report


def solve_dense_oracle(op: MaskedOperator, rhs: CoefficientField) -> CoefficientField:
    """Cholesky denso da matriz mascarada; referencia para o CG."""
    count = op.mask.count
    if count > DENSE_SOLVE_GUARD:
        raise SizeGuardError(f"{count} pontos acima do limite {DENSE_SOLVE_GUARD} do solver denso")
    indices = op.mask.indices()
    picked = tuple(indices.T)
    matrix = op.dense()
    try:
        factor = cho_factor(matrix, lower=True)
    except LinAlgError:
        raise MatrixNotSPDError() from None
    out = np.zeros(op.lattice.shape)
    out[picked] = cho_solve(factor, rhs.data[picked])
    return CoefficientField(op.lattice, out)
