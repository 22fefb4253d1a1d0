"""
fracsinc - Problemas, solucao exata e estudo de convergencia

Componentes:
- ProblemConfig (pydantic): esquema do arquivo JSON de problema
- BallExactSolution: solucao de (-Delta)^s u = 1 na bola B_R(c)
    u(x) = Gamma(d/2) / (2^{2s} Gamma(d/2+s) Gamma(1+s)) * (R^2 - |x-c|^2)_+^s
- exact_residual: diagnostico |Phi^N u_samples - 1| longe da fronteira
- solve_problem: um N (kernel -> mascara -> lado direito -> solve)
- run_convergence: todos os N de N_list, erros contra a solucao exata ou
  auto-convergencia (solucao mais fina subamostrada), ajuste de taxas
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from scipy.special import gamma

from .errors import (
    ConfigError,
    FracSincError,
    InsufficientPointsError,
    InvalidErrorSequenceError,
    StageError,
)
from .lattice import BOUNDARY_TOL, Ball, DomainMask, DomainShape, Lattice, build_mask, shape_from_config
from .norms import CSV_COLUMNS, ErrorReport, RateFit, error_report, fit_rate
from .operator import CoefficientField, MaskedOperator, convolve
from .rhs import BUILTIN_RHS, MAX_EPSILON, RhsSpec, builtin_rhs, prepare_rhs
from .solver import DEFAULT_TOL, SolveConfig, SolveReport, solve
from .spectral import SpectralKernel, cached_kernel

logger = logging.getLogger(__name__)

RATE_COLUMNS = ("l2", "linf", "energy")
INTERIOR_MARGIN = 4


# ============ ESQUEMA DE CONFIGURACAO ============

class ShapeConfig(BaseModel):
    """Dominio Omega."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["ball", "box", "polygon"] = Field(..., description="Tipo de forma")
    center: Optional[List[float]] = Field(None, description="Centro da bola")
    radius: Optional[float] = Field(None, description="Raio da bola")
    lo: Optional[List[float]] = Field(None, description="Canto inferior da caixa")
    hi: Optional[List[float]] = Field(None, description="Canto superior da caixa")
    vertices: Optional[List[List[float]]] = Field(None, description="Vertices do poligono (d=2)")

    @model_validator(mode="after")
    def _required_fields(self):
        required = {"ball": ("center", "radius"), "box": ("lo", "hi"), "polygon": ("vertices",)}[self.kind]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"forma '{self.kind}' exige {missing}")
        return self

    def build(self) -> DomainShape:
        return shape_from_config(self.model_dump(exclude_none=True))


class RhsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    f: str = Field("one", description="Lado direito embutido")
    mode: Literal["direct", "mollified"] = Field("direct", description="Modo de amostragem")
    epsilon: Optional[float] = Field(None, gt=0, le=MAX_EPSILON, description="Escala do mollifier (default h)")
    rho: Optional[float] = Field(None, gt=0, description="Raio de extensao (default sqrt(d) h)")
    q: int = Field(8, ge=4, description="Refinamento da tabulacao do mollifier (par)")

    @field_validator("f")
    @classmethod
    def _known_function(cls, value: str) -> str:
        if value not in BUILTIN_RHS:
            raise ValueError(f"lado direito desconhecido: {value!r} (opcoes: {sorted(BUILTIN_RHS)})")
        return value


class SolverOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tol: float = Field(DEFAULT_TOL, gt=0, le=1e-2)
    max_iter: Optional[int] = Field(None, ge=1)
    precondition: bool = False


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    csv: Optional[str] = Field(None, description="CSV de erros por N")
    summary: Optional[str] = Field(None, description="Resumo com taxas ajustadas")


class ProblemConfig(BaseModel):
    """Arquivo JSON de problema (documentado em docs/CONFIG.md)."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    d: int = Field(..., ge=1, le=3)
    s: float = Field(..., gt=0, lt=1)
    n_list: List[int] = Field(..., alias="N_list", min_length=1)
    shape: ShapeConfig
    rhs: RhsConfig = Field(default_factory=RhsConfig)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    output: OutputConfig = Field(default_factory=OutputConfig)
    oversample: Optional[int] = Field(None, ge=4, description="Fator da grade fina (default 16, 8 em d=3)")
    kernel_cache_dir: Optional[str] = None
    reference: Literal["auto", "exact-ball", "self"] = "auto"

    @field_validator("n_list")
    @classmethod
    def _increasing(cls, value: List[int]) -> List[int]:
        if any(n < 4 for n in value):
            raise ValueError("todo N deve ser >= 4")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("N_list deve ser estritamente crescente")
        return value

    def reference_mode(self) -> str:
        if self.reference != "auto":
            return self.reference
        if self.shape.kind == "ball" and self.rhs.f == "one":
            return "exact-ball"
        return "self"


def load_problem_config(path: Union[str, Path]) -> ProblemConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"arquivo de configuracao nao encontrado: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON invalido em {path}: {e}") from e
    try:
        return ProblemConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"configuracao invalida em {path}: {e}") from e


# ============ SOLUCAO EXATA NA BOLA ============

@dataclass(frozen=True)
class BallExactSolution:
    center: Tuple[float, ...]
    radius: float
    s: float

    @property
    def d(self) -> int:
        return len(self.center)

    @property
    def amplitude(self) -> float:
        d, s = self.d, self.s
        return gamma(d / 2) / (2 ** (2 * s) * gamma(d / 2 + s) * gamma(1 + s))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        dist = np.linalg.norm(pts - np.asarray(self.center), axis=1)
        gap = np.maximum(self.radius ** 2 - dist ** 2, 0.0)
        values = self.amplitude * gap ** self.s
        # mesma convencao da mascara: fronteira conta como fora
        values[dist >= self.radius - BOUNDARY_TOL] = 0.0
        return values


def exact_ball(ball: Ball, s: float) -> BallExactSolution:
    return BallExactSolution(ball.center, ball.radius, s)


def exact_residual(
    kernel: SpectralKernel,
    mask: DomainMask,
    exact: BallExactSolution,
    shape: DomainShape,
    margin: int = INTERIOR_MARGIN,
) -> float:
    """max |Phi^N u(x_k) - 1| sobre pontos a mais de margin*h da fronteira."""
    lattice = kernel.lattice
    samples = exact(lattice.points()).reshape(lattice.shape)
    applied = convolve(kernel, samples)
    deep = shape.signed_distance(lattice.points()).reshape(lattice.shape) < -margin * lattice.h
    deep &= mask.inside
    if not deep.any():
        return float("nan")
    return float(np.max(np.abs(applied[deep] - 1.0)))


# ============ PIPELINE ============

@dataclass
class ProblemSolution:
    n: int
    kernel: SpectralKernel
    mask: DomainMask
    u: CoefficientField
    report: SolveReport


def solve_problem(cfg: ProblemConfig, n: int, shape: Optional[DomainShape] = None) -> ProblemSolution:
    """Resolve o problema em uma resolucao; falhas viram StageError(estagio, N)."""
    stage = "setup"
    try:
        shape = shape or cfg.shape.build()
        stage = "kernel"
        kernel = cached_kernel(cfg.d, n, cfg.s, cfg.oversample, cfg.kernel_cache_dir)
        stage = "domain"
        mask = build_mask(shape, Lattice(cfg.d, n))
        stage = "rhs"
        spec = RhsSpec(builtin_rhs(cfg.rhs.f), cfg.rhs.mode, cfg.rhs.epsilon, cfg.rhs.rho, cfg.rhs.q)
        rhs = prepare_rhs(spec, shape, mask)
        stage = "solve"
        solver_cfg = SolveConfig(cfg.solver.tol, cfg.solver.max_iter, cfg.solver.precondition)
        u, report = solve(MaskedOperator(kernel, mask), rhs, solver_cfg)
    except FracSincError as e:
        raise StageError(stage, n, e) from e
    return ProblemSolution(n, kernel, mask, u, report)


@dataclass
class ConvergenceResult:
    d: int
    s: float
    reference: str
    reports: List[ErrorReport]
    fits: Dict[str, Optional[RateFit]]
    flags: Dict[str, str] = field(default_factory=dict)
    solve_reports: Dict[int, SolveReport] = field(default_factory=dict)

    def csv_text(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in self.reports:
            writer.writerow(report.to_row())
        return buffer.getvalue()

    def summary_text(self) -> str:
        lines = [
            "fracsinc - resumo de convergencia",
            f"d={self.d} s={self.s} referencia={self.reference} pontos={len(self.reports)}",
        ]
        for column in RATE_COLUMNS:
            fit = self.fits.get(column)
            if fit is None:
                lines.append(f"{column}: {self.flags.get(column, 'sem ajuste')}")
            else:
                lines.append(
                    f"{column}: taxa={fit.rate:.4f} C={fit.constant:.4e} residuo={fit.residual:.2e} "
                    f"taxa_log={fit.log_rate:.4f}"
                )
        return "\n".join(lines) + "\n"

    def write(self, csv_path: Optional[Union[str, Path]] = None, summary_path: Optional[Union[str, Path]] = None):
        for target, text in ((csv_path, self.csv_text()), (summary_path, self.summary_text())):
            if target is not None:
                target = Path(target)
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(text, encoding="utf-8")


def _fit_columns(reports: List[ErrorReport]) -> Tuple[Dict[str, Optional[RateFit]], Dict[str, str]]:
    fits: Dict[str, Optional[RateFit]] = {}
    flags: Dict[str, str] = {}
    for column in RATE_COLUMNS:
        points = [(r.h, getattr(r, column)) for r in reports]
        try:
            fits[column] = fit_rate(points)
        except InsufficientPointsError:
            fits[column] = None
            flags[column] = "insufficient points"
        except InvalidErrorSequenceError:
            fits[column] = None
            flags[column] = "invalid error sequence"
    return fits, flags


def run_convergence(cfg: ProblemConfig) -> ConvergenceResult:
    """
    Executa o estudo de convergencia descrito por cfg.

    Referencias:
    - exact-ball: bola com f = 1, erro contra BallExactSolution
    - self: solucao no maior N subamostrada nos N menores (N_max / N inteiro)

    Raises:
        StageError: falha em algum estagio, com o estagio e o N
        ConfigError: referencia incompativel com a forma ou com N_list
    """
    mode = cfg.reference_mode()
    shape = cfg.shape.build()
    if mode == "exact-ball" and not isinstance(shape, Ball):
        raise ConfigError("referencia exact-ball exige forma 'ball'")
    if mode == "self":
        finest = cfg.n_list[-1]
        if any(finest % n for n in cfg.n_list):
            raise ConfigError("auto-convergencia exige N_max divisivel por todo N de N_list")

    logger.info(f"Convergencia: d={cfg.d} s={cfg.s} N={cfg.n_list} referencia={mode}")
    solutions: List[ProblemSolution] = []
    reports: List[ErrorReport] = []
    exact = exact_ball(shape, cfg.s) if mode == "exact-ball" else None

    for n in cfg.n_list:
        solution = solve_problem(cfg, n, shape)
        solutions.append(solution)
        if exact is not None:
            try:
                reports.append(error_report(solution.kernel, solution.u, exact, solution.mask))
            except FracSincError as e:
                raise StageError("error", n, e) from e
            logger.info(f"N={n}: l2={reports[-1].l2:.3e} energia={reports[-1].energy:.3e}")

    if exact is None:
        reference = solutions[-1]
        for solution in solutions[:-1]:
            ratio = reference.n // solution.n
            sub = reference.u.data[(slice(None, None, ratio),) * cfg.d]
            try:
                reports.append(error_report(solution.kernel, solution.u, CoefficientField(solution.u.lattice, sub), solution.mask))
            except FracSincError as e:
                raise StageError("error", solution.n, e) from e

    fits, flags = _fit_columns(reports)
    for column, flag in flags.items():
        logger.warning(f"Taxa de {column}: {flag}")
    result = ConvergenceResult(
        d=cfg.d,
        s=cfg.s,
        reference=mode,
        reports=reports,
        fits=fits,
        flags=flags,
        solve_reports={sol.n: sol.report for sol in solutions},
    )
    result.write(cfg.output.csv, cfg.output.summary)
    return result
