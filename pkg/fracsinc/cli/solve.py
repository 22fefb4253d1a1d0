#!/usr/bin/env python3
"""
fracsinc CLI - Modulo Solve

- cmd_solve: Resolve um problema em uma resolucao e grava a solucao em CSV
"""

import csv
from pathlib import Path

from .base import EXIT_OK, print_info, print_success
from ..problem import ProblemSolution, load_problem_config, solve_problem


def write_solution_csv(solution: ProblemSolution, path) -> Path:
    """Colunas k1..kd, x1..xd, u; uma linha por ponto de Omega_N (ordem lexicografica)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lattice = solution.u.lattice
    indices = solution.mask.indices()
    header = [f"k{i + 1}" for i in range(lattice.d)] + [f"x{i + 1}" for i in range(lattice.d)] + ["u"]
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for k in indices:
            x = k / lattice.n
            writer.writerow(
                [str(int(v)) for v in k]
                + [f"{v:.17g}" for v in x]
                + [f"{solution.u.data[tuple(k)]:.17g}"]
            )
    return path


def cmd_solve(args) -> int:
    """Resolve o problema de --config no N dado (default: maior N de N_list).

    Examples:
        $ python -m fracsinc solve --config config/ball1d.json --n 64 --out u.csv
    """
    cfg = load_problem_config(args.config)
    n = args.n if args.n is not None else cfg.n_list[-1]
    solution = solve_problem(cfg, n)
    path = write_solution_csv(solution, args.out)

    report = solution.report
    print_info(
        f"N={n} pontos={solution.mask.count} iteracoes={report.iterations} "
        f"residuo={report.final_relative_residual:.2e} tempo={report.wall_time:.2f}s"
    )
    print_success(f"Solucao gravada em {path}")
    return EXIT_OK
