#!/usr/bin/env python3
"""
fracsinc CLI - Modulo Converge

- cmd_converge: Estudo de convergencia sobre N_list (CSV + resumo de taxas)
"""

import sys

from .base import EXIT_OK, print_header, print_success
from ..problem import load_problem_config, run_convergence


def cmd_converge(args) -> int:
    """Roda run_convergence; --out sobrescreve output.csv da configuracao.

    Sem CSV configurado, a tabela vai para stdout.

    Examples:
        $ python -m fracsinc converge --config config/ball1d.json
    """
    cfg = load_problem_config(args.config)
    if args.out:
        cfg = cfg.model_copy(update={"output": cfg.output.model_copy(update={"csv": args.out})})

    result = run_convergence(cfg)

    if cfg.output.csv is None:
        sys.stdout.write(result.csv_text())
    print_header("Taxas ajustadas")
    sys.stdout.write(result.summary_text())
    for target in (cfg.output.csv, cfg.output.summary):
        if target:
            print_success(f"Gravado: {target}")
    return EXIT_OK
