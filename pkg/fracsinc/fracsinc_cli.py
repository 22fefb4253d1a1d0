#!/usr/bin/env python3
"""
fracsinc CLI - Solver sinc para o Laplaciano fracionario

Uso:
    python -m fracsinc kernel --d 1 --n 8 --s 0.5 --out k.fsk
    python -m fracsinc validate-kernel --file k.fsk --samples 10 --tol 1e-6
    python -m fracsinc solve --config config/ball1d.json --out u.csv
    python -m fracsinc converge --config config/ball1d.json
    python -m fracsinc mollifier-dump --d 2 --epsilon 0.03125 --out eta.csv

Codigos de saida: 0 sucesso, 1 erro de uso/configuracao, 2 falha numerica,
130 interrompido.
"""

import sys
from typing import List, Optional

from .cli import (
    EXIT_INTERRUPTED,
    EXIT_NUMERICAL,
    EXIT_USAGE,
    Colors,
    UsageExitParser,
    c,
    cmd_converge,
    cmd_kernel,
    cmd_mollifier_dump,
    cmd_solve,
    cmd_validate_kernel,
    configure_logging,
    print_error,
)
from .errors import ConfigError, FracSincError, StageError
from .rhs import DEFAULT_Q, MAX_EPSILON


def build_parser() -> UsageExitParser:
    parser = UsageExitParser(prog="fracsinc", description="Laplaciano fracionario em base sinc")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log em nivel INFO")
    subparsers = parser.add_subparsers(dest="command")

    # ============ KERNEL ============

    p = subparsers.add_parser("kernel", help="Monta Phi^N e grava em FSK1")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--oversample", type=int, default=None, help="default 16 (8 em d=3)")
    p.add_argument("--out", help="Arquivo FSK1 (default: cache de kernels)")

    p = subparsers.add_parser("validate-kernel", help="Compara um arquivo FSK1 com o oraculo")
    p.add_argument("--file", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-cache", action="store_true", help="Usa cache diskcache do oraculo")

    # ============ PROBLEMA ============

    p = subparsers.add_parser("solve", help="Resolve um problema em um N")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, help="Resolucao (default: maior N de N_list)")
    p.add_argument("--out", required=True)

    p = subparsers.add_parser("converge", help="Estudo de convergencia sobre N_list")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="CSV de erros (sobrescreve output.csv)")

    # ============ MOLLIFIER ============

    p = subparsers.add_parser("mollifier-dump", help="Grava o mollifier tabulado em CSV")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=MAX_EPSILON)
    p.add_argument("--q", type=int, default=DEFAULT_Q)
    p.add_argument("--out", required=True)

    return parser


COMMANDS = {
    "kernel": cmd_kernel,
    "validate-kernel": cmd_validate_kernel,
    "solve": cmd_solve,
    "converge": cmd_converge,
    "mollifier-dump": cmd_mollifier_dump,
}


def _is_config_failure(error: FracSincError) -> bool:
    return isinstance(error, ConfigError) or (isinstance(error, StageError) and isinstance(error.cause, ConfigError))


def main(argv: Optional[List[str]] = None) -> int:
    """Funcao principal do CLI - configura argparse e despacha comandos."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(verbose=args.verbose)
    if args.command not in COMMANDS:
        parser.print_help()
        return EXIT_USAGE

    # Try/except global com exit codes apropriados
    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        print("\n" + c("Interrompido pelo usuario.", Colors.DIM))
        return EXIT_INTERRUPTED
    except FileNotFoundError as e:
        print_error(f"Arquivo nao encontrado: {e.filename or e}")
        return EXIT_USAGE
    except FracSincError as e:
        print_error(str(e))
        return EXIT_USAGE if _is_config_failure(e) else EXIT_NUMERICAL
    except Exception as e:
        print_error(f"Erro inesperado: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
