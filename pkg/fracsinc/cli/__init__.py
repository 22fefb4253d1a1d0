"""
fracsinc CLI - Modulos de Comandos

Estrutura dos modulos:
- base.py: Colors, print helpers, configure_logging, codigos de saida
- kernel.py: kernel, validate-kernel
- solve.py: solve
- converge.py: converge
- mollifier.py: mollifier-dump
"""

from .base import (
    EXIT_INTERRUPTED,
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    Colors,
    UsageExitParser,
    c,
    configure_logging,
    print_error,
    print_header,
    print_info,
    print_success,
    print_warning,
)
from .kernel import cmd_kernel, cmd_validate_kernel, compare_with_oracle, sample_indices
from .solve import cmd_solve, write_solution_csv
from .converge import cmd_converge
from .mollifier import cmd_mollifier_dump

__all__ = [
    "EXIT_INTERRUPTED",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "Colors",
    "UsageExitParser",
    "c",
    "configure_logging",
    "print_error",
    "print_header",
    "print_info",
    "print_success",
    "print_warning",
    "cmd_kernel",
    "cmd_validate_kernel",
    "compare_with_oracle",
    "sample_indices",
    "cmd_solve",
    "write_solution_csv",
    "cmd_converge",
    "cmd_mollifier_dump",
]
