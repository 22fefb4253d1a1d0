#!/usr/bin/env python3
"""
fracsinc CLI - Modulo Base

Contem:
- Classe Colors para output colorido
- Funcoes de print formatado (print_header, print_success, etc)
- Funcao c() para aplicar cores
- configure_logging() e codigos de saida
- ArgumentParser que sai com codigo 1 em erro de uso

Todos os outros modulos de cli/ importam deste modulo.
"""

import argparse
import logging
import sys
from typing import NoReturn, Optional

from ..config import LOG_DATE_FORMAT, LOG_FORMAT, LOG_LEVEL

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_INTERRUPTED = 130


class Colors:
    """ANSI colors para output bonito"""
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    BOLD = '\033[1m'
    DIM = '\033[2m'
    END = '\033[0m'


def c(text: str, color: str) -> str:
    """Aplica cor ao texto (desativa cores em pipes/redirecionamentos)"""
    if not sys.stdout.isatty():
        return text
    return f"{color}{text}{Colors.END}"


def print_header(text: str):
    print(f"\n{c(text, Colors.BOLD + Colors.CYAN)}")
    print("-" * 50)


def print_success(text: str):
    print(c(f"* {text}", Colors.GREEN))


def print_error(text: str):
    """Erros vao para stderr para nao misturar com CSV em stdout"""
    print(c(f"x {text}", Colors.RED), file=sys.stderr)


def print_info(text: str):
    print(c(f"i {text}", Colors.BLUE))


def print_warning(text: str):
    print(c(f"! {text}", Colors.YELLOW))


def configure_logging(verbose: bool = False, level: Optional[str] = None):
    """Configura logging raiz (stderr) uma unica vez por processo."""
    chosen = "INFO" if verbose else (level or LOG_LEVEL)
    logging.basicConfig(
        level=getattr(logging, chosen, logging.WARNING),
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        stream=sys.stderr,
        force=True,
    )


class UsageExitParser(argparse.ArgumentParser):
    """argparse padrao sai com 2; aqui erro de uso sai com EXIT_USAGE."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print_error(f"{self.prog}: {message}")
        raise SystemExit(EXIT_USAGE)
