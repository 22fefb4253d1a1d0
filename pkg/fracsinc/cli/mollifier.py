#!/usr/bin/env python3
"""
fracsinc CLI - Modulo Mollifier

- cmd_mollifier_dump: Grava nos e pesos do mollifier tabulado em CSV
"""

import csv
from pathlib import Path

from .base import EXIT_OK, print_info, print_success
from ..rhs import MollifierSpec, build_mollifier


def cmd_mollifier_dump(args) -> int:
    """Colunas y1..yd, weight (pesos somam 1).

    Examples:
        $ python -m fracsinc mollifier-dump --d 2 --epsilon 0.03125 --q 8 --out eta.csv
    """
    mollifier = build_mollifier(MollifierSpec(args.epsilon, args.q), args.d)
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([f"y{i + 1}" for i in range(args.d)] + ["weight"])
        for node, weight in zip(mollifier.nodes, mollifier.weights):
            writer.writerow([f"{v:.17g}" for v in node] + [f"{weight:.17g}"])

    print_info(f"{len(mollifier.weights)} nos, soma dos pesos {mollifier.weights.sum():.15f}")
    print_success(f"Mollifier gravado em {path}")
    return EXIT_OK
