"""Seeded generators of model documents."""
from fractions import Fraction
import logging
import random
from typing import Dict, List

from cstop.complemented import enumerate_complemented
from cstop.setineq import Carrier, validate_carrier
from cstop.utils import (
    DEFAULT_CONFIG,
    check_cap,
    format_rational,
    set_partitions,
)


logger = logging.getLogger(__name__)


def _names(n: int) -> List[str]:
    return [str(i) for i in range(n)]


def repair_metric(matrix: List[List[Fraction]]) -> List[List[Fraction]]:
    """Shortest-path closure: lower d(x, z) to d(x, y) + d(y, z) wherever the
    triangle inequality fails. Every lowered entry is logged."""
    n = len(matrix)
    d = [list(row) for row in matrix]
    for y in range(n):
        for x in range(n):
            for z in range(n):
                through = d[x][y] + d[y][z]
                if through < d[x][z]:
                    logger.warning(
                        f"Repaired d({x},{z}) from {format_rational(d[x][z])} "
                        f"to {format_rational(through)} through {y}"
                    )
                    d[x][z] = through
    return d


def random_metric(
    n: int,
    seed: int = DEFAULT_CONFIG["SEED"],
    height: int = 12,
    cap: int = DEFAULT_CONFIG["MAX_EXHAUSTIVE_CARRIER"],
) -> Dict:
    """A document with an ``n``-point metric of positive rational distances."""
    check_cap("random metric", n, cap)
    rng = random.Random(seed)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = Fraction(rng.randint(1, height), rng.randint(1, 4))
            matrix[i][j] = matrix[j][i] = value
    matrix = repair_metric(matrix)
    return {
        "version": 1,
        "metric": {
            "name": "M",
            "elements": _names(n),
            "distances": [[format_rational(v) for v in row] for row in matrix],
        },
    }


def random_carrier(
    n: int,
    seed: int = DEFAULT_CONFIG["SEED"],
    discrete: bool = False,
    cap: int = DEFAULT_CONFIG["MAX_EXHAUSTIVE_CARRIER"],
) -> Dict:
    """A document with one carrier whose inequality is an apartness.

    With ``discrete`` the equality is the identity and the inequality its
    complement. Otherwise the equality and the coarser partition of
    non-apart classes are drawn at random.
    """
    check_cap("random carrier", n, cap)
    elements = _names(n)
    if discrete:
        carrier = validate_carrier(elements)
    else:
        rng = random.Random(seed)
        equality = [list(b) for b in rng.choice(list(set_partitions(elements)))]
        blocks = rng.choice(list(set_partitions(list(range(len(equality))))))
        coarse_of = {i: idx for idx, block in enumerate(blocks) for i in block}
        class_of = {x: i for i, block in enumerate(equality) for x in block}
        neq = [
            (x, y)
            for x in elements
            for y in elements
            if coarse_of[class_of[x]] != coarse_of[class_of[y]]
        ]
        carrier = validate_carrier(elements, equality, neq)
    return {"version": 1, "carrier": {"name": carrier.name, **carrier.to_json()}}


def enumerate_cs(
    carrier: Carrier, cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"]
) -> Dict:
    """A document listing every complemented subset of ``carrier`` as C0, C1, ..."""
    check_cap(f"carrier {carrier.name}", len(carrier), cap)
    everything = enumerate_complemented(carrier)
    return {
        "version": 1,
        "carrier": {"name": carrier.name, **carrier.to_json()},
        "complemented": {f"C{i}": a.to_json() for i, a in enumerate(everything)},
    }
