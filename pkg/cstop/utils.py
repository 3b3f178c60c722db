import configparser
from fractions import Fraction
import itertools
import logging
import os
import random
import re
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple


logger = logging.getLogger(__name__)


RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")

EPSILON_GRID = [
    Fraction(1, 8),
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(4),
]

DEFAULT_CONFIG = {
    "MAX_EXHAUSTIVE_CARRIER": 6,
    "MAX_ENUMERATION_CARRIER": 4,
    "MAX_SWAP_MODEL": 64,
    "MAX_SUBFAMILY_EXHAUSTIVE": 16,
    "MAX_FORMULA_DEPTH": 3,
    "SEED": 0,
    "SAMPLES": 32,
}


class CstopError(Exception):
    pass


class SchemaError(CstopError):
    """The input document could not be parsed."""

    pass


class ValidationError(CstopError):
    """A structure failed one of its defining axioms.

    ``witness`` carries the offending elements so reports can print them.
    """

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class CarrierError(ValidationError):
    pass


class CarrierMismatch(CstopError):
    pass


class NotExtensional(ValidationError):
    pass


class DisjointnessError(ValidationError):
    pass


class MetricError(ValidationError):
    pass


class FunctionError(ValidationError):
    pass


class AxiomViolation(ValidationError):
    def __init__(self, axiom: str, witness: Any = None):
        super().__init__(f"axiom {axiom} violated", witness)
        self.axiom = axiom


class CapabilityError(CstopError):
    """An operation needs a function or carrier class the argument lacks."""

    pass


class UndefinedPoint(CstopError):
    pass


class InvalidModulus(ValidationError):
    pass


class UnregisteredModulus(CstopError):
    pass


class EmptyFamily(CstopError):
    pass


class SizeCapExceeded(CstopError):
    pass


class FormulaError(CstopError):
    pass


def _config_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise SchemaError(f"Config value {key}={value!r} is not an integer")


def load_config() -> Dict[str, int]:
    config = dict(DEFAULT_CONFIG)
    config_path = os.environ.get("CSTOP_CONFIG_PATH", "config.ini")
    if config_path == "ENV":
        for key in config:
            value = os.environ.get(f"CSTOP_{key}")
            if value is not None:
                config[key] = _config_int(key, value)
    else:
        cparser = configparser.ConfigParser()
        cparser.read(config_path)
        for section in ("limits", "sampling"):
            if section not in cparser:
                continue
            for key, value in cparser[section].items():
                config[key.upper()] = _config_int(key.upper(), value)
    assert config["MAX_ENUMERATION_CARRIER"] <= config["MAX_EXHAUSTIVE_CARRIER"]
    assert config["SAMPLES"] >= 0
    logger.debug(f"Loaded config from {config_path}: {config}")
    return config


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise SchemaError(f"Expected a rational string, got {text!r}")
    m = RATIONAL_RE.match(text)
    if m is None:
        raise SchemaError(f"Malformed rational {text!r}")
    numerator = int(m.group(1))
    denominator = int(m.group(2)) if m.group(2) is not None else 1
    if denominator == 0:
        raise SchemaError(f"Zero denominator in rational {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def check_cap(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise SizeCapExceeded(f"{what} has size {size}, over the cap of {cap}")


def epsilon_grid(seed: int, samples: int) -> List[Fraction]:
    """The fixed radius grid followed by ``samples`` seeded positive rationals."""
    rng = random.Random(seed)
    extra = [
        Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in range(samples)
    ]
    return EPSILON_GRID + extra


def random_rationals(
    rng: random.Random, count: int, height: int = 100, positive: bool = False
) -> List[Fraction]:
    low = 1 if positive else -height
    return [
        Fraction(rng.randint(low, height), rng.randint(1, height))
        for _ in range(count)
    ]


def powerset(items: Sequence) -> Iterator[Tuple]:
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(len(items) + 1)
    )


def set_partitions(items: Sequence) -> Iterator[List[List]]:
    """All partitions of ``items``, blocks kept in first-occurrence order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for idx in range(len(partition)):
            yield partition[:idx] + [[first] + partition[idx]] + partition[idx + 1 :]


def sort_key(value: Any) -> Tuple:
    """Total order on the heterogeneous values that show up as element ids."""
    if isinstance(value, tuple):
        return (1, tuple(sort_key(v) for v in value))
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return (0, "", value)
    return (2, str(value))


def sorted_ids(values: Iterable) -> List:
    return sorted(values, key=sort_key)
