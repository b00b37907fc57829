from . import words
from .collect import DEFAULT_BUDGET, Collector
from .presentation import (
    GroupElement,
    PcPresentation,
    collect,
    commutator,
    conjugate,
    hirsch_length,
    inv,
    mul,
    power,
    product,
    random_element,
    random_normal_form,
    random_word,
)
from .consistency import ConsistencyVerdict, check_consistency
from .io import dump_presentation, load_presentation, parse_presentation

__all__ = [
    "words",
    "Collector",
    "DEFAULT_BUDGET",
    "GroupElement",
    "PcPresentation",
    "collect",
    "commutator",
    "conjugate",
    "hirsch_length",
    "inv",
    "mul",
    "power",
    "product",
    "random_element",
    "random_normal_form",
    "random_word",
    "ConsistencyVerdict",
    "check_consistency",
    "dump_presentation",
    "load_presentation",
    "parse_presentation",
]
