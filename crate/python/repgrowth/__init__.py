"""Python surface over the native engine.

Everything here is a thin re-export of the compiled module: group
construction, irreducible-module counting, chops of regular and permutation
modules, first cohomology, chief series, crown invariants, epimorphism
censuses, growth series and the named verification suites.
"""

from ._native import (
    ChiefRow,
    CountTable,
    Factor,
    Group,
    chief,
    chop_regular,
    cohomology,
    count_irreducibles,
    crown_sup,
    epimorphisms,
    lh1,
    run_suite,
    series_coefficients,
    series_eval,
    suite_names,
)

__all__ = [
    "ChiefRow",
    "CountTable",
    "Factor",
    "Group",
    "chief",
    "chop_regular",
    "cohomology",
    "count_irreducibles",
    "crown_sup",
    "epimorphisms",
    "lh1",
    "run_suite",
    "series_coefficients",
    "series_eval",
    "suite_names",
]
