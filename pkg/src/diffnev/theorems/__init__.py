"""Executable checks of the difference abc, second main theorem and Fermat statements."""

from .abc import (
    abc_corpus,
    abc_preconditions,
    counterexample_abc,
    m_term_corpus,
    verify_entire_abc,
    verify_m_term,
    verify_poly_abc,
)
from .fermat import FermatResult, SearchResult, fermat_check, fermat_search
from .report import MarginReport, Precondition, PreconditionFailed, decide
from .smt import complete_long_values, five_value_report, is_complete_long_value, shifting_share, smt_report

__all__ = [
    "MarginReport",
    "Precondition",
    "PreconditionFailed",
    "decide",
    "verify_poly_abc",
    "verify_entire_abc",
    "counterexample_abc",
    "verify_m_term",
    "abc_preconditions",
    "abc_corpus",
    "m_term_corpus",
    "smt_report",
    "complete_long_values",
    "is_complete_long_value",
    "shifting_share",
    "five_value_report",
    "fermat_check",
    "fermat_search",
    "FermatResult",
    "SearchResult",
]
