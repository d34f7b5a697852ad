"""Executable theorem checks, the ring corpus and the suite runner."""

from .checks import (
    CHECKS,
    CHECKS_BY_ID,
    COUNTEREXAMPLE,
    ERROR,
    MIN_PRIMES_ID,
    VACUOUS,
    VERIFIED,
    TheoremCheck,
    TheoremVerdict,
    check_min_primes_construction,
    recheck_witness,
    run_check,
    select_checks,
)
from .context import RingContext
from .corpus import CorpusEntry, default_corpus, format_corpus, load_corpus, parse_corpus
from .runner import SuiteConfig, run_suite, strip_timing, suite_exit_code
from .search import parse_flag_expression, search_open_question, search_profiles

__all__ = [
    "CHECKS",
    "CHECKS_BY_ID",
    "COUNTEREXAMPLE",
    "CorpusEntry",
    "ERROR",
    "MIN_PRIMES_ID",
    "RingContext",
    "SuiteConfig",
    "TheoremCheck",
    "TheoremVerdict",
    "VACUOUS",
    "VERIFIED",
    "check_min_primes_construction",
    "default_corpus",
    "format_corpus",
    "load_corpus",
    "parse_corpus",
    "parse_flag_expression",
    "recheck_witness",
    "run_check",
    "run_suite",
    "search_open_question",
    "search_profiles",
    "select_checks",
    "strip_timing",
    "suite_exit_code",
]
