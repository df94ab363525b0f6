# Knot homology engine: bracket, expansion, Khovanov and Lee complexes
from .bracket import LaurentPolynomial, bracket_spanning_tree, bracket_state_sum
from .config import EngineSettings, get_settings, load_settings
from .decorators import checker, crossing_guard
from .diagram_core import count_circles, parse_pd
from .exceptions import KhomaError
from .expansion import expand, module_a_ranks
from .homalg import BasedComplex, homology_z, reduce
from .khovanov import build_cube, khovanov_homology
from .lee import lee_complex, lee_homology
from .runner import CheckRunner
from .orchestrator import VerificationOrchestrator

__all__ = [
    "LaurentPolynomial",
    "bracket_spanning_tree",
    "bracket_state_sum",
    "EngineSettings",
    "get_settings",
    "load_settings",
    "checker",
    "crossing_guard",
    "count_circles",
    "parse_pd",
    "KhomaError",
    "expand",
    "module_a_ranks",
    "BasedComplex",
    "homology_z",
    "reduce",
    "build_cube",
    "khovanov_homology",
    "lee_complex",
    "lee_homology",
    "CheckRunner",
    "VerificationOrchestrator",
]
