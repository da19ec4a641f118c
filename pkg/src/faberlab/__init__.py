"""Faber polynomials of Miller-basis modular forms: exact construction,
power-sum constants, real-root location and the angular distribution of roots
on the arc ``|tau| = 1``."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import FaberlabError
from .faber import FaberPolynomial, faber_closed_form, faber_family, faber_greedy, miller_form_qexp
from .modforms import delta_series, eisenstein_series, j_series, weight_decompose
from .powersums import linearity_constants, power_sums, verify_linearity
from .qseries import LaurentSeries
from .realroots import count_roots, isolate_roots, min_m_off_arc, root_report

__all__ = [
    "__version__",
    "FaberlabError",
    "FaberPolynomial",
    "LaurentSeries",
    "count_roots",
    "delta_series",
    "eisenstein_series",
    "faber_closed_form",
    "faber_family",
    "faber_greedy",
    "isolate_roots",
    "j_series",
    "linearity_constants",
    "miller_form_qexp",
    "min_m_off_arc",
    "power_sums",
    "root_report",
    "verify_linearity",
    "weight_decompose",
]
