"""Three evaluations of the naive integral J0(tau) and a parameter-dependent saddle-point engine."""
from .bignum import BigComplex
from .contour import build_path, eval_components, eval_J0_realline, integrate_segment
from .errors import (AccuracyError, ClassificationError, ConvergenceError, DomainError,
                     NaiveIntegralError, SeriesStructureError)
from .expansions import (an_coefficients_q1, an_coefficients_q2, bn_coefficients, e_series,
                         f_series, j2_asymptotic, j4_asymptotic)
from .perron import AsymptoticResult, CnkTable, cnk_table, gaussian_moment, perron_sum, verify_condition_c
from .saddles import ramification_points, saddle_series, solve_saddles, verify_localizations
from .series import PuiseuxSeries, series_compose, series_exp, series_log, series_mul, series_pow
from .theta import eval_J_reference, psi, psi0, tau_of_t, z0_leading

__all__ = [
    "AccuracyError", "AsymptoticResult", "BigComplex", "ClassificationError", "CnkTable",
    "ConvergenceError", "DomainError", "NaiveIntegralError", "PuiseuxSeries", "SeriesStructureError",
    "an_coefficients_q1", "an_coefficients_q2", "bn_coefficients", "build_path", "cnk_table",
    "e_series", "eval_J0_realline", "eval_J_reference", "eval_components", "f_series",
    "gaussian_moment", "integrate_segment", "j2_asymptotic", "j4_asymptotic", "perron_sum", "psi",
    "psi0", "ramification_points", "saddle_series", "series_compose", "series_exp", "series_log", "tau_of_t",
    "series_mul", "series_pow", "solve_saddles", "verify_condition_c", "verify_localizations",
    "z0_leading",
]
