"""Exact localization and closed-form checks for zero-dimensional DT4 series."""

from .exact import ComputationAbort, ParamContext, RatFn, UniPoly
from .qseries import QSeries, macmahon_power
from .partitions import PlanePartition, SolidPartition, enumerate_plane, enumerate_solid
from .vertex import SignRule, calibrate_sign_rule, z_c3_localized, z_c4_localized, z_c4_no_insertion
from .formulas import LocalCurveData, SplittingDatum, ck_closed_form
from .verify import VerificationReport, run_suite

__all__ = [
    "ComputationAbort", "ParamContext", "RatFn", "UniPoly",
    "QSeries", "macmahon_power",
    "PlanePartition", "SolidPartition", "enumerate_plane", "enumerate_solid",
    "SignRule", "calibrate_sign_rule", "z_c3_localized", "z_c4_localized", "z_c4_no_insertion",
    "LocalCurveData", "SplittingDatum", "ck_closed_form",
    "VerificationReport", "run_suite",
]
__version__ = "0.1.0"
