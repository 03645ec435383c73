"""Sweep engine, monotonicity and sharpness checks, and report writers."""
from .catalog import CATALOG, Inequality, InequalityId, get_inequality
from .convexity import Surface, check_log_convexity
from .limits import check_limit_sharpness
from .manifest import load_manifest
from .monotone import check_am, check_cm
from .sweep import (SuiteReport, SweepReport, SweepSpec, TolPolicy, Verdict, run_suite,
                    spec_from_manifest, sweep_inequality, sweep_phi_ratios)

__all__ = [
    "CATALOG", "Inequality", "InequalityId", "get_inequality", "Surface",
    "check_log_convexity", "check_limit_sharpness", "load_manifest", "check_am", "check_cm",
    "SuiteReport", "SweepReport", "SweepSpec", "TolPolicy", "Verdict", "run_suite",
    "spec_from_manifest", "sweep_inequality", "sweep_phi_ratios",
]
