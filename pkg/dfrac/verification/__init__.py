"""Invariant suite run by ``dfrac verify``."""

from .suite import CHECKS, PLANS, CheckResult, run_suite

__all__ = ["CHECKS", "PLANS", "CheckResult", "run_suite"]
