"""LPT scheduling on uniform processors: heuristic, exact optimum, tight ratios."""

from .analysis import RatioReport, approx_ratio, char_poly, gis_bound, graham_bound, max_positive_root, rho
from .certify import CertificationReport, certify, dominates
from .exact import OptResult, SolverRefusal, opt_bnb, opt_enumerate
from .lpt import lpt_assignment, lpt_makespan, lpt_schedule
from .model import (
    DegenerateInstance, Instance, InstanceError, Schedule, load_instance, parse_instance, serialize_instance,
    validate,
)
from .worstcase import SearchConfig, SearchResult, generate_gis_instance, ratio_ceiling_check, search_worst

__all__ = [
    "CertificationReport", "DegenerateInstance", "Instance", "InstanceError", "OptResult", "RatioReport",
    "Schedule", "SearchConfig", "SearchResult", "SolverRefusal", "approx_ratio", "certify", "char_poly",
    "dominates", "generate_gis_instance", "gis_bound", "graham_bound", "load_instance", "lpt_assignment",
    "lpt_makespan", "lpt_schedule", "max_positive_root", "opt_bnb", "opt_enumerate", "parse_instance",
    "ratio_ceiling_check", "rho", "search_worst", "serialize_instance", "validate",
]
