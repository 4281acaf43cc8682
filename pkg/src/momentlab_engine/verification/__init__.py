# Acceptance suite: registered criteria run by `momentlab-cli verify`.

from .models import CriterionResult, SuiteReport
from .service import criterion_ids, run_acceptance_suite

__all__ = ["CriterionResult", "SuiteReport", "criterion_ids", "run_acceptance_suite"]
