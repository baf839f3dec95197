from .report import ReportRow, ExperimentReport
from .golden import golden_file, load_golden, freeze_golden
from .registry import LIMITS, RUNNERS, experiment_defaults, experiment_params, run_experiment

__all__ = [
    'ReportRow', 'ExperimentReport',
    'golden_file', 'load_golden', 'freeze_golden',
    'LIMITS', 'RUNNERS', 'experiment_defaults', 'experiment_params', 'run_experiment',
]
