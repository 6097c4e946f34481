from .basic import greedy_set, spencer_set
from .regular import almost_regular_complete
from .akpss import (
    RunCertificate,
    StepState,
    akpss_run,
    akpss_step,
    deg_i_to_j,
    mu_i_to_j,
)
from .pipelines import (
    PipelineConfig,
    pipeline_degree_gap,
    pipeline_graded_caps,
    pipeline_kminus2,
)

__all__ = [
    "greedy_set",
    "spencer_set",
    "almost_regular_complete",
    "RunCertificate",
    "StepState",
    "akpss_run",
    "akpss_step",
    "deg_i_to_j",
    "mu_i_to_j",
    "PipelineConfig",
    "pipeline_degree_gap",
    "pipeline_graded_caps",
    "pipeline_kminus2",
]
