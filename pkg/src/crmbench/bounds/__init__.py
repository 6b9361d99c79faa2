from .calc import (
    BoundResult,
    HypothesisClassSpec,
    compression_generalization_bound,
    compression_view_codelength,
    hidden_worm_bound,
    max_class_log_size,
    model_complexity_ceiling,
    required_samples,
    rule_class_log_size,
)
from .simulate import simulate_hidden_worm

__all__ = [
    "BoundResult",
    "HypothesisClassSpec",
    "compression_generalization_bound",
    "compression_view_codelength",
    "hidden_worm_bound",
    "max_class_log_size",
    "model_complexity_ceiling",
    "required_samples",
    "rule_class_log_size",
    "simulate_hidden_worm",
]
