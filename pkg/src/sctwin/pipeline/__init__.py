from .labels import (
    CLASS_NAMES, LABEL_NORMAL, LABEL_RECOVERY, SCENARIO_CLASS,
    LabelledTrace, default_recovery_rule, label_trace, RECOVERY_RULES,
)
from .scaling import NormalizationStats, fit_minmax, apply_minmax, invert_minmax
from .windows import WindowSet, make_windows, split_dataset, one_hot, one_hot_inverse
from .store import write_window_set, read_window_set, prepare_scenario

__all__ = [
    "CLASS_NAMES", "LABEL_NORMAL", "LABEL_RECOVERY", "SCENARIO_CLASS",
    "LabelledTrace", "default_recovery_rule", "label_trace", "RECOVERY_RULES",
    "NormalizationStats", "fit_minmax", "apply_minmax", "invert_minmax",
    "WindowSet", "make_windows", "split_dataset", "one_hot", "one_hot_inverse",
    "write_window_set", "read_window_set", "prepare_scenario",
]
