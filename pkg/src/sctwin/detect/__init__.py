from .autoencoder import AutoencoderSpec, build_autoencoder, reconstruction_error
from .pca import PCAModel, fit_pca1, project, power_iteration_top
from .ocsvm import OCSVMModel, ocsvm_fit, decision_values, kkt_violation
from .detector import DetectorBundle, fit_detector, score_windows, detect_replication, DetectionOutcome
from .grid import grid_search, GRID_NUS, GRID_GAMMAS, write_grid_csv

__all__ = [
    "AutoencoderSpec", "build_autoencoder", "reconstruction_error",
    "PCAModel", "fit_pca1", "project", "power_iteration_top",
    "OCSVMModel", "ocsvm_fit", "decision_values", "kkt_violation",
    "DetectorBundle", "fit_detector", "score_windows", "detect_replication",
    "DetectionOutcome",
    "grid_search", "GRID_NUS", "GRID_GAMMAS", "write_grid_csv",
]
