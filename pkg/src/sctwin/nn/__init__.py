from .layers import Dense, LSTM, Dropout, Sequential, NonFiniteError
from .losses import mae_loss, cce_loss, l1_penalty
from .adam import Adam
from .train import TrainConfig, LearningCurve, train
from .io import model_to_dict, model_from_dict, save_model, load_model

__all__ = [
    "Dense", "LSTM", "Dropout", "Sequential", "NonFiniteError",
    "mae_loss", "cce_loss", "l1_penalty",
    "Adam",
    "TrainConfig", "LearningCurve", "train",
    "model_to_dict", "model_from_dict", "save_model", "load_model",
]
