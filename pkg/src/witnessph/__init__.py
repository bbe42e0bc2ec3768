"""Witness-complex persistent homology and membership testing for scalar time series."""

from .classify import (
    FFTModel,
    PipelineConfig,
    PRFModel,
    ROCCurve,
    fft_features,
    load_model,
    membership,
    membership_fft,
    roc,
    save_model,
    train_fft,
    train_prf,
)
from .embed import DelayParams, DistanceMatrix, LandmarkSet, PointCloud, delay_embed, distances, select_landmarks, suggest_tau
from .filtration import (
    CechComplex,
    WitnessFiltration,
    build_filtration,
    cech_complex,
    epsilon_max_rule,
    simplex_birth,
    witness_complex,
)
from .homology import PersistenceDiagram, PersistencePoint, betti_at, persistence
from .ingest import TimeSeries, WindowSpec, read_csv, read_wav, windows, write_wav
from .prf import PRFGrid, l2_distance, mean_prf, prf, sigma

__version__ = "0.1.0"
