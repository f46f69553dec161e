"""Pattern classification with density operators on the Bloch sphere."""

from .classify import (
    LabeledDataset,
    NmcModel,
    QcModel,
    QuantumCentroid,
    classify_nmc,
    classify_qc,
    discriminant_function,
    oracle_combine,
    predict_nmc,
    predict_qc,
    qdf_coefficients,
    quantum_discriminant,
    train_nmc,
    train_qc,
)
from .distance import (
    euclidean_distance,
    generalized_normalized_trace_distance,
    normalized_trace_distance,
    trace_distance,
)
from .encoding import (
    DensityPattern,
    GeneralizedDensityPattern,
    bloch_components,
    encode,
    encode_generalized,
    gell_mann_basis,
    inverse_stereographic,
    stereographic,
)
from .metrics import confusion, evaluate, report

__version__ = "0.1.0"
