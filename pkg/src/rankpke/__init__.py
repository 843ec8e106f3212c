"""Rank-metric public-key encryption: Loidreau's scheme, two hardened variants, and analysis tools."""
from .errors import (
    CorruptionError,
    DecodingFailure,
    DivisionByZero,
    FieldMismatch,
    FormatError,
    NoSolution,
    ParamError,
    RankPKEError,
    SamplingFailure,
    Unsupported,
)
from .field import ExtField, FieldElement, frobenius
from .gabidulin import GabidulinCode, decode, dual_generator_vector, encode, moore_matrix
from .keyio import Message, deserialize, serialize
from .linalg import (
    FieldMatrix,
    FieldVector,
    LinearCode,
    SubspaceBasisQ,
    code_dual,
    code_frobenius,
    code_intersection,
    code_sum,
    column_rank_q,
    rank_weight,
    rref,
    solve_right,
)
from .registry import DEMO_PRESETS, TABLE1, TABLE2, ParamRegistryEntry, preset
from .rng import SeededRng
from .schemes import (
    Ciphertext,
    KeyPair,
    PublicKey,
    SchemeParams,
    SecretKey,
    decrypt,
    encrypt,
    keygen,
    sample_low_colrank_matrix,
    sample_P,
    sample_rank_error,
)

__version__ = "0.1.0"
