from .fixtures import grammar_text, natural_pgm_bytes, wordlist_bytes, wordlist_text
from .model_zoo import (
    MODEL_SPECS,
    AdaptiveBitModel,
    BiasedZeroBitModel,
    FamilySelectModel,
    GeometricFixedModel,
    GeometricHeaderModel,
    GeometricOnlineModel,
    ModelSpec,
    UniformBitModel,
    UniformByteModel,
    bitstring_models,
    int_lines_bytes,
    parse_int_lines,
    resolve_model,
)
from .registry import (
    DATASET_KINDS,
    DEFAULT_PROGRAM_BITS,
    Registry,
    RegistryError,
    validate_dataset,
)

__all__ = [
    "MODEL_SPECS",
    "AdaptiveBitModel",
    "BiasedZeroBitModel",
    "DATASET_KINDS",
    "DEFAULT_PROGRAM_BITS",
    "FamilySelectModel",
    "GeometricFixedModel",
    "GeometricHeaderModel",
    "GeometricOnlineModel",
    "ModelSpec",
    "Registry",
    "RegistryError",
    "UniformBitModel",
    "UniformByteModel",
    "bitstring_models",
    "grammar_text",
    "int_lines_bytes",
    "natural_pgm_bytes",
    "parse_int_lines",
    "resolve_model",
    "validate_dataset",
    "wordlist_bytes",
    "wordlist_text",
]
