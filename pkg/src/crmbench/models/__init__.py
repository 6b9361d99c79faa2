from .core import (
    NetScore,
    ProbModel,
    SequentialModel,
    compare_champion,
    nfl_average_codelength,
    sample_from_model,
    score_two_part,
    virtual_label,
)
from .container import (
    ContainerError,
    EncodedContainer,
    VerifyReport,
    checksum256,
    decode_container,
    encode_container,
    verify_roundtrip,
)

__all__ = [
    "ContainerError",
    "EncodedContainer",
    "NetScore",
    "ProbModel",
    "SequentialModel",
    "VerifyReport",
    "checksum256",
    "compare_champion",
    "decode_container",
    "encode_container",
    "nfl_average_codelength",
    "sample_from_model",
    "score_two_part",
    "verify_roundtrip",
]
