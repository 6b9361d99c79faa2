from .geometric import (
    AdaptiveCoderTrace,
    GeometricCoder,
    LAMBDA_MAX,
    crossover_n,
    decode_fixed,
    decode_online_adaptive,
    decode_with_header,
    encode_fixed,
    encode_online_adaptive,
    encode_with_header,
    geometric_cross_entropy,
    geometric_entropy,
    geometric_kl,
    geometric_pmf,
    mle_lambda,
    sample_geometric,
    support_size,
)
from .families import (
    FAMILIES,
    FamilyModel,
    family_payload_bits,
    family_pmf,
    fit_family,
    sample_family,
    select_family,
)
from .mdl import MdlComparison, mdl_gaussian_vs_comb

__all__ = [
    "AdaptiveCoderTrace",
    "FAMILIES",
    "FamilyModel",
    "GeometricCoder",
    "LAMBDA_MAX",
    "MdlComparison",
    "crossover_n",
    "decode_fixed",
    "decode_online_adaptive",
    "decode_with_header",
    "encode_fixed",
    "encode_online_adaptive",
    "encode_with_header",
    "family_payload_bits",
    "family_pmf",
    "fit_family",
    "geometric_cross_entropy",
    "geometric_entropy",
    "geometric_kl",
    "geometric_pmf",
    "mdl_gaussian_vs_comb",
    "mle_lambda",
    "sample_family",
    "sample_geometric",
    "select_family",
    "support_size",
]
