from .bitio import BitReader, BitString, BitWriter
from .info import (
    LN2,
    SymbolDistribution,
    cross_entropy,
    entropy,
    kl_divergence,
    kraft_sum,
    realized_codelength,
    shannon_codelength,
)
from .arith import (
    AdaptiveCountsSource,
    ArithDecoder,
    ArithEncoder,
    CumulativeTable,
    MAX_TOTAL,
    QUANT_TOTAL,
    StaticSource,
    TableSource,
    arith_decode,
    arith_encode,
    quantize_distribution,
)

__all__ = [
    "AdaptiveCountsSource",
    "ArithDecoder",
    "ArithEncoder",
    "BitReader",
    "BitString",
    "BitWriter",
    "CumulativeTable",
    "LN2",
    "MAX_TOTAL",
    "QUANT_TOTAL",
    "StaticSource",
    "SymbolDistribution",
    "TableSource",
    "arith_decode",
    "arith_encode",
    "cross_entropy",
    "entropy",
    "kl_divergence",
    "kraft_sum",
    "quantize_distribution",
    "realized_codelength",
    "shannon_codelength",
]
