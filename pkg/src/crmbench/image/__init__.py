from .pgm import GrayImage, PgmError, parse_pgm, pgm_bytes, read_pgm, write_pgm
from .delta import (
    DeltaImageModel,
    DiffHistogram,
    delta_decode,
    delta_encode,
    diff_histogram,
    residual_symbols,
)
from .interp import (
    FrameTriple,
    InterpReport,
    InterpTripleModel,
    gradient_sq,
    interp_decode,
    interp_efficiency_report,
    interp_encode,
    interp_predict,
    interp_residual_codelength,
    parse_triple,
    triple_bytes,
)

__all__ = [
    "DeltaImageModel",
    "DiffHistogram",
    "FrameTriple",
    "GrayImage",
    "InterpReport",
    "InterpTripleModel",
    "PgmError",
    "delta_decode",
    "delta_encode",
    "diff_histogram",
    "gradient_sq",
    "interp_decode",
    "interp_efficiency_report",
    "interp_encode",
    "interp_predict",
    "interp_residual_codelength",
    "parse_pgm",
    "parse_triple",
    "pgm_bytes",
    "read_pgm",
    "residual_symbols",
    "triple_bytes",
    "write_pgm",
]
