"""Schur parametrization of block contractions and unitary dilations."""

from ._core import (
    BlockShape,
    Dilation,
    MatrixParams,
    PsdParams,
    RowColParams,
    SchurDilateError,
    apply_kraus,
    bell_projector,
    builtin_witness_names,
    channel_dilate,
    channel_simulate,
    col_parametrize,
    defects,
    gen_family,
    horodecki_state,
    julia,
    matrix_parametrize,
    matrix_reconstruct,
    povm_dilate,
    povm_verify,
    psd_parametrize,
    psd_reconstruct,
    reconstruct,
    row_parametrize,
    witness_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
