"""Texture descriptors: LBP, LPQ, log-Gabor, and Haar/Db8 wavelet statistics."""

from .dumps import read_feature_dump, write_feature_dump
from .lbp import lbp_codes, lbp_descriptor
from .loggabor import (
    LogGaborBank,
    build_log_gabor_bank,
    log_gabor_descriptor,
    log_gabor_transfer,
)
from .lpq import lpq_codes, lpq_descriptor
from .vector import DESCRIPTOR_TAGS, FeatureVector
from .wavelet import (
    SubbandPyramid,
    WaveletFilter,
    db8_filter,
    dwt2,
    dwt_descriptor,
    dwt_step,
    get_filter,
    haar_filter,
    idwt2,
)

__all__ = [
    "DESCRIPTOR_TAGS",
    "FeatureVector",
    "LogGaborBank",
    "SubbandPyramid",
    "WaveletFilter",
    "build_log_gabor_bank",
    "db8_filter",
    "dwt2",
    "dwt_descriptor",
    "dwt_step",
    "get_filter",
    "haar_filter",
    "idwt2",
    "lbp_codes",
    "lbp_descriptor",
    "log_gabor_descriptor",
    "log_gabor_transfer",
    "lpq_codes",
    "lpq_descriptor",
    "read_feature_dump",
    "write_feature_dump",
]
