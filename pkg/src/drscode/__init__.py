"""Distributed Reed-Solomon codes for simple multiple access networks."""

from .codec import corrupt, decode, encode_all, relay_encode, simulate
from .construct import Construction, build, classify, verify
from .gf import GF, field
from .rs import RSCode, rs_decode_bruteforce, rs_decode_bw, rs_encode
from .sman import SmanTopology, cut_capacity, in_capacity_region, partition

__all__ = [
    "Construction",
    "GF",
    "RSCode",
    "SmanTopology",
    "build",
    "classify",
    "corrupt",
    "cut_capacity",
    "decode",
    "encode_all",
    "field",
    "in_capacity_region",
    "partition",
    "relay_encode",
    "rs_decode_bruteforce",
    "rs_decode_bw",
    "rs_encode",
    "simulate",
    "verify",
]
