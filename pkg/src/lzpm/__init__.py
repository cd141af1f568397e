"""Approximate pattern matching directly in LZ78/LZW-compressed text.

The package finds all ending positions where a pattern occurs in a
compressed text within Hamming distance k (mismatches) or edit distance k
(errors), without decompressing more than pattern-sized windows around
codeword boundaries.
"""

from .textcore import PatternIndex, find_breaks, smallest_period, canonical_rotation
from .lzindex import Codebook, CompressedText, lz78_parse, decompress
# from .hamming import MatchReport, search_hamming
# from .editdist import search_errors
from .harness import oracle_hamming, oracle_edit, generate_instance, Metrics

__all__ = [
    "PatternIndex", "find_breaks", "smallest_period", "canonical_rotation",
    "Codebook", "CompressedText", "lz78_parse", "decompress",
    "MatchReport", "search_hamming", "search_errors",
    "oracle_hamming", "oracle_edit", "generate_instance", "Metrics",
]
