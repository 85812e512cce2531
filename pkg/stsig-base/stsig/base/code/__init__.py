from .decoder import (
    codebook_chunks,
    decode_multi,
    decode_single,
    default_threshold,
    offset_hypotheses,
    valid_tone_sequences,
)
from .observations import Candidate, DecodeResult, DecodeStatus, ObservedTones
from .properties import check_disambiguation, check_mds, check_offset_recovery, min_distance_bruteforce
from .sts_code import ENUMERATION_GUARD, Codeword, StsCode, SymbolVector, from_digits, message_codewords, to_digits
