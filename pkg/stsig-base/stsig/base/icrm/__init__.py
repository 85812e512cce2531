from .message import (
    CANONICAL,
    DESK,
    PROFILES,
    WIDE,
    HashSalt,
    Icrm,
    IcrmProfile,
    codeword_to_icrm,
    decoded_icrms,
    hash_bs_id,
    icrm_to_codeword,
    pack,
    unpack,
)
