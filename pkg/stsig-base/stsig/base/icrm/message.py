from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

from stsig.base.code import Codeword, DecodeResult, StsCode
from stsig.base.gf import FieldSpec

# A prime near 2**32 / golden ratio, and floor(2**16 / golden ratio) for the frame offset
_HASH_MULTIPLIER = 2654435761
_FRAME_MULTIPLIER = 40503
_WORD = 2**32
BS_ID_BITS = 9


@dataclass(frozen=True)
class IcrmProfile:
    """Bit layout of an ICRM and the STS code it is sent with.

    Args:
        name (str): Profile name.
        resource_bits (int): Width of the radio resource ID.
        priority_bits (int): Width of the traffic priority.
        hash_bits (int): Width of the hashed serving base station ID.
        p (int): Field size; also the number of usable tone positions.
        n (int): Code length in OFDM symbols.
        subcarriers (int): OFDM grid size the profile is meant for.
        beta (Optional[int]): Pinned evaluation-point generator, or None for the default choice.
    """

    name: str
    resource_bits: int
    priority_bits: int
    hash_bits: int
    p: int
    n: int = 11
    subcarriers: int = 512
    beta: Optional[int] = None

    def __post_init__(self) -> None:
        assert min(self.resource_bits, self.priority_bits, self.hash_bits) >= 0, "Bit widths must be non-negative."
        assert self.p <= self.subcarriers, f"GF({self.p}) needs {self.p} tone positions, grid has {self.subcarriers}."
        assert 2**self.width <= self.p - 1, (
            f"{self.width}-bit messages do not fit the {self.p - 1} codewords of GF({self.p})."
        )

    @property
    def width(self) -> int:
        return self.resource_bits + self.priority_bits + self.hash_bits

    @property
    def n_messages(self) -> int:
        return 2**self.width

    def code(self) -> StsCode:
        """The (N, 1) STS code of this profile."""
        return _profile_code(self.p, self.n, self.beta)


@lru_cache(maxsize=None)
def _profile_code(p: int, n: int, beta: Optional[int]) -> StsCode:
    return StsCode(FieldSpec(p), n, 1, beta=beta)


CANONICAL = IcrmProfile("canonical", resource_bits=2, priority_bits=3, hash_bits=3, p=509)
WIDE = IcrmProfile("wide", resource_bits=2, priority_bits=3, hash_bits=4, p=1021, subcarriers=1024)
DESK = IcrmProfile("desk", resource_bits=2, priority_bits=2, hash_bits=0, p=17, n=4, subcarriers=32, beta=4)

PROFILES: Dict[str, IcrmProfile] = {profile.name: profile for profile in (CANONICAL, WIDE, DESK)}


@dataclass(frozen=True)
class Icrm:
    """Interference coordination request message.

    Args:
        resource_id (int): Radio resource the sender is scheduled on, 0-based.
        priority (int): Traffic priority level, higher is more urgent.
        hashed_bs_id (int): Time-varying hash of the sender's serving base station.
    """

    resource_id: int
    priority: int
    hashed_bs_id: int = 0

    def to_json(self) -> dict:
        return {"resource_id": self.resource_id, "priority": self.priority, "hashed_bs_id": self.hashed_bs_id}

    @classmethod
    def from_json(cls, data: dict) -> "Icrm":
        return cls(int(data["resource_id"]), int(data["priority"]), int(data.get("hashed_bs_id", 0)))


@dataclass(frozen=True)
class HashSalt:
    frame_number: int


def _check_field(name: str, value: int, bits: int) -> None:
    assert 0 <= value < 2**bits, f"{name}={value} does not fit in {bits} bits."


def pack(icrm: Icrm, profile: IcrmProfile = CANONICAL) -> int:
    """Concatenate resource ID, priority and hashed BS ID, resource ID most significant."""
    _check_field("resource_id", icrm.resource_id, profile.resource_bits)
    _check_field("priority", icrm.priority, profile.priority_bits)
    _check_field("hashed_bs_id", icrm.hashed_bs_id, profile.hash_bits)
    return (
        (icrm.resource_id << (profile.priority_bits + profile.hash_bits))
        | (icrm.priority << profile.hash_bits)
        | icrm.hashed_bs_id
    )


def unpack(m: int, profile: IcrmProfile = CANONICAL) -> Icrm:
    """Inverse of `pack`."""
    assert 0 <= m < profile.n_messages, f"Message {m} does not fit in {profile.width} bits."
    return Icrm(
        resource_id=m >> (profile.priority_bits + profile.hash_bits),
        priority=(m >> profile.hash_bits) & (2**profile.priority_bits - 1),
        hashed_bs_id=m & (2**profile.hash_bits - 1),
    )


def hash_bs_id(bs_id: int, salt: HashSalt, out_bits: int) -> int:
    """Time-varying hash of a 9-bit base station ID.

    The mixer is Knuth multiplicative (Fibonacci) hashing: key = bs_id + frame * 40503 mod 2^32 is
    multiplied by 2654435761 mod 2^32 and the top `out_bits` bits of the product are kept. Consecutive
    IDs land evenly spread over the output range, and the frame offset changes which IDs share a value
    from one frame to the next. Not cryptographic.

    Args:
        bs_id (int): Base station ID, < 512.
        salt (HashSalt): Frame the hash is valid for.
        out_bits (int): Output width, at most 32.

    Returns:
        int: Hash in [0, 2**out_bits).
    """
    assert 0 <= bs_id < 2**BS_ID_BITS, f"Base station ID {bs_id} does not fit in {BS_ID_BITS} bits."
    assert 0 <= out_bits <= 32, f"Output width must be in [0, 32], got {out_bits}."
    if out_bits == 0:
        return 0
    key = (bs_id + salt.frame_number * _FRAME_MULTIPLIER) % _WORD
    return ((key * _HASH_MULTIPLIER) % _WORD) >> (32 - out_bits)


def icrm_to_codeword(icrm: Icrm, profile: IcrmProfile = CANONICAL) -> Codeword:
    return profile.code().encode_message(pack(icrm, profile))


def codeword_to_icrm(codeword: Codeword, profile: IcrmProfile = CANONICAL) -> Optional[Icrm]:
    """Icrm carried by an exact codeword, or None if the codeword carries no ICRM of this profile."""
    code = profile.code()
    if not code.is_valid_codeword(codeword) or codeword.indices[0] == 0:
        return None
    message = codeword.indices[0] - 1
    if message >= profile.n_messages:
        return None
    return unpack(message, profile)


def decoded_icrms(result: DecodeResult, profile: IcrmProfile = CANONICAL) -> List[Icrm]:
    """ICRMs among the accepted candidates, skipping messages outside the profile's range."""
    return [unpack(c.message, profile) for c in result.candidates if c.message < profile.n_messages]
