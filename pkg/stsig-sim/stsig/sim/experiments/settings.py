from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from stsig.base.code import StsCode
from stsig.base.icrm import PROFILES, IcrmProfile

from stsig.sim.netsim import SCHEMES, SimConfig, check_scheme
from stsig.sim.phy import ChannelProfile, OfdmConfig

ChannelKind = Literal["awgn", "flat_rayleigh", "pedb"]
ProfileName = Literal["canonical", "wide", "desk"]


class _PhySettings(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    profile: ProfileName = "canonical"
    subcarriers: int = Field(512, ge=1)
    cp_len: int = Field(36, ge=0)
    subcarrier_spacing_hz: float = Field(15e3, gt=0)
    channel: ChannelKind = "pedb"
    speed_kmh: float = Field(3.0, ge=0)
    trials: int = Field(2000, ge=1)
    energy_fraction: float = Field(1.0, gt=0, le=1)
    detection_threshold: float = Field(8.0, gt=1)
    max_detected_tones: Optional[int] = Field(None, ge=1)

    @property
    def icrm_profile(self) -> IcrmProfile:
        return PROFILES[self.profile]

    def code(self) -> StsCode:
        return self.icrm_profile.code()

    def ofdm(self) -> OfdmConfig:
        return OfdmConfig(
            subcarriers=self.subcarriers,
            cp_len=self.cp_len,
            sample_rate=self.subcarriers * self.subcarrier_spacing_hz,
        )

    def channel_profile(self) -> ChannelProfile:
        if self.channel == "awgn":
            return ChannelProfile.awgn()
        if self.channel == "flat_rayleigh":
            return ChannelProfile.flat_rayleigh(self.speed_kmh)
        return ChannelProfile.pedb(self.speed_kmh)


class StsLinkSettings(_PhySettings):
    """Erasure and error rates of simultaneous STS signals against SIR."""

    signals: int = Field(30, ge=1)
    antennas: List[int] = [1, 2, 4]
    sir_db: List[float] = [-24.0, -21.0, -18.0, -15.0, -12.0, -9.0, -6.0]
    decode_threshold: Optional[int] = Field(None, ge=1)
    interference_to_noise_db: Optional[float] = 10.0
    error_rate_limit: float = Field(0.01, ge=0, le=1)

    @field_validator("antennas")
    @classmethod
    def _positive_antennas(cls, antennas: List[int]) -> List[int]:
        assert len(antennas) > 0 and all(a >= 1 for a in antennas), f"Antenna counts must be >= 1, got {antennas}."
        return antennas


class UplinkImpactSettings(_PhySettings):
    """Packet error rate of coded uplink data with and without overlaid STS signals."""

    n_sts: List[int] = [0, 30]
    snr_db: List[float] = [float(s) for s in range(8, 27)]
    batch_size: int = Field(16, ge=1)
    target_per: float = Field(0.1, gt=0, lt=1)


class NetworkSettings(SimConfig):
    """Femtocell cluster Monte Carlo: every SimConfig field plus the schemes and the number of drops."""

    schemes: List[str] = list(SCHEMES)
    n_drops: int = Field(200, ge=1)
    write_traces: bool = False

    @field_validator("schemes")
    @classmethod
    def _known_schemes(cls, schemes: List[str]) -> List[str]:
        assert len(schemes) > 0, "At least one scheme is required."
        for scheme in schemes:
            check_scheme(scheme)
        return schemes

    def sim_config(self) -> SimConfig:
        return SimConfig(**self.model_dump(exclude={"schemes", "n_drops", "write_traces"}))


class SuiteConfig(BaseModel):
    """Settings of every experiment, one section each."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    sts_link: StsLinkSettings = StsLinkSettings()
    data_impact: UplinkImpactSettings = UplinkImpactSettings()
    network: NetworkSettings = NetworkSettings()


def parse_suite(parameters: Dict[str, Any]) -> SuiteConfig:
    """Typed view of merged settings; raises a pydantic ValidationError naming the offending field paths."""
    return SuiteConfig(**parameters)
