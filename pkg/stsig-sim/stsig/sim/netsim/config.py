from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from stsig.base.icrm import PROFILES, IcrmProfile

from stsig.sim.phy import SPEED_OF_LIGHT, db_to_linear

SCHEMES = ("none", "onoff", "slnr", "prioritized_slnr", "ideal_bf_uncoordinated")

# Stream labels of a drop: entropy tuples are (master_seed, drop, label[, scheme_index]).
TOPOLOGY_STREAM = 0
CHANNEL_STREAM = 1
SCHEME_STREAM = 2


def check_scheme(scheme: str) -> int:
    """Index of `scheme` in SCHEMES."""
    assert scheme in SCHEMES, f"Unknown scheme {scheme!r}, expected one of {list(SCHEMES)}."
    return SCHEMES.index(scheme)


class SimConfig(BaseModel):
    """Femtocell cluster simulation parameters.

    Radio defaults follow the usual femto-cluster budget: 2 GHz carrier, 2 BS antennas, 23 dBm at both
    ends, -174 dBm/Hz noise with 6 dB (BS) and 10 dB (user) noise figures, 512 subcarriers at 15 kHz and
    pedestrian fading at 3 km/h. Each cell schedules one user per resource.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    grid_size: int = Field(5, ge=1)
    apartment_size_m: float = Field(10.0, gt=0)
    deployment_ratio: float = Field(0.5, ge=0, le=1)
    min_distance_m: float = Field(1.0, gt=0)
    wall_loss_db: float = Field(5.0, ge=0)

    carrier_freq_hz: float = Field(2e9, gt=0)
    bs_antennas: int = Field(2, ge=1)
    bs_tx_power_dbm: float = 23.0
    ue_antennas: int = Field(1, ge=1, le=1)
    ue_tx_power_dbm: float = 23.0
    noise_psd_dbm_hz: float = -174.0
    bs_noise_figure_db: float = Field(6.0, ge=0)
    ue_noise_figure_db: float = Field(10.0, ge=0)
    subcarriers: int = Field(512, ge=1)
    subcarrier_spacing_hz: float = Field(15e3, gt=0)
    speed_kmh: float = Field(3.0, ge=0)
    fading_sinusoids: int = Field(8, ge=1)

    n_resources: int = Field(4, ge=1)
    hold_subframes: int = Field(1, ge=1)
    n_subframes: int = Field(20, ge=1)
    subframe_duration_s: float = Field(1e-3, gt=0)

    icrm_profile: Literal["canonical", "wide", "desk"] = "canonical"
    icrm_trigger_sinr_db: float = 3.0
    icrm_response_inr_db: Optional[float] = 40.0
    max_base_priority: int = Field(3, ge=0, le=7)
    priority_aging_subframes: int = Field(5, ge=1)
    target_rate: float = Field(1.0, ge=0)

    sts_delivery: Literal["phy", "ideal"] = "phy"
    channel_estimation: Literal["sts", "perfect"] = "sts"
    sts_energy_fraction: float = Field(1.0, gt=0, le=1)
    sts_thermal_noise: bool = True
    uplink_data_overlay: bool = True
    uplink_data_snr_db: float = 20.0
    detection_threshold: float = Field(8.0, gt=1)
    max_detected_tones: Optional[int] = Field(64, ge=1)
    decode_threshold: Optional[int] = Field(None, ge=1)
    offset_window: int = Field(0, ge=0)
    neighbor_radius: int = Field(1, ge=1)

    @model_validator(mode="after")
    def _check_layout(self) -> "SimConfig":
        assert self.subcarriers % self.n_resources == 0, (
            f"{self.subcarriers} subcarriers do not split into {self.n_resources} equal resources."
        )
        profile = self.profile
        assert profile.p <= self.subcarriers, f"Profile {profile.name} needs {profile.p} subcarriers."
        assert self.n_resources <= 2**profile.resource_bits, (
            f"{self.n_resources} resources do not fit the {profile.resource_bits}-bit resource ID."
        )
        assert self.decode_threshold is None or self.decode_threshold <= profile.n, (
            f"Decode threshold {self.decode_threshold} exceeds the code length {profile.n}."
        )
        return self

    @property
    def profile(self) -> IcrmProfile:
        return PROFILES[self.icrm_profile]

    @property
    def n_apartments(self) -> int:
        return self.grid_size**2

    @property
    def resource_width(self) -> int:
        """Subcarriers per resource."""
        return self.subcarriers // self.n_resources

    @property
    def doppler_hz(self) -> float:
        return self.speed_kmh / 3.6 * self.carrier_freq_hz / SPEED_OF_LIGHT

    @property
    def bs_power_per_resource_mw(self) -> float:
        return float(db_to_linear(self.bs_tx_power_dbm)) / self.n_resources

    @property
    def ue_power_mw(self) -> float:
        return float(db_to_linear(self.ue_tx_power_dbm))

    @property
    def ue_noise_mw(self) -> float:
        """Noise over one resource at a user."""
        bandwidth = self.resource_width * self.subcarrier_spacing_hz
        return float(db_to_linear(self.noise_psd_dbm_hz + self.ue_noise_figure_db + 10 * np.log10(bandwidth)))

    @property
    def bs_bin_noise_mw(self) -> float:
        """Noise in one subcarrier at a base station antenna."""
        return float(
            db_to_linear(self.noise_psd_dbm_hz + self.bs_noise_figure_db + 10 * np.log10(self.subcarrier_spacing_hz))
        )
