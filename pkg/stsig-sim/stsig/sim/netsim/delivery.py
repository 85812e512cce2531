from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from stsig.base.code import decode_multi
from stsig.base.icrm import Icrm, unpack

from stsig.sim.coord import estimate_channel_from_sts, estimate_tone_gains
from stsig.sim.phy import ResourceGrid, complex_noise, db_to_linear, detect_tones, linear_to_db

from .channels import DropRealization
from .config import SimConfig
from .topology import Topology

_QPSK = np.array([1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j]) / np.sqrt(2)


@dataclass(frozen=True)
class Broadcast:
    """An ICRM sent by the user of (`cell`, `resource`)."""

    cell: int
    resource: int
    icrm: Icrm
    message: int


@dataclass
class Reception:
    """An ICRM decoded by a base station.

    Args:
        icrm (Icrm): Decoded content.
        message (int): Decoded message.
        channel (Optional[np.ndarray]): Downlink row towards the sender on the ICRM's resource, scaled so the
            sender's noise power is 1; None when it could not be estimated.
        leakage_db (Optional[float]): Strongest interference the base station could cause the sender,
            relative to the sender's noise; None when unknown.
    """

    icrm: Icrm
    message: int
    channel: Optional[np.ndarray]
    leakage_db: Optional[float]

    def is_relevant(self, response_inr_db: Optional[float]) -> bool:
        """Whether the base station should react: it interferes with the sender at least `response_inr_db`."""
        if response_inr_db is None:
            return True
        return self.leakage_db is not None and self.leakage_db >= response_inr_db


@dataclass
class DeliveryCounts:
    """ICRM delivery outcomes towards neighbor base stations.

    Args:
        sent (int): (broadcast, neighbor base station) pairs.
        decoded (int): Pairs where the neighbor decoded the ICRM.
        errored (int): Decoded ICRMs that nobody sent.
    """

    sent: int = 0
    decoded: int = 0
    errored: int = 0

    @property
    def erased(self) -> int:
        return self.sent - self.decoded

    def __add__(self, other: "DeliveryCounts") -> "DeliveryCounts":
        return DeliveryCounts(self.sent + other.sent, self.decoded + other.decoded, self.errored + other.errored)

    def to_json(self) -> Dict[str, int]:
        return {"sent": self.sent, "decoded": self.decoded, "erased": self.erased, "errored": self.errored}


class IcrmDelivery:
    """Carries the ICRMs of one subframe to every active base station.

    With `sts_delivery="phy"` each base station receives the sum of every broadcast's tones through
    its own channel, its own users' uplink data and thermal noise, then detects and decodes. With
    `"ideal"` every ICRM reaches every other base station intact.

    Args:
        topology (Topology): The drop.
        realization (DropRealization): Channels shared by all schemes.
        cfg (SimConfig): Simulation parameters.
    """

    def __init__(self, topology: Topology, realization: DropRealization, cfg: SimConfig):
        self.topology = topology
        self.realization = realization
        self.cfg = cfg
        self.code = cfg.profile.code()
        # Downlink powers relative to a user's noise, and uplink ones relative to a base station bin.
        self.downlink_power = realization.gain * cfg.bs_power_per_resource_mw / cfg.ue_noise_mw
        self.tone_amplitude = np.sqrt(cfg.sts_energy_fraction * cfg.ue_power_mw / cfg.bs_bin_noise_mw)

    def __call__(
        self, subframe: int, broadcasts: Sequence[Broadcast], rng: np.random.Generator
    ) -> Tuple[List[List[Reception]], DeliveryCounts]:
        """Deliver one subframe of broadcasts.

        Args:
            subframe (int): Subframe index.
            broadcasts (Sequence[Broadcast]): ICRMs sent this subframe.
            rng (np.random.Generator): Stream for noise and uplink data.

        Returns:
            Tuple[List[List[Reception]], DeliveryCounts]: Per cell, the ICRMs it decoded from other cells,
                and the delivery outcomes.
        """
        inboxes, counts = [], DeliveryCounts()
        for cell in range(self.topology.n_cells):
            if self.cfg.sts_delivery == "ideal":
                received = [b.message for b in broadcasts if b.cell != cell]
                inbox = [self._perfect(subframe, cell, broadcasts, m) for m in dict.fromkeys(received)]
            else:
                inbox = self._receive(subframe, cell, broadcasts, rng)
            inboxes.append(inbox)
            counts = counts + self._count(cell, broadcasts, inbox)
        return inboxes, counts

    def _count(self, cell: int, broadcasts: Sequence[Broadcast], inbox: List[Reception]) -> DeliveryCounts:
        decoded = {rx.message for rx in inbox}
        sent = [b for b in broadcasts if self.topology.are_neighbors(b.cell, cell, self.cfg.neighbor_radius)]
        others = {b.message for b in broadcasts if b.cell != cell}
        return DeliveryCounts(
            sent=len(sent),
            decoded=sum(b.message in decoded for b in sent),
            errored=len(decoded - others),
        )

    def _row(self, subframe: int, bs: int, sender: Broadcast, resource: int) -> np.ndarray:
        fading = self.realization.channel(subframe, resource, sender.cell, sender.resource, bs)
        return np.sqrt(self.downlink_power[sender.cell, sender.resource, bs]) * fading

    def _perfect(self, subframe: int, bs: int, broadcasts: Sequence[Broadcast], message: int) -> Reception:
        icrm = unpack(message, self.cfg.profile)
        senders = [b for b in broadcasts if b.message == message and b.cell != bs]
        if not senders:
            return Reception(icrm, message, None, None)
        row = self._row(subframe, bs, senders[0], icrm.resource_id)
        return Reception(icrm, message, row, float(linear_to_db(np.sum(np.abs(row) ** 2))))

    def _grid(self, subframe: int, bs: int, broadcasts: Sequence[Broadcast], rng: np.random.Generator):
        cfg, code = self.cfg, self.code
        values = np.zeros((cfg.bs_antennas, code.n, cfg.subcarriers), dtype=np.complex128)
        symbols = np.arange(code.n)
        for b in broadcasts:
            tones = code.codebook[b.message]
            bands = tones // cfg.resource_width
            amplitude = self.tone_amplitude * np.sqrt(self.realization.gain[b.cell, b.resource, bs])
            fading = self.realization.fading[subframe, bands, b.cell, b.resource, bs]
            values[:, symbols, tones] += amplitude * fading.T

        if cfg.uplink_data_overlay:
            amplitude = np.sqrt(db_to_linear(cfg.uplink_data_snr_db))
            for resource in range(cfg.n_resources):
                band = slice(resource * cfg.resource_width, (resource + 1) * cfg.resource_width)
                data = _QPSK[rng.integers(0, 4, size=(code.n, cfg.resource_width))]
                fading = self.realization.channel(subframe, resource, bs, resource, bs)
                values[:, :, band] += amplitude * fading[:, None, None] * data[None]

        if cfg.sts_thermal_noise:
            values += complex_noise(values.shape, 1.0, rng)
        return ResourceGrid(values)

    def _receive(
        self, subframe: int, bs: int, broadcasts: Sequence[Broadcast], rng: np.random.Generator
    ) -> List[Reception]:
        cfg, code = self.cfg, self.code
        det = detect_tones(self._grid(subframe, bs, broadcasts, rng), cfg.detection_threshold, cfg.max_detected_tones)
        result = decode_multi(det.to_observed(code.p), code, cfg.decode_threshold, cfg.offset_window)

        own = {b.message for b in broadcasts if b.cell == bs}
        scale = np.sqrt(cfg.bs_power_per_resource_mw / cfg.ue_noise_mw)
        inbox = []
        for candidate in result.candidates:
            if candidate.message in own or candidate.message >= cfg.profile.n_messages:
                continue
            if cfg.channel_estimation == "perfect":
                inbox.append(self._perfect(subframe, bs, broadcasts, candidate.message))
                continue
            icrm = unpack(candidate.message, cfg.profile)
            tones = ((code.codebook[candidate.message] + int(candidate.offset)) % code.p).tolist()
            row = estimate_channel_from_sts(det, tones, self.tone_amplitude, cfg.subcarriers, cfg.n_resources)[
                icrm.resource_id
            ]
            gains = estimate_tone_gains(det, tones, self.tone_amplitude)
            detected = gains[~np.isnan(gains[:, 0])]
            leakage = np.mean(np.sum(np.abs(scale * detected) ** 2, axis=1)) if len(detected) else None
            inbox.append(
                Reception(
                    icrm,
                    candidate.message,
                    None if row is None else scale * row,
                    None if leakage is None else float(linear_to_db(leakage)),
                )
            )
        return inbox
