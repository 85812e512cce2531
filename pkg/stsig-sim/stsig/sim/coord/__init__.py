from .estimation import estimate_channel_from_sts, estimate_tone_gains, resource_bands
from .onoff import MAX_PRIORITY, Action, OnOffDecision, onoff_decide
from .slnr import (
    beamformer_from_json,
    beamformer_to_json,
    canonical_phase,
    fixed_beam,
    leakage_channel,
    matched_filter,
    priority_matrix,
    priority_weight,
    slnr,
    slnr_beamformer,
)
