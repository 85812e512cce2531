from .channel import (
    PEDESTRIAN_B,
    SPEED_OF_LIGHT,
    ChannelProfile,
    ChannelRealization,
    apply_channel,
    complex_noise,
    jakes_fading,
)
from .coding import ERASED, ConvolutionalCode, deinterleave, interleaver, qam16_demodulate, qam16_modulate
from .detection import (
    DEFAULT_THRESHOLD,
    ToneDetection,
    detect_tones,
    excise_tones,
    excision_mask,
    threshold_for_false_alarm,
)
from .link import (
    crossing_snr,
    energy_per_sample,
    measured_sir_db,
    run_sts_link,
    run_uplink_impact,
    snr_penalty,
)
from .ofdm import (
    OfdmConfig,
    ResourceGrid,
    db_to_linear,
    linear_to_db,
    modulate_sts,
    ofdm_demodulate,
    ofdm_modulate,
    papr,
)
