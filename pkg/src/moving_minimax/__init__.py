"""Moving mini-max: a peak/trough emphasizing indicator for price series."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Direction,
    IndicatorParams,
    LogWeightSeries,
    MiniMaxSeries,
    PriceSeries,
    TransitionProbabilities,
    TunnelingWeights,
    accumulate_log_weights,
    minimax,
    minimax_pair,
    reference_minimax,
    relative_difference,
    transition_probabilities,
    tunneling_weights,
)
from .rolling import RollingConfig, RollingResult, StreamState, rolling_minimax, stream_push, stream_query  # noqa: E402
from .signals import (  # noqa: E402
    CrossingEvent,
    CrossingKind,
    CrossingSign,
    ExtremumPoint,
    SpindleConfig,
    SpindleInterval,
    detect_crossings,
    detect_spindle,
    extract_extrema,
    simple_moving_average,
    support_resistance_pipeline,
)
