"""First-order interference of down-converted light from a two-pulse pump.

The modules follow the physics chain: ``dispersion`` (indices, phase
matching) -> ``pump`` (pulse train) -> ``kernel`` (biphoton amplitude) ->
``detection`` (singles rate, angular scans) -> ``analysis`` (Q, filter
criterion, visibility, fringe maxima).  ``config`` reads experiment files
and ``cli`` exposes the ``scan``, ``criteria`` and ``sweep`` commands.
"""

from .analysis import (
    InterferenceReport,
    build_report,
    filter_criterion,
    idler_smear,
    predicted_peaks,
    q_parameter,
    scan_visibility,
    visibility,
)
from .config import ExperimentConfig, load_config, reference_config, parse_config
from .detection import (
    AngularSpectrum,
    DetectorModel,
    angular_scan,
    singles_rate,
    singles_rate_deltalimit,
)
from .dispersion import (
    CrystalCut,
    OpticalMedium,
    group_velocity,
    load_crystal,
    phase_matching_angle,
    refractive_index,
)
from .errors import (
    ConfigError,
    NotEnoughFringesError,
    SPDCError,
    UndefinedCriterionError,
)
from .kernel import SignalMode, biphoton_amplitude, biphoton_amplitude_oracle
from .pump import DelayLine, PumpTrain, quartz_delay

__version__ = "0.1.0"
