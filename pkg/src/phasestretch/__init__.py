"""Phase stretch transform feature extraction for 2-D images and 1-D waveforms.

The transform filters a signal's spectrum with a unit-modulus warped phase
kernel (a numerical analogue of dispersive propagation) and reads out the
phase of the resulting complex field. A closed-form small-phase companion
implementation makes the transform's built-in brightness equalization
explicit and serves as an independent cross-check.
"""

from .core import (
    DegenerateParameterError,
    FrequencyGrid,
    PstParams,
    as_image,
    forward_spectrum,
    inverse_field,
    make_frequency_grid,
)
from .kernel import (
    LocalizationKernel,
    PhaseKernel,
    build_localization_kernel,
    build_warped_kernel,
    phase_profile,
)
from .oracle import (
    BrightnessFloorWarning,
    TaylorWeights,
    closed_form_pst,
    linearized_transform,
    taylor_coefficients,
)
from .postproc import derivative_baseline, morphological_clean, threshold_feature_map
from .synth import Pattern, PatternSpec, generate
from .transform import ZeroBrightnessWarning, pst, pst_1d, stretch_operator

__version__ = "0.1.0"

__all__ = [
    "BrightnessFloorWarning",
    "DegenerateParameterError",
    "FrequencyGrid",
    "LocalizationKernel",
    "Pattern",
    "PatternSpec",
    "PhaseKernel",
    "PstParams",
    "TaylorWeights",
    "ZeroBrightnessWarning",
    "as_image",
    "build_localization_kernel",
    "build_warped_kernel",
    "closed_form_pst",
    "derivative_baseline",
    "forward_spectrum",
    "generate",
    "inverse_field",
    "linearized_transform",
    "make_frequency_grid",
    "morphological_clean",
    "phase_profile",
    "pst",
    "pst_1d",
    "stretch_operator",
    "taylor_coefficients",
    "threshold_feature_map",
]
