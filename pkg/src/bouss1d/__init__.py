"""Energy-stable 1-D finite-volume solver for a dispersive shallow-water
system with variable bathymetry, plus its dispersion-relation tooling."""

__version__ = "0.1.0"

from .dispersion import (  # noqa: F401
    PARAM_SETS,
    ParamSet,
    dimensionalize,
    error_curve,
    fit_params,
    get_param_set,
    omega_euler,
    omega_model,
    omega_series3,
)
from .dispersive import DispersiveCoeffs, build_coeffs  # noqa: F401
from .errors import (  # noqa: F401
    AlphaNotZero,
    BlowUp,
    Bouss1dError,
    ComplexRoots,
    ConfigError,
    GeometryError,
    NegativeParameter,
    NonpositiveDepth,
    SingularMatrix,
)
from .grid import Bathymetry, Grid, State  # noqa: F401
from .linalg import CyclicBandedMatrix, cyclic_banded_solve  # noqa: F401
from .scenarios import GaugeSeries, Scenario, WaveTrainSpec, builtin_scenario  # noqa: F401
from .stepper import (  # noqa: F401
    StepReport,
    imex_step,
    modified_energy,
    reference_step_rk4,
    run,
    semi_discrete_rhs,
)
from .swe import DiffusionConfig, swe_rhs  # noqa: F401
