"""Forward model and inversion for the two-media, first-order Michelson interferometer."""

from .errors import (DegenerateInstrument, DegenerateTable, DomainError, InsufficientData,
                     NonConvergence, ParseError, RigError, SchemaError, ValidationError)
from .inversion import (FitResult, RegressionResult, fit_loglog_slope, fit_wind,
                        invert_velocity_point)
from .optics import (SPEED_OF_LIGHT, Arm, Interferometer, Medium, Signal, delta_t_first_order,
                     fresnel_speed, fringe_amplitude, fringe_shift, paper_interferometer,
                     parallel_truncation_error, roundtrip_parallel_exact,
                     roundtrip_parallel_first_order, roundtrip_perpendicular, rotation_signal,
                     second_order_delta_t, sensitivity_ratio)
from .sky import (ObserverSite, WindVector, diurnal_curve, horizontal_projection,
                  local_sidereal_angle)
from .synthesis import (EpsilonSweepTable, MeasurementSeries, NoiseModel, epsilon_sweep,
                        synthesize_series)

__version__ = "0.1.0"
