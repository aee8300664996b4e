"""Exact dyadic machinery and bit-level constructions of radii whose products
with given multipliers carry prescribed low-complexity content, with an audit
engine for every finite claim."""

from .audit import (AuditReport, BuildInputs, cost_deltas, decode_blocks,
                    verify_build)
from .bitcore import (BitString, decode_int, deinterleave, encode_int,
                      encode_nat, encode_rational, encode_real_at, interleave,
                      pair, unpair)
from .complexity import density_profile, lz_estimate
from .construct import (BlockTrace, StageTrace, build_thm1, build_thm2,
                        partition_T, recover_A, recover_parity)
from .dyadic import (Dyadic, DyadicInterval, interval_of,
                     largest_closed_dyadic_in, mul_point_enclosure,
                     scale_interval_inner)
from .errors import (BlockOverflow, DecodeMismatch, Degenerate, LengthMismatch,
                     MarstrandError, NoRoom, PrecisionExhausted,
                     ScheduleOverflow, UndeterminedBits)
from .extension import (ExtensionResult, block_capacity, extend_with_block,
                        surrogate_complexity, zeros_schedule)
from .geometry import (ErrorBall, PolarPoint, cart_of_polar,
                       count_dyadics_in_ball, error_ball, polar_of_cart,
                       projection_length, signed_projection)
from .schedule import Schedule
from .streams import (PI, ExactStream, PiMultiple, RealStream, cos_pi,
                      parse_angle, parse_real, sin_pi)
from .target import RandomBits, TargetSequence, gen_target

__version__ = "0.1.0"
