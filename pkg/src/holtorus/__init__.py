"""Twist dynamics on SL(2,R) representation pairs of the one-holed torus.

The package implements the discrete twist moves on matrix pairs and
their polynomial shadow on trace coordinates, the lifted commutator
into the universal cover with its integer component invariant, the
trace-level reduction into the elliptic slab or the negative octant,
the sl(2,R) machinery behind infinitesimal transitivity, Fricke-style
fiber sampling, and a CLI for orbit experiments and identity
verification.
"""

from .errors import (BudgetError, CommutingPair, HoltorusError,
                     InsufficientSamples, IterationBudgetExceeded,
                     LevelUnreachable, NonRegularPoint, NotElliptic,
                     NotRealizable, PreconditionError, PreconditionKappa,
                     RejectionBudgetExceeded, ReducibleTriple,
                     ReferencePathAmbiguous, SearchBudgetExceeded,
                     StepSizeUnderflow, TorsionRotation,
                     UnwrapResolutionExceeded)
from .mobius import (DiskElem, ElementClass, GroupElem, boundary_angle,
                     cayley_to_disk, classify, commutator, compose, conjugate,
                     random_element)
from .lie import (AlgVec, Ad, bracket, centralizer, dp_apply, dp_map,
                  eval_span, exp_alg, field_bracket, is_regular, kernel_dp,
                  LocalField)
from .cover import (FiberClass, LiftedElem, base_lift, compose_lifts,
                    fiber_class, lift_eval, lifted_commutator)
from .chars import (Region, Regime, apply_trace_word, chi, kappa,
                    omega_membership, reduce_to_region, region_of,
                    trichotomy, twist_on_traces)
from .twists import (PairState, TwistWord, a2_flow, apply_twist, apply_word,
                     elliptic_power, ellipticize, ellipticize_continuous,
                     full_reduction)
from .fiber import FiberSpec, fricke_pair, sample_fiber, solve_z

__version__ = "0.1.0"
