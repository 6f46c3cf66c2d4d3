"""Numerical differential geometry of submanifolds in Kähler ambient spaces.

The library computes intrinsic and extrinsic invariants of parametrized
immersions (frames, second fundamental form, mean curvature, slant angle,
induced curvature by two independent routes), assembles the Bochner-type
curvature of an ambient space from its Ricci data, and audits a family of
Ricci/mean-curvature inequalities under explicitly enumerated readings of
their printed form.
"""

from .ambient import (AmbientManifold, CurvatureBundle, KaehlerReport, LMPair,
                      assemble_bochner_curvature, check_bochner_flat,
                      check_kaehler, christoffels_at, complex_space_form,
                      csf_curvature, flat_space, l_tensor, m_tensor, perturb_j,
                      riemann_at, sphere_product, standard_j)
from .errors import (DegeneracyError, DimensionMismatchError, ExprError,
                     FieldEvaluationError, InputError, KahlergeoError,
                     PreconditionError, SceneError)
from .immersion import (BUILTIN_IMMERSIONS, FramedPoint, Immersion,
                        builtin_immersion, frames_at, gauss_residual,
                        h_norm_sq, jacobian_at, mean_curvature,
                        second_fundamental_form, shape_operator)
from .inequalities import (InequalityVerdict, Interpretation,
                           algebraic_identity_check, check_ricci_bound,
                           check_ricci_bound_slant, check_ricci_bound_special,
                           default_directions, enumerate_interpretations,
                           identity_audit, interpretation_survey,
                           resolve_interpretation, ricci_bound_rhs)
from .invariants import (InvariantReport, induced_curvatures,
                         invariant_report, p_norm_sq, p_operator,
                         relative_null_space, slant_angle)
from .scene import (SceneConfig, build_ambient, build_immersions, emit_scene,
                    parse_scene, sample_points)
from .tensors import (DEFAULT_FD_POLICY, FdPolicy, contract, fd_derivative,
                      gram_schmidt, tensor)

__version__ = "0.1.0"
