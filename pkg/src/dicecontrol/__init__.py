"""Dice control at craps: models, hand-length distribution, power and likelihood-ratio tests."""

from .controlled import ControlledModel
from .dice import (
    HARDWAYS_SET,
    SEVENS_SET,
    AxisSet,
    FullSet,
    Model,
    PairSet,
    break_even_theta,
    burnside_count,
    enumerate_dice_sets,
    expected_gain,
    joint_pmf_ss,
    joint_pmf_ws,
    orbit_partition,
    point_make_probability,
    total_pmf,
    total_pmf_ss,
    total_pmf_ws,
)
from .hand_length import (
    GeometricMixture,
    HandChain,
    QuarticCoeffs,
    eigen_mixture,
    hand_pmf,
    hand_tail,
    hand_tail_oracle,
    mean_hand_length,
    quartic_coeffs,
    transition_matrix,
    var_hand_length,
)
from .lrtest import LrOutcome, log_likelihood, lr_test, mle_theta, simulate_lr_power
from .monotonicity import verify_tail_monotonicity
from .power import (
    PowerResult,
    emit_power_table,
    normal_cdf,
    normal_quantile,
    power_lbar,
    power_passline,
    power_prop7,
)
from .reparam import (
    Parameterization,
    RateFunctions,
    rate_functions,
    rho1,
    rho1_inv,
    rho2,
    rho2_inv,
)
from .simulation import HandSample, RngStream, sample_total, simulate_hand, simulate_hands

__version__ = "0.1.0"
