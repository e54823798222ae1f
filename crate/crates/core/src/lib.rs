pub mod exact;
pub mod frobenius;
pub mod operator;
pub mod transforms;

pub use exact::{
    linalg::{rational_linear_solve, LinearOutcome, Matrix},
    poly::Poly,
    ratfunc::RatFunc,
    scalar::{Jet4, QuadExt, Rational, Scalar},
    series::PowerSeries,
};

pub type QPoly = Poly<Rational>;
pub type QRatFunc = RatFunc<Rational>;
pub type QSeries = PowerSeries<Rational>;
pub type JetSeries = PowerSeries<Jet4>;
pub type QMatrix = Matrix<Rational>;

pub use operator::{
    adjoint, cy_numerator_coeffs, cy_quantity_q, cy_quantity_w, parse_operator, printed_q_eval,
    riemann_symbol, theta_power_expand, theta_to_dx, DegreeTwoParams, DxForm, RiemannSymbol,
    SignConvention, ThetaOperator,
};

pub use frobenius::{
    frobenius_basis, holomorphic_solution, instanton_numbers, instanton_report,
    integrality_report, lambert_series, q_coordinate, yukawa_coupling, FrobeniusBasis,
    InstantonReport,
};

pub use transforms::{
    build_named, fit_operator, hadamard, main_family_build, misc_third_order,
    misc_third_order_identity_check, moebius_pullback, registry_keys, shift_equivalence_check,
    shift_equivalence_check_p1p3, small_family, tilde_operator, twist_check, wronskian5_check,
    FitResult, NamedOperator, SmallFamily,
};
