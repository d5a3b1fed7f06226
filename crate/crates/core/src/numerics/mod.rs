//! Ball arithmetic and rigorous evaluation of zeta-type series and special functions.

pub mod ball;
pub mod complex;
pub mod elementary;
pub mod euler_sum;
pub mod holder;
pub mod new_integral;
pub mod qintegral;
pub mod special;
pub mod zeta;

pub use ball::{Ball, Prec};
pub use complex::ComplexBall;
pub use euler_sum::{euler_sum_direct, euler_sum_eval, multiple_polylog_eval, SignedComposition};
pub use holder::{mzv_eval, HolderEvaluator};
pub use new_integral::{gauss_legendre, new_integral_eval, QuadratureEstimate};
pub use qintegral::{
    classical_word_value, q_limit_check, q_poly_value_exact, q_word_value_exact,
    q_word_value_truncated, MonomialQForm,
};
pub use special::{
    a_of_z, a_of_z_product, digamma_near_one, g_kernel, gauss_2f1, sinc_zeta_product, y1, y2,
};
pub use zeta::{convergence_region, zeta_riemann, ZetaTable};

use crate::error::{Error, Result};

/// Evaluate at the working precision of `prec`; if the radius exceeds the
/// requested accuracy, retry once at doubled precision.
pub(crate) fn with_retry<T>(
    prec: Prec,
    f: impl Fn(u32) -> Result<T>,
    rad: impl Fn(&T) -> f64,
) -> Result<T> {
    let prec = prec.check()?;
    let target = prec.target_radius();
    let first = f(prec.bits)?;
    if rad(&first) <= target {
        return Ok(first);
    }
    let again = prec.doubled();
    if again.bits <= ball::MAX_BITS {
        let second = f(again.bits)?;
        if rad(&second) <= target {
            return Ok(second);
        }
        return Err(Error::PrecisionLoss(format!(
            "radius {:e} exceeds 1e-{} after doubling to {} bits",
            rad(&second),
            prec.digits,
            again.bits
        )));
    }
    Err(Error::PrecisionLoss(format!(
        "radius {:e} exceeds 1e-{} at {} bits",
        rad(&first),
        prec.digits,
        prec.bits
    )))
}
