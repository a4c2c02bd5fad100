//! Exact trailing-digit arithmetic for integer tetrations in radix 10.
//!
//! The crate computes `^b a mod 10^m` without building the tower, and on top
//! of that the congruence speed `V(a,b)`, stable-digit counts, 10-adic tails,
//! phase shifts and asymptotic phase-shift cycles, plus checks of the
//! stable-digit results for Graham's number at small proxy heights.
//!
//! ```
//! use tetra_core::tetration;
//!
//! let r = tetration(3, 4, 3).unwrap();
//! assert_eq!(r.to_string(), "387");
//! ```

pub mod error;
pub mod graham;
pub mod modulus;
pub mod phase_shift;
pub mod residue;
pub mod scanner;
pub mod stability;
pub mod tower;

pub use error::{Error, Result};
pub use graham::{check_eq2, check_theorem2, graham_last_digits, slog, GrahamFacts, GRAHAM_FACTS};
pub use modulus::Modulus;
pub use phase_shift::{
    asymptotic_phase_shift, base3_digit_map, difference_digit, phase_shift, phase_shift_mult10,
    Parity, PhaseCycle,
};
pub use residue::Residue;
pub use scanner::{emit_report, scan, ReportFormat, ScanFilter, ScanRecord};
pub use stability::{
    congruence_speed, constant_speed, limit_digits, padic_valuation, stable_digits,
    tenadic_constant, SpeedProfile, StableTail, TenadicConstant,
};
pub use tower::{digit_at, modpow, tetration, tetration_mod, BigExponent, Height, TowerSpec};
