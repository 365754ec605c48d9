//! Real quadratic fields: Kronecker characters, prime splitting, ideal
//! counts, Euler products, `L(χ_Δ, s)` and the number-field distance.

mod field;
mod kronecker;
mod lfunc;
mod primes;

pub use field::{
    dedekind_zeta_eval, ideal_count, local_factor, prime_ideal_count, splitting_type, BoundedValue,
    NumberField, QuadraticField, SplittingType,
};
pub use kronecker::{is_fundamental_discriminant, kronecker_symbol};
pub use lfunc::{
    field_distance, field_distance_euler, l_function_eval, l_function_eval_limited,
    primorial_experiment, FieldDistanceConfig, LValue, PrimorialRow, DEFAULT_DISCRIMINANT_CAP,
    DEFAULT_MAX_TERMS,
};
pub use primes::{first_primes, is_prime, primes_up_to};
