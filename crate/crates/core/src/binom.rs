//! Exact binomial coefficients over arbitrary-precision integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// C(n, k) as an exact big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        // Each step is an exact division: the partial product is C(n, i+1).
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}
