//! Exact binomial coefficients over 64-bit integers.

/// C(n, k) computed exactly; `None` when the value does not fit in a `u64`.
///
/// Intermediate products are kept in `u128`, and the running value is
/// integral after every step because it always equals C(n-k+i, i).
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul((n - k + i) as u128)? / i as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// C(n, k) that additionally rejects values above 2^63, the validation
/// bound for every coefficient the kernel pipeline multiplies with.
pub fn binomial_checked(n: u64, k: u64) -> Option<u64> {
    binomial(n, k).filter(|&v| v <= 1u64 << 63)
}
