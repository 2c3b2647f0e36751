use super::DecomposeError;

/// Number of ways to write `n` as an ordered sum of `k + 1` non-negative
/// integers, i.e. `binomial(n + k, k)`.
pub fn compositions_count(n: u64, k: u64) -> Result<u64, DecomposeError> {
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        // acc = binomial(n + i - 1, i - 1) here, so the division is exact.
        acc = acc
            .checked_mul(u128::from(n) + i)
            .ok_or(DecomposeError::Overflow)?
            / i;
        if acc > u128::from(u64::MAX) {
            return Err(DecomposeError::Overflow);
        }
    }
    Ok(acc as u64)
}

/// `C^(k+1) * binomial(n + k, k)`: the most words of length `n` a product of
/// `k + 1` languages with at most `C` words per length can contain.
pub fn product_complexity_bound(c: u64, k: u64, n: u64) -> Result<u64, DecomposeError> {
    if c == 0 {
        return Err(DecomposeError::PreconditionViolation(
            "per-set cap C must be at least 1".into(),
        ));
    }
    let exp = u32::try_from(k + 1).map_err(|_| DecomposeError::Overflow)?;
    let power = c.checked_pow(exp).ok_or(DecomposeError::Overflow)?;
    power
        .checked_mul(compositions_count(n, k)?)
        .ok_or(DecomposeError::Overflow)
}
