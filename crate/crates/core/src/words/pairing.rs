use num_bigint::BigUint;

/// Cantor pairing `(i + n)(i + n + 1)/2 + n`.
pub fn pair(i: &BigUint, n: &BigUint) -> BigUint {
    let diag = i + n;
    ((&diag * (&diag + 1u32)) >> 1) + n
}

/// Inverse of [`pair`].
pub fn unpair(p: &BigUint) -> (BigUint, BigUint) {
    let diag = ((p * 8u32 + 1u32).sqrt() - 1u32) >> 1;
    let base = (&diag * (&diag + 1u32)) >> 1;
    let n = p - base;
    let i = diag - &n;
    (i, n)
}

/// [`pair`] on machine words; `None` on overflow.
pub fn pair_u64(i: u64, n: u64) -> Option<u64> {
    let diag = i.checked_add(n)?;
    let tri = if diag % 2 == 0 {
        (diag / 2).checked_mul(diag.checked_add(1)?)?
    } else {
        diag.checked_mul(diag.checked_add(1)? / 2)?
    };
    tri.checked_add(n)
}

/// [`unpair`] on machine words.
pub fn unpair_u64(p: u64) -> (u64, u64) {
    let (i, n) = unpair(&BigUint::from(p));
    // Both components are at most p.
    (
        u64::try_from(i).expect("component bounded by p"),
        u64::try_from(n).expect("component bounded by p"),
    )
}
