//! Sieves: small primes, and smallest prime factors / von Mangoldt values
//! on a segment `[lo, hi]`.

use num_integer::Roots;

/// Primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            if let Some(start) = i.checked_mul(i) {
                for j in (start..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
    }
    out
}

/// Smallest prime factor of each `n` in `[lo, hi]` that is at most
/// `sqrt(hi)`; `0` marks numbers with no such factor (primes, and 1).
pub fn segment_smallest_factors(lo: u64, hi: u64) -> Vec<u64> {
    assert!(lo >= 1 && lo <= hi, "segment must be a non-empty range of positive integers");
    let len = (hi - lo + 1) as usize;
    let mut spf = vec![0u64; len];
    for p in primes_up_to(hi.sqrt()) {
        let first = lo.div_ceil(p) * p;
        let mut k = first.max(p * p);
        while k <= hi {
            let slot = &mut spf[(k - lo) as usize];
            if *slot == 0 {
                *slot = p;
            }
            k += p;
        }
    }
    spf
}

/// `Lambda(n)` for `n` in `[lo, hi]`: `log p` at prime powers `p^k`, else 0.
pub fn von_mangoldt_segment(lo: u64, hi: u64) -> Vec<f64> {
    let spf = segment_smallest_factors(lo, hi);
    spf.iter()
        .enumerate()
        .map(|(i, &p)| {
            let n = lo + i as u64;
            if n == 1 {
                0.0
            } else if p == 0 {
                (n as f64).ln()
            } else {
                let mut m = n;
                while m % p == 0 {
                    m /= p;
                }
                if m == 1 {
                    (p as f64).ln()
                } else {
                    0.0
                }
            }
        })
        .collect()
}
