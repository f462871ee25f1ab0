/// μ(n) by trial division.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
