//! Small modular-arithmetic helpers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative order of `x` modulo `m`, or `None` if `x` is not a unit.
pub fn mult_order(x: u64, m: u64) -> Option<u64> {
    if num_integer::gcd(x % m, m) != 1 {
        return None;
    }
    let mut y = x % m;
    let mut k = 1;
    while y != 1 % m {
        y = y * x % m;
        k += 1;
    }
    Some(k)
}

/// The smallest `w` in `1..m` whose multiplicative order modulo `m` is exactly `r`.
pub fn smallest_root_of_order(r: u64, m: u64) -> Option<u64> {
    (1..m).find(|&w| mult_order(w, m) == Some(r))
}

pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// Whether `x` is a square modulo the odd prime `p` (zero counts as a square).
pub fn is_square_mod(x: u64, p: u64) -> bool {
    let x = x % p;
    x == 0 || pow_mod(x, (p - 1) / 2, p) == 1
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(7, 14), None);
        assert_eq!(smallest_root_of_order(6, 7), Some(3));
        assert_eq!(smallest_root_of_order(3, 7), Some(2));
        assert_eq!(inv_mod(3, 7), 5);
        assert!(is_square_mod(4, 13) && !is_square_mod(2, 13));
        assert_eq!(prime_factors(84), vec![2, 3, 7]);
    }
}
