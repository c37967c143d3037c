//! Small prime utilities. Desk-scale trial division is exact and plenty
//! fast for the windows this crate ever asks for.

/// Deterministic primality by trial division.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    if x % 3 == 0 {
        return x == 3;
    }
    let mut d = 5u64;
    while d * d <= x {
        if x % d == 0 || x % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Primes strictly greater than `t`, ascending, without end.
pub fn primes_above(t: u64) -> impl Iterator<Item = u64> {
    let mut cur = t;
    std::iter::from_fn(move || {
        loop {
            cur += 1;
            if is_prime(cur) {
                return Some(cur);
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifies_small_numbers() {
        let primes: Vec<u64> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn primes_above_is_strict() {
        let got: Vec<u64> = primes_above(2).take(4).collect();
        assert_eq!(got, vec![3, 5, 7, 11]);
        let got: Vec<u64> = primes_above(1).take(2).collect();
        assert_eq!(got, vec![2, 3]);
    }
}
