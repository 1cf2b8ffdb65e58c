//! Small integer helpers shared by every module.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    units(n).len() as u64
}

/// The units of Z/n in ascending order; `units(1) == [0]` (the trivial group).
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

pub fn is_unit(u: u64, n: u64) -> bool {
    gcd(u % n, n) == 1
}

/// Inverse of `u` modulo `n`, assuming `u` is a unit.
pub fn inv_mod(u: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut a, mut b) = (u as i128 % n as i128, n as i128);
    let (mut x0, mut x1) = (1i128, 0i128);
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (x0, x1) = (x1, x0 - q * x1);
    }
    debug_assert_eq!(a, 1);
    x0.rem_euclid(n as i128) as u64
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The Ramanujan sum `c_r(j) = sum over units u mod r of zeta_r^{u j}`.
pub fn ramanujan_sum(r: u64, j: u64) -> i64 {
    let g = gcd(j % r, r);
    let m = r / g;
    mobius(m) * euler_phi(r) as i64 / euler_phi(m) as i64
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn phi_values() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, &p) in (1..=12).zip(expected.iter()) {
            assert_eq!(euler_phi(n), p, "phi({n})");
        }
    }

    #[test]
    fn inverses() {
        for n in 2..30 {
            for u in units(n) {
                assert_eq!(u * inv_mod(u, n) % n, 1);
            }
        }
    }

    #[test]
    fn mobius_and_ramanujan() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        // c_4(1) = i + i^3 = 0, c_4(2) = -1 - 1 = -2, c_3(1) = -1
        assert_eq!(ramanujan_sum(4, 1), 0);
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum(3, 1), -1);
        assert_eq!(ramanujan_sum(6, 0), 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(13, 7), 1716);
        assert_eq!(binomial(3, 5), 0);
    }
}
