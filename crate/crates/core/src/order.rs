//! Factored group orders.
//!
//! Iterated extension groups grow far past machine integers (and past what a
//! big integer can hold once exponents themselves stop fitting), so orders are
//! kept in factored form `p1^e1 * p2^e2 * ...` with exponents that are either
//! exact big integers or rendered expressions.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent of one prime in a factored order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Int(BigUint),
    /// Rendered arithmetic expression, used once the exact value is itself
    /// too large to materialize.
    Sym(String),
}

impl Exponent {
    fn add(&self, other: &Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Int(a), Exponent::Int(b)) => Exponent::Int(a + b),
            _ => Exponent::Sym(format!("{} + {}", self.render(), other.render())),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Exponent::Int(n) => n.to_string(),
            Exponent::Sym(s) => s.clone(),
        }
    }
}

/// A group order in factored form. The trivial group has an empty factor map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupOrder {
    factors: BTreeMap<u64, Exponent>,
}

/// Orders above this bit count are never materialized as integers.
const MAX_VALUE_BITS: u64 = 1 << 21;

impl GroupOrder {
    pub fn one() -> Self {
        GroupOrder::default()
    }

    pub fn from_u64(n: u64) -> Self {
        assert!(n > 0, "group order must be positive");
        let mut factors = BTreeMap::new();
        for (p, e) in factorize(n) {
            factors.insert(p, Exponent::Int(BigUint::from(e)));
        }
        GroupOrder { factors }
    }

    /// Builds `p^e * rest`.
    pub fn prime_power_times(p: u64, e: Exponent, rest: &GroupOrder) -> Self {
        let mut out = rest.clone();
        if !matches!(&e, Exponent::Int(n) if n.is_zero()) {
            let entry = match out.factors.remove(&p) {
                Some(old) => old.add(&e),
                None => e,
            };
            out.factors.insert(p, entry);
        }
        out
    }

    pub fn mul(&self, other: &GroupOrder) -> Self {
        let mut out = self.clone();
        for (p, e) in &other.factors {
            let entry = match out.factors.remove(p) {
                Some(old) => old.add(e),
                None => e.clone(),
            };
            out.factors.insert(*p, entry);
        }
        out
    }

    /// Primes dividing the order, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.factors.keys().copied().collect()
    }

    pub fn exponent_of(&self, p: u64) -> Option<&Exponent> {
        self.factors.get(&p)
    }

    /// Exact value when every exponent is an integer and the result is of
    /// manageable size.
    pub fn value(&self) -> Option<BigUint> {
        let mut bits_estimate = 0u64;
        for (p, e) in &self.factors {
            match e {
                Exponent::Int(n) => {
                    let e64 = n.to_u64()?;
                    bits_estimate = bits_estimate.checked_add(e64.checked_mul(64 - (p.leading_zeros() as u64))?)?;
                }
                Exponent::Sym(_) => return None,
            }
            if bits_estimate > MAX_VALUE_BITS {
                return None;
            }
        }
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            let Exponent::Int(n) = e else { unreachable!() };
            acc *= BigUint::from(*p).pow(n.to_u32().expect("checked above"));
        }
        Some(acc)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value()?.to_u64()
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.value()?.to_usize()
    }

    /// Decimal string when the value fits comfortably, factor tower otherwise.
    pub fn render(&self) -> String {
        if let Some(v) = self.value() {
            if v.bits() <= 60 {
                return v.to_string();
            }
        }
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(p, e)| match e {
                Exponent::Int(n) if n.is_one() => p.to_string(),
                Exponent::Int(n) => format!("{p}^{n}"),
                Exponent::Sym(s) => format!("{p}^({s})"),
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d: u64 = 3;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}
