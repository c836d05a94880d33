//! Exact integer and rational arithmetic: factorization, square classes,
//! Kronecker symbols and square-root helpers.

use crate::{Config, Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

/// A nonzero integer as sign times a product of prime powers.
///
/// Primes are strictly increasing and exponents positive, so the
/// representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInt {
    pub sign: i8,
    pub factors: Vec<(Int, u32)>,
}

impl FactoredInt {
    /// Reassembles the represented integer.
    pub fn value(&self) -> Int {
        let mut v = Int::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// The squarefree part (odd-exponent primes times the sign).
    pub fn squarefree_part(&self) -> Int {
        let mut v = Int::from(self.sign);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v *= p;
            }
        }
        v
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Factors a nonzero integer into primes.
///
/// Trial division up to 10^6, then Pollard rho (Brent variant) on the
/// remaining cofactor, with Miller–Rabin primality checks. Inputs beyond
/// `cfg.factor_bound` are rejected rather than risking an unbounded run.
pub fn factor(n: &Int, cfg: &Config) -> Result<FactoredInt> {
    if n.is_zero() {
        return Err(Error::PreconditionFailed("factor(0)".into()));
    }
    if n.abs() > cfg.factor_bound {
        return Err(Error::FactorizationBoundExceeded(n.clone()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: Vec<(Int, u32)> = Vec::new();
    let push = |p: Int, e: u32, factors: &mut Vec<(Int, u32)>| {
        debug_assert!(e > 0);
        factors.push((p, e));
    };

    // Trial division stage.
    let mut d: u64 = 2;
    while d <= TRIAL_DIVISION_LIMIT {
        let di = Int::from(d);
        if (&di * &di) > m {
            break;
        }
        if (&m % &di).is_zero() {
            let mut e = 0u32;
            while (&m % &di).is_zero() {
                m /= &di;
                e += 1;
            }
            push(di, e, &mut factors);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if m.is_one() {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        return Ok(FactoredInt { sign, factors });
    }
    // Cofactor stage: split recursively with Pollard rho.
    let mut stack = vec![m];
    let mut found: Vec<Int> = Vec::new();
    let mut steps_left: u64 = cfg.search_budget.max(1_000_000);
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            found.push(c);
            continue;
        }
        // c is composite with no factor below the trial division limit.
        let f = pollard_rho(&c, &mut steps_left)
            .ok_or_else(|| Error::FactorizationBoundExceeded(n.clone()))?;
        stack.push(&c / &f);
        stack.push(f);
    }
    found.sort();
    let mut i = 0;
    while i < found.len() {
        let mut j = i;
        while j < found.len() && found[j] == found[i] {
            j += 1;
        }
        push(found[i].clone(), (j - i) as u32, &mut factors);
        i = j;
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FactoredInt { sign, factors })
}

/// Deterministic Miller–Rabin for the sizes we factor (the witness set is
/// proven complete below 3.3 * 10^24; larger inputs get a strong probable
/// prime test with the same witnesses, which is fine under the factor bound).
pub fn is_prime(n: &Int) -> bool {
    if *n < Int::from(2) {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let s = Int::from(small);
        if *n == s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let n_minus_1: Int = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = Int::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&Int::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho, Brent variant. Returns a nontrivial factor, or None when the
/// step budget runs out.
fn pollard_rho(n: &Int, steps_left: &mut u64) -> Option<Int> {
    let one = Int::one();
    for c in 1u64..64 {
        let cc = Int::from(c);
        let f = |x: &Int| (x * x + &cc) % n;
        let mut x = Int::from(2u8);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u64;
        while d.is_one() {
            if *steps_left == 0 {
                return None;
            }
            *steps_left -= 1;
            count += 1;
            if count > 1 << 24 {
                break;
            }
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return Some(d);
        }
    }
    None
}

/// An element of Q^x / (Q^x)^2, stored as its signed squarefree representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    rep: Int,
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.rep)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl SquareClass {
    /// Wraps an integer that is already known to be squarefree.
    pub fn from_squarefree(rep: Int) -> Self {
        debug_assert!(!rep.is_zero());
        SquareClass { rep }
    }

    pub fn one() -> Self {
        SquareClass { rep: Int::one() }
    }

    pub fn minus_one() -> Self {
        SquareClass { rep: -Int::one() }
    }

    pub fn rep(&self) -> &Int {
        &self.rep
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.rep.is_negative()
    }

    /// Product in the square-class group. Both representatives are
    /// squarefree, so the square part of the product is exactly gcd^2.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.rep.gcd(&other.rep);
        SquareClass {
            rep: (&self.rep * &other.rep) / (&g * &g),
        }
    }

    pub fn inv(&self) -> SquareClass {
        // Every class is 2-torsion.
        self.clone()
    }

    pub fn as_rat(&self) -> Rat {
        Rat::from_integer(self.rep.clone())
    }
}

/// The square class of a nonzero rational: the squarefree part of
/// numerator times denominator.
pub fn squarefree_class(q: &Rat, cfg: &Config) -> Result<SquareClass> {
    if q.is_zero() {
        return Err(Error::PreconditionFailed("squarefree_class(0)".into()));
    }
    let prod = q.numer() * q.denom();
    Ok(SquareClass {
        rep: factor(&prod, cfg)?.squarefree_part(),
    })
}

/// Kronecker symbol (a|n), fully multiplicative extension of Legendre.
pub fn kronecker(a: &Int, n: &Int) -> i32 {
    let mut a = a.clone();
    let mut n = n.clone();
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result: i32 = 1;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    // Split off the even part of n: (a|2) = 0, 1, -1 for a even, a = ±1 mod 8,
    // a = ±3 mod 8.
    let two = Int::from(2);
    while n.is_even() {
        n /= &two;
        if a.is_even() {
            return 0;
        }
        let r8 = ((&a % 8i32) + 8i32) % 8i32;
        if r8 == Int::from(3) || r8 == Int::from(5) {
            result = -result;
        }
    }
    if n.is_one() {
        return result;
    }
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= &two;
            let r8 = (&n % 8i32).to_string().parse::<i64>().unwrap();
            if r8 == 3 || r8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4i32) == Int::from(3) && (&n % 4i32) == Int::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Exact integer square root test.
pub fn sqrt_int(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square root test.
pub fn sqrt_rat(q: &Rat) -> Option<Rat> {
    if q.is_zero() {
        return Some(Rat::zero());
    }
    let n = sqrt_int(q.numer())?;
    let d = sqrt_int(q.denom())?;
    Some(Rat::new(n, d))
}

/// Square root mod an odd prime by Tonelli–Shanks. `a` must be a residue.
pub fn sqrt_mod_p(a: &Int, p: &Int) -> Option<Int> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(Int::zero());
    }
    if kronecker(&a, p) != 1 {
        return None;
    }
    if (p % 4i32) == Int::from(3) {
        let e = (p + 1i32) >> 2;
        return Some(a.modpow(&e, p));
    }
    // Tonelli–Shanks.
    let one = Int::one();
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    // Find a non-residue.
    let mut z = Int::from(2);
    while kronecker(&z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(Int::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
    Some(r)
}

/// Convenience constructors for rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn factor_unit_is_empty() {
        let f = factor(&Int::one(), &cfg()).unwrap();
        assert_eq!(f.sign, 1);
        assert!(f.factors.is_empty());
        assert_eq!(f.value(), Int::one());
    }

    #[test]
    fn factor_minus_twelve() {
        let f = factor(&Int::from(-12), &cfg()).unwrap();
        assert_eq!(f.sign, -1);
        assert_eq!(f.factors, vec![(Int::from(2), 2), (Int::from(3), 1)]);
    }

    // Independent oracle: plain trial division, no early exit tricks.
    fn trial_factor_oracle(n: u64) -> Vec<(u64, u32)> {
        let mut n = n;
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_matches_trial_division_oracle() {
        let expected = trial_factor_oracle(9991);
        assert_eq!(expected, vec![(97, 1), (103, 1)]);
        let f = factor(&Int::from(9991), &cfg()).unwrap();
        let got: Vec<(u64, u32)> = f
            .factors
            .iter()
            .map(|(p, e)| (p.to_string().parse().unwrap(), *e))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn factor_round_trips() {
        for n in [-360i64, 97, 2 * 3 * 5 * 7 * 11, 1_000_003, -1] {
            let f = factor(&Int::from(n), &cfg()).unwrap();
            assert_eq!(f.value(), Int::from(n));
        }
    }

    #[test]
    fn factor_large_semiprime() {
        // Two primes above the trial division limit force the rho stage.
        let p = Int::from(1_000_003u64);
        let q = Int::from(1_000_033u64);
        let n = &p * &q;
        let f = factor(&n, &cfg()).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn factor_bound_is_enforced() {
        let mut c = cfg();
        c.factor_bound = Int::from(100);
        match factor(&Int::from(101), &c) {
            Err(Error::FactorizationBoundExceeded(_)) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn squarefree_class_examples() {
        let c = cfg();
        assert_eq!(
            squarefree_class(&rat_int(18), &c).unwrap().rep(),
            &Int::from(2)
        );
        assert_eq!(
            squarefree_class(&rat(-4, 9), &c).unwrap().rep(),
            &Int::from(-1)
        );
        // 50/27 = 2*5^2 / 3^3 -> squarefree part of 50*27 = 2*3 = 6.
        assert_eq!(
            squarefree_class(&rat(50, 27), &c).unwrap().rep(),
            &Int::from(6)
        );
    }

    #[test]
    fn squarefree_class_is_multiplicative() {
        let c = cfg();
        let samples = [
            rat(3, 7),
            rat(-50, 27),
            rat_int(18),
            rat(5, 8),
            rat(-1, 12),
        ];
        for q in &samples {
            for r in &samples {
                let lhs = squarefree_class(&(q * r), &c).unwrap();
                let rhs = squarefree_class(q, &c)
                    .unwrap()
                    .mul(&squarefree_class(r, &c).unwrap());
                assert_eq!(lhs, rhs, "q={q} r={r}");
                let sq = squarefree_class(&(q * q), &c).unwrap();
                assert!(sq.is_one());
            }
        }
    }

    #[test]
    fn kronecker_matches_residue_enumeration_mod_7() {
        // Squares mod 7: {1, 2, 4}.
        let squares: Vec<i64> = (1..7).map(|x| (x * x) % 7).collect();
        for a in 1..7i64 {
            let expected = if squares.contains(&a) { 1 } else { -1 };
            assert_eq!(kronecker(&Int::from(a), &Int::from(7)), expected, "a={a}");
        }
        assert_eq!(kronecker(&Int::from(2), &Int::from(7)), 1);
        assert_eq!(kronecker(&Int::from(3), &Int::from(7)), -1);
        assert_eq!(kronecker(&Int::from(7), &Int::from(7)), 0);
    }

    #[test]
    fn kronecker_is_multiplicative_in_top_argument() {
        for p in [3i64, 5, 7, 11, 13, 101] {
            for a in -20..20i64 {
                for b in -20..20i64 {
                    let lhs = kronecker(&Int::from(a), &Int::from(p))
                        * kronecker(&Int::from(b), &Int::from(p));
                    let rhs = kronecker(&Int::from(a * b), &Int::from(p));
                    assert_eq!(lhs, rhs, "a={a} b={b} p={p}");
                }
            }
        }
    }

    #[test]
    fn sqrt_mod_p_squares_back() {
        for p in [3i64, 5, 7, 11, 13, 10007] {
            let pi = Int::from(p);
            for a in 1..30i64 {
                let ai = Int::from(a);
                if kronecker(&ai, &pi) == 1 {
                    let r = sqrt_mod_p(&ai, &pi).unwrap();
                    assert_eq!((&r * &r).mod_floor(&pi), ai.mod_floor(&pi));
                }
            }
        }
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(sqrt_rat(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_rat(&rat(2, 1)), None);
        assert_eq!(sqrt_rat(&rat(-9, 4)), None);
    }
}
