//! Finite fields `F_q`, `q ≤ 64`, via Zech logarithms.
//!
//! Elements are `u16` codes: `0` is zero and `k ≥ 1` stands for `ζ^(k-1)`
//! with `ζ` a fixed primitive element, so `1` is the unit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rootdata::prime_of_prime_power;

pub type Fq = u16;

pub const MAX_FIELD_ORDER: u64 = 64;

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    /// `1 + ζ^n = ζ^zech[n]`, or `None` when `1 + ζ^n = 0`.
    zech: Vec<Option<usize>>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::config("q", format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let p = prime_of_prime_power(q).ok_or_else(|| Error::config("q", format!("{q} is not a prime power")))?;
        let (q, p) = (q as usize, p as usize);
        let e = (q as f64).log(p as f64).round() as u32;
        // polynomials over F_p of degree < e encoded in base p
        let poly = find_primitive(p, e);
        let mut powers = Vec::with_capacity(q - 1);
        let mut log_of = vec![usize::MAX; q];
        let mut x = 1usize;
        for k in 0..q - 1 {
            powers.push(x);
            log_of[x] = k;
            x = times_x(x, p, e, &poly);
        }
        let zech = powers
            .iter()
            .map(|&v| {
                let s = add_digits(v, 1, p);
                (s != 0).then(|| log_of[s])
            })
            .collect();
        let f = FiniteField { q, p, zech };
        f.check_axioms()?;
        Ok(f)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn zero(&self) -> Fq {
        0
    }

    pub fn one(&self) -> Fq {
        1
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Fq {
        if self.q == 2 {
            1
        } else {
            2
        }
    }

    /// `ζ^k`
    pub fn power_of_primitive(&self, k: i64) -> Fq {
        (k.rem_euclid(self.q as i64 - 1) + 1) as Fq
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q as Fq
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.q - 1;
        (((a as usize - 1) + (b as usize - 1)) % m + 1) as Fq
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let m = self.q - 1;
        let (i, j) = (a as usize - 1, b as usize - 1);
        // ζ^i + ζ^j = ζ^i (1 + ζ^(j-i))
        match self.zech[(j + m - i) % m] {
            None => 0,
            Some(z) => ((i + z) % m + 1) as Fq,
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if a == 0 {
            return 0;
        }
        // -1 = ζ^((q-1)/2) in odd characteristic, 1 in characteristic 2
        if self.p == 2 {
            a
        } else {
            self.mul(a, self.power_of_primitive((self.q as i64 - 1) / 2))
        }
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (a != 0).then(|| self.power_of_primitive(-(a as i64 - 1)))
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> Fq {
        let k = n.rem_euclid(self.p as i64);
        (0..k).fold(0, |acc, _| self.add(acc, 1))
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q as Fq;
        let triple_ok = |a: Fq, b: Fq, c: Fq| {
            self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
        };
        for a in 0..q {
            if self.add(a, self.neg(a)) != 0 || self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(Error::invariant(format!("field axioms fail in F_{q}")));
            }
            if a != 0 && self.mul(a, self.inv(a).expect("nonzero")) != 1 {
                return Err(Error::invariant(format!("inverse fails in F_{q}")));
            }
        }
        if self.q <= 16 {
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        if !triple_ok(a, b, c) {
                            return Err(Error::invariant(format!("field axioms fail in F_{q}")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.q as u64);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
                if !triple_ok(a, b, c) {
                    return Err(Error::invariant(format!("field axioms fail in F_{q}")));
                }
            }
        }
        Ok(())
    }
}

fn add_digits(mut a: usize, mut b: usize, p: usize) -> usize {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Multiplies a polynomial (base-`p` digits, degree `< e`) by `x` modulo the
/// monic polynomial `x^e + Σ poly[k] x^k`.
fn times_x(v: usize, p: usize, e: u32, poly: &[usize]) -> usize {
    let e = e as usize;
    let mut digits: Vec<usize> = (0..e).map(|k| (v / p.pow(k as u32)) % p).collect();
    let top = digits[e - 1];
    for k in (1..e).rev() {
        digits[k] = digits[k - 1];
    }
    digits[0] = 0;
    for k in 0..e {
        digits[k] = (digits[k] + p * p - top * poly[k] % p) % p;
    }
    digits.iter().enumerate().map(|(k, &d)| d * p.pow(k as u32)).sum()
}

/// Lower coefficients of a monic degree-`e` polynomial for which `x` has
/// multiplicative order `p^e - 1`.
fn find_primitive(p: usize, e: u32) -> Vec<usize> {
    let q = p.pow(e);
    for code in 0..q {
        let poly: Vec<usize> = (0..e).map(|k| (code / p.pow(k)) % p).collect();
        if poly[0] == 0 {
            continue;
        }
        let mut x = 1usize;
        let mut order = 0;
        loop {
            x = times_x(x, p, e, &poly);
            order += 1;
            if x == 1 || x == 0 || order > q {
                break;
            }
        }
        if x == 1 && order == q - 1 {
            return poly;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = FiniteField::new(q).unwrap();
            // ζ has order exactly q - 1
            let z = f.primitive();
            let mut x = z;
            let mut k = 1;
            while x != 1 {
                x = f.mul(x, z);
                k += 1;
            }
            assert_eq!(k, q as usize - 1);
            // characteristic
            let p = f.characteristic() as i64;
            assert_eq!(f.from_int(p), 0);
        }
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(128).is_err());
    }
}
