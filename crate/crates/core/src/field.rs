//! Arithmetic in GF(q) for prime powers q ≤ 16, by lookup tables.
//!
//! An element is encoded by an integer code in `0..q`; the base-p digits of
//! the code are the coefficients of its polynomial representative, lowest
//! degree first. Extension fields are built modulo a fixed irreducible.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power in 2..=16")]
    NotPrimePower(u32),
}

/// Field element code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field of order `q = p^k` together with its operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u8,
    p: u8,
    k: u8,
    /// Monic irreducible polynomial, coefficients lowest degree first, length `k + 1`.
    poly: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// The fixed defining polynomial for each extension field order.
fn irreducible(q: u32) -> Vec<u8> {
    match q {
        4 => vec![1, 1, 1],       // x^2 + x + 1
        8 => vec![1, 1, 0, 1],    // x^3 + x + 1
        9 => vec![1, 0, 1],       // x^2 + 1
        16 => vec![1, 1, 0, 0, 1], // x^4 + x + 1
        _ => unreachable!("no extension field of order {q} below the cap"),
    }
}

impl FieldSpec {
    /// Builds GF(q).
    pub fn new(q: u32) -> Result<FieldSpec, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::NotPrimePower(q));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let poly = if k == 1 { vec![0, 1] } else { irreducible(q) };
        let qs = q as usize;
        let digits = |mut c: usize| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = (c % p as usize) as u32;
                    c /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> u8 {
            ds.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8
        };
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in 0..qs {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = encode(&sum);
                // schoolbook product, then reduce modulo the monic polynomial
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, &pc) in poly.iter().enumerate() {
                            let idx = deg - k as usize + i;
                            prod[idx] = (prod[idx] + p * p - c * pc as u32 % p) % p;
                        }
                    }
                }
                mul[a * qs + b] = encode(&prod[..k as usize]);
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8
                }
            })
            .collect();
        Ok(FieldSpec { q: q as u8, p: p as u8, k: k as u8, poly, add, mul, neg, inv })
    }

    /// Shared handle, the form matrices carry.
    pub fn shared(q: u32) -> Result<Arc<FieldSpec>, FieldError> {
        FieldSpec::new(q).map(Arc::new)
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    pub fn polynomial(&self) -> &[u8] {
        &self.poly
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: Elem, mut e: u32) -> Elem {
        let (mut base, mut acc) = (a, Elem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius powers `x ↦ x^(p^i)` for `i = 0..k`, each as a lookup table.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        (0..self.k as u32)
            .map(|i| {
                let e = (self.p as u32).pow(i);
                self.elements().map(|x| self.pow(x, e)).collect()
            })
            .collect()
    }

    /// Exhaustive check of the field axioms over all element triples.
    pub fn check_axioms(&self) -> Result<(), String> {
        let (z, o) = (Elem::ZERO, Elem::ONE);
        for a in self.elements() {
            if self.add(a, z) != a || self.mul(a, o) != a {
                return Err(format!("identity fails at {a:?}"));
            }
            if self.add(a, self.neg(a)) != z {
                return Err(format!("additive inverse fails at {a:?}"));
            }
            if let Some(i) = self.inv(a) {
                if self.mul(a, i) != o {
                    return Err(format!("multiplicative inverse fails at {a:?}"));
                }
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at {a:?},{b:?}"));
                }
                if !a.is_zero() && !b.is_zero() && self.mul(a, b).is_zero() {
                    return Err(format!("zero divisor {a:?}*{b:?}"));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at {a:?},{b:?},{c:?}"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at {a:?},{b:?},{c:?}"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at {a:?},{b:?},{c:?}"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_xor_and() {
        let f = FieldSpec::new(2).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(Elem(a), Elem(b)), Elem(a ^ b));
                assert_eq!(f.mul(Elem(a), Elem(b)), Elem(a & b));
            }
        }
    }

    #[test]
    fn gf4_tables_by_independent_polynomial_arithmetic() {
        // Oracle: elements a0 + a1 x over GF(2) with x^2 = x + 1.
        let f = FieldSpec::new(4).unwrap();
        let mulpoly = |a: u8, b: u8| -> u8 {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            let c0 = a0 & b0;
            let c1 = (a0 & b1) ^ (a1 & b0);
            let c2 = a1 & b1;
            // c2 x^2 = c2 (x + 1)
            (c0 ^ c2) | ((c1 ^ c2) << 1)
        };
        for a in 0..4u8 {
            for b in 0..4u8 {
                assert_eq!(f.mul(Elem(a), Elem(b)), Elem(mulpoly(a, b)));
                assert_eq!(f.add(Elem(a), Elem(b)), Elem(a ^ b));
            }
        }
        assert!(f.check_axioms().is_ok());
        assert_eq!(f.polynomial(), &[1, 1, 1]);
    }

    #[test]
    fn non_prime_powers_rejected() {
        for q in [0, 1, 6, 10, 12, 14, 15, 17, 25, 27] {
            assert_eq!(FieldSpec::new(q), Err(FieldError::NotPrimePower(q)));
        }
    }

    #[test]
    fn all_supported_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::new(q).unwrap();
            f.check_axioms().unwrap_or_else(|e| panic!("GF({q}): {e}"));
            assert_eq!(f.characteristic().pow(f.degree()), q);
        }
    }

    #[test]
    fn frobenius_maps_are_automorphisms() {
        for q in [4, 8, 9, 16] {
            let f = FieldSpec::new(q).unwrap();
            let auts = f.automorphisms();
            assert_eq!(auts.len() as u32, f.degree());
            for s in &auts {
                for a in f.elements() {
                    for b in f.elements() {
                        let (sa, sb) = (s[a.0 as usize], s[b.0 as usize]);
                        assert_eq!(s[f.add(a, b).0 as usize], f.add(sa, sb));
                        assert_eq!(s[f.mul(a, b).0 as usize], f.mul(sa, sb));
                    }
                }
            }
            // the non-identity maps move something
            assert!(auts[1].iter().enumerate().any(|(i, e)| e.0 as usize != i));
        }
    }
}
