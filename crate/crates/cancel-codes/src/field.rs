//! Exact arithmetic in GF(q) for prime powers q = p^m.
//!
//! Elements are residue polynomials over GF(p) stored as canonical
//! coefficient vectors (constant term first, every coefficient reduced).
//! A `Field` owns the irreducible modulus and performs all arithmetic;
//! `FieldElement` is plain data. Intended range is q <= 2^16; everything
//! in this crate exercises q <= 64.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The requested order has two distinct prime factors (or is < 2).
    NotAPrimePower(u64),
    DivisionByZero,
    /// No prime power exists at or below the requested bound.
    NoPrimePower(u64),
    ParseElement(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotAPrimePower(q) => write!(f, "{q} is not a prime power"),
            FieldError::DivisionByZero => write!(f, "division by zero field element"),
            FieldError::NoPrimePower(x) => write!(f, "no prime power <= {x}"),
            FieldError::ParseElement(s) => write!(f, "cannot parse field element: {s}"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of GF(p^m): m residues mod p, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// GF(p^m). For m > 1 the modulus is the lexicographically smallest monic
/// irreducible of degree m over GF(p), found by exhaustive scan, so two
/// fields of the same order are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    m: usize,
    q: u64,
    /// Monic modulus, length m+1, constant term first; empty when m == 1.
    modulus: Vec<u64>,
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    let mut n = q;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself prime
    }
    if n != 1 {
        return None; // second prime factor survived
    }
    let mut m = 0;
    let mut acc = 1u64;
    while acc < q {
        acc *= p;
        m += 1;
    }
    (acc == q).then_some((p, m))
}

/// Largest prime power q <= x.
pub fn largest_prime_power_leq(x: u64) -> Result<u64, FieldError> {
    if x < 2 {
        return Err(FieldError::NoPrimePower(x));
    }
    let mut q = x;
    while q >= 2 {
        if factor_prime_power(q).is_some() {
            return Ok(q);
        }
        q -= 1;
    }
    Err(FieldError::NoPrimePower(x))
}

// -- dense polynomial helpers over GF(p), little-endian coefficient vecs --

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let idx = shift + i;
            r[idx] = (r[idx] + p * p - (lead * b[i]) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_is_divisible(a: &[u64], b: &[u64], p: u64) -> bool {
    poly_rem(a, b, p).is_empty()
}

/// Exhaustive irreducibility scan: a monic degree-m polynomial is
/// irreducible iff no monic polynomial of degree 1..=m/2 divides it.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push(v % p);
                v /= p;
            }
            div.push(1); // monic
            if poly_is_divisible(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Build GF(q), scanning for the modulus when q is a proper prime power.
    pub fn new(q: u64) -> Result<Field, FieldError> {
        let (p, m) = factor_prime_power(q).ok_or(FieldError::NotAPrimePower(q))?;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            Self::smallest_irreducible(p, m)
        };
        Ok(Field { p, m, q, modulus })
    }

    /// Lexicographically smallest (on the coefficient vector, constant term
    /// compared first) monic irreducible of degree m over GF(p).
    fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
        let count = p.pow(m as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(m + 1);
            // lexicographic on (c0, c1, ..): c0 varies slowest
            let mut v = idx;
            let mut digits = vec![0u64; m];
            for j in (0..m).rev() {
                digits[j] = v % p;
                v /= p;
            }
            cand.extend_from_slice(&digits);
            cand.push(1);
            if is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("an irreducible of every degree exists over GF(p)")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// Element from a base-field residue.
    pub fn scalar(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// Canonical index of an element: lexicographic rank of its
    /// coefficient vector, so zero is 0 and indexing inverts `element`.
    pub fn index(&self, a: &FieldElement) -> u64 {
        let mut idx = 0;
        for &c in &a.coeffs {
            idx = idx * self.p + c;
        }
        idx
    }

    pub fn element(&self, idx: u64) -> FieldElement {
        debug_assert!(idx < self.q);
        // index() folds coeffs left-to-right, coeffs[0] most significant
        let mut coeffs = vec![0u64; self.m];
        let mut v = idx;
        for j in (0..self.m).rev() {
            coeffs[j] = v % self.p;
            v /= self.p;
        }
        FieldElement { coeffs }
    }

    /// All q elements in canonical order, zero first.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement { coeffs: vec![(a.coeffs[0] * b.coeffs[0]) % self.p] };
        }
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.m, 0);
        FieldElement { coeffs: rem }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // x^(q-1) = 1 for nonzero x, so x^(q-2) is the inverse.
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parse "c0,c1,...,c_{m-1}" (a single decimal for prime fields).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.m {
            return Err(FieldError::ParseElement(format!(
                "expected {} residues, got {} in {:?}",
                self.m,
                parts.len(),
                s
            )));
        }
        let mut coeffs = Vec::with_capacity(self.m);
        for part in parts {
            let v: u64 = part
                .trim()
                .parse()
                .map_err(|_| FieldError::ParseElement(s.to_string()))?;
            if v >= self.p {
                return Err(FieldError::ParseElement(format!(
                    "residue {v} out of range for characteristic {}",
                    self.p
                )));
            }
            coeffs.push(v);
        }
        Ok(FieldElement { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_powers_upto(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&q| factor_prime_power(q).is_some()).collect()
    }

    #[test]
    fn prime_field_has_no_modulus() {
        let f = Field::new(7).unwrap();
        assert_eq!((f.p(), f.extension_degree()), (7, 1));
        assert!(f.modulus().is_empty());
    }

    #[test]
    fn gf9_modulus_is_smallest_irreducible_quadratic() {
        // Exhaustive scan over the 9 monic quadratics over GF(3): x^2, x^2+x,
        // x^2+2x have root 0; x^2+2 = (x-1)(x+1); x^2+x+1 has root 1;
        // x^2+2x+1 = (x+1)^2. First survivor in lex order is x^2 + 1.
        let f = Field::new(9).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn non_prime_power_rejected() {
        assert_eq!(Field::new(12).unwrap_err(), FieldError::NotAPrimePower(12));
        assert_eq!(Field::new(1).unwrap_err(), FieldError::NotAPrimePower(1));
        assert_eq!(Field::new(0).unwrap_err(), FieldError::NotAPrimePower(0));
    }

    #[test]
    fn gf5_product() {
        let f = Field::new(5).unwrap();
        let r = f.mul(&f.scalar(3), &f.scalar(4));
        assert_eq!(r, f.scalar(2)); // 12 mod 5
    }

    #[test]
    fn gf4_generator_square() {
        // GF(4) modulus comes out as x^2 + x + 1 (the only irreducible
        // quadratic over GF(2)); then a*a = a+1 for a = x.
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let a = f.element(f.index(&FieldElement { coeffs: vec![0, 1] }));
        let sq = f.mul(&a, &a);
        assert_eq!(sq.coeffs(), &[1, 1]);
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.inv(&f.zero()).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(
            f.div(&f.one(), &f.zero()).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn enumeration_zero_first_and_bijective() {
        for q in [2u64, 3, 4, 8, 9] {
            let f = Field::new(q).unwrap();
            let elems = f.elements();
            assert_eq!(elems.len(), q as usize);
            assert!(elems[0].is_zero());
            for (i, e) in elems.iter().enumerate() {
                assert_eq!(f.index(e), i as u64);
            }
            // lexicographic on coefficient vectors
            for w in elems.windows(2) {
                assert!(w[0].coeffs() < w[1].coeffs());
            }
        }
    }

    #[test]
    fn largest_prime_power_examples() {
        assert_eq!(largest_prime_power_leq(10).unwrap(), 9);
        assert_eq!(largest_prime_power_leq(7).unwrap(), 7);
        assert_eq!(largest_prime_power_leq(2).unwrap(), 2);
        assert_eq!(largest_prime_power_leq(1).unwrap_err(), FieldError::NoPrimePower(1));
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        // Commutativity/associativity on exhaustive triples, inverses, and
        // multiplicative order q-1, for every prime power up to 64.
        for q in prime_powers_upto(64) {
            let f = Field::new(q).unwrap();
            let elems = f.elements();
            for a in &elems {
                for b in &elems {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
            for ia in 0..q {
                for ib in 0..q {
                    for ic in 0..q {
                        let (a, b, c) = (f.element(ia), f.element(ib), f.element(ic));
                        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                        // distributivity
                        assert_eq!(
                            f.mul(&a, &f.add(&b, &c)),
                            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                        );
                    }
                }
            }
            for a in elems.iter().skip(1) {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, &inv), f.one());
                assert_eq!(f.pow(a, q - 1), f.one());
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f1 = Field::new(q).unwrap();
            let f2 = Field::new(q).unwrap();
            assert_eq!(f1, f2);
        }
    }

    #[test]
    fn element_parse_roundtrip() {
        let f = Field::new(9).unwrap();
        for e in f.elements() {
            let s = e.to_string();
            assert_eq!(f.parse_element(&s).unwrap(), e);
        }
        assert!(f.parse_element("3,0").is_err()); // residue out of range
        assert!(f.parse_element("1").is_err()); // wrong arity
    }
}
