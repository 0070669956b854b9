//! Table-driven arithmetic in `F_q`, `q = p^e`, `p` an odd prime.
//!
//! Elements are stored as indices `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of
//! their coefficient vectors in the polynomial basis `1, x, ..., x^{e-1}`.
//! Index order is the enumeration order: it is lexicographic on
//! `(c_{e-1}, ..., c_0)`, starts at zero, and lists the prime field first.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order for which the arithmetic tables are built.
pub const MAX_FIELD_ORDER: u64 = 2048;

/// An element of a [`GaloisField`]. Only meaningful together with its field.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub(crate) u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Binary or unary field operation, for the generic [`GaloisField::arith`] entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

pub(crate) fn is_prime(n: u64) -> bool {
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

// Dense polynomials over Z_p, lowest coefficient first.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (k, &mk) in m.iter().enumerate() {
            let idx = dr - dm + k;
            r[idx] = (r[idx] + p - (c as u64 * mk as u64 % p as u64) as u32) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat, p prime.
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn digits(mut idx: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as usize) as u32);
        idx /= p as usize;
    }
    out
}

fn monic_with_low(low: &[u32]) -> Vec<u32> {
    let mut m = low.to_vec();
    m.push(1);
    m
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let divisor = monic_with_low(&digits(low, p, d));
            if poly_rem(m, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds `F_{p^e}`. For `e > 1` the modulus is the first monic
    /// irreducible polynomial in index order of its lower coefficients.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::BadDegree(e));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let p = p as u32;
        let q = q as usize;
        let e_us = e as usize;

        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| monic_with_low(&digits(low, p, e_us)))
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let coeffs: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, e_us)).collect();
        let encode = |c: &[u32]| -> u16 {
            let mut idx = 0usize;
            for &x in c.iter().rev() {
                idx = idx * p as usize + x as usize;
            }
            idx as u16
        };
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = (0..e_us).map(|k| (coeffs[a][k] + coeffs[b][k]) % p).collect();
                add[a * q + b] = encode(&s);
                let mut prod = vec![0u32; 2 * e_us];
                for i in 0..e_us {
                    for j in 0..e_us {
                        prod[i + j] = ((prod[i + j] as u64 + coeffs[a][i] as u64 * coeffs[b][j] as u64)
                            % p as u64) as u32;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(e_us, 0);
                mul[a * q + b] = encode(&r);
            }
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv: Vec<u16> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u16
                }
            })
            .collect();

        let mut field = GaloisField { p, e, q, modulus, add, mul, neg, inv, trace: Vec::new() };
        let trace: Vec<u32> = (0..q)
            .map(|a| {
                let x = Fe(a as u16);
                let mut acc = Fe::ZERO;
                let mut frob = x;
                for _ in 0..e {
                    acc = field.add(acc, frob);
                    frob = field.pow(frob, p as u64);
                }
                assert!(acc.index() < p as usize, "trace must land in the prime field");
                acc.index() as u32
            })
            .collect();
        field.trace = trace;
        Ok(field)
    }

    /// Parses `"p^e"` or a prime power `"q"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some((p, e)) = spec.split_once('^') {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime in {spec:?}")))?;
            let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {spec:?}")))?;
            return Self::new(p, e);
        }
        let q: u64 = spec.parse().map_err(|_| Error::Parse(format!("bad field order {spec:?}")))?;
        if q < 2 {
            return Err(Error::NotPrime(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q has a prime divisor");
        let (mut rest, mut e) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::Parse(format!("{q} is not a prime power")));
        }
        Self::new(p, e)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.q).map(|i| Fe(i as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.q).map(|i| Fe(i as u16))
    }

    /// `1, x, ..., x^{e-1}`: an `F_p`-basis, hence additive generators of `F_q`.
    pub fn additive_basis(&self) -> Vec<Fe> {
        (0..self.e).map(|k| Fe((self.p as usize).pow(k) as u16)).collect()
    }

    pub fn element(&self, index: usize) -> Result<Fe> {
        if index >= self.q {
            return Err(Error::IndexOutOfRange { index, size: self.q - 1 });
        }
        Ok(Fe(index as u16))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u16)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.index(), self.p, self.e as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() != self.e as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::Parse(format!("bad coefficient vector {c:?}")));
        }
        let mut idx = 0usize;
        for &x in c.iter().rev() {
            idx = idx * self.p as usize + x as usize;
        }
        Ok(Fe(idx as u16))
    }

    /// Coefficient vector rendered as `"c0"` or `"c0,c1,..."`.
    pub fn render(&self, a: Fe) -> String {
        self.coeffs(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_element(&self, s: &str) -> Result<Fe> {
        let c: std::result::Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        let c = c.map_err(|_| Error::Parse(format!("bad field element {s:?}")))?;
        if c.len() == 1 && self.e > 1 {
            return Ok(self.from_int(c[0] as i64));
        }
        self.from_coeffs(&c)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.mul[a.index() * self.q + b.index()])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fe(self.inv[a.index()]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut k: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `1/2`, available because `p` is odd.
    pub fn half(&self) -> Fe {
        Fe(self.inv[2])
    }

    /// Absolute trace `F_q -> F_p`, returned as a residue in `0..p`.
    #[inline]
    pub fn trace(&self, a: Fe) -> u32 {
        self.trace[a.index()]
    }

    pub fn arith(&self, op: FieldOp, a: Fe, b: Fe) -> Result<Fe> {
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }
}
