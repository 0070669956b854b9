//! Exact arithmetic in `Z[ζ_p]` and `Q(ζ_p)`, and class functions on `U`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Neg;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::characters::LinChar;
use crate::error::{Error, Result};
use crate::group::{check_budget, Mat, Sylow};

/// An element of `T[ζ_p]` in the basis `ζ^0, ..., ζ^{p-2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<T> {
    p: u32,
    coeffs: Vec<T>,
}

/// Coefficient bound for ring operations on [`Cyclotomic`].
pub trait CycCoeff: Clone + Num + Neg<Output = Self> + fmt::Display {}

impl<T: Clone + Num + Neg<Output = T> + fmt::Display> CycCoeff for T {}

impl<T: CycCoeff> Cyclotomic<T> {
    pub fn zero(p: u32) -> Self {
        Cyclotomic { p, coeffs: vec![T::zero(); (p - 1) as usize] }
    }

    pub fn from_scalar(p: u32, v: T) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = v;
        c
    }

    pub fn one(p: u32) -> Self {
        Self::from_scalar(p, T::one())
    }

    /// `ζ_p^k`.
    pub fn zeta(p: u32, k: u32) -> Self {
        let mut counts = vec![T::zero(); p as usize];
        counts[(k % p) as usize] = T::one();
        Self::from_exponent_counts(p, counts)
    }

    /// `Σ_k counts[k] ζ^k` for `k` in `0..p`, reduced with `ζ^{p-1} = -(1 + ... + ζ^{p-2})`.
    pub fn from_exponent_counts(p: u32, mut counts: Vec<T>) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts.pop().expect("p >= 3");
        let coeffs = counts.into_iter().map(|c| c - top.clone()).collect();
        Cyclotomic { p, coeffs }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in the coefficient ring.
    pub fn as_scalar(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::MixedPrime(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Cyclotomic { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p as usize;
        let mut counts = vec![T::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % p;
                    counts[k] = counts[k].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Self::from_exponent_counts(self.p, counts))
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut counts = vec![T::zero(); p];
        for (k, a) in self.coeffs.iter().enumerate() {
            counts[(p - k) % p] = a.clone();
        }
        Self::from_exponent_counts(self.p, counts)
    }

    /// Multiplication by `ζ^k`.
    pub fn mul_zeta(&self, k: u32) -> Self {
        let p = self.p as usize;
        let mut counts = vec![T::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            counts[(i + k as usize) % p] = a.clone();
        }
        Self::from_exponent_counts(self.p, counts)
    }
}

impl<T: CycCoeff> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_scalar() {
            return write!(f, "{c}");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub type CycInt = Cyclotomic<BigInt>;
pub type CycRat = Cyclotomic<BigRational>;

impl CycInt {
    pub fn to_rational(&self) -> CycRat {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }
}

impl CycRat {
    /// The integral element, when every coordinate is an integer.
    pub fn to_integral(&self) -> Result<CycInt> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return Err(Error::NonIntegral(self.to_string()));
            }
            coeffs.push(c.to_integer());
        }
        Ok(Cyclotomic { p: self.p, coeffs })
    }
}

/// Tallies `Σ ζ^{t}` over a stream of exponents.
#[derive(Debug, Clone)]
pub struct ExponentTally {
    counts: Vec<i64>,
}

impl ExponentTally {
    pub fn new(p: u32) -> Self {
        ExponentTally { counts: vec![0; p as usize] }
    }

    #[inline]
    pub fn push(&mut self, exponent: u32) {
        let p = self.counts.len();
        self.counts[exponent as usize % p] += 1;
    }

    #[inline]
    pub fn push_signed(&mut self, exponent: u32, sign: i64) {
        let p = self.counts.len();
        self.counts[exponent as usize % p] += sign;
    }

    pub fn finish(self) -> CycInt {
        let p = self.counts.len() as u32;
        Cyclotomic::from_exponent_counts(p, self.counts.into_iter().map(BigInt::from).collect())
    }
}

/// The elements of `U` with lookup and inverse tables.
#[derive(Debug, Clone)]
pub struct GroupTable {
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    inverse: Vec<usize>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl GroupTable {
    pub fn of_sylow(g: &Sylow, limit: u128) -> Result<Self> {
        let elements: Vec<Mat> = g.enumerate(limit)?.collect();
        Self::from_elements(g, elements)
    }

    pub fn from_elements(g: &Sylow, elements: Vec<Mat>) -> Result<Self> {
        let index: HashMap<Mat, usize> =
            elements.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let inverse = elements
            .iter()
            .map(|u| {
                let v = g.inv(u)?;
                index.get(&v).copied().ok_or(Error::NotMember)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { elements, index, inverse, classes: OnceLock::new() })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse_index(&self, k: usize) -> usize {
        self.inverse[k]
    }

    /// Conjugacy classes as sorted index lists, ordered by their least member. Computed once.
    pub fn conjugacy_classes(&self, g: &Sylow) -> Result<&[Vec<usize>]> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let mut seen = vec![false; self.len()];
        let mut classes = Vec::new();
        for k in 0..self.len() {
            if seen[k] {
                continue;
            }
            let u = &self.elements[k];
            let mut class = Vec::new();
            for (h, x) in self.elements.iter().enumerate() {
                let c = g.mul(&g.mul(x, u)?, &self.elements[self.inverse[h]])?;
                let ci = self.index_of(&c).ok_or(Error::NotMember)?;
                if !seen[ci] {
                    seen[ci] = true;
                    class.push(ci);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        Ok(self.classes.get_or_init(|| classes))
    }
}

/// A function on the elements of a [`GroupTable`] with values in `Z[ζ_p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycInt>,
}

impl ClassFunction {
    pub fn constant(p: u32, len: usize, v: i64) -> Self {
        ClassFunction { values: vec![Cyclotomic::from_scalar(p, BigInt::from(v)); len] }
    }

    pub fn trivial(p: u32, table: &GroupTable) -> Self {
        Self::constant(p, table.len(), 1)
    }

    /// `|U|` at the identity and zero elsewhere. The identity is looked up in `table`.
    pub fn regular(p: u32, g: &Sylow, table: &GroupTable) -> Self {
        let id = table.index_of(&g.identity()).expect("identity is enumerated");
        let mut values = vec![CycInt::zero(p); table.len()];
        values[id] = Cyclotomic::from_scalar(p, BigInt::from(table.len()));
        ClassFunction { values }
    }

    pub fn degree(&self, g: &Sylow, table: &GroupTable) -> CycInt {
        let id = table.index_of(&g.identity()).expect("identity is enumerated");
        self.values[id].clone()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(self.values.len(), other.values.len()));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch(self.values.len(), other.values.len()));
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(ClassFunction { values })
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a ClassFunction>>(p: u32, len: usize, it: I) -> Result<Self> {
        let mut acc = Self::constant(p, len, 0);
        for f in it {
            acc = acc.add(f)?;
        }
        Ok(acc)
    }

    /// Constancy on conjugacy classes, checked by explicit conjugation.
    pub fn is_class_function(&self, g: &Sylow, table: &GroupTable) -> Result<bool> {
        for (k, u) in table.elements().iter().enumerate() {
            for (h, x) in table.elements().iter().enumerate() {
                let c = g.mul(&g.mul(x, u)?, &table.elements()[table.inverse_index(h)])?;
                let ci = table.index_of(&c).ok_or(Error::NotMember)?;
                if self.values[ci] != self.values[k] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `(1/|U|) Σ χ(u) conj(ψ(u))`, which must be rational.
pub fn inner_product(chi: &ClassFunction, psi: &ClassFunction) -> Result<BigRational> {
    if chi.values.len() != psi.values.len() {
        return Err(Error::DimensionMismatch(chi.values.len(), psi.values.len()));
    }
    let p = chi.values.first().map(|v| v.prime()).unwrap_or(3);
    let mut acc = CycInt::zero(p);
    for (a, b) in chi.values.iter().zip(&psi.values) {
        acc = acc.add(&a.mul(&b.conj())?)?;
    }
    let scalar = acc.as_scalar().ok_or_else(|| Error::NonRational(acc.to_string()))?;
    Ok(BigRational::new(scalar, BigInt::from(chi.values.len())))
}

/// [`inner_product`] for genuine characters: a nonnegative integer.
pub fn inner_product_int(chi: &ClassFunction, psi: &ClassFunction) -> Result<BigInt> {
    let r = inner_product(chi, psi)?;
    if !r.is_integer() || r < BigRational::zero() {
        return Err(Error::NonIntegral(r.to_string()));
    }
    Ok(r.to_integer())
}

/// A linear character of a subgroup `H`, given by exponents: `χ(h) = ζ^{t(h)}`.
pub struct SubgroupCharacter {
    pub values: HashMap<Mat, u32>,
}

impl SubgroupCharacter {
    pub fn check_multiplicative(&self, g: &Sylow) -> Result<()> {
        let p = g.field().characteristic();
        for (a, ta) in &self.values {
            for (b, tb) in &self.values {
                let ab = g.mul(a, b)?;
                match self.values.get(&ab) {
                    Some(&t) if t == (ta + tb) % p => {}
                    _ => return Err(Error::NotMultiplicative),
                }
            }
        }
        Ok(())
    }
}

/// `Ind_H^U χ (u) = (1/|H|) Σ_{x ∈ U, x u x^{-1} ∈ H} χ(x u x^{-1})`, evaluated once per conjugacy class.
pub fn induce(g: &Sylow, table: &GroupTable, chi: &SubgroupCharacter, limit: u128) -> Result<ClassFunction> {
    check_budget("induction", (table.len() as u128).saturating_mul(table.len() as u128), limit)?;
    chi.check_multiplicative(g)?;
    let p = g.field().characteristic();
    let h_order = BigInt::from(chi.values.len());
    let mut values = vec![CycInt::zero(p); table.len()];
    for class in table.conjugacy_classes(g)? {
        let u = &table.elements()[class[0]];
        let mut tally = ExponentTally::new(p);
        for (k, x) in table.elements().iter().enumerate() {
            let c = g.mul(&g.mul(x, u)?, &table.elements()[table.inverse_index(k)])?;
            if let Some(&t) = chi.values.get(&c) {
                tally.push(t);
            }
        }
        let total = tally.finish();
        let scaled = total.to_rational().scale(&BigRational::new(BigInt::one(), h_order.clone()));
        let v = scaled.to_integral()?;
        for &k in class {
            values[k] = v.clone();
        }
    }
    Ok(ClassFunction { values })
}

/// Character of the monomial module spanned by `chars`, which must be `U`-stable:
/// `u ↦ Σ_{[B].u = [B]} θ(κ(-B, f(u^{-1})))`.
pub fn module_character(
    g: &Sylow,
    table: &GroupTable,
    chars: &[LinChar],
) -> Result<ClassFunction> {
    let p = g.field().characteristic();
    let members: HashSet<&LinChar> = chars.iter().collect();
    let mut values = Vec::with_capacity(table.len());
    for u in table.elements() {
        let mut tally = ExponentTally::new(p);
        for b in chars {
            let (t, c) = g.monomial_right(b, u)?;
            if c == *b {
                tally.push(t);
            } else if !members.contains(&c) {
                return Err(Error::Unsupported("character set is not stable under U".into()));
            }
        }
        values.push(tally.finish());
    }
    Ok(ClassFunction { values })
}

/// The monomial matrix of `u` on the basis `chars`: entry `k` is `(row index of [B_k]·u, exponent)`.
pub fn monomial_matrix(g: &Sylow, chars: &[LinChar], u: &Mat) -> Result<Vec<(usize, u32)>> {
    let index: HashMap<&LinChar, usize> = chars.iter().enumerate().map(|(k, c)| (c, k)).collect();
    chars
        .iter()
        .map(|b| {
            let (t, c) = g.monomial_right(b, u)?;
            let k = index.get(&c).copied().ok_or_else(|| Error::Unsupported("basis not stable".into()))?;
            Ok((k, t))
        })
        .collect()
}

/// Trace of a monomial matrix.
pub fn monomial_trace(p: u32, m: &[(usize, u32)]) -> CycInt {
    let mut tally = ExponentTally::new(p);
    for (k, &(target, t)) in m.iter().enumerate() {
        if target == k {
            tally.push(t);
        }
    }
    tally.finish()
}

/// Composition `m1` then `m2` of monomial matrices acting on the right.
pub fn monomial_compose(p: u32, m1: &[(usize, u32)], m2: &[(usize, u32)]) -> Vec<(usize, u32)> {
    m1.iter().map(|&(k, t)| (m2[k].0, (t + m2[k].1) % p)).collect()
}

/// CSV table: one row per character, one column per conjugacy class (least member),
/// cells are coordinate vectors.
pub fn character_table_csv(
    g: &Sylow,
    table: &GroupTable,
    names: &[String],
    chars: &[ClassFunction],
) -> Result<String> {
    let classes = table.conjugacy_classes(g)?;
    let f = g.field();
    let mut out = String::from("character");
    for c in classes {
        let coords: Vec<String> = g.extract(&table.elements()[c[0]]).iter().map(|&x| f.render(x)).collect();
        out.push_str(&format!(",\"u[{}]\"", coords.join(" ")));
    }
    out.push('\n');
    for (name, chi) in names.iter().zip(chars) {
        out.push_str(name);
        for c in classes {
            out.push_str(&format!(",\"{}\"", chi.values[c[0]]));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn member_set(elements: &[Mat]) -> HashSet<Mat> {
    elements.iter().cloned().collect()
}
