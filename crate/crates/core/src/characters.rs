//! The character space `V̂`, the cocycle `f`, and the right and left actions on `V̂`.
//!
//! A [`LinChar`] holding the matrix `A` denotes `[A] = χ_{-A}`, the linear character
//! `B ↦ θ(κ(-A, B))` of `(V, +)`. All coefficients are stated for `[A]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycRat, Cyclotomic};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::geometry::{Pos, PupIndex, Region};
use crate::group::{check_budget, power, Mat, Sylow};

/// A character `[A]` with `supp(A) ⊆ pUP`, stored densely by `pUP` ordinal.
///
/// The derived order is lexicographic in row-major `pUP` order, which is the order used to
/// pick least representatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinChar {
    coords: Box<[Fe]>,
}

impl LinChar {
    pub fn zero(len: usize) -> Self {
        LinChar { coords: vec![Fe::ZERO; len].into_boxed_slice() }
    }

    pub fn from_coords(coords: Vec<Fe>) -> Self {
        LinChar { coords: coords.into_boxed_slice() }
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn get(&self, pup: &PupIndex, p: Pos) -> Fe {
        pup.ordinal(p).map_or(Fe::ZERO, |k| self.coords[k])
    }

    pub fn set(&mut self, pup: &PupIndex, p: Pos, v: Fe) -> Result<()> {
        let k = pup.ordinal(p).ok_or(Error::NotInPup(p))?;
        self.coords[k] = v;
        Ok(())
    }

    pub fn from_entries(pup: &PupIndex, entries: &[(Pos, Fe)]) -> Result<Self> {
        let mut a = Self::zero(pup.len());
        for &(p, v) in entries {
            a.set(pup, p, v)?;
        }
        Ok(a)
    }

    /// `π_pUP(M)`.
    pub fn project(pup: &PupIndex, m: &Mat) -> Self {
        LinChar { coords: pup.positions().iter().map(|&p| m.at(p)).collect() }
    }

    pub fn to_mat(&self, pup: &PupIndex) -> Mat {
        let mut m = Mat::zero(pup.lie_type().size());
        for (p, &v) in pup.positions().iter().zip(self.coords.iter()) {
            m.set(p.i, p.j, v);
        }
        m
    }

    pub fn support(&self, pup: &PupIndex) -> Vec<Pos> {
        pup.positions()
            .iter()
            .zip(self.coords.iter())
            .filter(|(_, v)| !v.is_zero())
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn entries(&self, pup: &PupIndex) -> Vec<(Pos, Fe)> {
        pup.positions()
            .iter()
            .zip(self.coords.iter())
            .filter(|(_, v)| !v.is_zero())
            .map(|(&p, &v)| (p, v))
            .collect()
    }

    /// Mixed-radix rank, first coordinate most significant; agrees with the derived order.
    pub fn rank(&self, q: usize) -> u128 {
        self.coords.iter().fold(0u128, |acc, c| acc * q as u128 + c.index() as u128)
    }

    pub fn from_rank(mut r: u128, q: usize, len: usize) -> Self {
        let mut coords = vec![Fe::ZERO; len];
        for slot in coords.iter_mut().rev() {
            *slot = Fe((r % q as u128) as u16);
            r /= q as u128;
        }
        LinChar::from_coords(coords)
    }

    pub fn to_json(&self, pup: &PupIndex, f: &GaloisField) -> LinCharJson {
        LinCharJson {
            entries: self.entries(pup).into_iter().map(|(p, v)| (p.i, p.j, f.render(v))).collect(),
        }
    }

    pub fn from_json(j: &LinCharJson, pup: &PupIndex, f: &GaloisField) -> Result<Self> {
        let mut entries = Vec::with_capacity(j.entries.len());
        for (i, jj, v) in &j.entries {
            entries.push((Pos::new(*i, *jj), f.parse_element(v)?));
        }
        Self::from_entries(pup, &entries)
    }

    /// Parses `"i,j=v;i,j=v"`; the empty string is the zero character.
    pub fn parse(s: &str, pup: &PupIndex, f: &GaloisField) -> Result<Self> {
        let mut entries = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (pos, val) =
                part.split_once('=').ok_or_else(|| Error::Parse(format!("missing '=' in {part}")))?;
            entries.push((pos.trim().parse::<Pos>()?, f.parse_element(val.trim())?));
        }
        Self::from_entries(pup, &entries)
    }

    pub fn display<'a>(&'a self, pup: &'a PupIndex, f: &'a GaloisField) -> impl fmt::Display + 'a {
        DisplayLinChar { a: self, pup, f }
    }
}

struct DisplayLinChar<'a> {
    a: &'a LinChar,
    pup: &'a PupIndex,
    f: &'a GaloisField,
}

impl fmt::Display for DisplayLinChar<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .a
            .entries(self.pup)
            .into_iter()
            .map(|(p, v)| format!("{},{}={}", p.i, p.j, self.f.render(v)))
            .collect();
        write!(out, "[{}]", parts.join(";"))
    }
}

/// JSON form of a character: nonzero entries as `[i, j, "value"]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinCharJson {
    pub entries: Vec<(usize, usize, String)>,
}

/// An element of `CV̂` as a finite sum of characters.
pub type CharCombination = BTreeMap<LinChar, CycRat>;

/// `κ(A, B) = tr(AᵗB)`.
pub fn kappa(a: &Mat, b: &Mat, f: &GaloisField) -> Result<Fe> {
    if a.size() != b.size() {
        return Err(Error::DimensionMismatch(a.size(), b.size()));
    }
    let n = a.size();
    let mut acc = Fe::ZERO;
    for i in 1..=n {
        for j in 1..=n {
            let (x, y) = (a.get(i, j), b.get(i, j));
            if !x.is_zero() && !y.is_zero() {
                acc = f.add(acc, f.mul(x, y));
            }
        }
    }
    Ok(acc)
}

/// `κ(-A, M)` for a character `A` supported on `pUP`.
fn kappa_neg(a: &LinChar, pup: &PupIndex, m: &Mat, f: &GaloisField) -> Fe {
    let mut acc = Fe::ZERO;
    for (p, &v) in pup.positions().iter().zip(a.coords.iter()) {
        if !v.is_zero() {
            acc = f.sub(acc, f.mul(v, m.at(*p)));
        }
    }
    acc
}

impl Sylow {
    /// The cocycle `f(u) = π_pUP(u)`.
    pub fn cocycle_f(&self, u: &Mat) -> LinChar {
        LinChar::project(self.pup(), u)
    }

    /// The right action of `Ũ` on `V`: `A.u = π(Au)`.
    pub fn act_v(&self, a: &LinChar, u: &Mat) -> Result<LinChar> {
        let m = a.to_mat(self.pup()).mul(u, self.field())?;
        Ok(LinChar::project(self.pup(), &m))
    }

    /// `[A].u = [π(A u^{-t})]`, computed densely.
    pub fn dot_right_dense(&self, a: &LinChar, u: &Mat) -> Result<LinChar> {
        let f = self.field();
        let uit = u.inv_unitriangular(f)?.transpose();
        let m = a.to_mat(self.pup()).mul(&uit, f)?;
        Ok(LinChar::project(self.pup(), &m))
    }

    /// `[A]·x̃_{ij}(α) = θ(αA_{ij})[B]` where `B` adds `-α` times column `j` to column `i`
    /// and truncates to `pUP`. Returns the exponent of `θ`.
    pub fn tilde_right_in_place(&self, a: &mut LinChar, p: Pos, alpha: Fe) -> u32 {
        let f = self.field();
        let pup = self.pup();
        if alpha.is_zero() {
            return 0;
        }
        let t = pup.ordinal(p).map_or(0, |k| f.trace(f.mul(alpha, a.coords[k])));
        let na = f.neg(alpha);
        for r in 1..p.i {
            if let Some(ki) = pup.ordinal(Pos::new(r, p.i)) {
                if let Some(kj) = pup.ordinal(Pos::new(r, p.j)) {
                    let v = a.coords[kj];
                    if !v.is_zero() {
                        a.coords[ki] = f.add(a.coords[ki], f.mul(na, v));
                    }
                }
            }
        }
        t
    }

    /// `[A]·x_p(α)` for a root element of `U`, via its `x̃` factors.
    pub fn root_right_in_place(&self, a: &mut LinChar, p: Pos, alpha: Fe) -> Result<u32> {
        let pch = self.field().characteristic();
        let mut t = 0;
        for (q, b) in self.root_tilde_factors(p, alpha)? {
            t = (t + self.tilde_right_in_place(a, q, b)) % pch;
        }
        Ok(t)
    }

    pub fn dot_right_root(&self, a: &LinChar, p: Pos, alpha: Fe) -> Result<LinChar> {
        let mut b = a.clone();
        self.root_right_in_place(&mut b, p, alpha)?;
        Ok(b)
    }

    pub fn dot_right_tilde(&self, a: &LinChar, p: Pos, alpha: Fe) -> LinChar {
        let mut b = a.clone();
        self.tilde_right_in_place(&mut b, p, alpha);
        b
    }

    /// `[A].u` for `u ∈ Ũ`.
    pub fn dot_right(&self, a: &LinChar, u: &Mat) -> Result<LinChar> {
        self.dot_right_dense(a, u)
    }

    /// `[A]·u = θ^t [B]` with `B = π(A u^{-t})` and `t = Tr κ(-A, f(u^{-1}))`.
    pub fn monomial_right(&self, a: &LinChar, u: &Mat) -> Result<(u32, LinChar)> {
        let f = self.field();
        let uinv = u.inv_unitriangular(f)?;
        let t = f.trace(kappa_neg(a, self.pup(), &uinv, f));
        let m = a.to_mat(self.pup()).mul(&uinv.transpose(), f)?;
        Ok((t, LinChar::project(self.pup(), &m)))
    }

    /// `u.[A] = [π(u^{-t} A)]`, computed densely.
    pub fn dot_left_dense(&self, u: &Mat, a: &LinChar) -> Result<LinChar> {
        let f = self.field();
        let uit = u.inv_unitriangular(f)?.transpose();
        let m = uit.mul(&a.to_mat(self.pup()), f)?;
        Ok(LinChar::project(self.pup(), &m))
    }

    pub fn dot_left(&self, u: &Mat, a: &LinChar) -> Result<LinChar> {
        self.dot_left_dense(u, a)
    }

    /// `x̃_{ij}(α).[A]`: adds `-α` times row `i` to row `j`, truncated to `pUP`.
    pub fn tilde_left_in_place(&self, p: Pos, alpha: Fe, a: &mut LinChar) {
        let f = self.field();
        let pup = self.pup();
        if alpha.is_zero() {
            return;
        }
        let na = f.neg(alpha);
        for c in p.j + 1..=self.size() {
            if let Some(kj) = pup.ordinal(Pos::new(p.j, c)) {
                if let Some(ki) = pup.ordinal(Pos::new(p.i, c)) {
                    let v = a.coords[ki];
                    if !v.is_zero() {
                        a.coords[kj] = f.add(a.coords[kj], f.mul(na, v));
                    }
                }
            }
        }
    }

    pub fn dot_left_tilde(&self, p: Pos, alpha: Fe, a: &LinChar) -> LinChar {
        let mut b = a.clone();
        self.tilde_left_in_place(p, alpha, &mut b);
        b
    }

    /// `λ_x[A] = θ(κ(-A, x^{-1})) [π(x^{-t}A)]`, valid when `supp(x^{-t}A) ⊆ pKL`.
    pub fn lambda_left_fast(&self, x: &Mat, a: &LinChar) -> Result<(u32, LinChar)> {
        let f = self.field();
        let t = self.lie_type();
        let xinv = x.inv_unitriangular(f)?;
        let m = xinv.transpose().mul(&a.to_mat(self.pup()), f)?;
        if m.support().into_iter().any(|p| !Region::Pkl.contains(t, p)) {
            return Err(Error::SupportLeavesPkl);
        }
        let e = f.trace(kappa_neg(a, self.pup(), &xinv, f));
        Ok((e, LinChar::project(self.pup(), &m)))
    }

    /// `λ_x[A] = Σ_{u∈U} θ(κ(-x^{-t}A, u)) u` rewritten in the basis `[C]` of `CV̂`.
    pub fn lambda_left_general(&self, x: &Mat, a: &LinChar, limit: u128) -> Result<CharCombination> {
        let f = self.field();
        let pch = f.characteristic();
        check_budget("left action sum", self.order().saturating_mul(self.order()), limit)?;
        let m = x.inv_unitriangular(f)?.transpose().mul(&a.to_mat(self.pup()), f)?;
        let elems: Vec<(u32, LinChar)> = self
            .enumerate(limit)?
            .map(|u| {
                let neg = m.scale(f.neg(Fe::ONE), f);
                let t = f.trace(kappa(&neg, &u, f).expect("same size"));
                (t, self.cocycle_f(&u))
            })
            .collect();
        let order = BigRational::new(BigInt::one(), BigInt::from(elems.len()));
        let mut out = CharCombination::new();
        for c in self.characters(limit)? {
            let mut counts = vec![0i64; pch as usize];
            for (t, v) in &elems {
                let s = f.trace(dot_coords(&c, v, f));
                counts[((t + s) % pch) as usize] += 1;
            }
            let d = Cyclotomic::from_exponent_counts(pch, counts.into_iter().map(BigInt::from).collect())
                .to_rational()
                .scale(&order);
            if !d.is_zero() {
                out.insert(c, d);
            }
        }
        Ok(out)
    }

    /// `f^*([A])`: the exponents of `θ(κ(-A, u))` for `u` in `elements`.
    pub fn f_star(&self, a: &LinChar, elements: &[Mat]) -> Vec<u32> {
        let f = self.field();
        elements.iter().map(|u| f.trace(kappa_neg(a, self.pup(), u, f))).collect()
    }

    /// All of `V̂` in increasing order.
    pub fn characters(&self, limit: u128) -> Result<impl Iterator<Item = LinChar> + '_> {
        let len = self.pup().len();
        let q = self.q();
        let total = power(q, len);
        check_budget("character space", total, limit)?;
        Ok((0..total).map(move |r| LinChar::from_rank(r, q, len)))
    }

    pub fn random_char<R: rand::Rng>(&self, rng: &mut R) -> LinChar {
        LinChar::from_coords(self.random_coords(rng))
    }
}

fn dot_coords(a: &LinChar, b: &LinChar, f: &GaloisField) -> Fe {
    a.coords.iter().zip(b.coords.iter()).fold(Fe::ZERO, |acc, (&x, &y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            f.add(acc, f.mul(x, y))
        }
    })
}
