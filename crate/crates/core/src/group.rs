//! Upper unitriangular matrices, the Sylow subgroup `U` of a classical group, root
//! elements, pattern subgroups and unique factorization.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::geometry::{epsilon, is_closed, region_members, Family, LieType, Pos, PupIndex, Region};

/// Default cap on the number of elements an enumeration may produce.
pub const DEFAULT_GROUP_LIMIT: u128 = 10_000_000;

/// Dense square matrix over a finite field, 1-based accessors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zero(n: usize) -> Self {
        Mat { n, data: vec![Fe::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n);
        for i in 1..=n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// `e_{ij}` scaled by `a`.
    pub fn unit(n: usize, p: Pos, a: Fe) -> Self {
        let mut m = Mat::zero(n);
        m.set(p.i, p.j, a);
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[(i - 1) * self.n + (j - 1)]
    }

    #[inline]
    pub fn at(&self, p: Pos) -> Fe {
        self.get(p.i, p.j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// Nonzero positions in row-major order.
    pub fn support(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                if !self.get(i, j).is_zero() {
                    out.push(Pos::new(i, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn add(&self, other: &Mat, f: &GaloisField) -> Result<Mat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { n: self.n, data })
    }

    pub fn scale(&self, a: Fe, f: &GaloisField) -> Mat {
        Mat { n: self.n, data: self.data.iter().map(|&x| f.mul(a, x)).collect() }
    }

    pub fn mul(&self, other: &Mat, f: &GaloisField) -> Result<Mat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if !b.is_zero() {
                        let slot = &mut out.data[i * n + j];
                        *slot = f.add(*slot, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_unitriangular(&self) -> bool {
        for i in 1..=self.n {
            for j in 1..=i {
                let expect = if i == j { Fe::ONE } else { Fe::ZERO };
                if self.get(i, j) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Inverse of an upper unitriangular matrix by back substitution.
    pub fn inv_unitriangular(&self, f: &GaloisField) -> Result<Mat> {
        if !self.is_unitriangular() {
            return Err(Error::NotUnitriangular);
        }
        let n = self.n;
        let mut inv = Mat::identity(n);
        for j in 1..=n {
            for i in (1..j).rev() {
                let mut acc = Fe::ZERO;
                for k in i + 1..=j {
                    acc = f.add(acc, f.mul(self.get(i, k), inv.get(k, j)));
                }
                inv.set(i, j, f.neg(acc));
            }
        }
        Ok(inv)
    }

    /// Right multiplication by `1 + a e_{ij}`: column `j` gains `a` times column `i`.
    pub fn mul_tilde_right(&mut self, i: usize, j: usize, a: Fe, f: &GaloisField) {
        if a.is_zero() {
            return;
        }
        for r in 1..=self.n {
            let v = self.get(r, i);
            if !v.is_zero() {
                let cur = self.get(r, j);
                self.set(r, j, f.add(cur, f.mul(a, v)));
            }
        }
    }

    /// Left multiplication by `1 + a e_{ij}`: row `i` gains `a` times row `j`.
    pub fn mul_tilde_left(&mut self, i: usize, j: usize, a: Fe, f: &GaloisField) {
        if a.is_zero() {
            return;
        }
        for c in 1..=self.n {
            let v = self.get(j, c);
            if !v.is_zero() {
                let cur = self.get(i, c);
                self.set(i, c, f.add(cur, f.mul(a, v)));
            }
        }
    }
}

/// `1 + a e_{ij}` for `i < j`.
pub fn tilde_root(p: Pos, a: Fe, n: usize) -> Result<Mat> {
    if p.i >= p.j {
        return Err(Error::NotAboveDiagonal(p));
    }
    if p.j > n {
        return Err(Error::IndexOutOfRange { index: p.j, size: n });
    }
    let mut m = Mat::identity(n);
    m.set(p.i, p.j, a);
    Ok(m)
}

/// `(A^R)_{ij} = ε_{ij} A_{j̄ ī}`.
pub fn r_dual(a: &Mat, t: LieType, f: &GaloisField) -> Result<Mat> {
    if !t.has_form() {
        return Err(Error::NoForm);
    }
    let n = a.size();
    if n != t.size() {
        return Err(Error::DimensionMismatch(n, t.size()));
    }
    let mut out = Mat::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let v = a.get(t.mirror(j), t.mirror(i));
            let v = if epsilon(i, j, t) < 0 { f.neg(v) } else { v };
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// The Gram matrix of the invariant form: `S_{i ī} = 1` for `i ≤ n`, `ε` otherwise.
pub fn gram_matrix(t: LieType, f: &GaloisField) -> Result<Mat> {
    if !t.has_form() {
        return Err(Error::NoForm);
    }
    let n = t.size();
    let mut s = Mat::zero(n);
    for i in 1..=n {
        let v = if crate::geometry::gram_sign(i, t) < 0 { f.neg(Fe::ONE) } else { Fe::ONE };
        s.set(i, t.mirror(i), v);
    }
    Ok(s)
}

/// The Sylow `p`-subgroup `U` of a classical group of type `ty` over a fixed field,
/// together with the ambient unitriangular group of the same size.
#[derive(Debug, Clone)]
pub struct Sylow {
    ty: LieType,
    field: Arc<GaloisField>,
    pup: PupIndex,
}

/// Lexicographic enumeration of coordinate vectors, first position most significant.
pub struct CoordIter {
    q: usize,
    current: Option<Vec<Fe>>,
}

impl Iterator for CoordIter {
    type Item = Vec<Fe>;

    fn next(&mut self) -> Option<Vec<Fe>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            let v = next[k].index() + 1;
            if v < self.q {
                next[k] = Fe(v as u16);
                self.current = Some(next);
                break;
            }
            next[k] = Fe::ZERO;
        }
        Some(out)
    }
}

/// All vectors in `F_q^len` in lexicographic order.
pub fn coordinate_vectors(field: &GaloisField, len: usize) -> CoordIter {
    CoordIter { q: field.order(), current: Some(vec![Fe::ZERO; len]) }
}

pub(crate) fn power(q: usize, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

pub(crate) fn check_budget(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        return Err(Error::BudgetExceeded { what, size, limit });
    }
    Ok(())
}

impl Sylow {
    pub fn new(ty: LieType, field: GaloisField) -> Self {
        Self::with_field(ty, Arc::new(field))
    }

    pub fn with_field(ty: LieType, field: Arc<GaloisField>) -> Self {
        Sylow { ty, field, pup: PupIndex::new(ty) }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<GaloisField> {
        self.field.clone()
    }

    pub fn pup(&self) -> &PupIndex {
        &self.pup
    }

    pub fn size(&self) -> usize {
        self.ty.size()
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    /// `|U| = q^{|pUP|}`.
    pub fn order(&self) -> u128 {
        power(self.q(), self.pup.len())
    }

    /// `|Ũ| = q^{N(N-1)/2}`.
    pub fn ambient_order(&self) -> u128 {
        let n = self.size();
        power(self.q(), n * (n - 1) / 2)
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.size())
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Result<Mat> {
        a.mul(b, &self.field)
    }

    pub fn inv(&self, a: &Mat) -> Result<Mat> {
        a.inv_unitriangular(&self.field)
    }

    pub fn r_dual(&self, a: &Mat) -> Result<Mat> {
        r_dual(a, self.ty, &self.field)
    }

    /// `g · g^R = 1` for unitriangular `g`; every unitriangular matrix for type A.
    pub fn is_member(&self, g: &Mat) -> bool {
        if g.size() != self.size() || !g.is_unitriangular() {
            return false;
        }
        if !self.ty.has_form() {
            return true;
        }
        let gr = self.r_dual(g).expect("type has a form");
        g.mul(&gr, &self.field).map(|m| m.is_identity()).unwrap_or(false)
    }

    /// The unique `u ∈ U` with the given entries on `pUP` (indexed by `pUP` ordinal).
    pub fn complete(&self, coords: &[Fe]) -> Result<Mat> {
        if coords.len() != self.pup.len() {
            return Err(Error::DimensionMismatch(coords.len(), self.pup.len()));
        }
        let f = &*self.field;
        let t = self.ty;
        let n = self.size();
        let mut u = Mat::identity(n);
        for (k, p) in self.pup.positions().iter().enumerate() {
            u.set(p.i, p.j, coords[k]);
        }
        if !t.has_form() {
            return Ok(u);
        }
        let half = f.half();
        for r in 1..=n {
            for s in r + 1..=n {
                let p = Pos::new(r, s);
                if !Region::Rpc.contains(t, p) || self.pup.contains(p) {
                    continue;
                }
                let (sb, rb) = (t.mirror(s), t.mirror(r));
                let mut sum = Fe::ZERO;
                for l in r + 1..s {
                    let term = f.mul(u.get(r, l), u.get(sb, t.mirror(l)));
                    sum = if epsilon(l, s, t) < 0 { f.sub(sum, term) } else { f.add(sum, term) };
                }
                let v = if (sb, rb) == (r, s) {
                    // the position is its own mirror: 2 u_{rs} = -Σ
                    f.neg(f.mul(half, sum))
                } else {
                    let lead = u.get(sb, rb);
                    let lead = if epsilon(r, s, t) < 0 { lead } else { f.neg(lead) };
                    f.sub(lead, sum)
                };
                u.set(r, s, v);
            }
        }
        Ok(u)
    }

    /// Restriction of `u` to `pUP`.
    pub fn extract(&self, u: &Mat) -> Vec<Fe> {
        self.pup.positions().iter().map(|&p| u.at(p)).collect()
    }

    /// The factors `x̃_{ab}(β)` whose product, in order, is the root element `x_p(α)`.
    pub fn root_tilde_factors(&self, p: Pos, a: Fe) -> Result<Vec<(Pos, Fe)>> {
        if !self.pup.contains(p) {
            return Err(Error::NotInPup(p));
        }
        let t = self.ty;
        let f = &*self.field;
        if !t.has_form() {
            return Ok(vec![(p, a)]);
        }
        let (i, j) = (p.i, p.j);
        if t.family == Family::C && j == t.mirror(i) {
            return Ok(vec![(p, a)]);
        }
        let partner = t.pos_mirror(p);
        let b = if epsilon(i, j, t) < 0 { a } else { f.neg(a) };
        let mut out = vec![(p, a), (partner, b)];
        if t.family == Family::B && j == t.n + 1 {
            out.push((Pos::new(i, t.mirror(i)), f.mul(f.half(), f.mul(a, a))));
        }
        Ok(out)
    }

    /// The root element `x_p(α)` of `U` for `p ∈ pUP`.
    pub fn root_element(&self, p: Pos, a: Fe) -> Result<Mat> {
        let mut m = self.identity();
        for (q, b) in self.root_tilde_factors(p, a)? {
            m.mul_tilde_right(q.i, q.j, b, &self.field);
        }
        Ok(m)
    }

    pub fn tilde_root(&self, p: Pos, a: Fe) -> Result<Mat> {
        tilde_root(p, a, self.size())
    }

    /// Right multiplication by `x_p(α)` in place.
    pub fn mul_root_right(&self, m: &mut Mat, p: Pos, a: Fe) -> Result<()> {
        for (q, b) in self.root_tilde_factors(p, a)? {
            m.mul_tilde_right(q.i, q.j, b, &self.field);
        }
        Ok(())
    }

    /// Product of root elements (or of `x̃` when `tilde`) in the listed order.
    pub fn product(&self, factors: &[(Pos, Fe)], tilde: bool) -> Result<Mat> {
        let mut m = self.identity();
        for &(p, a) in factors {
            if tilde {
                if p.i >= p.j || p.j > self.size() {
                    return Err(Error::NotAboveDiagonal(p));
                }
                m.mul_tilde_right(p.i, p.j, a, &self.field);
            } else {
                self.mul_root_right(&mut m, p, a)?;
            }
        }
        Ok(m)
    }

    fn peel(&self, u: &Mat, order: &[Pos], tilde: bool) -> Result<Vec<(Pos, Fe)>> {
        if u.size() != self.size() {
            return Err(Error::DimensionMismatch(u.size(), self.size()));
        }
        if !u.is_unitriangular() {
            return Err(Error::NotUnitriangular);
        }
        let f = &*self.field;
        let mut alpha: Vec<(Pos, Fe)> = order.iter().map(|&p| (p, Fe::ZERO)).collect();
        let mut lengths: Vec<usize> = order.iter().map(|p| p.j - p.i).collect();
        lengths.sort_unstable();
        lengths.dedup();
        // The entry of the product at a position of length L is its own parameter plus a
        // polynomial in parameters of strictly shorter positions.
        for len in lengths {
            let prod = self.product(&alpha, tilde)?;
            for slot in alpha.iter_mut() {
                if slot.0.j - slot.0.i == len {
                    slot.1 = f.sub(u.at(slot.0), prod.at(slot.0));
                }
            }
        }
        if self.product(&alpha, tilde)? != *u {
            return Err(Error::NotMember);
        }
        Ok(alpha)
    }

    /// Coefficients `α` with `u = Π x_p(α_p)` in the given order of positions in `pUP`.
    pub fn factorize(&self, u: &Mat, order: &[Pos]) -> Result<Vec<(Pos, Fe)>> {
        if let Some(p) = order.iter().find(|&&p| !self.pup.contains(p)) {
            return Err(Error::NotInPup(*p));
        }
        self.peel(u, order, false)
    }

    /// Coefficients with `u = Π x̃_p(α_p)` in the given order of positions above the diagonal.
    pub fn factorize_tilde(&self, u: &Mat, order: &[Pos]) -> Result<Vec<(Pos, Fe)>> {
        if let Some(p) = order.iter().find(|p| p.i >= p.j || p.j > self.size()) {
            return Err(Error::NotAboveDiagonal(*p));
        }
        self.peel(u, order, true)
    }

    /// Splits `x ∈ Ũ` as `x̃ · z` with `x̃ ∈ Ũ_pUP` and `z` in the pattern subgroup on the
    /// positions above the diagonal outside `pUP`.
    pub fn factor_tilde(&self, x: &Mat) -> Result<(Mat, Mat)> {
        let pup = self.pup.positions().to_vec();
        let rest: Vec<Pos> = region_members(Region::Ur, self.ty)
            .into_iter()
            .filter(|p| !self.pup.contains(*p))
            .collect();
        let order: Vec<Pos> = pup.iter().chain(rest.iter()).copied().collect();
        let alpha = self.factorize_tilde(x, &order)?;
        let (a, b) = alpha.split_at(pup.len());
        Ok((self.product(a, true)?, self.product(b, true)?))
    }

    pub fn random_coords<R: Rng>(&self, rng: &mut R) -> Vec<Fe> {
        let q = self.q();
        (0..self.pup.len()).map(|_| Fe(rng.gen_range(0..q) as u16)).collect()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Mat {
        self.complete(&self.random_coords(rng)).expect("coordinate length matches")
    }

    pub fn random_ambient<R: Rng>(&self, rng: &mut R) -> Mat {
        let q = self.q();
        let n = self.size();
        let mut m = self.identity();
        for i in 1..=n {
            for j in i + 1..=n {
                m.set(i, j, Fe(rng.gen_range(0..q) as u16));
            }
        }
        m
    }

    /// All elements of `U`, lexicographic in coordinates.
    pub fn enumerate(&self, limit: u128) -> Result<impl Iterator<Item = Mat> + '_> {
        check_budget("group", self.order(), limit)?;
        Ok(coordinate_vectors(&self.field, self.pup.len())
            .map(move |c| self.complete(&c).expect("coordinate length matches")))
    }

    /// All elements of `Ũ`, lexicographic in the entries above the diagonal.
    pub fn enumerate_ambient(&self, limit: u128) -> Result<impl Iterator<Item = Mat> + '_> {
        check_budget("group", self.ambient_order(), limit)?;
        let ur = region_members(Region::Ur, self.ty);
        Ok(coordinate_vectors(&self.field, ur.len()).map(move |c| {
            let mut m = self.identity();
            for (p, v) in ur.iter().zip(c) {
                m.set(p.i, p.j, v);
            }
            m
        }))
    }

    /// Elements of the pattern subgroup `U_J` (or `Ũ_J` when `tilde`) as products over `J`
    /// in row-major order. `J` must be closed.
    pub fn enumerate_pattern(
        &self,
        j: &BTreeSet<Pos>,
        tilde: bool,
        limit: u128,
    ) -> Result<Vec<Mat>> {
        if tilde {
            if let Some(p) = j.iter().find(|p| p.i >= p.j || p.j > self.size()) {
                return Err(Error::NotAboveDiagonal(*p));
            }
        } else if !is_closed(j, self.ty)? {
            return Err(Error::Unsupported("pattern subgroup of a non-closed set".into()));
        }
        check_budget("pattern subgroup", power(self.q(), j.len()), limit)?;
        let order: Vec<Pos> = j.iter().copied().collect();
        coordinate_vectors(&self.field, order.len())
            .map(|c| {
                let factors: Vec<(Pos, Fe)> = order.iter().copied().zip(c).collect();
                self.product(&factors, tilde)
            })
            .collect()
    }

    /// Order of the subgroup generated by the given root elements, by closure under right
    /// multiplication. Elements are tracked by their `pUP` coordinates.
    pub fn generated_order(&self, gens: &[(Pos, Fe)], limit: u128) -> Result<u128> {
        check_budget("generated subgroup", self.order(), limit)?;
        let q = self.q() as u64;
        let rank = |m: &Mat| -> u64 {
            self.pup.positions().iter().fold(0u64, |acc, &p| acc * q + m.at(p).index() as u64)
        };
        let len = self.pup.len();
        let decode = |mut r: u64| -> Result<Mat> {
            let mut c = vec![Fe::ZERO; len];
            for slot in c.iter_mut().rev() {
                *slot = Fe((r % q) as u16);
                r /= q;
            }
            self.complete(&c)
        };
        let mut seen = vec![false; self.order() as usize];
        let start = rank(&self.identity());
        let mut stack = vec![start];
        seen[start as usize] = true;
        let mut count = 1u128;
        while let Some(r0) = stack.pop() {
            let u = decode(r0)?;
            for &(p, a) in gens {
                let mut v = u.clone();
                self.mul_root_right(&mut v, p, a)?;
                let r = rank(&v) as usize;
                if !seen[r] {
                    seen[r] = true;
                    count += 1;
                    stack.push(r as u64);
                }
            }
        }
        Ok(count)
    }

    /// Generators `x_p(b)` with `p ∈ pUP` and `b` running over an `F_p`-basis of `F_q`.
    pub fn generators(&self) -> Vec<(Pos, Fe)> {
        let basis = self.field.additive_basis();
        self.pup
            .positions()
            .iter()
            .flat_map(|&p| basis.iter().map(move |&b| (p, b)))
            .collect()
    }
}
