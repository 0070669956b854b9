//! Positions, the mirror map, named regions and closedness of position sets.
//!
//! Positions are 1-based `(i, j)` pairs; the canonical order is row-major.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

/// A classical Lie type of rank `n`. For type A the matrices have size `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub n: usize,
}

impl LieType {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadRank);
        }
        Ok(LieType { family, n })
    }

    pub fn b(n: usize) -> Self {
        LieType { family: Family::B, n }
    }

    pub fn c(n: usize) -> Self {
        LieType { family: Family::C, n }
    }

    pub fn d(n: usize) -> Self {
        LieType { family: Family::D, n }
    }

    pub fn a(n: usize) -> Self {
        LieType { family: Family::A, n }
    }

    /// Matrix size.
    pub fn size(&self) -> usize {
        match self.family {
            Family::A => self.n + 1,
            Family::B => 2 * self.n + 1,
            Family::C | Family::D => 2 * self.n,
        }
    }

    /// The column bound separating `tril` from `trir`.
    pub fn ntilde(&self) -> usize {
        match self.family {
            Family::B => self.n + 1,
            _ => self.n,
        }
    }

    pub fn has_form(&self) -> bool {
        self.family != Family::A
    }

    pub fn is_c(&self) -> bool {
        self.family == Family::C
    }

    pub fn mirror(&self, i: usize) -> usize {
        self.size() + 1 - i
    }

    pub fn pos_mirror(&self, p: Pos) -> Pos {
        Pos::new(self.mirror(p.j), self.mirror(p.i))
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)
    }
}

/// A matrix position `(i, j)`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub i: usize,
    pub j: usize,
}

impl Pos {
    pub const fn new(i: usize, j: usize) -> Self {
        Pos { i, j }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl FromStr for Pos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("position {s:?} is not of the form i,j")))?;
        let parse = |x: &str| {
            x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad position {s:?}")))
        };
        Ok(Pos::new(parse(a)?, parse(b)?))
    }
}

/// `i -> N + 1 - i`.
pub fn mirror(i: usize, size: usize) -> Result<usize> {
    if i < 1 || i > size {
        return Err(Error::IndexOutOfRange { index: i, size });
    }
    Ok(size + 1 - i)
}

/// `-1` exactly for type C when one of `i, j` is at most `n` and the other is not.
pub fn epsilon(i: usize, j: usize, t: LieType) -> i8 {
    if t.family == Family::C && ((i <= t.n) != (j <= t.n)) {
        -1
    } else {
        1
    }
}

/// Sign of the Gram matrix entry `S_{i, i-bar}`.
pub fn gram_sign(i: usize, t: LieType) -> i8 {
    if t.family == Family::C && i > t.n {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Strictly upper triangle.
    Ur,
    Diag,
    /// Antidiagonal above the diagonal.
    Cc,
    /// Strictly above both diagonals.
    Up,
    /// Strictly upper and strictly below the antidiagonal.
    Rp,
    Upc,
    Rpc,
    Pup,
    Tril,
    Trir,
    /// Everything strictly above the antidiagonal, including below the diagonal.
    Kl,
    Pkl,
}

impl Region {
    pub const ALL: [Region; 12] = [
        Region::Ur,
        Region::Diag,
        Region::Cc,
        Region::Up,
        Region::Rp,
        Region::Upc,
        Region::Rpc,
        Region::Pup,
        Region::Tril,
        Region::Trir,
        Region::Kl,
        Region::Pkl,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Region::Ur => "UR",
            Region::Diag => "diag",
            Region::Cc => "CC",
            Region::Up => "UP",
            Region::Rp => "RP",
            Region::Upc => "UPC",
            Region::Rpc => "RPC",
            Region::Pup => "pUP",
            Region::Tril => "tril",
            Region::Trir => "trir",
            Region::Kl => "KL",
            Region::Pkl => "pKL",
        }
    }

    pub fn parse(name: &str) -> Result<Region> {
        Region::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::UnknownRegion(name.to_string()))
    }

    pub fn contains(&self, t: LieType, p: Pos) -> bool {
        let n = t.size();
        let (i, j) = (p.i, p.j);
        if i < 1 || j < 1 || i > n || j > n {
            return false;
        }
        let ib = t.mirror(i);
        let jb = t.mirror(j);
        match self {
            Region::Ur => i < j,
            Region::Diag => i == j,
            Region::Cc => i < j && i == jb,
            Region::Up => i < j && j < ib,
            Region::Rp => jb < i && i < j,
            Region::Upc => Region::Up.contains(t, p) || Region::Cc.contains(t, p),
            Region::Rpc => Region::Rp.contains(t, p) || Region::Cc.contains(t, p),
            Region::Pup => match t.family {
                Family::A => i < j,
                Family::B | Family::D => Region::Up.contains(t, p),
                Family::C => Region::Upc.contains(t, p),
            },
            Region::Tril => Region::Pup.contains(t, p) && j <= t.ntilde(),
            Region::Trir => Region::Pup.contains(t, p) && j > t.ntilde(),
            Region::Kl => j < ib,
            Region::Pkl => {
                Region::Kl.contains(t, p) || (t.family == Family::C && Region::Cc.contains(t, p))
            }
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Members of a named region in row-major order.
pub fn region_members(region: Region, t: LieType) -> Vec<Pos> {
    let n = t.size();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let p = Pos::new(i, j);
            if region.contains(t, p) {
                out.push(p);
            }
        }
    }
    out
}

/// Closedness of `J ⊆ pUP`: (i) `(i,j),(j,k) ∈ J ⇒ (i,k) ∈ J`; for types B, C, D also
/// (ii) `(i,j),(k̄,j̄) ∈ J` and `(i,k) ∈ pUP ⇒ (i,k) ∈ J`.
pub fn is_closed(set: &BTreeSet<Pos>, t: LieType) -> Result<bool> {
    if let Some(p) = set.iter().find(|&&p| !Region::Pup.contains(t, p)) {
        return Err(Error::NotSubsetOfPup(*p));
    }
    for &a in set {
        for &b in set {
            if a.j == b.i && !set.contains(&Pos::new(a.i, b.j)) {
                return Ok(false);
            }
            if t.has_form() {
                // b = (k̄, j̄) with j = a.j
                if b.j == t.mirror(a.j) {
                    let k = t.mirror(b.i);
                    let target = Pos::new(a.i, k);
                    if Region::Pup.contains(t, target) && !set.contains(&target) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Dense lookup of `pUP` ordinals for a fixed type.
#[derive(Debug, Clone)]
pub struct PupIndex {
    ty: LieType,
    positions: Vec<Pos>,
    ordinal: Vec<Option<usize>>,
}

impl PupIndex {
    pub fn new(ty: LieType) -> Self {
        let positions = region_members(Region::Pup, ty);
        let n = ty.size();
        let mut ordinal = vec![None; n * n];
        for (k, p) in positions.iter().enumerate() {
            ordinal[(p.i - 1) * n + (p.j - 1)] = Some(k);
        }
        PupIndex { ty, positions, ordinal }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn positions(&self) -> &[Pos] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    #[inline]
    pub fn ordinal(&self, p: Pos) -> Option<usize> {
        let n = self.ty.size();
        if p.i < 1 || p.j < 1 || p.i > n || p.j > n {
            return None;
        }
        self.ordinal[(p.i - 1) * n + (p.j - 1)]
    }

    #[inline]
    pub fn contains(&self, p: Pos) -> bool {
        self.ordinal(p).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_types() -> Vec<LieType> {
        let mut v = Vec::new();
        for n in 1..=4 {
            v.push(LieType::b(n));
            v.push(LieType::c(n));
            v.push(LieType::d(n));
        }
        v
    }

    fn ps(v: &[(usize, usize)]) -> Vec<Pos> {
        v.iter().map(|&(i, j)| Pos::new(i, j)).collect()
    }

    #[test]
    fn mirror_values() {
        assert_eq!(mirror(1, 5).unwrap(), 5);
        assert_eq!(mirror(3, 5).unwrap(), 3);
        assert!(mirror(0, 5).is_err());
        assert!(mirror(6, 5).is_err());
        for n in 1..=8 {
            for i in 1..=n {
                assert_eq!(mirror(mirror(i, n).unwrap(), n).unwrap(), i);
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(1, 2, LieType::b(2)), 1);
        assert_eq!(epsilon(1, 3, LieType::c(2)), -1);
        assert_eq!(epsilon(3, 4, LieType::c(2)), 1);
        for t in small_types() {
            let n = t.size();
            for i in 1..=n {
                for j in 1..=n {
                    let g = gram_sign(t.mirror(i), t) * gram_sign(t.mirror(j), t);
                    assert_eq!(epsilon(i, j, t), g, "{t} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn pup_examples() {
        let b2 = region_members(Region::Pup, LieType::b(2));
        assert_eq!(b2, ps(&[(1, 2), (1, 3), (1, 4), (2, 3)]));
        let c2 = region_members(Region::Pup, LieType::c(2));
        assert_eq!(c2, ps(&[(1, 2), (1, 3), (1, 4), (2, 3)]));
        assert_eq!(region_members(Region::Cc, LieType::b(2)), ps(&[(1, 5), (2, 4)]));
    }

    #[test]
    fn pup_sizes() {
        for n in 1..=4 {
            assert_eq!(region_members(Region::Pup, LieType::b(n)).len(), n * n);
            assert_eq!(region_members(Region::Pup, LieType::c(n)).len(), n * n);
            assert_eq!(region_members(Region::Pup, LieType::d(n)).len(), n * n - n);
        }
    }

    #[test]
    fn ur_is_disjoint_union() {
        for t in small_types() {
            for p in region_members(Region::Ur, t) {
                let hits = [Region::Up, Region::Cc, Region::Rp]
                    .iter()
                    .filter(|r| r.contains(t, p))
                    .count();
                assert_eq!(hits, 1, "{t} {p}");
            }
            let total: usize = [Region::Up, Region::Cc, Region::Rp]
                .iter()
                .map(|&r| region_members(r, t).len())
                .sum();
            assert_eq!(total, region_members(Region::Ur, t).len());
        }
    }

    #[test]
    fn mirror_swaps_up_and_rp() {
        for t in small_types() {
            for p in region_members(Region::Up, t) {
                assert!(Region::Rp.contains(t, t.pos_mirror(p)), "{t} {p}");
            }
            for p in region_members(Region::Rp, t) {
                assert!(Region::Up.contains(t, t.pos_mirror(p)), "{t} {p}");
            }
            for p in region_members(Region::Cc, t) {
                assert_eq!(t.pos_mirror(p), p);
            }
        }
    }

    #[test]
    fn tril_trir_partition_pup() {
        for t in small_types() {
            let l = region_members(Region::Tril, t).len();
            let r = region_members(Region::Trir, t).len();
            assert_eq!(l + r, region_members(Region::Pup, t).len());
        }
        // the antidiagonal half lies in trir for type C
        for p in region_members(Region::Cc, LieType::c(3)) {
            assert!(Region::Trir.contains(LieType::c(3), p));
        }
    }

    #[test]
    fn region_names_round_trip() {
        for r in Region::ALL {
            assert_eq!(Region::parse(r.name()).unwrap(), r);
        }
        assert_eq!(Region::parse("nope"), Err(Error::UnknownRegion("nope".into())));
    }

    #[test]
    fn closedness_basics() {
        for t in small_types() {
            let all: BTreeSet<Pos> = region_members(Region::Pup, t).into_iter().collect();
            assert!(is_closed(&all, t).unwrap());
            assert!(is_closed(&BTreeSet::new(), t).unwrap());
        }
        let t = LieType::b(2);
        // (1,2),(2,3) without (1,3)
        let j: BTreeSet<Pos> = ps(&[(1, 2), (2, 3)]).into_iter().collect();
        assert!(!is_closed(&j, t).unwrap());
        // (1,2),(2,4)=(mirror 4 = 2... ) second rule: (1,2) and (k̄, 2̄)=(k̄,4)
        let j: BTreeSet<Pos> = ps(&[(1, 3), (2, 3)]).into_iter().collect();
        // (i,j)=(1,3),(k̄,j̄)=(k̄,3)=(2,3) gives k=4, (1,4) ∈ pUP missing
        assert!(!is_closed(&j, t).unwrap());
        let bad: BTreeSet<Pos> = ps(&[(1, 5)]).into_iter().collect();
        assert_eq!(is_closed(&bad, t), Err(Error::NotSubsetOfPup(Pos::new(1, 5))));
    }

    #[test]
    fn pup_index_lookup() {
        let idx = PupIndex::new(LieType::c(2));
        assert_eq!(idx.len(), 4);
        assert_eq!(idx.ordinal(Pos::new(1, 4)), Some(2));
        assert_eq!(idx.ordinal(Pos::new(2, 4)), None);
        assert_eq!(idx.ordinal(Pos::new(9, 9)), None);
    }

    #[test]
    fn type_a_pup_is_upper_triangle() {
        let t = LieType::a(3);
        assert_eq!(t.size(), 4);
        assert_eq!(region_members(Region::Pup, t).len(), 6);
    }
}
