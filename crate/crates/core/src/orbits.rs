//! `U`-orbits on `V̂`: main, minor and supplementary conditions, staircase reduction,
//! limbs and places, place filling and the classification of staircase orbits by cores.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::characters::{LinChar, LinCharJson};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::geometry::{is_closed, Family, Pos, Region};
use crate::group::{check_budget, power, Mat, Sylow};

/// The conditions of a character, derived from its main conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conditions {
    pub mc: BTreeSet<Pos>,
    pub lmc: BTreeSet<Pos>,
    pub rmc: BTreeSet<Pos>,
    /// Minor conditions lying in `pUP`.
    pub minc: BTreeSet<Pos>,
    pub suppl: BTreeSet<Pos>,
    pub core: BTreeSet<Pos>,
    pub verge: LinChar,
}

/// Arms, legs, limbs and places of a staircase character, with the pairing `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimbData {
    pub legs: BTreeMap<Pos, Vec<Pos>>,
    pub reduced_legs: BTreeMap<Pos, Vec<Pos>>,
    pub arms: BTreeMap<Pos, Vec<Pos>>,
    pub limb: BTreeSet<Pos>,
    pub frak_p: BTreeSet<Pos>,
    pub frak_m: BTreeSet<Pos>,
    pub places: BTreeSet<Pos>,
    /// `(limb position, place)` in the order used for filling.
    pub phi: Vec<(Pos, Pos)>,
}

impl LimbData {
    /// `J(A) = pUP \ Limb(A)`.
    pub fn j_set(&self, g: &Sylow) -> BTreeSet<Pos> {
        g.pup().positions().iter().filter(|p| !self.limb.contains(p)).copied().collect()
    }
}

/// A `U`-orbit on `V̂`.
#[derive(Debug, Clone)]
pub struct Orbit {
    /// The least member.
    pub representative: LinChar,
    /// All members in increasing order.
    pub members: Vec<LinChar>,
    pub mc: BTreeSet<Pos>,
    pub staircase: bool,
    /// The unique core member, for staircase orbits.
    pub core: Option<LinChar>,
    /// For non-staircase orbits: the staircase character produced by the reduction.
    pub staircase_image: Option<LinChar>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: &LinChar) -> bool {
        self.members.binary_search(a).is_ok()
    }
}

/// JSON form of an orbit summary.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitJson {
    pub representative: LinCharJson,
    pub verge: LinCharJson,
    pub core: Option<LinCharJson>,
    pub size: usize,
    pub staircase: bool,
    pub places: Vec<(usize, usize)>,
    pub mc: Vec<(usize, usize)>,
}

fn pairs(set: &BTreeSet<Pos>) -> Vec<(usize, usize)> {
    set.iter().map(|p| (p.i, p.j)).collect()
}

impl Sylow {
    fn require_form(&self) -> Result<()> {
        if self.lie_type().family == Family::A {
            return Err(Error::Unsupported("limbs and cores are defined for types B, C, D".into()));
        }
        Ok(())
    }

    /// Main conditions: the rightmost nonzero entry of each row.
    pub fn main_conditions(&self, a: &LinChar) -> BTreeSet<Pos> {
        let mut last: BTreeMap<usize, Pos> = BTreeMap::new();
        for p in a.support(self.pup()) {
            last.insert(p.i, p);
        }
        last.into_values().collect()
    }

    pub fn is_staircase(&self, a: &LinChar) -> bool {
        let mc = self.main_conditions(a);
        let cols: BTreeSet<usize> = mc.iter().map(|p| p.j).collect();
        cols.len() == mc.len()
    }

    /// Conditions of `a`; minor, supplementary and core positions are derived from `mc`.
    pub fn conditions_of(&self, a: &LinChar) -> Conditions {
        let mc = self.main_conditions(a);
        let mut c = self.conditions_from_mc(&mc);
        let mut verge = LinChar::zero(self.pup().len());
        for &p in &mc {
            verge.set(self.pup(), p, a.get(self.pup(), p)).expect("main condition in pUP");
        }
        c.verge = verge;
        c
    }

    fn conditions_from_mc(&self, mc: &BTreeSet<Pos>) -> Conditions {
        let t = self.lie_type();
        let nt = t.ntilde();
        let lmc: BTreeSet<Pos> = mc.iter().filter(|p| p.j <= nt).copied().collect();
        let rmc: BTreeSet<Pos> = mc.iter().filter(|p| p.j > nt).copied().collect();
        let minors_all: Vec<Pos> = if t.has_form() {
            rmc.iter().map(|p| Pos::new(p.i, t.mirror(p.j))).collect()
        } else {
            Vec::new()
        };
        let minc: BTreeSet<Pos> = minors_all.iter().filter(|p| self.pup().contains(**p)).copied().collect();
        let minor_cols: BTreeSet<usize> = minors_all.iter().map(|p| p.j).collect();
        let mut suppl = BTreeSet::new();
        for &p in self.pup().positions() {
            if !Region::Tril.contains(t, p) || !minor_cols.contains(&p.j) {
                continue;
            }
            if mc.contains(&p) || minors_all.contains(&p) {
                continue;
            }
            let left_of_minor = minors_all.iter().any(|m| m.i == p.i && m.j > p.j);
            let left_of_lmc = lmc.iter().any(|m| m.i == p.i && m.j > p.j);
            if left_of_minor || left_of_lmc {
                suppl.insert(p);
            }
        }
        let mut core: BTreeSet<Pos> = mc.iter().chain(suppl.iter()).copied().collect();
        if t.family != Family::C {
            core.extend(minc.iter().copied());
        }
        Conditions { mc: mc.clone(), lmc, rmc, minc, suppl, core, verge: LinChar::zero(self.pup().len()) }
    }

    /// Arms, legs and places of a staircase character.
    pub fn limbs_and_places(&self, c: &Conditions) -> Result<LimbData> {
        self.require_form()?;
        let cols: BTreeSet<usize> = c.mc.iter().map(|p| p.j).collect();
        if cols.len() != c.mc.len() {
            return Err(Error::NotStaircase);
        }
        let t = self.lie_type();
        let pup = self.pup();
        let size = self.size();

        let mut arms: BTreeMap<Pos, Vec<Pos>> = BTreeMap::new();
        for &m in &c.rmc {
            let lb = t.mirror(m.j);
            let arm: Vec<Pos> = if t.family == Family::C && lb == m.i {
                (m.i + 1..m.j).map(|a| Pos::new(m.i, a)).collect()
            } else {
                (1..=size).map(|a| Pos::new(lb, a)).filter(|p| pup.contains(*p)).collect()
            };
            arms.insert(m, arm);
        }
        let on_arm: BTreeSet<Pos> = arms.values().flatten().copied().collect();

        let mut legs = BTreeMap::new();
        let mut reduced_legs = BTreeMap::new();
        for &m in &c.mc {
            let leg: Vec<Pos> =
                (m.i + 1..=size).map(|a| Pos::new(a, m.j)).filter(|p| pup.contains(*p)).collect();
            let red: Vec<Pos> = leg.iter().filter(|p| !on_arm.contains(p)).copied().collect();
            legs.insert(m, leg);
            reduced_legs.insert(m, red);
        }

        let limb: BTreeSet<Pos> = legs.values().flatten().chain(on_arm.iter()).copied().collect();
        let reduced_count: usize = reduced_legs.values().map(Vec::len).sum();
        if reduced_count + on_arm.len() != limb.len() {
            return Err(Error::Unsupported("reduced legs and arms are not disjoint".into()));
        }

        let mut frak_p = BTreeSet::new();
        let mut frak_m = BTreeSet::new();
        for &m in &c.mc {
            let bound = if c.rmc.contains(&m) { t.mirror(m.j) } else { m.j };
            for b in m.i + 1..bound {
                let p = Pos::new(m.i, b);
                if pup.contains(p) && !c.core.contains(&p) {
                    frak_p.insert(p);
                }
            }
        }
        for &m in &c.rmc {
            let lb = t.mirror(m.j);
            for b in lb + 1..m.j {
                frak_m.insert(Pos::new(m.i, b));
            }
            if t.family == Family::C && m.i != lb {
                frak_m.insert(Pos::new(m.i, lb));
            }
        }
        let places: BTreeSet<Pos> = frak_p.union(&frak_m).copied().collect();

        // legs of main conditions by column, each top-down; then arms by column, left to right
        let mut by_col: Vec<Pos> = c.mc.iter().copied().collect();
        by_col.sort_by_key(|p| p.j);
        let mut phi = Vec::new();
        for m in &by_col {
            for &l in &reduced_legs[m] {
                phi.push((l, Pos::new(m.i, l.i)));
            }
        }
        for m in by_col.iter().filter(|m| c.rmc.contains(m)) {
            for &l in &arms[m] {
                phi.push((l, Pos::new(m.i, t.mirror(l.j))));
            }
        }
        let images: BTreeSet<Pos> = phi.iter().map(|x| x.1).collect();
        if images.len() != phi.len() || images != places || phi.len() != limb.len() {
            return Err(Error::Unsupported("limb-to-place pairing is not a bijection".into()));
        }
        Ok(LimbData { legs, reduced_legs, arms, limb, frak_p, frak_m, places, phi })
    }

    /// The member of the orbit of `a` with entries `values` on the places. Returns it with the
    /// root elements applied, in order.
    pub fn fill_places(
        &self,
        a: &LinChar,
        values: &BTreeMap<Pos, Fe>,
    ) -> Result<(LinChar, Vec<(Pos, Fe)>)> {
        let cond = self.conditions_of(a);
        let data = self.limbs_and_places(&cond)?;
        self.fill_with(a, &cond, &data, values)
    }

    fn fill_with(
        &self,
        a: &LinChar,
        cond: &Conditions,
        data: &LimbData,
        values: &BTreeMap<Pos, Fe>,
    ) -> Result<(LinChar, Vec<(Pos, Fe)>)> {
        let f = self.field();
        let pup = self.pup();
        if let Some(p) = data.places.iter().find(|p| !values.contains_key(p)) {
            return Err(Error::PlacesIncomplete(*p));
        }
        let zero_on_m = data.frak_m.iter().all(|p| a.get(pup, *p).is_zero());
        let legs_done = data.reduced_legs.values().map(Vec::len).sum::<usize>();
        let mut b = a.clone();
        let mut moves = Vec::with_capacity(data.phi.len());
        for (step, &(limb, place)) in data.phi.iter().enumerate() {
            if step == legs_done && zero_on_m {
                self.check_core_kept(a, &b, cond)?;
            }
            let target = values[&place];
            let c0 = b.get(pup, place);
            let c1 = f.sub(self.dot_right_root(&b, limb, Fe::ONE)?.get(pup, place), c0);
            if c1.is_zero() {
                return Err(Error::NonAffinePlaceUpdate(place));
            }
            let beta = f.div(f.sub(target, c0), c1)?;
            self.root_right_in_place(&mut b, limb, beta)?;
            if b.get(pup, place) != target {
                return Err(Error::NonAffinePlaceUpdate(place));
            }
            moves.push((limb, beta));
        }
        if legs_done == data.phi.len() && zero_on_m {
            self.check_core_kept(a, &b, cond)?;
        }
        if let Some(p) = data.places.iter().find(|p| b.get(pup, **p) != values[*p]) {
            return Err(Error::PlacesIncomplete(*p));
        }
        Ok((b, moves))
    }

    fn check_core_kept(&self, a: &LinChar, b: &LinChar, cond: &Conditions) -> Result<()> {
        let pup = self.pup();
        if let Some(p) = cond.core.iter().find(|p| a.get(pup, **p) != b.get(pup, **p)) {
            return Err(Error::Unsupported(format!(
                "moves along reduced legs changed the core entry at {p} although the input vanishes between minor and main conditions"
            )));
        }
        Ok(())
    }

    /// The core character in the orbit of a staircase `a`.
    pub fn to_core(&self, a: &LinChar) -> Result<LinChar> {
        let cond = self.conditions_of(a);
        let data = self.limbs_and_places(&cond)?;
        let zeros = data.places.iter().map(|&p| (p, Fe::ZERO)).collect();
        let (c, _) = self.fill_with(a, &cond, &data, &zeros)?;
        if c.support(self.pup()).iter().any(|p| !cond.core.contains(p)) {
            return Err(Error::Unsupported("place filling did not reach a core character".into()));
        }
        Ok(c)
    }

    pub fn is_core(&self, a: &LinChar) -> bool {
        let cond = self.conditions_of(a);
        a.support(self.pup()).iter().all(|p| cond.core.contains(p))
    }

    pub fn is_verge(&self, a: &LinChar) -> bool {
        self.conditions_of(a).verge == *a
    }

    /// Reduces `a` to a staircase character `b = w.a` with `w ∈ Ũ_pUP`, clearing repeated
    /// main conditions column by column from the right.
    pub fn staircase_transform(&self, a: &LinChar) -> Result<(LinChar, Mat)> {
        let f = self.field();
        let pup = self.pup();
        let mut b = a.clone();
        let mut w = self.identity();
        loop {
            let mc = self.main_conditions(&b);
            let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for p in &mc {
                cols.entry(p.j).or_default().push(p.i);
            }
            let Some((&k, rows)) = cols.iter().rev().find(|(_, rows)| rows.len() > 1) else {
                break;
            };
            let top = rows[0];
            let lead = b.get(pup, Pos::new(top, k));
            for &j in &rows[1..] {
                let beta = f.div(b.get(pup, Pos::new(j, k)), lead)?;
                let p = Pos::new(top, j);
                self.tilde_left_in_place(p, beta, &mut b);
                w = self.tilde_root(p, beta)?.mul(&w, f)?;
            }
        }
        if self.dot_left(&w, a)? != b {
            return Err(Error::Unsupported("staircase witness does not reproduce the result".into()));
        }
        Ok((b, w))
    }

    /// BFS closure of `a` under the given root elements of `U`.
    pub fn orbit_under(&self, a: &LinChar, gens: &[(Pos, Fe)], limit: u128) -> Result<Vec<LinChar>> {
        let mut seen: HashSet<LinChar> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a.clone());
        queue.push_back(a.clone());
        while let Some(b) = queue.pop_front() {
            for &(p, alpha) in gens {
                let c = self.dot_right_root(&b, p, alpha)?;
                if !seen.contains(&c) {
                    check_budget("orbit", seen.len() as u128 + 1, limit)?;
                    seen.insert(c.clone());
                    queue.push_back(c);
                }
            }
        }
        let mut members: Vec<LinChar> = seen.into_iter().collect();
        members.sort();
        Ok(members)
    }

    /// The orbit of `a` with staircase and core metadata.
    pub fn enumerate_orbit(&self, a: &LinChar, limit: u128) -> Result<Orbit> {
        let members = self.orbit_under(a, &self.generators(), limit)?;
        self.describe_orbit(members)
    }

    fn describe_orbit(&self, members: Vec<LinChar>) -> Result<Orbit> {
        let representative = members[0].clone();
        let mc = self.main_conditions(&representative);
        let staircase = self.is_staircase(&representative);
        let (mut core, mut staircase_image) = (None, None);
        if self.lie_type().has_form() {
            if staircase {
                let cond = self.conditions_of(&representative);
                let data = self.limbs_and_places(&cond)?;
                let expected = power(self.q(), data.places.len());
                if members.len() as u128 != expected {
                    return Err(Error::Unsupported(format!(
                        "staircase orbit of {} has {} members, not q^|places| = {expected}",
                        representative.display(self.pup(), self.field()),
                        members.len()
                    )));
                }
                let cores: Vec<&LinChar> = members
                    .iter()
                    .filter(|m| m.support(self.pup()).iter().all(|p| cond.core.contains(p)))
                    .collect();
                if cores.len() != 1 {
                    return Err(Error::Unsupported(format!(
                        "staircase orbit contains {} core characters instead of exactly one",
                        cores.len()
                    )));
                }
                core = Some(cores[0].clone());
            } else {
                staircase_image = Some(self.staircase_transform(&representative)?.0);
            }
        }
        Ok(Orbit { representative, members, mc, staircase, core, staircase_image })
    }

    /// The partition of `V̂` into orbits, ordered by least member.
    pub fn orbit_decomposition(&self, limit: u128) -> Result<Vec<Orbit>> {
        let len = self.pup().len();
        let q = self.q();
        let total = power(q, len);
        check_budget("character space", total, limit)?;
        let gens = self.generators();
        let mut seen = vec![false; total as usize];
        let mut orbits = Vec::new();
        for r in 0..total {
            if seen[r as usize] {
                continue;
            }
            let seed = LinChar::from_rank(r, q, len);
            seen[r as usize] = true;
            let mut queue = VecDeque::from([seed.clone()]);
            let mut members = vec![seed];
            while let Some(b) = queue.pop_front() {
                for &(p, alpha) in &gens {
                    let c = self.dot_right_root(&b, p, alpha)?;
                    let k = c.rank(q) as usize;
                    if !seen[k] {
                        seen[k] = true;
                        members.push(c.clone());
                        queue.push_back(c);
                    }
                }
            }
            members.sort();
            orbits.push(self.describe_orbit(members)?);
        }
        Ok(orbits)
    }

    /// `Stab_U[a]` by exhaustion over `U`.
    pub fn stabilizer(&self, a: &LinChar, limit: u128) -> Result<Vec<Mat>> {
        let mut out = Vec::new();
        for u in self.enumerate(limit)? {
            if self.dot_right(a, &u)? == *a {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// `J(A)` for a staircase `a`, checked to be closed.
    pub fn j_of(&self, a: &LinChar) -> Result<BTreeSet<Pos>> {
        let data = self.limbs_and_places(&self.conditions_of(a))?;
        let j = data.j_set(self);
        if !is_closed(&j, self.lie_type())? {
            return Err(Error::Unsupported("J(A) is not closed".into()));
        }
        Ok(j)
    }

    pub fn orbit_json(&self, o: &Orbit) -> Result<OrbitJson> {
        let f = self.field();
        let pup = self.pup();
        let cond = self.conditions_of(&o.representative);
        let places = if o.staircase && self.lie_type().has_form() {
            pairs(&self.limbs_and_places(&cond)?.places)
        } else {
            Vec::new()
        };
        Ok(OrbitJson {
            representative: o.representative.to_json(pup, f),
            verge: cond.verge.to_json(pup, f),
            core: o.core.as_ref().map(|c| c.to_json(pup, f)),
            size: o.size(),
            staircase: o.staircase,
            places,
            mc: pairs(&o.mc),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::geometry::LieType;

    fn sy(t: LieType) -> Sylow {
        Sylow::new(t, GaloisField::new(3, 1).unwrap())
    }

    fn ch(g: &Sylow, s: &str) -> LinChar {
        LinChar::parse(s, g.pup(), g.field()).unwrap()
    }

    fn set(v: &[(usize, usize)]) -> BTreeSet<Pos> {
        v.iter().map(|&(i, j)| Pos::new(i, j)).collect()
    }

    #[test]
    fn zero_character_has_nothing() {
        let g = sy(LieType::b(2));
        let z = LinChar::zero(g.pup().len());
        let c = g.conditions_of(&z);
        assert!(c.mc.is_empty() && c.core.is_empty());
        assert!(g.is_staircase(&z));
        let d = g.limbs_and_places(&c).unwrap();
        assert!(d.limb.is_empty() && d.places.is_empty());
        assert_eq!(g.enumerate_orbit(&z, 100).unwrap().size(), 1);
    }

    #[test]
    fn b2_e14_conditions() {
        let g = sy(LieType::b(2));
        let c = g.conditions_of(&ch(&g, "1,4=1"));
        assert_eq!(c.rmc, set(&[(1, 4)]));
        assert_eq!(c.minc, set(&[(1, 2)]));
        assert!(c.suppl.is_empty());
        assert_eq!(c.core, set(&[(1, 2), (1, 4)]));
        let d = g.limbs_and_places(&c).unwrap();
        assert_eq!(d.places, set(&[(1, 3)]));
    }

    #[test]
    fn c2_e14_conditions_and_orbit() {
        let g = sy(LieType::c(2));
        let a = ch(&g, "1,4=1");
        let c = g.conditions_of(&a);
        assert!(c.minc.is_empty());
        assert_eq!(c.core, set(&[(1, 4)]));
        let d = g.limbs_and_places(&c).unwrap();
        assert_eq!(d.places.len(), 2);
        let o = g.enumerate_orbit(&a, 1000).unwrap();
        assert_eq!(o.size(), 9);
        assert_eq!(g.enumerate_orbit(&ch(&g, "1,2=1"), 1000).unwrap().size(), 1);
    }

    #[test]
    fn c3_supplementary_under_antidiagonal_minor() {
        let g = sy(LieType::c(3));
        let c = g.conditions_of(&ch(&g, "1,3=1;2,5=1"));
        assert_eq!(c.suppl, set(&[(1, 2)]));
        let d = g.limbs_and_places(&c).unwrap();
        assert!(d.reduced_legs[&Pos::new(1, 3)].is_empty());
    }

    #[test]
    fn staircase_examples() {
        let g = sy(LieType::b(2));
        let a = ch(&g, "1,3=1;2,3=1");
        assert!(!g.is_staircase(&a));
        let (b, w) = g.staircase_transform(&a).unwrap();
        assert!(g.is_staircase(&b));
        assert_eq!(g.dot_left(&w, &a).unwrap(), b);
        let s = ch(&g, "1,4=1");
        assert_eq!(g.staircase_transform(&s).unwrap(), (s.clone(), g.identity()));
    }

    #[test]
    fn fill_places_enumerates_orbit() {
        let g = sy(LieType::c(2));
        let a = ch(&g, "1,4=1");
        let orbit = g.enumerate_orbit(&a, 1000).unwrap();
        let data = g.limbs_and_places(&g.conditions_of(&a)).unwrap();
        let places: Vec<Pos> = data.places.iter().copied().collect();
        let mut got = BTreeSet::new();
        for x in g.field().elements() {
            for y in g.field().elements() {
                let vals = [(places[0], x), (places[1], y)].into_iter().collect();
                let (b, _) = g.fill_places(&a, &vals).unwrap();
                assert!(orbit.contains(&b));
                got.insert(b);
            }
        }
        assert_eq!(got.len(), 9);
        let here: BTreeMap<Pos, Fe> = places.iter().map(|&p| (p, a.get(g.pup(), p))).collect();
        assert_eq!(g.fill_places(&a, &here).unwrap().0, a);
    }

    #[test]
    fn decomposition_partitions() {
        for t in [LieType::b(1), LieType::b(2), LieType::c(2)] {
            let g = sy(t);
            let orbits = g.orbit_decomposition(1 << 20).unwrap();
            let total: usize = orbits.iter().map(Orbit::size).sum();
            assert_eq!(total as u128, g.order());
            assert!(orbits.windows(2).all(|w| w[0].representative < w[1].representative));
        }
    }
}
