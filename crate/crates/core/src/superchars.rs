//! André–Neto elementary characters and supercharacters, basic sets, and the decomposition
//! of verge modules into orbit modules.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::LinChar;
use crate::cyclo::{inner_product, module_character, ClassFunction, GroupTable, SubgroupCharacter};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::geometry::{is_closed, Family, LieType, Pos, Region};
use crate::group::{check_budget, power, Mat, Sylow};

/// The positions removed from `pUP` to form the elementary subgroup at `(i,j)`.
///
/// For `(i,j)` in `tril` these are `(i,k)` with `i < k < j`. For `(i,j)` in `trir` they are
/// `(i,k)` with `i < k ≤ n` together with `(j̄,l)` with `j̄ < l ≤ ñ`.
pub fn rho(t: LieType, p: Pos) -> Result<BTreeSet<Pos>> {
    if !Region::Pup.contains(t, p) {
        return Err(Error::NotInPup(p));
    }
    let inp = |q: &Pos| Region::Pup.contains(t, *q);
    if !t.has_form() || Region::Tril.contains(t, p) {
        return Ok((p.i + 1..p.j).map(|k| Pos::new(p.i, k)).filter(inp).collect());
    }
    let jb = t.mirror(p.j);
    let mut out: BTreeSet<Pos> = (p.i + 1..=t.n).map(|k| Pos::new(p.i, k)).filter(inp).collect();
    out.extend((jb + 1..=t.ntilde()).map(|l| Pos::new(jb, l)).filter(inp));
    Ok(out)
}

/// Which case of the identification of elementary characters with orbit modules applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElementaryCase {
    /// `ξ` equals the orbit character of `αe_{ij}`.
    SingleOrbit,
    /// `ξ` is the sum of the orbit characters of `βe_{ij̄} + αe_{ij}` over all `β`.
    MinorSum,
    /// `ξ` is a constituent of multiplicity one of the orbit character.
    Antidiagonal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryDatum {
    pub pos: Pos,
    pub alpha: Fe,
    pub rho: BTreeSet<Pos>,
    pub j_set: BTreeSet<Pos>,
    pub j_set_inner: BTreeSet<Pos>,
}

impl ElementaryDatum {
    pub fn new(g: &Sylow, pos: Pos, alpha: Fe) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let t = g.lie_type();
        let rho = rho(t, pos)?;
        let j_set: BTreeSet<Pos> =
            g.pup().positions().iter().filter(|p| !rho.contains(p)).copied().collect();
        let mut j_set_inner = j_set.clone();
        j_set_inner.remove(&pos);
        if !is_closed(&j_set, t)? || !is_closed(&j_set_inner, t)? {
            return Err(Error::Unsupported(format!("elementary pattern at {pos} is not closed")));
        }
        Ok(ElementaryDatum { pos, alpha, rho, j_set, j_set_inner })
    }

    pub fn case(&self, t: LieType) -> ElementaryCase {
        let p = self.pos;
        if t.family == Family::C && p.j == t.mirror(p.i) {
            ElementaryCase::Antidiagonal
        } else if matches!(t.family, Family::B | Family::D) && Region::Trir.contains(t, p) {
            ElementaryCase::MinorSum
        } else {
            ElementaryCase::SingleOrbit
        }
    }

    /// The degree predicted from the position alone.
    pub fn expected_degree(&self, g: &Sylow) -> u128 {
        let t = g.lie_type();
        let p = self.pos;
        let e = if t.has_form() && p.j == t.mirror(p.i) { t.n - p.i } else { p.j - p.i - 1 };
        power(g.q(), e)
    }

    fn generators(&self, g: &Sylow, inner: bool) -> Vec<(Pos, Fe)> {
        let basis = g.field().additive_basis();
        let set = if inner { &self.j_set_inner } else { &self.j_set };
        set.iter().flat_map(|&p| basis.iter().map(move |&b| (p, b))).collect()
    }

    /// `[U : U_{i,j}]` with `|U_{i,j}|` counted as the closure of its root generators.
    pub fn index_in_u(&self, g: &Sylow, limit: u128) -> Result<u128> {
        Ok(g.order() / g.generated_order(&self.generators(g, false), limit)?)
    }

    pub fn subgroup(&self, g: &Sylow, limit: u128) -> Result<Vec<Mat>> {
        g.enumerate_pattern(&self.j_set, false, limit)
    }

    /// `χ^{i,j}_α(u) = θ(α u_{ij})` on `U_{i,j}`, as exponents.
    pub fn linear_character(&self, g: &Sylow, limit: u128) -> Result<SubgroupCharacter> {
        let f = g.field();
        let values = self
            .subgroup(g, limit)?
            .into_iter()
            .map(|u| {
                let t = f.trace(f.mul(self.alpha, u.at(self.pos)));
                (u, t)
            })
            .collect();
        Ok(SubgroupCharacter { values })
    }

    /// `U°_{i,j}` is normal in `U_{i,j}`: conjugates of `U°` by root generators of `U_{i,j}` stay in `U°`.
    pub fn inner_is_normal(&self, g: &Sylow, limit: u128) -> Result<bool> {
        let inner: HashSet<Mat> = g.enumerate_pattern(&self.j_set_inner, false, limit)?.into_iter().collect();
        for (p, b) in self.generators(g, false) {
            let x = g.root_element(p, b)?;
            let xi = g.inv(&x)?;
            for h in &inner {
                if !inner.contains(&g.mul(&g.mul(&x, h)?, &xi)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `ξ^{i,j}_α = Ind_{U_{i,j}}^U χ^{i,j}_α`.
pub fn elementary_character(
    g: &Sylow,
    table: &GroupTable,
    d: &ElementaryDatum,
    limit: u128,
) -> Result<ClassFunction> {
    let chi = d.linear_character(g, limit)?;
    crate::cyclo::induce(g, table, &chi, limit)
}

/// `{[a].u : u ∈ U_{i,j}}` for a core `a` with the single main condition `(i,j)`, after
/// checking `[B]u = χ^{i,j}_α(u)[B].u` on every member.
pub fn ij_suborbit(g: &Sylow, a: &LinChar, d: &ElementaryDatum, limit: u128) -> Result<Vec<LinChar>> {
    let cond = g.conditions_of(a);
    let pup = g.pup();
    if cond.mc != BTreeSet::from([d.pos]) || a.get(pup, d.pos) != d.alpha || !g.is_core(a) {
        return Err(Error::WrongVerge(format!("expected a core with verge αe_{}", d.pos)));
    }
    let members = g.orbit_under(a, &d.generators(g, false), limit)?;
    let f = g.field();
    for u in d.subgroup(g, limit)? {
        let expected = f.trace(f.mul(d.alpha, u.at(d.pos)));
        for b in &members {
            let (t, c) = g.monomial_right(b, &u)?;
            if t != expected || c != g.dot_right(b, &u)? {
                return Err(Error::Unsupported(format!(
                    "U_{} does not act on its suborbit by the elementary linear character",
                    d.pos
                )));
            }
        }
    }
    Ok(members)
}

/// A labelled check result.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(claim: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { claim: claim.into(), passed, detail: detail.into() }
    }
}

fn frac(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementaryReport {
    pub position: (usize, usize),
    pub alpha: String,
    pub case: ElementaryCase,
    pub degree: String,
    pub expected_degree: String,
    pub orbit_sizes: Vec<usize>,
    pub inner_products: BTreeMap<String, String>,
    pub checks: Vec<Check>,
}

impl ElementaryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Compares `ξ^{i,j}_α` with orbit characters according to its case.
pub fn identify_elementary(
    g: &Sylow,
    table: &GroupTable,
    d: &ElementaryDatum,
    limit: u128,
) -> Result<ElementaryReport> {
    let t = g.lie_type();
    let f = g.field();
    let pup = g.pup();
    let xi = elementary_character(g, table, d, limit)?;
    let degree = xi.degree(g, table).as_scalar().unwrap_or_default();
    let expected = d.expected_degree(g);
    let mut checks = vec![Check::new(
        "elementary character degree is q^{j-i-1}, or q^{n-i} on the antidiagonal",
        degree == BigInt::from(expected),
        format!("degree {degree}, expected {expected}"),
    )];
    let mut ips = BTreeMap::new();
    let xx = inner_product(&xi, &xi)?;
    ips.insert("<xi,xi>".to_string(), frac(&xx));
    let a = LinChar::from_entries(pup, &[(d.pos, d.alpha)])?;
    let case = d.case(t);
    let mut orbit_sizes = Vec::new();
    match case {
        ElementaryCase::SingleOrbit | ElementaryCase::Antidiagonal => {
            let o = g.enumerate_orbit(&a, limit)?;
            orbit_sizes.push(o.size());
            let chi = module_character(g, table, &o.members)?;
            let m = inner_product(&chi, &xi)?;
            ips.insert("<chi_O,xi>".to_string(), frac(&m));
            if case == ElementaryCase::SingleOrbit {
                checks.push(Check::new(
                    "elementary character equals the orbit character of its root verge",
                    chi == xi,
                    "exact comparison on all of U",
                ));
                checks.push(Check::new("elementary character is irreducible", xx.is_one(), frac(&xx)));
            } else {
                checks.push(Check::new(
                    "antidiagonal elementary character occurs once in the orbit module",
                    m.is_one(),
                    frac(&m),
                ));
                checks.push(Check::new("antidiagonal elementary character is irreducible", xx.is_one(), frac(&xx)));
            }
        }
        ElementaryCase::MinorSum => {
            let minor = Pos::new(d.pos.i, t.mirror(d.pos.j));
            let mut chars = Vec::new();
            for beta in f.elements() {
                let ab = LinChar::from_entries(pup, &[(d.pos, d.alpha), (minor, beta)])?;
                let o = g.enumerate_orbit(&ab, limit)?;
                orbit_sizes.push(o.size());
                chars.push(module_character(g, table, &o.members)?);
            }
            let sum = ClassFunction::sum(f.characteristic(), table.len(), chars.iter())?;
            checks.push(Check::new(
                "elementary character is the sum of the orbit characters over all minor entries",
                sum == xi,
                "exact comparison on all of U",
            ));
            let mut all_irr = true;
            let mut all_orth = true;
            for (k, c) in chars.iter().enumerate() {
                for (l, e) in chars.iter().enumerate().skip(k) {
                    let v = inner_product(c, e)?;
                    ips.insert(format!("<chi_{k},chi_{l}>"), frac(&v));
                    if k == l {
                        all_irr &= v.is_one();
                    } else {
                        all_orth &= v.is_zero();
                    }
                }
            }
            checks.push(Check::new("each orbit character over a minor entry is irreducible", all_irr, ""));
            checks.push(Check::new(
                "orbit characters with different minor entries are orthogonal",
                all_orth,
                "",
            ));
        }
    }
    Ok(ElementaryReport {
        position: (d.pos.i, d.pos.j),
        alpha: f.render(d.alpha),
        case,
        degree: degree.to_string(),
        expected_degree: expected.to_string(),
        orbit_sizes,
        inner_products: ips,
        checks,
    })
}

/// The orbit of `a` under `Ũ`, generated by `x̃_{ij}(b)` for `(i,j)` above the diagonal.
pub fn tilde_orbit(g: &Sylow, a: &LinChar, limit: u128) -> Result<Vec<LinChar>> {
    let basis = g.field().additive_basis();
    let ur = crate::geometry::region_members(Region::Ur, g.lie_type());
    let mut seen: HashSet<LinChar> = HashSet::from([a.clone()]);
    let mut stack = vec![a.clone()];
    while let Some(b) = stack.pop() {
        for &p in &ur {
            for &beta in &basis {
                let c = g.dot_right_tilde(&b, p, beta);
                if !seen.contains(&c) {
                    check_budget("tilde orbit", seen.len() as u128 + 1, limit)?;
                    seen.insert(c.clone());
                    stack.push(c);
                }
            }
        }
    }
    let mut out: Vec<LinChar> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// All characters whose verge equals the verge of `a`.
pub fn verge_class(g: &Sylow, a: &LinChar, limit: u128) -> Result<Vec<LinChar>> {
    let v = g.conditions_of(a).verge;
    Ok(g.characters(limit)?.filter(|b| g.conditions_of(b).verge == v).collect())
}

/// `Limb(A) ∩ mc(A) = ∅`; characters that are not staircase are not main separated.
pub fn is_main_separated(g: &Sylow, a: &LinChar) -> Result<bool> {
    let cond = g.conditions_of(a);
    match g.limbs_and_places(&cond) {
        Ok(data) => Ok(data.limb.is_disjoint(&cond.mc)),
        Err(Error::NotStaircase) => Ok(false),
        Err(e) => Err(e),
    }
}

/// A basic set `D ⊆ UR` with values `Φ` on `D ∩ pUP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSet {
    pub d: BTreeSet<Pos>,
    pub phi: BTreeMap<Pos, Fe>,
}

impl BasicSet {
    /// Builds `D` as the mirror closure of the keys of `phi` and validates it.
    pub fn from_pup(g: &Sylow, phi: BTreeMap<Pos, Fe>) -> Result<Self> {
        let t = g.lie_type();
        let mut d = BTreeSet::new();
        for (&p, v) in &phi {
            if !g.pup().contains(p) {
                return Err(Error::NotInPup(p));
            }
            if v.is_zero() {
                return Err(Error::InvalidBasicSet(format!("value at {p} is zero")));
            }
            d.insert(p);
            d.insert(t.pos_mirror(p));
        }
        let bs = BasicSet { d, phi };
        bs.validate(g)?;
        Ok(bs)
    }

    pub fn validate(&self, g: &Sylow) -> Result<()> {
        let t = g.lie_type();
        for &p in &self.d {
            if !Region::Ur.contains(t, p) {
                return Err(Error::InvalidBasicSet(format!("{p} is not above the diagonal")));
            }
            if !self.d.contains(&t.pos_mirror(p)) {
                return Err(Error::InvalidBasicSet(format!(
                    "not mirror symmetric: {p} is present but its mirror {} is not",
                    t.pos_mirror(p)
                )));
            }
        }
        let mut rows = BTreeMap::new();
        let mut cols = BTreeMap::new();
        for &p in &self.d {
            if let Some(o) = rows.insert(p.i, p) {
                return Err(Error::InvalidBasicSet(format!("row {} meets the set twice: {o} and {p}", p.i)));
            }
            if let Some(o) = cols.insert(p.j, p) {
                return Err(Error::InvalidBasicSet(format!("column {} meets the set twice: {o} and {p}", p.j)));
            }
        }
        let inside: BTreeSet<Pos> = self.d.iter().filter(|p| g.pup().contains(**p)).copied().collect();
        let keys: BTreeSet<Pos> = self.phi.keys().copied().collect();
        if inside != keys {
            return Err(Error::InvalidBasicSet("values must be given exactly on D ∩ pUP".into()));
        }
        Ok(())
    }

    /// `A(D, Φ) = Σ Φ(i,j) e_{ij}`.
    pub fn verge(&self, g: &Sylow) -> Result<LinChar> {
        let entries: Vec<(Pos, Fe)> = self.phi.iter().map(|(&p, &v)| (p, v)).collect();
        LinChar::from_entries(g.pup(), &entries)
    }

    pub fn has_antidiagonal(&self, t: LieType) -> bool {
        self.phi.keys().any(|p| p.j == t.mirror(p.i))
    }

    pub fn label(&self, g: &Sylow) -> String {
        let f = g.field();
        let parts: Vec<String> =
            self.phi.iter().map(|(p, v)| format!("{},{}={}", p.i, p.j, f.render(*v))).collect();
        format!("{{{}}}", parts.join(";"))
    }
}

/// Every valid basic set with every choice of nonzero values.
pub fn all_basic_sets(g: &Sylow) -> Vec<BasicSet> {
    let pup = g.pup().positions().to_vec();
    let nonzero: Vec<Fe> = g.field().nonzero().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pup.len()) {
        let s: Vec<Pos> = (0..pup.len()).filter(|k| mask >> k & 1 == 1).map(|k| pup[k]).collect();
        let probe: BTreeMap<Pos, Fe> = s.iter().map(|&p| (p, Fe::ONE)).collect();
        if BasicSet::from_pup(g, probe).is_err() {
            continue;
        }
        let mut choice = vec![0usize; s.len()];
        loop {
            let phi = s.iter().zip(&choice).map(|(&p, &c)| (p, nonzero[c])).collect();
            out.push(BasicSet::from_pup(g, phi).expect("validated above"));
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < nonzero.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    out
}

/// `ξ_{D,Φ} = Π ξ^{i,j}_{Φ(i,j)}`, the trivial character for `D = ∅`.
pub fn supercharacter(g: &Sylow, table: &GroupTable, bs: &BasicSet, limit: u128) -> Result<ClassFunction> {
    bs.validate(g)?;
    let p = g.field().characteristic();
    let mut acc = ClassFunction::trivial(p, table);
    for (&pos, &alpha) in &bs.phi {
        let d = ElementaryDatum::new(g, pos, alpha)?;
        acc = acc.mul(&elementary_character(g, table, &d, limit)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub basic_set: String,
    pub tilde_orbit_size: usize,
    pub orbit_sizes: Vec<usize>,
    pub supercharacter_degree: String,
    /// `⟨Σ χ_O, ξ_{D,Φ}⟩`.
    pub multiplicity: String,
    pub checks: Vec<Check>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Splits the `Ũ`-orbit of `A(D, Φ)` into `U`-orbits and compares characters with `ξ_{D,Φ}`.
pub fn decompose_an(
    g: &Sylow,
    table: &GroupTable,
    bs: &BasicSet,
    limit: u128,
) -> Result<DecompositionReport> {
    let t = g.lie_type();
    let p = g.field().characteristic();
    let a = bs.verge(g)?;
    let mut checks = vec![
        Check::new("A(D,Φ) is a verge", g.is_verge(&a), ""),
        Check::new("A(D,Φ) is main separated", is_main_separated(g, &a)?, ""),
    ];
    let tilde = tilde_orbit(g, &a, limit)?;
    let verges = verge_class(g, &a, limit)?;
    checks.push(Check::new(
        "the Ũ-orbit of a verge is the set of characters with that verge",
        tilde == verges,
        format!("{} vs {}", tilde.len(), verges.len()),
    ));

    let mut rest: BTreeSet<LinChar> = tilde.iter().cloned().collect();
    let mut orbit_chars = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut cores_ok = true;
    let mut partition_ok = true;
    while let Some(seed) = rest.iter().next().cloned() {
        let o = g.enumerate_orbit(&seed, limit)?;
        for m in &o.members {
            partition_ok &= rest.remove(m);
        }
        cores_ok &= match &o.core {
            Some(c) => g.conditions_of(c).verge == a && is_main_separated(g, c)?,
            None => false,
        };
        orbit_sizes.push(o.size());
        orbit_chars.push(module_character(g, table, &o.members)?);
    }
    checks.push(Check::new("the Ũ-orbit is a disjoint union of U-orbits", partition_ok, ""));
    checks.push(Check::new(
        "each U-orbit in the Ũ-orbit has a main separated core with verge A(D,Φ)",
        cores_ok,
        "",
    ));
    let sum = ClassFunction::sum(p, table.len(), orbit_chars.iter())?;
    let restricted = module_character(g, table, &tilde)?;
    checks.push(Check::new(
        "the restricted Ũ-orbit module character is the sum of its U-orbit characters",
        sum == restricted,
        "",
    ));
    let xi = supercharacter(g, table, bs, limit)?;
    let m = inner_product(&sum, &xi)?;
    if bs.has_antidiagonal(t) {
        checks.push(Check::new(
            "with an antidiagonal position the supercharacter is a constituent of the verge module",
            m >= BigRational::one(),
            frac(&m),
        ));
    } else {
        checks.push(Check::new(
            "the supercharacter is afforded by the restricted verge module",
            sum == xi,
            "exact comparison on all of U",
        ));
    }
    Ok(DecompositionReport {
        basic_set: bs.label(g),
        tilde_orbit_size: tilde.len(),
        orbit_sizes,
        supercharacter_degree: xi.degree(g, table).to_string(),
        multiplicity: frac(&m),
        checks,
    })
}

/// Degrees of all elementary characters, computed as subgroup indices.
pub fn elementary_degrees(g: &Sylow, limit: u128) -> Result<Vec<(Pos, u128, u128)>> {
    let mut out = Vec::new();
    for &p in g.pup().positions() {
        let d = ElementaryDatum::new(g, p, Fe::ONE)?;
        out.push((p, d.index_in_u(g, limit)?, d.expected_degree(g)));
    }
    Ok(out)
}
