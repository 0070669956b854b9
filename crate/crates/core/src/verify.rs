//! Checks of the structural claims, shared by the command line `verify` driver and the
//! acceptance tests. Each check names the claim it tests.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::LinChar;
use crate::cyclo::{
    module_character, monomial_compose, monomial_matrix, monomial_trace, ClassFunction, CycInt,
    GroupTable,
};
use crate::error::{Error, Result};
use crate::field::{Fe, GaloisField};
use crate::geometry::{region_members, LieType, Pos, Region};
use crate::group::{power, Mat, Sylow};
use crate::superchars::{all_basic_sets, decompose_an, identify_elementary, ElementaryDatum};

/// Sample sizes, seed and budgets.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Sampled pairs for cocycle and closure checks on larger groups.
    pub pair_samples: usize,
    /// Sampled triples for action axioms.
    pub triple_samples: usize,
    pub max_group_size: u128,
    pub max_orbit_size: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            pair_samples: 500,
            triple_samples: 10_000,
            max_group_size: 1 << 40,
            max_orbit_size: 1 << 24,
        }
    }
}

impl VerifyConfig {
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Result of one check.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub claim: String,
    pub setting: String,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(claim: &str, g: &Sylow, passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            claim: claim.to_string(),
            setting: setting(g),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn setting(g: &Sylow) -> String {
    format!("{} q={}", g.lie_type(), g.q())
}

pub fn sylow(t: LieType, q: u64) -> Result<Sylow> {
    Ok(Sylow::new(t, GaloisField::new(q, 1)?))
}

/// `|U| = q^|pUP|`, membership of all elements, and closure under products.
pub fn group_construction(g: &Sylow, cfg: &VerifyConfig, closure_samples: usize) -> Result<Vec<Outcome>> {
    let elems: Vec<Mat> = g.enumerate(cfg.max_group_size)?.collect();
    let distinct: HashSet<&Mat> = elems.iter().collect();
    let mut out = vec![Outcome::new(
        "U has q^|pUP| distinct elements",
        g,
        distinct.len() as u128 == g.order(),
        format!("{} distinct, expected {}", distinct.len(), g.order()),
    )];
    let bad = elems.iter().filter(|u| !g.is_member(u)).count();
    out.push(Outcome::new("every enumerated element lies in U", g, bad == 0, format!("{bad} failures")));
    let mut failures = 0usize;
    let checked = if elems.len() <= 81 {
        for a in &elems {
            for b in &elems {
                if !distinct.contains(&g.mul(a, b)?) {
                    failures += 1;
                }
            }
        }
        elems.len() * elems.len()
    } else {
        let mut rng = cfg.rng(1);
        for _ in 0..closure_samples {
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            if !g.is_member(&g.mul(a, b)?) {
                failures += 1;
            }
        }
        closure_samples
    };
    out.push(Outcome::new(
        "U is closed under multiplication",
        g,
        failures == 0,
        format!("{checked} pairs, {failures} failures"),
    ));
    Ok(out)
}

/// `f(uv) = f(u).v + f(v)`, exhaustively or on sampled pairs.
pub fn cocycle(g: &Sylow, cfg: &VerifyConfig, exhaustive: bool) -> Result<Outcome> {
    let f = g.field();
    let check = |u: &Mat, v: &Mat| -> Result<bool> {
        let lhs = g.cocycle_f(&g.mul(u, v)?);
        let fu = g.act_v(&g.cocycle_f(u), v)?;
        let fv = g.cocycle_f(v);
        let rhs: Vec<Fe> = fu.coords().iter().zip(fv.coords()).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(lhs.coords() == rhs.as_slice())
    };
    let mut failures = 0;
    let mut count = 0;
    if exhaustive {
        let elems: Vec<Mat> = g.enumerate(cfg.max_group_size)?.collect();
        for u in &elems {
            for v in &elems {
                count += 1;
                failures += usize::from(!check(u, v)?);
            }
        }
    } else {
        let mut rng = cfg.rng(2);
        for _ in 0..cfg.pair_samples {
            let u = g.random_element(&mut rng);
            let v = g.random_element(&mut rng);
            count += 1;
            failures += usize::from(!check(&u, &v)?);
        }
    }
    Ok(Outcome::new(
        "f(uv) = f(u).v + f(v)",
        g,
        failures == 0,
        format!("{count} pairs, {failures} failures"),
    ))
}

/// `f` restricted to `U` is a bijection onto `V`.
pub fn cocycle_bijective(g: &Sylow, cfg: &VerifyConfig) -> Result<Outcome> {
    let images: HashSet<LinChar> = g.enumerate(cfg.max_group_size)?.map(|u| g.cocycle_f(&u)).collect();
    Ok(Outcome::new(
        "f restricted to U is a bijection onto V",
        g,
        images.len() as u128 == g.order(),
        format!("{} distinct images of {} elements", images.len(), g.order()),
    ))
}

/// `(a.u).v = a.(uv)` and the exponent cocycle, on sampled triples or exhaustively.
pub fn action_axioms(g: &Sylow, cfg: &VerifyConfig, exhaustive: bool) -> Result<Outcome> {
    let p = g.field().characteristic();
    let check = |a: &LinChar, u: &Mat, v: &Mat| -> Result<bool> {
        let (t1, b1) = g.monomial_right(a, u)?;
        let (t2, b2) = g.monomial_right(&b1, v)?;
        let (t, b) = g.monomial_right(a, &g.mul(u, v)?)?;
        Ok(b == b2 && t == (t1 + t2) % p && g.dot_right(&g.dot_right(a, u)?, v)? == b)
    };
    let mut failures = 0;
    let mut count = 0;
    if exhaustive {
        let elems: Vec<Mat> = g.enumerate(cfg.max_group_size)?.collect();
        for a in g.characters(cfg.max_group_size)? {
            for u in &elems {
                for v in &elems {
                    count += 1;
                    failures += usize::from(!check(&a, u, v)?);
                }
            }
        }
    } else {
        let mut rng = cfg.rng(3);
        for _ in 0..cfg.triple_samples {
            let a = g.random_char(&mut rng);
            let u = g.random_element(&mut rng);
            let v = g.random_element(&mut rng);
            count += 1;
            failures += usize::from(!check(&a, &u, &v)?);
        }
    }
    Ok(Outcome::new(
        "the monomial action of U on V̂ is a right action with multiplicative coefficients",
        g,
        failures == 0,
        format!("{count} triples, {failures} failures"),
    ))
}

/// Orbit characters of a full decomposition, with the orbit index of every character.
pub struct OrbitCharacters {
    pub table: GroupTable,
    pub orbits: Vec<crate::orbits::Orbit>,
    pub characters: Vec<ClassFunction>,
    pub orbit_of: HashMap<LinChar, usize>,
}

pub fn orbit_characters(g: &Sylow, cfg: &VerifyConfig) -> Result<OrbitCharacters> {
    let table = GroupTable::of_sylow(g, cfg.max_group_size)?;
    let orbits = g.orbit_decomposition(cfg.max_group_size)?;
    let characters = orbits
        .iter()
        .map(|o| module_character(g, &table, &o.members))
        .collect::<Result<Vec<_>>>()?;
    let mut orbit_of = HashMap::new();
    for (k, o) in orbits.iter().enumerate() {
        for m in &o.members {
            orbit_of.insert(m.clone(), k);
        }
    }
    Ok(OrbitCharacters { table, orbits, characters, orbit_of })
}

/// Orbits partition `V̂` and their characters sum to the regular character.
pub fn regular_identity(g: &Sylow, oc: &OrbitCharacters) -> Result<Vec<Outcome>> {
    let p = g.field().characteristic();
    let total: usize = oc.orbits.iter().map(|o| o.size()).sum();
    let distinct: HashSet<&LinChar> = oc.orbits.iter().flat_map(|o| o.members.iter()).collect();
    let sum = ClassFunction::sum(p, oc.table.len(), oc.characters.iter())?;
    let reg = ClassFunction::regular(p, g, &oc.table);
    Ok(vec![
        Outcome::new(
            "orbits partition V̂",
            g,
            total as u128 == g.order() && distinct.len() == total,
            format!("{} orbits covering {total} characters", oc.orbits.len()),
        ),
        Outcome::new(
            "the orbit characters sum to the regular character of U",
            g,
            sum == reg,
            format!("value {} at the identity", sum.degree(g, &oc.table)),
        ),
    ])
}

/// Unique cores, orbit sizes, closedness of `J(A)`, and stabilizers of verges and cores.
pub fn classification(g: &Sylow, cfg: &VerifyConfig, stabilizers: bool) -> Result<Vec<Outcome>> {
    let orbits = g.orbit_decomposition(cfg.max_group_size)?;
    let q = g.q();
    let (mut core_bad, mut size_bad, mut j_bad, mut staircase) = (0, 0, 0, 0);
    for o in orbits.iter().filter(|o| o.staircase) {
        staircase += 1;
        let cond = g.conditions_of(&o.representative);
        let data = g.limbs_and_places(&cond)?;
        let cores = o
            .members
            .iter()
            .filter(|m| m.support(g.pup()).iter().all(|p| cond.core.contains(p)))
            .count();
        core_bad += usize::from(cores != 1);
        let j = data.j_set(g);
        let index = power(q, g.pup().len() - j.len());
        let sz = o.size() as u128;
        size_bad += usize::from(sz != power(q, data.places.len()) || sz != index || data.limb.len() != data.places.len());
        j_bad += usize::from(!crate::geometry::is_closed(&j, g.lie_type())?);
    }
    let mut out = vec![
        Outcome::new(
            "every staircase orbit contains exactly one core character",
            g,
            core_bad == 0,
            format!("{staircase} staircase orbits, {core_bad} failures"),
        ),
        Outcome::new(
            "staircase orbit size is q^|places| = [U : U_J(A)]",
            g,
            size_bad == 0,
            format!("{size_bad} failures"),
        ),
        Outcome::new("J(A) = pUP \\ Limb(A) is closed", g, j_bad == 0, format!("{j_bad} failures")),
    ];
    if stabilizers {
        let (mut vb, mut cb, mut verges, mut cores) = (0, 0, 0, 0);
        for a in g.characters(cfg.max_group_size)? {
            if !g.is_staircase(&a) || !g.is_core(&a) {
                continue;
            }
            let j = g.j_of(&a)?;
            let stab = g.stabilizer(&a, cfg.max_group_size)?;
            if g.is_verge(&a) {
                verges += 1;
                let uj: HashSet<Mat> = g.enumerate_pattern(&j, false, cfg.max_group_size)?.into_iter().collect();
                let st: HashSet<Mat> = stab.into_iter().collect();
                vb += usize::from(uj != st);
            } else {
                cores += 1;
                cb += usize::from(stab.len() as u128 != power(q, j.len()));
            }
        }
        out.push(Outcome::new(
            "the stabilizer of a verge character is U_J(A)",
            g,
            vb == 0,
            format!("{verges} verges, {vb} failures"),
        ));
        out.push(Outcome::new(
            "the stabilizer of a core character has order |U_J(A)|",
            g,
            cb == 0,
            format!("{cores} non-verge cores, {cb} failures"),
        ));
    }
    Ok(out)
}

/// Every non-staircase character has the same orbit character as its staircase reduction.
pub fn staircase_characters(g: &Sylow, oc: &OrbitCharacters, cfg: &VerifyConfig) -> Result<Outcome> {
    let mut count = 0;
    let mut failures = 0;
    let mut not_staircase_out = 0;
    for a in g.characters(cfg.max_group_size)? {
        if g.is_staircase(&a) {
            continue;
        }
        count += 1;
        let (b, _) = g.staircase_transform(&a)?;
        not_staircase_out += usize::from(!g.is_staircase(&b));
        let ka = oc.orbit_of[&a];
        let kb = oc.orbit_of[&b];
        failures += usize::from(oc.characters[ka] != oc.characters[kb]);
    }
    Ok(Outcome::new(
        "staircase reduction preserves the orbit module character",
        g,
        failures == 0 && not_staircase_out == 0,
        format!("{count} non-staircase characters, {failures} character mismatches, {not_staircase_out} non-staircase results"),
    ))
}

/// Degree `[U : U_{i,j}]` against `q^{j-i-1}` (or `q^{n-i}` on the antidiagonal) at every position.
pub fn elementary_degrees(g: &Sylow, cfg: &VerifyConfig) -> Result<Outcome> {
    let mut bad = Vec::new();
    let list = crate::superchars::elementary_degrees(g, cfg.max_group_size)?;
    for (p, got, want) in &list {
        if got != want {
            bad.push(format!("{p}: {got} vs {want}"));
        }
    }
    Ok(Outcome::new(
        "elementary character degree is q^{j-i-1}, or q^{n-i} on the antidiagonal",
        g,
        bad.is_empty(),
        if bad.is_empty() { format!("{} positions", list.len()) } else { bad.join("; ") },
    ))
}

/// Identification of `ξ^{i,j}_α` with orbit characters for the listed positions.
pub fn elementary_identification(
    g: &Sylow,
    table: &GroupTable,
    positions: &[Pos],
    cfg: &VerifyConfig,
) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for &p in positions {
        for alpha in g.field().nonzero() {
            let d = ElementaryDatum::new(g, p, alpha)?;
            let r = identify_elementary(g, table, &d, cfg.max_group_size)?;
            for c in r.checks {
                out.push(Outcome::new(
                    &c.claim,
                    g,
                    c.passed,
                    format!("at {p}, α={}: {}", g.field().render(alpha), c.detail),
                ));
            }
            out.push(Outcome::new(
                "the inner subgroup U°_{i,j} is normal in U_{i,j}",
                g,
                d.inner_is_normal(g, cfg.max_group_size)?,
                format!("at {p}"),
            ));
        }
    }
    Ok(out)
}

/// The decomposition of verge modules for every valid basic set.
pub fn decomposition(g: &Sylow, table: &GroupTable, cfg: &VerifyConfig) -> Result<Outcome> {
    let sets = all_basic_sets(g);
    let mut bad = Vec::new();
    for bs in &sets {
        let r = decompose_an(g, table, bs, cfg.max_group_size)?;
        for c in r.checks.iter().filter(|c| !c.passed) {
            bad.push(format!("{}: {}", r.basic_set, c.claim));
        }
    }
    Ok(Outcome::new(
        "the restricted verge module of a basic set splits into orbit modules of main separated cores and affords the supercharacter",
        g,
        bad.is_empty(),
        if bad.is_empty() { format!("{} basic sets", sets.len()) } else { bad.join("; ") },
    ))
}

/// Supercharacters of distinct basic sets are orthogonal.
pub fn supercharacter_orthogonality(g: &Sylow, table: &GroupTable, cfg: &VerifyConfig) -> Result<Outcome> {
    let sets = all_basic_sets(g);
    let mut chars = Vec::new();
    for bs in &sets {
        chars.push(crate::superchars::supercharacter(g, table, bs, cfg.max_group_size)?);
    }
    let mut bad = 0;
    for a in 0..chars.len() {
        for b in a + 1..chars.len() {
            if !crate::cyclo::inner_product(&chars[a], &chars[b])?.is_zero() {
                bad += 1;
            }
        }
    }
    Ok(Outcome::new(
        "supercharacters of distinct basic sets are orthogonal",
        g,
        bad == 0,
        format!("{} supercharacters, {bad} non-orthogonal pairs", chars.len()),
    ))
}

/// Restricted column and row operations agree with the dense definitions on every character
/// and every root generator.
pub fn fast_paths(g: &Sylow, cfg: &VerifyConfig) -> Result<Vec<Outcome>> {
    let f = g.field();
    let ur = region_members(Region::Ur, g.lie_type());
    let alphas: Vec<Fe> = f.nonzero().collect();
    let tildes: Vec<(Pos, Fe, Mat)> = ur
        .iter()
        .flat_map(|&p| alphas.iter().map(move |&a| (p, a)))
        .map(|(p, a)| Ok((p, a, g.tilde_root(p, a)?)))
        .collect::<Result<_>>()?;
    let roots: Vec<(Pos, Fe, Mat)> = g
        .pup()
        .positions()
        .iter()
        .flat_map(|&p| alphas.iter().map(move |&a| (p, a)))
        .map(|(p, a)| Ok((p, a, g.root_element(p, a)?)))
        .collect::<Result<_>>()?;
    let (mut right_bad, mut left_bad, mut root_bad, mut count) = (0, 0, 0, 0);
    for a in g.characters(cfg.max_group_size)? {
        for (p, alpha, m) in &tildes {
            count += 1;
            let (t, b) = g.monomial_right(&a, m)?;
            let mut fast = a.clone();
            let tf = g.tilde_right_in_place(&mut fast, *p, *alpha);
            right_bad += usize::from(fast != b || tf != t);
            left_bad += usize::from(g.dot_left_tilde(*p, *alpha, &a) != g.dot_left_dense(m, &a)?);
        }
        for (p, alpha, m) in &roots {
            let (t, b) = g.monomial_right(&a, m)?;
            let mut fast = a.clone();
            let tf = g.root_right_in_place(&mut fast, *p, *alpha)?;
            root_bad += usize::from(fast != b || tf != t);
        }
    }
    Ok(vec![
        Outcome::new(
            "restricted column operation equals π(A u^{-t}) with coefficient θ(αA_ij)",
            g,
            right_bad == 0,
            format!("{count} character/generator pairs, {right_bad} failures"),
        ),
        Outcome::new(
            "restricted row operation equals π(u^{-t} A)",
            g,
            left_bad == 0,
            format!("{left_bad} failures"),
        ),
        Outcome::new(
            "root elements act as the product of their column operations",
            g,
            root_bad == 0,
            format!("{root_bad} failures"),
        ),
    ])
}

/// The single-term left action agrees with the full left-multiplication sum wherever it applies.
pub fn lambda_agreement(g: &Sylow, cfg: &VerifyConfig) -> Result<Outcome> {
    let p = g.field().characteristic();
    let (mut applicable, mut skipped, mut bad) = (0, 0, 0);
    let elems: Vec<Mat> = g.enumerate(cfg.max_group_size)?.collect();
    for x in &elems {
        for a in g.characters(cfg.max_group_size)? {
            let general = g.lambda_left_general(x, &a, cfg.max_group_size)?;
            match g.lambda_left_fast(x, &a) {
                Ok((t, b)) => {
                    applicable += 1;
                    let expected = CycInt::zeta(p, t).to_rational();
                    let ok = general.len() == 1 && general.get(&b) == Some(&expected);
                    bad += usize::from(!ok);
                }
                Err(Error::SupportLeavesPkl) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Outcome::new(
        "the left action is a single monomial term when supp(x^{-t}A) ⊆ pKL",
        g,
        bad == 0 && applicable > 0,
        format!("{applicable} applicable pairs, {skipped} outside the domain, {bad} failures"),
    ))
}

/// Orbit characters against traces of explicit monomial matrices, which must form a representation.
pub fn monomial_trace_oracle(g: &Sylow, oc: &OrbitCharacters, cfg: &VerifyConfig) -> Result<Outcome> {
    let p = g.field().characteristic();
    let chars: Vec<LinChar> = g.characters(cfg.max_group_size)?.collect();
    let elems = oc.table.elements();
    let mats: Vec<Vec<(usize, u32)>> =
        elems.iter().map(|u| monomial_matrix(g, &chars, u)).collect::<Result<_>>()?;
    let mut bad = 0;
    for o in &oc.orbits {
        let basis = o.members.clone();
        let chi = module_character(g, &oc.table, &basis)?;
        for (k, u) in elems.iter().enumerate() {
            let m = monomial_matrix(g, &basis, u)?;
            bad += usize::from(monomial_trace(p, &m) != chi.values[k]);
        }
    }
    let sum = ClassFunction::sum(p, oc.table.len(), oc.characters.iter())?;
    for (k, m) in mats.iter().enumerate() {
        bad += usize::from(monomial_trace(p, m) != sum.values[k]);
    }
    let mut hom_bad = 0;
    for (a, u) in elems.iter().enumerate() {
        for (b, v) in elems.iter().enumerate() {
            let uv = oc.table.index_of(&g.mul(u, v)?).ok_or(Error::NotMember)?;
            hom_bad += usize::from(monomial_compose(p, &mats[a], &mats[b]) != mats[uv]);
        }
    }
    Ok(Outcome::new(
        "orbit characters equal traces of the monomial matrices, which form a representation",
        g,
        bad == 0 && hom_bad == 0,
        format!("{bad} trace mismatches, {hom_bad} product mismatches"),
    ))
}

/// The monomial character of `Ũ` on `V̂` equals the permutation character on the cosets of
/// `Ũ_J`, `J` the positions above the diagonal outside `pUP`.
pub fn induced_module(g: &Sylow, cfg: &VerifyConfig) -> Result<Outcome> {
    let f = g.field();
    let p = f.characteristic();
    let t = g.lie_type();
    let j: BTreeSet<Pos> = region_members(Region::Ur, t).into_iter().filter(|x| !g.pup().contains(*x)).collect();
    let uj: HashSet<Mat> = g.enumerate_pattern(&j, true, cfg.max_group_size)?.into_iter().collect();
    let amb: Vec<Mat> = g.enumerate_ambient(cfg.max_group_size)?.collect();
    let inv: Vec<Mat> = amb.iter().map(|x| x.inv_unitriangular(f)).collect::<Result<_>>()?;
    let chars: Vec<LinChar> = g.characters(cfg.max_group_size)?.collect();
    let mut bad = 0;
    for u in &amb {
        let mut tally = crate::cyclo::ExponentTally::new(p);
        for a in &chars {
            let (e, b) = g.monomial_right(a, u)?;
            if b == *a {
                tally.push(e);
            }
        }
        let mut hits = 0usize;
        for (x, xi) in amb.iter().zip(&inv) {
            if uj.contains(&x.mul(u, f)?.mul(xi, f)?) {
                hits += 1;
            }
        }
        let fixed = (hits / uj.len()) as i64;
        bad += usize::from(tally.finish() != CycInt::from_scalar(p, fixed.into()));
    }
    Ok(Outcome::new(
        "the monomial module V̂ of Ũ is induced from the trivial module of Ũ_J",
        g,
        bad == 0,
        format!("{} elements of Ũ, {bad} mismatches", amb.len()),
    ))
}

/// One acceptance criterion with its runtime limit.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    pub outcomes: Vec<Outcome>,
    pub error: Option<String>,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed_ms <= self.limit_ms
    }

    pub fn line(&self) -> String {
        let status = if self.passed && self.within_limit() { "PASS" } else { "FAIL" };
        let failing: Vec<String> = self
            .outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| format!("{} [{}]: {}", o.claim, o.setting, o.detail))
            .chain(self.error.iter().cloned())
            .collect();
        let mut s = format!(
            "{status} criterion {}: {} ({} checks, {} ms, limit {} ms)",
            self.id,
            self.title,
            self.outcomes.len(),
            self.elapsed_ms,
            self.limit_ms
        );
        if !failing.is_empty() {
            s.push_str(" -- ");
            s.push_str(&failing.join(" | "));
        }
        s
    }
}

fn run(id: u32, title: &'static str, limit: Duration, body: impl FnOnce() -> Result<Vec<Outcome>>) -> CriterionReport {
    let start = Instant::now();
    let res = body();
    let elapsed_ms = start.elapsed().as_millis();
    let (outcomes, error) = match res {
        Ok(o) => (o, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    let passed = error.is_none() && outcomes.iter().all(|o| o.passed);
    CriterionReport { id, title, passed, elapsed_ms, limit_ms: limit.as_millis(), outcomes, error }
}

pub const CRITERIA: [u32; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// Runs one of the fixed acceptance criteria.
pub fn criterion(id: u32, cfg: &VerifyConfig) -> CriterionReport {
    match id {
        1 => run(1, "group construction", Duration::from_secs(30), || {
            let mut out = Vec::new();
            for (t, q) in [
                (LieType::b(1), 3),
                (LieType::b(2), 3),
                (LieType::c(2), 3),
                (LieType::d(3), 3),
                (LieType::b(2), 5),
                (LieType::c(3), 3),
            ] {
                out.extend(group_construction(&sylow(t, q)?, cfg, 10_000)?);
            }
            Ok(out)
        }),
        2 => run(2, "cocycle and bijectivity", Duration::from_secs(10), || {
            let mut out = vec![cocycle(&sylow(LieType::b(1), 3)?, cfg, true)?];
            for t in [LieType::b(2), LieType::c(2)] {
                out.push(cocycle_bijective(&sylow(t, 3)?, cfg)?);
            }
            Ok(out)
        }),
        3 => run(3, "regular representation identity", Duration::from_secs(60), || {
            let mut out = Vec::new();
            for t in [LieType::b(2), LieType::c(2)] {
                let g = sylow(t, 3)?;
                out.extend(regular_identity(&g, &orbit_characters(&g, cfg)?)?);
            }
            Ok(out)
        }),
        4 => run(4, "classification of staircase orbits by cores", Duration::from_secs(120), || {
            let mut out = Vec::new();
            for (t, stab) in [(LieType::b(2), true), (LieType::c(2), true), (LieType::d(3), false)] {
                out.extend(classification(&sylow(t, 3)?, cfg, stab)?);
            }
            Ok(out)
        }),
        5 => run(5, "staircase reduction preserves orbit characters", Duration::from_secs(120), || {
            let g = sylow(LieType::b(2), 3)?;
            let oc = orbit_characters(&g, cfg)?;
            Ok(vec![staircase_characters(&g, &oc, cfg)?])
        }),
        6 => run(6, "elementary characters", Duration::from_secs(120), || {
            let mut out = Vec::new();
            for q in [3, 5] {
                for n in 1..=3 {
                    for t in [LieType::b(n), LieType::c(n), LieType::d(n.max(2))] {
                        if t.family == crate::geometry::Family::D && n < 2 {
                            continue;
                        }
                        out.push(elementary_degrees(&sylow(t, q)?, cfg)?);
                    }
                }
            }
            for t in [LieType::b(2), LieType::c(2)] {
                let g = sylow(t, 3)?;
                let table = GroupTable::of_sylow(&g, cfg.max_group_size)?;
                let positions = g.pup().positions().to_vec();
                out.extend(elementary_identification(&g, &table, &positions, cfg)?);
            }
            Ok(out)
        }),
        7 => run(7, "decomposition of verge modules of basic sets", Duration::from_secs(180), || {
            let mut out = Vec::new();
            for t in [LieType::b(2), LieType::c(2)] {
                let g = sylow(t, 3)?;
                let table = GroupTable::of_sylow(&g, cfg.max_group_size)?;
                out.push(decomposition(&g, &table, cfg)?);
            }
            Ok(out)
        }),
        8 => run(8, "fast operations against dense oracles", Duration::from_secs(60), || {
            let mut out = Vec::new();
            for n in 1..=3 {
                for t in [LieType::b(n), LieType::c(n), LieType::d(n.max(2))] {
                    out.extend(fast_paths(&sylow(t, 3)?, cfg)?);
                }
            }
            let g = sylow(LieType::b(1), 3)?;
            out.push(lambda_agreement(&g, cfg)?);
            let oc = orbit_characters(&g, cfg)?;
            out.push(monomial_trace_oracle(&g, &oc, cfg)?);
            Ok(out)
        }),
        _ => CriterionReport {
            id,
            title: "unknown criterion",
            passed: false,
            elapsed_ms: 0,
            limit_ms: 0,
            outcomes: Vec::new(),
            error: Some(format!("no criterion {id}")),
        },
    }
}

/// All checks that fit the budget for one setting.
pub fn suite(g: &Sylow, cfg: &VerifyConfig) -> Result<Vec<Outcome>> {
    let mut out = group_construction(g, cfg, cfg.pair_samples)?;
    let small = g.order() <= 81;
    out.push(cocycle(g, cfg, small)?);
    out.push(cocycle_bijective(g, cfg)?);
    out.push(action_axioms(g, cfg, g.order() <= 9)?);
    if !g.lie_type().has_form() {
        return Ok(out);
    }
    out.extend(fast_paths(g, cfg)?);
    let oc = orbit_characters(g, cfg)?;
    out.extend(regular_identity(g, &oc)?);
    out.extend(classification(g, cfg, small)?);
    out.push(staircase_characters(g, &oc, cfg)?);
    out.push(elementary_degrees(g, cfg)?);
    let positions = g.pup().positions().to_vec();
    out.extend(elementary_identification(g, &oc.table, &positions, cfg)?);
    out.push(decomposition(g, &oc.table, cfg)?);
    if small {
        out.push(supercharacter_orthogonality(g, &oc.table, cfg)?);
    }
    if g.order() <= 9 {
        out.push(lambda_agreement(g, cfg)?);
        out.push(monomial_trace_oracle(g, &oc, cfg)?);
    }
    if g.ambient_order() <= 729 {
        out.push(induced_module(g, cfg)?);
    }
    Ok(out)
}
