use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sylow_core::geometry::region_members;
use sylow_core::superchars::{decompose_an, identify_elementary, BasicSet, ElementaryDatum};
use sylow_core::verify::{self, VerifyConfig, CRITERIA};
use sylow_core::{Error, Family, GaloisField, GroupTable, LieType, LinChar, Pos, Region, Sylow};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "sylow-orbit", version, about = "Orbits and supercharacters of Sylow p-subgroups of classical groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group order, pUP, and optionally the coordinate table.
    Gen(Job),
    /// Position regions of the ambient matrix.
    Regions(Job),
    /// Full orbit decomposition of the monomial module.
    Orbits(Job),
    /// Conditions, limbs, places and core of one character.
    Classify {
        #[command(flatten)]
        job: Job,
        /// Character as "i,j=v;i,j=v".
        #[arg(long = "char")]
        character: String,
    },
    /// Elementary character and basic set decomposition.
    Superchar {
        #[command(flatten)]
        job: Job,
        /// Positions of D ∩ pUP as "i,j;i,j".
        #[arg(long)]
        basic: String,
        /// One value for every position, or a comma separated list.
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Run the checks for one setting, or the fixed acceptance criteria when no type is given.
    Verify {
        #[arg(long = "type")]
        family: Option<Family>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "3")]
        q: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
struct Job {
    #[arg(long = "type")]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Field order as p or p^e.
    #[arg(long, default_value = "3")]
    q: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1 << 24, value_parser = positive)]
    max_group_size: u128,
    #[arg(long, default_value_t = 1 << 24, value_parser = positive)]
    max_orbit_size: u128,
    /// Sampled pairs for cocycle and closure checks.
    #[arg(long, default_value_t = 500)]
    pairs: usize,
    /// Sampled triples for action axioms.
    #[arg(long, default_value_t = 10_000)]
    triples: usize,
}

fn positive(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Resolved configuration of one run.
struct JobConfig {
    group: Sylow,
    format: Format,
    verify: VerifyConfig,
}

impl JobConfig {
    fn new(family: Family, n: usize, q: &str, c: &Common) -> Result<Self, Failure> {
        let t = LieType::new(family, n).map_err(Failure::Usage)?;
        let field = GaloisField::parse(q).map_err(Failure::Usage)?;
        Ok(JobConfig { group: Sylow::new(t, field), format: format_of(c), verify: verify_config(c) })
    }

    fn header(&self) -> Value {
        json!({
            "type": self.group.lie_type().to_string(),
            "q": self.group.q(),
            "seed": self.verify.seed,
        })
    }

    fn text_header(&self) -> String {
        format!("# {} seed={}\n", verify::setting(&self.group), self.verify.seed)
    }
}

fn verify_config(c: &Common) -> VerifyConfig {
    VerifyConfig {
        seed: c.seed,
        pair_samples: c.pairs,
        triple_samples: c.triples,
        max_group_size: c.max_group_size,
        max_orbit_size: c.max_orbit_size,
    }
}

fn format_of(c: &Common) -> Format {
    if c.json {
        Format::Json
    } else if c.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

enum Failure {
    Usage(Error),
    Core(Error),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Output {
    text: String,
    failed: bool,
}

fn pairs(ps: &[Pos]) -> Value {
    Value::Array(ps.iter().map(|p| json!([p.i, p.j])).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

fn gen(cfg: &JobConfig) -> Result<Output, Failure> {
    let g = &cfg.group;
    let f = g.field();
    let positions = g.pup().positions();
    let mut text = String::new();
    match cfg.format {
        Format::Text => {
            text.push_str(&cfg.text_header());
            writeln!(text, "|U| = {}", g.order()).unwrap();
            writeln!(text, "|pUP| = {}", positions.len()).unwrap();
        }
        Format::Json => {
            let elements: Vec<Value> = g
                .enumerate(cfg.verify.max_group_size)?
                .map(|u| Value::Array(g.extract(&u).into_iter().map(|x| json!(f.render(x))).collect()))
                .collect();
            let mut v = cfg.header();
            v["order"] = json!(g.order().to_string());
            v["pup_size"] = json!(positions.len());
            v["pup"] = pairs(positions);
            v["elements"] = Value::Array(elements);
            text = pretty(&v);
        }
        Format::Csv => {
            writeln!(text, "# {} seed={} |U|={} |pUP|={}", verify::setting(g), cfg.verify.seed, g.order(), positions.len())
                .unwrap();
            let cols: Vec<String> = positions.iter().map(|p| format!("x{}_{}", p.i, p.j)).collect();
            writeln!(text, "{}", cols.join(",")).unwrap();
            for u in g.enumerate(cfg.verify.max_group_size)? {
                let row: Vec<String> = g.extract(&u).into_iter().map(|x| f.render(x)).collect();
                writeln!(text, "{}", row.join(",")).unwrap();
            }
        }
    }
    Ok(Output { text, failed: false })
}

fn regions(cfg: &JobConfig) -> Result<Output, Failure> {
    let t = cfg.group.lie_type();
    let mut text = String::new();
    match cfg.format {
        Format::Json => {
            let mut v = cfg.header();
            let mut m = serde_json::Map::new();
            for r in Region::ALL {
                m.insert(r.name().to_string(), pairs(&region_members(r, t)));
            }
            v["regions"] = Value::Object(m);
            text = pretty(&v);
        }
        Format::Csv => {
            writeln!(text, "region,i,j").unwrap();
            for r in Region::ALL {
                for p in region_members(r, t) {
                    writeln!(text, "{},{},{}", r.name(), p.i, p.j).unwrap();
                }
            }
        }
        Format::Text => {
            text.push_str(&cfg.text_header());
            for r in Region::ALL {
                let list: Vec<String> = region_members(r, t).iter().map(|p| p.to_string()).collect();
                writeln!(text, "{}: {}", r.name(), list.join(" ")).unwrap();
            }
        }
    }
    Ok(Output { text, failed: false })
}

fn orbits(cfg: &JobConfig) -> Result<Output, Failure> {
    let g = &cfg.group;
    let orbits = g.orbit_decomposition(cfg.verify.max_group_size)?;
    let limit = cfg.verify.max_orbit_size;
    if let Some(o) = orbits.iter().find(|o| o.size() as u128 > limit) {
        return Err(Error::BudgetExceeded { what: "orbit", size: o.size() as u128, limit }.into());
    }
    let mut text = String::new();
    let described = orbits.iter().map(|o| g.orbit_json(o)).collect::<Result<Vec<_>, _>>()?;
    match cfg.format {
        Format::Json => {
            let mut v = cfg.header();
            v["orbits"] = serde_json::to_value(&described).map_err(|e| Failure::Other(e.into()))?;
            text = pretty(&v);
        }
        Format::Csv | Format::Text => {
            text.push_str(&cfg.text_header());
            if cfg.format == Format::Text {
                writeln!(text, "{} orbits", orbits.len()).unwrap();
            }
            writeln!(text, "representative,size,staircase,verge,core,places,mc").unwrap();
            let f = g.field();
            for (o, d) in orbits.iter().zip(&described) {
                let core = o.core.as_ref().map(|c| c.display(g.pup(), f).to_string()).unwrap_or_default();
                let verge = g.conditions_of(&o.representative).verge;
                let list = |ps: &[(usize, usize)]| ps.iter().map(|(i, j)| format!("({i},{j})")).collect::<String>();
                writeln!(
                    text,
                    "\"{}\",{},{},\"{}\",\"{}\",\"{}\",\"{}\"",
                    o.representative.display(g.pup(), f),
                    o.size(),
                    o.staircase,
                    verge.display(g.pup(), f),
                    core,
                    list(&d.places),
                    list(&d.mc)
                )
                .unwrap();
            }
        }
    }
    Ok(Output { text, failed: false })
}

fn check_line(c: &sylow_core::superchars::Check) -> String {
    let mark = if c.passed { "ok" } else { "FAILED" };
    if c.detail.is_empty() {
        format!("{mark} {}", c.claim)
    } else {
        format!("{mark} {}: {}", c.claim, c.detail)
    }
}

fn classify(cfg: &JobConfig, spec: &str) -> Result<Output, Failure> {
    let g = &cfg.group;
    let f = g.field();
    let a = LinChar::parse(spec, g.pup(), f).map_err(Failure::Usage)?;
    let staircase = g.is_staircase(&a);
    let (b, _) = g.staircase_transform(&a)?;
    let cond = g.conditions_of(&b);
    let data = g.limbs_and_places(&cond)?;
    let core = g.to_core(&b)?;
    let orbit = g.enumerate_orbit(&a, cfg.verify.max_orbit_size)?;
    let set = |s: &std::collections::BTreeSet<Pos>| pairs(&s.iter().copied().collect::<Vec<_>>());
    let show = |c: &LinChar| c.display(g.pup(), f).to_string();
    let mut v = cfg.header();
    v["character"] = json!(show(&a));
    v["staircase"] = json!(staircase);
    v["staircase_form"] = json!(show(&b));
    v["main"] = set(&cond.mc);
    v["left_main"] = set(&cond.lmc);
    v["right_main"] = set(&cond.rmc);
    v["minor"] = set(&cond.minc);
    v["supplementary"] = set(&cond.suppl);
    v["core_positions"] = set(&cond.core);
    v["limb"] = set(&data.limb);
    v["places"] = set(&data.places);
    v["j"] = set(&data.j_set(g));
    v["core"] = json!(show(&core));
    v["verge"] = json!(show(&cond.verge));
    v["orbit_size"] = json!(orbit.size());
    let text = match cfg.format {
        Format::Json => pretty(&v),
        Format::Csv | Format::Text => {
            let mut t = cfg.text_header();
            for (k, val) in v.as_object().expect("object") {
                if ["type", "q", "seed"].contains(&k.as_str()) {
                    continue;
                }
                writeln!(t, "{k}: {}", render_value(val)).unwrap();
            }
            t
        }
    };
    Ok(Output { text, failed: false })
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(Value::is_number) => {
            format!("({})", xs.iter().map(Value::to_string).collect::<Vec<_>>().join(","))
        }
        Value::Array(xs) => xs.iter().map(render_value).collect::<Vec<_>>().join(" "),
        _ => v.to_string(),
    }
}

fn parse_positions(s: &str) -> Result<Vec<Pos>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            let (i, j) = x.split_once(',').ok_or_else(|| Failure::Usage(Error::Parse(format!("position {x:?}"))))?;
            let i = i.trim().parse().map_err(|_| Failure::Usage(Error::Parse(format!("row {i:?}"))))?;
            let j = j.trim().parse().map_err(|_| Failure::Usage(Error::Parse(format!("column {j:?}"))))?;
            Ok(Pos::new(i, j))
        })
        .collect()
}

fn superchar(cfg: &JobConfig, basic: &str, alpha: &str) -> Result<Output, Failure> {
    let g = &cfg.group;
    let f = g.field();
    let limit = cfg.verify.max_group_size;
    let positions = parse_positions(basic)?;
    if positions.is_empty() {
        return Err(Failure::Usage(Error::Parse("empty basic set".into())));
    }
    let alphas = alpha
        .split(',')
        .map(|a| f.parse_element(a.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Usage)?;
    let alphas = match alphas.len() {
        1 => vec![alphas[0]; positions.len()],
        k if k == positions.len() => alphas,
        k => {
            return Err(Failure::Usage(Error::Parse(format!(
                "{k} values for {} positions",
                positions.len()
            ))))
        }
    };
    let table = GroupTable::of_sylow(g, limit)?;
    let mut elementary = Vec::new();
    for (&p, &a) in positions.iter().zip(&alphas) {
        let d = ElementaryDatum::new(g, p, a).map_err(Failure::Usage)?;
        elementary.push(identify_elementary(g, &table, &d, limit)?);
    }
    let phi: BTreeMap<Pos, sylow_core::Fe> = positions.iter().copied().zip(alphas.iter().copied()).collect();
    let bs = BasicSet::from_pup(g, phi).map_err(Failure::Usage)?;
    let decomposition = decompose_an(g, &table, &bs, limit)?;
    let failed = !decomposition.passed() || elementary.iter().any(|e| !e.passed());
    let mut v = cfg.header();
    v["elementary"] = serde_json::to_value(&elementary).map_err(|e| Failure::Other(e.into()))?;
    v["decomposition"] = serde_json::to_value(&decomposition).map_err(|e| Failure::Other(e.into()))?;
    let text = match cfg.format {
        Format::Json => pretty(&v),
        Format::Csv | Format::Text => {
            let mut t = cfg.text_header();
            for e in &elementary {
                writeln!(
                    t,
                    "elementary ({},{}) alpha={} case={:?} degree={} expected={} orbit sizes={:?}",
                    e.position.0, e.position.1, e.alpha, e.case, e.degree, e.expected_degree, e.orbit_sizes
                )
                .unwrap();
                for (k, ip) in &e.inner_products {
                    writeln!(t, "  {k} = {ip}").unwrap();
                }
                for c in &e.checks {
                    writeln!(t, "  {}", check_line(c)).unwrap();
                }
            }
            let d = &decomposition;
            writeln!(
                t,
                "basic set {} tilde orbit={} orbit sizes={:?} degree={} multiplicity={}",
                d.basic_set, d.tilde_orbit_size, d.orbit_sizes, d.supercharacter_degree, d.multiplicity
            )
            .unwrap();
            for c in &d.checks {
                writeln!(t, "  {}", check_line(c)).unwrap();
            }
            t
        }
    };
    Ok(Output { text, failed })
}

fn verify_setting(cfg: &JobConfig) -> Result<Output, Failure> {
    let outcomes = verify::suite(&cfg.group, &cfg.verify)?;
    let failed = outcomes.iter().any(|o| !o.passed);
    let text = match cfg.format {
        Format::Json => {
            let mut v = cfg.header();
            v["passed"] = json!(!failed);
            v["checks"] = serde_json::to_value(&outcomes).map_err(|e| Failure::Other(e.into()))?;
            pretty(&v)
        }
        Format::Csv => {
            let mut t = String::from("claim,setting,passed,detail\n");
            for o in &outcomes {
                writeln!(t, "{:?},{:?},{},{:?}", o.claim, o.setting, o.passed, o.detail).unwrap();
            }
            t
        }
        Format::Text => {
            let mut t = cfg.text_header();
            for o in &outcomes {
                writeln!(t, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.claim, o.detail).unwrap();
            }
            writeln!(t, "{} of {} checks passed", outcomes.iter().filter(|o| o.passed).count(), outcomes.len()).unwrap();
            t
        }
    };
    Ok(Output { text, failed })
}

fn verify_acceptance(c: &Common) -> Result<Output, Failure> {
    let cfg = verify_config(c);
    let reports: Vec<_> = CRITERIA.iter().map(|&id| verify::criterion(id, &cfg)).collect();
    let failed = reports.iter().any(|r| !(r.passed && r.within_limit()));
    let text = match format_of(c) {
        Format::Json => pretty(&json!({
            "seed": cfg.seed,
            "passed": !failed,
            "criteria": serde_json::to_value(&reports).map_err(|e| Failure::Other(e.into()))?,
        })),
        Format::Csv | Format::Text => {
            let mut t = format!("# acceptance seed={}\n", cfg.seed);
            for r in &reports {
                writeln!(t, "{}", r.line()).unwrap();
            }
            t
        }
    };
    Ok(Output { text, failed })
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Gen(j) => gen(&JobConfig::new(j.family, j.n, &j.q, &j.common)?),
        Command::Regions(j) => regions(&JobConfig::new(j.family, j.n, &j.q, &j.common)?),
        Command::Orbits(j) => orbits(&JobConfig::new(j.family, j.n, &j.q, &j.common)?),
        Command::Classify { job, character } => {
            classify(&JobConfig::new(job.family, job.n, &job.q, &job.common)?, &character)
        }
        Command::Superchar { job, basic, alpha } => {
            superchar(&JobConfig::new(job.family, job.n, &job.q, &job.common)?, &basic, &alpha)
        }
        Command::Verify { family, n, q, common } => match (family, n) {
            (Some(fam), Some(n)) => verify_setting(&JobConfig::new(fam, n, &q, &common)?),
            (None, None) => verify_acceptance(&common),
            _ => Err(Failure::Other(anyhow!("--type and --n must be given together"))),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(EXIT_VERIFY)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Core(e @ Error::BudgetExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e @ (Error::Unsupported(_) | Error::NotStaircase | Error::NoForm))) => {
            eprintln!("usage error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("verification failed: {e}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Other(e)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
