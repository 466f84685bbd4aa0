use std::path::PathBuf;

use anyhow::{bail, ensure};
use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use transversal_lab::families::escape_rectangle;
use transversal_lab::io::{FamilyFile, StreamsFile};
use transversal_lab::stabbing::min_piercing_number;
use transversal_lab::transversal::{has_pq_property, is_k_dependent, transversal, Status, DEFAULT_BUDGET};
use transversal_lab::verifier::{
    audit_heterochromatic, audit_strict_heterochromatic, compactness_check, pierceable_by, piercing_growth, CompactnessConclusion,
    Verdict,
};
use transversal_lab::{ConvexBody, Error};

use crate::util::{emit, parse_range, pick, read};

#[derive(Args)]
pub struct CheckArgs {
    /// Report file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    check: Check,
}

#[derive(Args)]
struct FamilyArg {
    #[arg(long)]
    family: PathBuf,
    /// Restrict to these 0-based body positions, e.g. 2,3,4.
    #[arg(long, value_delimiter = ',')]
    indices: Option<Vec<usize>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuditMode {
    Strict,
    Hetero,
}

#[derive(Subcommand)]
enum Check {
    /// Piercing number (k = 0), or whether m k-flats suffice.
    Pierce {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Common k-flat transversal of the bodies.
    Transversal {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Some k+2 bodies share a k-flat.
    Kdep {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
    },
    /// Every p bodies contain q pierced by one k-flat.
    Pq {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Heterochromatic dependence audit over several families.
    Audit {
        /// Stream file; each stream is one family.
        #[arg(long, conflicts_with = "family")]
        streams: Option<PathBuf>,
        /// Family file split into consecutive groups of `group_size`.
        #[arg(long, requires = "group_size")]
        family: Option<PathBuf>,
        #[arg(long)]
        group_size: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, value_enum, default_value = "strict")]
        mode: AuditMode,
    },
    /// Piercing-number growth along prefixes.
    Growth {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_parser = parse_range)]
        sizes: std::ops::RangeInclusive<u32>,
    },
    /// A tangent rectangle missed by the given points.
    Escape {
        #[arg(long)]
        points: PathBuf,
    },
    /// Every t bodies pierced by m k-flats versus the whole family.
    Compactness {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Outcome {
    Holds,
    Fails,
    Inconclusive,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Fails => 1,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Serialize)]
struct Report {
    check: &'static str,
    verdict: Outcome,
    coverage: Value,
    certificates: Vec<Value>,
    seed: u64,
    details: Value,
}

struct Found {
    verdict: Outcome,
    coverage: Value,
    certificates: Vec<Value>,
    details: Value,
}

impl Found {
    fn exhaustive(verdict: Outcome, certificates: Vec<Value>, details: Value) -> Self {
        Found { verdict, coverage: json!({"mode": "exhaustive"}), certificates, details }
    }

    fn inconclusive(unknown: usize) -> Self {
        Self::exhaustive(Outcome::Inconclusive, vec![], json!({"unknown": unknown}))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsFile {
    Bare(Vec<[f64; 2]>),
    Wrapped { points: Vec<[f64; 2]> },
}

fn bodies(f: &FamilyArg) -> anyhow::Result<Vec<ConvexBody>> {
    let file = FamilyFile::parse(&read(&f.family)?)?;
    pick(&file.convex_bodies()?, f.indices.as_deref())
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn families(streams: Option<&PathBuf>, family: Option<&PathBuf>, group: Option<usize>) -> anyhow::Result<Vec<Vec<ConvexBody>>> {
    if let Some(p) = streams {
        return Ok(StreamsFile::parse(&read(p)?)?.streams.into_iter().map(|s| s.members).collect());
    }
    let (Some(p), Some(g)) = (family, group) else { bail!("audit needs --streams, or --family with --group-size") };
    ensure!(g > 0, "--group-size must be positive");
    let all = FamilyFile::parse(&read(p)?)?.convex_bodies()?;
    ensure!(all.len() % g == 0, "{} bodies do not split into groups of {g}", all.len());
    Ok(all.chunks(g).map(<[ConvexBody]>::to_vec).collect())
}

fn decide(check: &Check, seed: u64) -> anyhow::Result<(&'static str, Found)> {
    Ok(match check {
        Check::Pierce { family, m, k } => {
            let b = bodies(family)?;
            ("pierce", match m {
                None => {
                    ensure!(*k == 0, "exact piercing numbers need k = 0; pass --m for k-flats");
                    let sol = min_piercing_number(&b)?;
                    let certs = sol.points.iter().map(|p| json!({"point": p})).collect();
                    Found::exhaustive(Outcome::Holds, certs, json!({"piercing_number": sol.count}))
                }
                Some(m) => {
                    let verdict = match pierceable_by(&b, *m, *k)? {
                        Some(true) => Outcome::Holds,
                        Some(false) => Outcome::Fails,
                        None => Outcome::Inconclusive,
                    };
                    let certs = match (*k, verdict) {
                        (0, Outcome::Holds) => min_piercing_number(&b).map(|s| s.points.iter().map(|p| json!({"point": p})).collect()).unwrap_or_default(),
                        _ => vec![],
                    };
                    Found::exhaustive(verdict, certs, json!({"m": m, "k": k}))
                }
            })
        }
        Check::Transversal { family, k, budget } => {
            let ans = transversal(*k, &bodies(family)?, *budget)?;
            let verdict = match ans.status {
                Status::Pierced { .. } => Outcome::Holds,
                Status::Empty { certified: true } => Outcome::Fails,
                _ => Outcome::Inconclusive,
            };
            let certs = ans.witness().map(to_json).transpose()?.into_iter().collect();
            ("transversal", Found::exhaustive(verdict, certs, to_json(&ans)?))
        }
        Check::Kdep { family, k } => {
            let found = match is_k_dependent(&bodies(family)?, *k) {
                Ok(Some(c)) => Found::exhaustive(Outcome::Holds, vec![to_json(&c)?], json!({"k": k})),
                Ok(None) => Found::exhaustive(Outcome::Fails, vec![], json!({"k": k})),
                Err(Error::Inconclusive { unknown }) => Found::inconclusive(unknown),
                Err(e) => return Err(e.into()),
            };
            ("kdep", found)
        }
        Check::Pq { family, p, q, k } => {
            let found = match has_pq_property(&bodies(family)?, *p, *q, *k) {
                Ok(r) if r.holds => Found::exhaustive(Outcome::Holds, vec![], to_json(&r)?),
                Ok(r) => Found::exhaustive(Outcome::Fails, vec![], to_json(&r)?),
                Err(Error::Inconclusive { unknown }) => Found::inconclusive(unknown),
                Err(e) => return Err(e.into()),
            };
            ("pq", found)
        }
        Check::Audit { streams, family, group_size, k, budget, mode } => {
            let fams = families(streams.as_ref(), family.as_ref(), *group_size)?;
            let report = match mode {
                AuditMode::Strict => audit_strict_heterochromatic(&fams, *k, *budget, seed)?,
                AuditMode::Hetero => audit_heterochromatic(&fams, *k, *budget, seed)?,
            };
            let verdict = match report.verdict {
                Verdict::Holds => Outcome::Holds,
                Verdict::Fails { .. } => Outcome::Fails,
                Verdict::Inconclusive { .. } => Outcome::Inconclusive,
            };
            let certs = report.certificates.iter().map(to_json).collect::<anyhow::Result<_>>()?;
            let details = json!({"property": report.property, "result": report.verdict});
            ("audit", Found { verdict, coverage: to_json(&report.coverage)?, certificates: certs, details })
        }
        Check::Growth { family, k, sizes } => {
            let b = FamilyFile::parse(&read(family)?)?.convex_bodies()?;
            let s: Vec<usize> = sizes.clone().map(|x| x as usize).collect();
            let curve = piercing_growth(&b, &s, *k)?;
            ("growth", Found::exhaustive(Outcome::Holds, vec![], to_json(&curve)?))
        }
        Check::Escape { points } => {
            let pts = match serde_json::from_str::<PointsFile>(&read(points)?)? {
                PointsFile::Bare(p) | PointsFile::Wrapped { points: p } => p,
            };
            let cert = escape_rectangle(&pts)?;
            ("escape", Found::exhaustive(Outcome::Holds, vec![to_json(&cert)?], json!({"points": pts.len()})))
        }
        Check::Compactness { family, t, m, k } => {
            let found = match compactness_check(&bodies(family)?, *t, *m, *k) {
                Ok(r) => {
                    let verdict = match r.conclusion {
                        CompactnessConclusion::Contradiction => Outcome::Fails,
                        _ => Outcome::Holds,
                    };
                    Found::exhaustive(verdict, vec![], to_json(&r)?)
                }
                Err(Error::Inconclusive { unknown }) => Found::inconclusive(unknown),
                Err(e) => return Err(e.into()),
            };
            ("compactness", found)
        }
    })
}

pub fn run(a: CheckArgs, seed: u64) -> anyhow::Result<u8> {
    let (check, f) = decide(&a.check, seed)?;
    let report = Report { check, verdict: f.verdict, coverage: f.coverage, certificates: f.certificates, seed, details: f.details };
    emit(&report, a.out.as_ref())?;
    Ok(report.verdict.code())
}
