use std::path::PathBuf;

use clap::{Args, ValueEnum};
use itertools::Itertools;
use serde::Serialize;
use serde_json::Value;
use transversal_lab::io::{StreamsFile, FORMAT_VERSION};
use transversal_lab::sequence::{build_independent, greedy_disjoint_heterochromatic};
use transversal_lab::stabbing::{ChainMember, ChainOutcome, DisjointChain};
use transversal_lab::transversal::{transversal, DEFAULT_BUDGET};
use transversal_lab::{ConvexBody, Direction, Error};

use crate::util::{emit, read};

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Pairwise-disjoint bodies from increasing families.
    DisjointHetero,
    /// Planar bodies no three of which share a line.
    #[value(name = "independent-k1-d2")]
    IndependentK1D2,
}

#[derive(Args)]
pub struct BuildArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    streams: PathBuf,
    /// Target length.
    #[arg(long = "M")]
    m: usize,
    /// Cone axis for the independent builder.
    #[arg(long, value_delimiter = ',', default_value = "1,0", allow_hyphen_values = true)]
    direction: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct StepCheck {
    /// Earlier positions tested together with this step.
    with: Vec<usize>,
    answer: Value,
}

#[derive(Serialize)]
struct Step {
    step: usize,
    family: usize,
    certificates: Vec<StepCheck>,
}

#[derive(Serialize)]
struct SequenceFile {
    version: &'static str,
    kind: &'static str,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    members: Vec<ChainMember>,
    steps: Vec<Step>,
}

/// Per step, the k-transversal answer for the new member with every k+1
/// earlier ones.
fn steps(chain: &DisjointChain, k: usize) -> anyhow::Result<Vec<Step>> {
    let bodies: Vec<&ConvexBody> = chain.members.iter().map(|m| &m.body).collect();
    (0..bodies.len())
        .map(|j| {
            let certificates = (0..j)
                .combinations(k + 1)
                .map(|with| {
                    let group: Vec<ConvexBody> = with.iter().chain([&j]).map(|&i| bodies[i].clone()).collect();
                    Ok(StepCheck { answer: serde_json::to_value(transversal(k, &group, DEFAULT_BUDGET)?)?, with })
                })
                .collect::<anyhow::Result<_>>()?;
            Ok(Step { step: j, family: chain.members[j].family, certificates })
        })
        .collect()
}

pub fn run(a: BuildArgs) -> anyhow::Result<u8> {
    let mut streams = StreamsFile::parse(&read(&a.streams)?)?.streams;
    let (name, k, outcome) = match a.kind {
        Kind::DisjointHetero => {
            let out = match greedy_disjoint_heterochromatic(&mut streams, a.m) {
                Ok(chain) => ChainOutcome::Chain { chain },
                Err(e @ Error::StreamExhausted { .. }) => ChainOutcome::Stuck { best: DisjointChain::default(), reason: e.to_string() },
                Err(e) => return Err(e.into()),
            };
            ("disjoint-hetero", 0, out)
        }
        Kind::IndependentK1D2 => {
            let dir = Direction::new(a.direction.clone())?;
            anyhow::ensure!(dir.dim() == 2, "--direction must be planar");
            ("independent-k1-d2", 1, build_independent(1, dir, &mut streams, a.m)?)
        }
    };
    let (label, reason, chain, code) = match outcome {
        ChainOutcome::Chain { chain } => ("complete", None, chain, 0),
        ChainOutcome::Stuck { best, reason } => ("stuck", Some(reason), best, 4),
    };
    if let Some(r) = &reason {
        eprintln!("tlab: builder stuck after {} of {} steps: {r}", chain.len(), a.m);
    }
    let file = SequenceFile { version: FORMAT_VERSION, kind: name, outcome: label, reason, steps: steps(&chain, k)?, members: chain.members };
    emit(&file, a.out.as_ref())?;
    Ok(code)
}
