use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;
use transversal_lab::families::{
    gen_ai_packing, gen_ball_with_tail, gen_lifted_rect, gen_right_triangles, gen_tangent_rect, gen_unit_ball_grid, nested_cone_stream,
    row_stream, Lattice, TangentIndex,
};
use transversal_lab::io::{FamilyFile, GeneratorInfo, StreamsFile};
use transversal_lab::sequence::{FnStream, ListStream};
use transversal_lab::{AnyBody, ConvexBody};

use crate::util::{emit, parse_range, read};

#[derive(Args)]
pub struct GenArgs {
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    generator: Generator,
}

#[derive(Args)]
struct Grid {
    /// Family indices, e.g. 2..12.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<u32>,
    /// Member indices, e.g. 1..4.
    #[arg(long, value_parser = parse_range)]
    i: RangeInclusive<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Hexagonal,
    Square,
}

#[derive(Subcommand)]
enum Generator {
    /// Rectangles tangent to the unit circle.
    TangentRects(Grid),
    /// Right triangles inside the tangent rectangles.
    RightTriangles(Grid),
    /// Tangent rectangles lifted to height z = n.
    LiftedRects(Grid),
    /// Unit balls of the grid families.
    UnitBallGrid {
        #[arg(long, value_parser = parse_range)]
        rows: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        cols: RangeInclusive<u32>,
    },
    /// Balls with polyline tails (non-convex).
    BallWithTail {
        #[arg(long, value_parser = parse_range)]
        m: RangeInclusive<u32>,
    },
    /// Unit balls packed into the region of points with a k-flat through
    /// every base ball.
    AiPacking {
        /// Family file with the base balls.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        k: usize,
        /// Lower corner, e.g. -10,-10.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lo: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        hi: Vec<f64>,
        #[arg(long, value_enum, default_value = "hexagonal")]
        lattice: LatticeArg,
    },
    /// Stream file: one row of unit disks per family.
    RowStreams {
        /// Family indices, e.g. `1..8`.
        #[arg(long, value_parser = parse_range)]
        rows: RangeInclusive<u32>,
        /// Members written per stream.
        #[arg(long, default_value_t = 64)]
        members: usize,
    },
    /// Stream file: rows whose far members enter every cone around the
    /// positive x-axis.
    ConeStreams {
        /// Family indices, e.g. `1..8`.
        #[arg(long, value_parser = parse_range)]
        rows: RangeInclusive<u32>,
        #[arg(long, default_value_t = 400)]
        members: usize,
    },
}

fn grid(g: &Grid, f: impl Fn(u32, u32) -> transversal_lab::Result<ConvexBody>) -> anyhow::Result<Vec<AnyBody>> {
    let mut out = Vec::new();
    for n in g.n.clone() {
        for i in g.i.clone() {
            out.push(AnyBody::Convex(f(n, i)?));
        }
    }
    Ok(out)
}

fn grid_params(g: &Grid) -> serde_json::Value {
    json!({"n": [g.n.start(), g.n.end()], "i": [g.i.start(), g.i.end()]})
}

fn list(stream: FnStream, members: usize) -> ListStream {
    use transversal_lab::sequence::FamilyStream;
    ListStream { index: stream.index(), members: (0..members).filter_map(|j| stream.member(j)).collect() }
}

pub fn run(a: GenArgs) -> anyhow::Result<u8> {
    let info = |name: &str, params| Some(GeneratorInfo { name: name.into(), params });
    let family = match &a.generator {
        Generator::TangentRects(g) => FamilyFile::new(info("tangent-rects", grid_params(g)), grid(g, |n, i| gen_tangent_rect(TangentIndex::new(n, i)?))?)?,
        Generator::RightTriangles(g) => FamilyFile::new(info("right-triangles", grid_params(g)), grid(g, gen_right_triangles)?)?,
        Generator::LiftedRects(g) => FamilyFile::new(info("lifted-rects", grid_params(g)), grid(g, gen_lifted_rect)?)?,
        Generator::UnitBallGrid { rows, cols } => {
            let g = Grid { n: rows.clone(), i: cols.clone() };
            let params = json!({"rows": [rows.start(), rows.end()], "cols": [cols.start(), cols.end()]});
            FamilyFile::new(info("unit-ball-grid", params), grid(&g, gen_unit_ball_grid)?)?
        }
        Generator::BallWithTail { m } => {
            let bodies = m.clone().map(|m| gen_ball_with_tail(m).map(AnyBody::Compound)).collect::<Result<Vec<_>, _>>()?;
            FamilyFile::new(info("ball-with-tail", json!({"m": [m.start(), m.end()]})), bodies)?
        }
        Generator::AiPacking { base, k, lo, hi, lattice } => {
            let base_file = FamilyFile::parse(&read(base)?)?;
            let base_bodies = base_file.convex_bodies()?;
            let lat = match lattice {
                LatticeArg::Hexagonal => Lattice::Hexagonal,
                LatticeArg::Square => Lattice::Square,
            };
            let bodies = gen_ai_packing(&base_bodies, *k, (lo, hi), lat)?;
            anyhow::ensure!(!bodies.is_empty(), "no packed ball fits the region inside the given extent");
            let name = match lattice {
                LatticeArg::Hexagonal => "hexagonal",
                LatticeArg::Square => "square",
            };
            let params = json!({"base": base_file.bodies, "k": k, "lo": lo, "hi": hi, "lattice": name});
            FamilyFile::new(info("ai-packing", params), bodies.into_iter().map(AnyBody::Convex).collect())?
        }
        Generator::RowStreams { rows, members } => {
            let streams = rows.clone().map(|n| list(row_stream(n), *members)).collect();
            let params = json!({"rows": [rows.start(), rows.end()], "members": members});
            emit(&StreamsFile::new(info("row-streams", params), streams)?, a.out.as_ref())?;
            return Ok(0);
        }
        Generator::ConeStreams { rows, members } => {
            let streams = rows.clone().map(|n| list(nested_cone_stream(n), *members)).collect();
            let params = json!({"rows": [rows.start(), rows.end()], "members": members});
            emit(&StreamsFile::new(info("cone-streams", params), streams)?, a.out.as_ref())?;
            return Ok(0);
        }
    };
    emit(&family, a.out.as_ref())?;
    Ok(0)
}
