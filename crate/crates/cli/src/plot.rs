use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::bail;
use clap::Args;
use serde::Deserialize;
use serde_json::Value;
use transversal_lab::io::{FamilyFile, StreamsFile};
use transversal_lab::stabbing::ChainMember;
use transversal_lab::{AnyBody, ConvexBody, Piece};

use crate::util::{read, write_text};

#[derive(Args)]
pub struct PlotArgs {
    /// Family, stream or sequence file.
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Draw the coordinate axes.
    #[arg(long)]
    axes: bool,
    /// Draw the unit circle.
    #[arg(long)]
    unit_circle: bool,
}

const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

enum Shape {
    Circle([f64; 2], f64),
    Polygon(Vec<[f64; 2]>),
    Polyline(Vec<[f64; 2]>),
}

struct Item {
    shape: Shape,
    color: &'static str,
    label: Option<String>,
    /// Where the label goes.
    anchor: [f64; 2],
}

#[derive(Deserialize)]
struct SequenceInput {
    members: Vec<ChainMember>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

fn centroid(pts: &[[f64; 2]]) -> [f64; 2] {
    let n = pts.len() as f64;
    [pts.iter().map(|p| p[0]).sum::<f64>() / n, pts.iter().map(|p| p[1]).sum::<f64>() / n]
}

/// Shape of a body in the plane, or of its projection along z with the
/// height as label.
fn shape(b: &ConvexBody) -> anyhow::Result<(Shape, Option<String>)> {
    Ok(match (b, b.dim()) {
        (ConvexBody::Ball { center, radius }, 2) => (Shape::Circle([center.0[0], center.0[1]], *radius), None),
        (ConvexBody::Ball { center, radius }, 3) => (Shape::Circle([center.0[0], center.0[1]], *radius), Some(format!("z={}", num(center.0[2])))),
        (ConvexBody::Lifted { vertices, z }, _) => (Shape::Polygon(vertices.clone()), Some(format!("z={}", num(*z)))),
        (ConvexBody::AxisBox { lo, hi }, 3) => {
            let (l, h) = (&lo.0, &hi.0);
            (Shape::Polygon(vec![[l[0], l[1]], [h[0], l[1]], [h[0], h[1]], [l[0], h[1]]]), Some(format!("z={}..{}", num(l[2]), num(h[2]))))
        }
        (_, 2) => match b.polygon2() {
            Some(p) => (Shape::Polygon(p), None),
            None => bail!("cannot draw a {}", b.kind()),
        },
        (_, d) => bail!("cannot plot a body of kind {} in d = {d}; plots need d = 2 or d = 3", b.kind()),
    })
}

fn items_of(body: &AnyBody, color: &'static str, label: Option<String>, out: &mut Vec<Item>) -> anyhow::Result<()> {
    let convex: Vec<&ConvexBody> = match body {
        AnyBody::Convex(b) => vec![b],
        AnyBody::Compound(c) => c.convex_pieces().collect(),
    };
    let mut first = true;
    for b in convex {
        let (shape, height) = shape(b)?;
        let anchor = match &shape {
            Shape::Circle(c, _) => *c,
            Shape::Polygon(p) | Shape::Polyline(p) => centroid(p),
        };
        let text = match (first.then(|| label.clone()).flatten(), height) {
            (Some(l), Some(h)) => Some(format!("{l} {h}")),
            (l, h) => l.or(h),
        };
        first = false;
        out.push(Item { shape, color, label: text, anchor });
    }
    if let AnyBody::Compound(c) = body {
        for p in &c.pieces {
            if let Piece::Polyline { polyline } = p {
                out.push(Item { shape: Shape::Polyline(polyline.clone()), color, label: None, anchor: polyline[0] });
            }
        }
    }
    Ok(())
}

fn collect(text: &str) -> anyhow::Result<Vec<Item>> {
    let v: Value = serde_json::from_str(text)?;
    let mut items = Vec::new();
    if v.get("bodies").is_some() {
        let f = FamilyFile::parse(text)?;
        for b in &f.bodies {
            items_of(b, PALETTE[0], None, &mut items)?;
        }
    } else if v.get("streams").is_some() {
        let f = StreamsFile::parse(text)?;
        for s in &f.streams {
            for b in &s.members {
                items_of(&AnyBody::Convex(b.clone()), PALETTE[s.index % PALETTE.len()], None, &mut items)?;
            }
        }
    } else if v.get("members").is_some() {
        let seq: SequenceInput = serde_json::from_value(v)?;
        for (step, m) in seq.members.iter().enumerate() {
            items_of(&AnyBody::Convex(m.body.clone()), PALETTE[m.family % PALETTE.len()], Some(format!("{step}")), &mut items)?;
        }
    } else {
        bail!("input is neither a family, a stream nor a sequence file");
    }
    Ok(items)
}

/// Deterministic SVG 1.1; y points up.
fn render(items: &[Item], axes: bool, unit_circle: bool) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut grow = |p: [f64; 2], r: f64| {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a] - r);
            hi[a] = hi[a].max(p[a] + r);
        }
    };
    for it in items {
        match &it.shape {
            Shape::Circle(c, r) => grow(*c, *r),
            Shape::Polygon(p) | Shape::Polyline(p) => p.iter().for_each(|&q| grow(q, 0.0)),
        }
    }
    if unit_circle || items.is_empty() {
        grow([0.0, 0.0], 1.0);
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let pad = 0.05 * extent;
    let (x0, y0, w, h) = (lo[0] - pad, -hi[1] - pad, hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let sw = num(extent / 400.0);
    let font = num(extent / 50.0);
    let pt = |p: &[f64; 2]| format!("{},{}", num(p[0]), num(-p[1]));

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">", num(x0), num(y0), num(w), num(h));
    let _ = writeln!(s, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>", num(x0), num(y0), num(w), num(h));
    if axes {
        let _ = writeln!(s, "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\" stroke=\"#888888\" stroke-width=\"{sw}\"/>", num(x0), num(x0 + w));
        let _ = writeln!(s, "<line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"{sw}\"/>", num(y0), num(y0 + h));
    }
    if unit_circle {
        let _ = writeln!(s, "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"{sw}\"/>");
    }
    for it in items {
        let style = format!("fill=\"{c}\" fill-opacity=\"0.15\" stroke=\"{c}\" stroke-width=\"{sw}\"", c = it.color);
        match &it.shape {
            Shape::Circle(c, r) => {
                let _ = writeln!(s, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>", num(c[0]), num(-c[1]), num(*r));
            }
            Shape::Polygon(p) => {
                let pts: Vec<String> = p.iter().map(pt).collect();
                let _ = writeln!(s, "<polygon points=\"{}\" {style}/>", pts.join(" "));
            }
            Shape::Polyline(p) => {
                let pts: Vec<String> = p.iter().map(pt).collect();
                let _ = writeln!(s, "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{sw}\"/>", pts.join(" "), it.color);
            }
        }
        if let Some(l) = &it.label {
            let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" font-size=\"{font}\" text-anchor=\"middle\">{l}</text>", num(it.anchor[0]), num(-it.anchor[1]));
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn run(a: PlotArgs) -> anyhow::Result<u8> {
    let items = collect(&read(&a.input)?)?;
    write_text(&render(&items, a.axes, a.unit_circle), a.out.as_ref())?;
    Ok(0)
}
