//! Regions of points through which some line meets two base balls, and
//! lattice packings of unit balls inside them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::vector::{axpy, dot, norm, scale, sub};
use crate::geometry::{ConvexBody, Direction, KFlat, Point};
use crate::transversal::pierces;

fn check(base: &[ConvexBody], k: usize, d: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    if k != 1 || !(d == 2 || d == 3) || base.len() != k + 1 {
        return Err(Error::Unsupported(format!("region membership for k = {k}, d = {d} with {} base balls", base.len())));
    }
    base.iter()
        .map(|b| {
            if b.dim() != d {
                return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
            }
            b.as_ball().map(|(c, r)| (c.to_vec(), r)).ok_or_else(|| Error::Unsupported(format!("base bodies must be balls, got {}", b.kind())))
        })
        .collect()
}

/// A line through `x` meeting both base balls, if one exists.
///
/// The directions of lines through `x` meeting a ball `B(c, r)` form the
/// double cap of angular radius `asin(r / |c - x|)` around `c - x` (every
/// direction when `x` is inside). Two double caps meet iff the angle
/// between their axes, taken up to sign, is at most the sum of the radii.
pub fn ai_region_witness(x: &[f64], base: &[ConvexBody], k: usize) -> Result<Option<KFlat>> {
    let balls = check(base, k, x.len())?;
    let mut caps = Vec::new();
    for (c, r) in &balls {
        let v = sub(c, x);
        let len = norm(&v);
        if len <= *r {
            caps.push(None);
        } else {
            caps.push(Some((scale(&v, 1.0 / len), (r / len).asin())));
        }
    }
    let dir = match (&caps[0], &caps[1]) {
        (None, None) => {
            let mut e = vec![0.0; x.len()];
            e[0] = 1.0;
            e
        }
        (Some((a, _)), None) | (None, Some((a, _))) => a.clone(),
        (Some((a1, t1)), Some((a2, t2))) => {
            let mut a2 = a2.clone();
            if dot(a1, &a2) < 0.0 {
                a2 = scale(&a2, -1.0);
            }
            let cos = dot(a1, &a2).clamp(-1.0, 1.0);
            let theta = cos.acos();
            if theta > t1 + t2 {
                return Ok(None);
            }
            let w = axpy(&a2, -cos, a1);
            let wn = norm(&w);
            if wn < 1e-15 {
                a1.clone()
            } else {
                let s = theta.min(*t1);
                axpy(&scale(a1, s.cos()), s.sin() / wn, &w)
            }
        }
    };
    let line = KFlat::line(Point(x.to_vec()), Direction::new(dir)?)?;
    for b in base {
        if !pierces(&line, b)? {
            return Ok(None);
        }
    }
    Ok(Some(line))
}

/// Whether some line through `x` meets every base ball.
pub fn ai_region_member(x: &[f64], base: &[ConvexBody], k: usize) -> Result<bool> {
    Ok(ai_region_witness(x, base, k)?.is_some())
}

/// Lattice used for the packing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Hexagonal in the plane, face-centered cubic in space.
    #[default]
    Hexagonal,
    Square,
}

fn lattice_points(lo: &[f64], hi: &[f64], lattice: Lattice) -> Vec<Vec<f64>> {
    let d = lo.len();
    let mut out = Vec::new();
    match (lattice, d) {
        (Lattice::Hexagonal, 2) => {
            let dy = 3f64.sqrt();
            let rows = ((hi[1] - lo[1]) / dy).floor() as i64;
            for r in 0..=rows {
                let y = lo[1] + r as f64 * dy;
                let shift = if r % 2 == 1 { 1.0 } else { 0.0 };
                let mut x = lo[0] + shift;
                while x <= hi[0] {
                    out.push(vec![x, y]);
                    x += 2.0;
                }
            }
        }
        (Lattice::Hexagonal, 3) => {
            // cubic cells of side 2 sqrt 2 with face centers: nearest neighbours at distance 2
            let a = 2.0 * 2f64.sqrt();
            let offs = [[0.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]];
            let n: Vec<i64> = (0..3).map(|i| ((hi[i] - lo[i]) / a).floor() as i64).collect();
            for i in 0..=n[0] {
                for j in 0..=n[1] {
                    for k in 0..=n[2] {
                        for o in &offs {
                            let p: Vec<f64> = (0..3).map(|t| lo[t] + a * ([i, j, k][t] as f64 + o[t])).collect();
                            if (0..3).all(|t| p[t] <= hi[t]) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        _ => {
            let n: Vec<i64> = (0..d).map(|i| ((hi[i] - lo[i]) / 2.0).floor() as i64).collect();
            let mut idx = vec![0i64; d];
            loop {
                out.push((0..d).map(|t| lo[t] + 2.0 * idx[t] as f64).collect());
                let mut t = d;
                loop {
                    if t == 0 {
                        return out;
                    }
                    t -= 1;
                    idx[t] += 1;
                    if idx[t] <= n[t] {
                        break;
                    }
                    idx[t] = 0;
                }
            }
        }
    }
    out
}

/// Twelve points on the unit sphere (or circle) used as a containment sample.
fn boundary_samples(d: usize) -> Vec<Vec<f64>> {
    if d == 2 {
        return (0..12).map(|i| {
            let t = std::f64::consts::PI * i as f64 / 6.0;
            vec![t.cos(), t.sin()]
        }).collect();
    }
    // icosahedron vertices
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let s = (1.0 + g * g).sqrt();
    let mut out = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-g, g] {
            out.push(vec![0.0, a / s, b / s]);
            out.push(vec![a / s, b / s, 0.0]);
            out.push(vec![b / s, 0.0, a / s]);
        }
    }
    out
}

/// Unit balls on a lattice inside the box `extent` whose centers and
/// twelve sampled boundary points all lie in the region. Containment is
/// only sampled.
pub fn gen_ai_packing(base: &[ConvexBody], k: usize, extent: (&[f64], &[f64]), lattice: Lattice) -> Result<Vec<ConvexBody>> {
    let d = extent.0.len();
    check(base, k, d)?;
    let samples = boundary_samples(d);
    let mut out = Vec::new();
    for c in lattice_points(extent.0, extent.1, lattice) {
        if !ai_region_member(&c, base, k)? {
            continue;
        }
        let mut inside = true;
        for s in &samples {
            if !ai_region_member(&axpy(&c, 1.0, s), base, k)? {
                inside = false;
                break;
            }
        }
        if inside {
            out.push(ConvexBody::ball(c, 1.0)?);
        }
    }
    Ok(out)
}
