use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::Serialize;
use transversal_lab::io::to_canonical;

/// Parses `a..b` (inclusive) or a single number.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes canonical JSON to `out`, or stdout without one.
pub fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>) -> anyhow::Result<()> {
    write_text(&to_canonical(value)?, out)
}

pub fn write_text(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pick<T: Clone>(items: &[T], indices: Option<&[usize]>) -> anyhow::Result<Vec<T>> {
    match indices {
        None => Ok(items.to_vec()),
        Some(idx) => idx
            .iter()
            .map(|&i| match items.get(i) {
                Some(x) => Ok(x.clone()),
                None => bail!("index {i} out of range for {} bodies", items.len()),
            })
            .collect(),
    }
}
