//! CSV export with optional slicing.

use std::fmt::Write;

use hsig_core::{Domain, Signal};

use crate::CliError;

/// Fixes storage index `index` on 1-based `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slice {
    pub axis: usize,
    pub index: usize,
}

impl std::str::FromStr for Slice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, i) = s.split_once('=').ok_or_else(|| format!("expected AXIS=INDEX, got {s:?}"))?;
        let axis = a.trim().parse().map_err(|_| format!("bad axis in {s:?}"))?;
        let index = i.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
        Ok(Slice { axis, index })
    }
}

/// CSV with columns `x1…` (or `xi1…` for spectra) over the free axes, then
/// `re, im, abs, arg`. Rows run over free axes in ascending coordinate, the
/// last axis fastest.
pub fn to_csv(s: &Signal, slices: &[Slice]) -> Result<String, CliError> {
    let grid = s.grid();
    let d = grid.dim();
    let mut fixed: Vec<Option<usize>> = vec![None; d];
    for sl in slices {
        if sl.axis == 0 || sl.axis > d {
            return Err(CliError::Usage(format!("slice axis {} out of range 1..={d}", sl.axis)));
        }
        let n = grid.samples_per_axis()[sl.axis - 1];
        if sl.index >= n {
            return Err(CliError::Usage(format!("slice index {} out of range 0..{n} on axis {}", sl.index, sl.axis)));
        }
        if fixed[sl.axis - 1].replace(sl.index).is_some() {
            return Err(CliError::Usage(format!("axis {} sliced twice", sl.axis)));
        }
    }
    let free: Vec<usize> = (0..d).filter(|&j| fixed[j].is_none()).collect();
    let frequency = s.domain() == Domain::Frequency;
    let prefix = if frequency { "xi" } else { "x" };

    let mut out = String::new();
    for &j in &free {
        write!(out, "{prefix}{},", j + 1).unwrap();
    }
    out.push_str("re,im,abs,arg\n");

    // position p on axis j maps to this storage index
    let storage = |j: usize, p: usize| -> usize {
        let n = grid.samples_per_axis()[j];
        if frequency {
            (p + n / 2) % n
        } else {
            p
        }
    };
    let coordinate = |j: usize, k: usize| if frequency { grid.axis_frequency(j, k) } else { grid.coordinate(j, k) };
    let counts: Vec<usize> = free.iter().map(|&j| grid.samples_per_axis()[j]).collect();
    let rows: usize = counts.iter().product();
    let mut index = vec![0usize; d];
    for row in 0..rows {
        let mut rem = row;
        for (slot, &j) in free.iter().enumerate().rev() {
            index[j] = storage(j, rem % counts[slot]);
            rem /= counts[slot];
        }
        for j in 0..d {
            if let Some(k) = fixed[j] {
                index[j] = k;
            }
        }
        for &j in &free {
            write!(out, "{},", coordinate(j, index[j])).unwrap();
        }
        let v = s.get(&index)?;
        writeln!(out, "{},{},{},{}", v.re, v.im, v.norm(), v.arg()).unwrap();
    }
    Ok(out)
}
