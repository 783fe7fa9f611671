//! Symbolic frequency-support regions and the sufficient conditions built on them.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::operators::{SignPattern, MAX_DIM};
use crate::{Error, Result};

/// A closed subset of frequency space.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportRegion {
    /// `∏ [−a_j, b_j]`.
    AxisBox { a: Vec<f64>, b: Vec<f64> },
    /// `∏ ℝ ∖ (−b_j, a_j)`.
    BoxComplementProduct { a: Vec<f64>, b: Vec<f64> },
    /// Union of the closed hyperoctants of the listed patterns.
    QuadrantUnion(Vec<SignPattern>),
    /// `{ξ ∈ Q : Σ ν_j ξ_j / b_j ≥ 1} ∪ {ξ ∈ −Q : Σ −ν_j ξ_j / a_j ≥ 1}`.
    NecessitySimplex { pattern: SignPattern, a: Vec<f64>, b: Vec<f64> },
}

fn check_bounds(a: &[f64], b: &[f64], strict: bool) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    if a.is_empty() {
        return Err(Error::InvalidRegion("bounds must not be empty".into()));
    }
    if a.len() > MAX_DIM {
        return Err(Error::TooManyDimensions(a.len()));
    }
    for &v in a.iter().chain(b) {
        let ok = v.is_finite() && if strict { v > 0.0 } else { v >= 0.0 };
        if !ok {
            let need = if strict { "positive" } else { "nonnegative" };
            return Err(Error::InvalidRegion(alloc::format!("bound {v} is not finite and {need}")));
        }
    }
    Ok(())
}

impl SupportRegion {
    pub fn axis_box(a: &[f64], b: &[f64]) -> Result<Self> {
        check_bounds(a, b, false)?;
        Ok(SupportRegion::AxisBox { a: a.to_vec(), b: b.to_vec() })
    }

    pub fn box_complement_product(a: &[f64], b: &[f64]) -> Result<Self> {
        check_bounds(a, b, false)?;
        Ok(SupportRegion::BoxComplementProduct { a: a.to_vec(), b: b.to_vec() })
    }

    pub fn quadrant_union(patterns: &[SignPattern]) -> Result<Self> {
        let first = patterns.first().ok_or_else(|| Error::InvalidRegion("empty pattern set".into()))?;
        if let Some(p) = patterns.iter().find(|p| p.dim() != first.dim()) {
            return Err(Error::DimensionMismatch { expected: first.dim(), found: p.dim() });
        }
        let mut set = patterns.to_vec();
        set.sort();
        set.dedup();
        Ok(SupportRegion::QuadrantUnion(set))
    }

    pub fn dim(&self) -> usize {
        match self {
            SupportRegion::AxisBox { a, .. }
            | SupportRegion::BoxComplementProduct { a, .. }
            | SupportRegion::NecessitySimplex { a, .. } => a.len(),
            SupportRegion::QuadrantUnion(p) => p[0].dim(),
        }
    }

    /// Closed-set membership.
    pub fn contains(&self, xi: &[f64]) -> bool {
        if xi.len() != self.dim() {
            return false;
        }
        match self {
            SupportRegion::AxisBox { a, b } => xi.iter().enumerate().all(|(j, &x)| -a[j] <= x && x <= b[j]),
            SupportRegion::BoxComplementProduct { a, b } => {
                xi.iter().enumerate().all(|(j, &x)| x <= -b[j] || x >= a[j])
            }
            SupportRegion::QuadrantUnion(patterns) => patterns.iter().any(|p| p.contains(xi)),
            SupportRegion::NecessitySimplex { pattern, a, b } => {
                let nu = |j: usize| f64::from(pattern.sign(j));
                let upper = pattern.contains(xi)
                    && xi.iter().enumerate().map(|(j, &x)| nu(j) * x / b[j]).sum::<f64>() >= 1.0;
                let lower = pattern.negate().contains(xi)
                    && xi.iter().enumerate().map(|(j, &x)| -nu(j) * x / a[j]).sum::<f64>() >= 1.0;
                upper || lower
            }
        }
    }

    /// Closed intervals covering the projection of the region onto `axis`.
    fn projection(&self, axis: usize) -> Vec<(f64, f64)> {
        const INF: f64 = f64::INFINITY;
        match self {
            SupportRegion::AxisBox { a, b } => vec![(-a[axis], b[axis])],
            SupportRegion::BoxComplementProduct { a, b } => vec![(-INF, -b[axis]), (a[axis], INF)],
            SupportRegion::QuadrantUnion(patterns) => {
                let mut out = Vec::new();
                if patterns.iter().any(|p| p.sign(axis) > 0) {
                    out.push((0.0, INF));
                }
                if patterns.iter().any(|p| p.sign(axis) < 0) {
                    out.push((-INF, 0.0));
                }
                out
            }
            SupportRegion::NecessitySimplex { pattern, a, b } => {
                let nu = f64::from(pattern.sign(axis));
                if a.len() == 1 {
                    // ν ξ ≥ b on Q, −ν ξ ≥ a on −Q
                    let upper = if nu > 0.0 { (b[0], INF) } else { (-INF, -b[0]) };
                    let lower = if nu > 0.0 { (-INF, -a[0]) } else { (a[0], INF) };
                    vec![upper, lower]
                } else {
                    vec![(-INF, 0.0), (0.0, INF)]
                }
            }
        }
    }

    /// Whether the region lies inside `∏ ℝ ∖ (−b_j, a_j)`, decided axis by axis.
    pub fn is_within_box_complement(&self, a: &[f64], b: &[f64]) -> bool {
        if a.len() != self.dim() || b.len() != self.dim() {
            return false;
        }
        (0..self.dim()).all(|j| {
            let (lo, hi) = (-b[j], a[j]);
            lo >= hi || self.projection(j).iter().all(|&(s, t)| t <= lo || s >= hi)
        })
    }
}

/// `necessity_region(ν, a, b)`, the two-simplex-complement set.
pub fn necessity_region(pattern: SignPattern, a: &[f64], b: &[f64]) -> Result<SupportRegion> {
    check_bounds(a, b, true)?;
    if a.len() != pattern.dim() {
        return Err(Error::DimensionMismatch { expected: pattern.dim(), found: a.len() });
    }
    Ok(SupportRegion::NecessitySimplex { pattern, a: a.to_vec(), b: b.to_vec() })
}

/// The condition under which a support pair is known to be sufficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    /// `supp f̂ ⊆ ∏[−a_j, b_j]` and `supp ĝ ⊆ ∏ ℝ∖(−b_j, a_j)`: every operator.
    BoxSeparation,
    /// Both supports lie in a union of hyperoctants that is closed under
    /// addition: every operator constant on that union.
    ClosedQuadrantUnion(Vec<SignPattern>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sufficiency {
    Sufficient(Condition),
    /// No known condition applies. This is not a disproof.
    Unknown,
}

impl Sufficiency {
    pub fn is_sufficient(&self) -> bool {
        matches!(self, Sufficiency::Sufficient(_))
    }

    pub fn describe(&self) -> String {
        match self {
            Sufficiency::Sufficient(Condition::BoxSeparation) => "sufficient: box separation".into(),
            Sufficiency::Sufficient(Condition::ClosedQuadrantUnion(p)) => {
                let names: Vec<String> = p.iter().map(|p| alloc::format!("{p}")).collect();
                alloc::format!("sufficient: closed quadrant union {{{}}}", names.join(", "))
            }
            Sufficiency::Unknown => "unknown".into(),
        }
    }
}

/// Decides whether the support regions of `f̂` and `ĝ` guarantee the identity.
pub fn check_support_condition(region_f: &SupportRegion, region_g: &SupportRegion) -> Result<Sufficiency> {
    if region_f.dim() != region_g.dim() {
        return Err(Error::DimensionMismatch { expected: region_f.dim(), found: region_g.dim() });
    }
    if let SupportRegion::AxisBox { a, b } = region_f {
        if region_g.is_within_box_complement(a, b) {
            return Ok(Sufficiency::Sufficient(Condition::BoxSeparation));
        }
    }
    if let (SupportRegion::QuadrantUnion(pf), SupportRegion::QuadrantUnion(pg)) = (region_f, region_g) {
        let mut union: Vec<SignPattern> = pf.iter().chain(pg).copied().collect();
        union.sort();
        union.dedup();
        if closed_under_addition(&union) {
            return Ok(Sufficiency::Sufficient(Condition::ClosedQuadrantUnion(union)));
        }
    }
    Ok(Sufficiency::Unknown)
}

/// Whether the union of the closed hyperoctants is closed under addition.
///
/// `Q_s + Q_t` is the union of the hyperoctants `u` with `u_j = s_j` on every
/// axis where `s` and `t` agree, so the union is closed iff every such `u`
/// belongs to the set.
pub fn closed_under_addition(patterns: &[SignPattern]) -> bool {
    let Some(first) = patterns.first() else {
        return true;
    };
    let d = first.dim();
    if patterns.iter().any(|p| p.dim() != d) {
        return false;
    }
    let full = (1usize << d) - 1;
    let mut member = vec![false; 1 << d];
    for p in patterns {
        member[p.index()] = true;
    }
    for s in patterns {
        for t in patterns {
            let free = s.index() ^ t.index();
            let fixed = s.index() & !free & full;
            // enumerate subsets of `free`
            let mut sub = free;
            loop {
                if !member[fixed | sub] {
                    return false;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
    }
    true
}
