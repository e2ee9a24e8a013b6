//! Repair-bandwidth ratios, group-count selection, and published lower
//! bounds of related piggybacking codes.
//!
//! Ratios of the code implemented here are exact rationals. Comparator
//! bounds involve square roots and are evaluated in `f64`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::code::CodeShape;
use crate::error::{Error, Result};
use crate::repair::predicted_bandwidth;

/// Exact rational used for every ratio of the implemented code.
pub type Rational = Ratio<i64>;

/// Tolerance for comparisons between real-valued bounds.
pub const BOUND_TOLERANCE: f64 = 1e-9;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Renders a non-negative rational with `places` decimals, rounding half to
/// even.
pub fn render_decimal(value: Rational, places: u32) -> String {
    let sign = if value < Rational::zero() { "-" } else { "" };
    let value = value.abs();
    let num = *value.numer() as i128 * 10i128.pow(places);
    let den = *value.denom() as i128;
    let (mut quot, rem) = num.div_rem(&den);
    if 2 * rem > den || (2 * rem == den && quot % 2 == 1) {
        quot += 1;
    }
    let scale = 10i128.pow(places);
    if places == 0 {
        return format!("{sign}{quot}");
    }
    format!(
        "{sign}{}.{:0width$}",
        quot / scale,
        quot % scale,
        width = places as usize
    )
}

/// Per-node and averaged repair bandwidth for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandwidthProfile {
    pub k: usize,
    pub r: usize,
    pub groups: usize,
    pub per_node: Vec<usize>,
    pub avg_data: Rational,
    pub avg_parity: Rational,
    pub avg_all: Rational,
    pub gamma_sys: Rational,
    pub gamma_par: Rational,
    pub gamma_all: Rational,
    /// `1 - gamma_all`: fraction saved over conventional repair.
    pub rs_reduction: Rational,
}

impl BandwidthProfile {
    pub fn total(&self) -> usize {
        self.per_node.iter().sum()
    }

    pub fn rate(&self) -> Rational {
        q(self.k as i64, (self.k + self.r) as i64)
    }
}

/// Enumerates every single-node failure with [`predicted_bandwidth`].
pub fn exact_profile(shape: &CodeShape) -> BandwidthProfile {
    let (n, k, r) = (shape.n(), shape.k(), shape.r());
    let per_node: Vec<usize> = (1..=n)
        .map(|v| predicted_bandwidth(shape, v).expect("node in range"))
        .collect();
    let data: usize = per_node[..k].iter().sum();
    let parity: usize = per_node[k..].iter().sum();
    let kr = (k * r) as i64;
    let avg_data = q(data as i64, k as i64);
    let avg_parity = q(parity as i64, r as i64);
    let avg_all = q((data + parity) as i64, n as i64);
    BandwidthProfile {
        k,
        r,
        groups: shape.groups(),
        per_node,
        avg_data,
        avg_parity,
        avg_all,
        gamma_sys: avg_data / kr,
        gamma_par: avg_parity / kr,
        gamma_all: avg_all / kr,
        rs_reduction: Rational::one() - avg_all / kr,
    }
}

fn require_divisible(shape: &CodeShape) -> Result<(i64, i64, i64)> {
    let (k, r, l) = (shape.k(), shape.r(), shape.groups());
    if k % l != 0 {
        return Err(Error::GroupsDoNotDivide { k, l });
    }
    Ok((k as i64, r as i64, l as i64))
}

/// Closed-form data-node ratio, valid when `L | k`.
pub fn gamma_sys_closed(shape: &CodeShape) -> Result<Rational> {
    let (k, r, l) = require_divisible(shape)?;
    let tail = q(-5 * l * l + 6 * l * r + 9 * l - 6 * r - 4, 2 * k * l * r);
    Ok(q(l, 2 * r) + q(1, l) - q(3, 2 * l * r) + q(1, l * l * r) + tail)
}

/// Closed-form parity-node ratio, valid when `L | k`.
pub fn gamma_par_closed(shape: &CodeShape) -> Result<Rational> {
    let (k, r, l) = require_divisible(shape)?;
    Ok(q(k + r - 1, k * r) + q((l - 1) * (2 * r - l), 2 * l * r * r))
}

/// Data-node ratio as `k -> infinity`, with `L` treated as a real.
pub fn gamma_sys_asymptotic(r: f64, l: f64) -> f64 {
    l / (2.0 * r) + 1.0 / l - 3.0 / (2.0 * l * r) + 1.0 / (l * l * r)
}

/// Data-node ratio for finite `k`, with `L` treated as a real.
pub fn gamma_sys_real(k: Option<f64>, r: f64, l: f64) -> f64 {
    let tail = match k {
        Some(k) => (-2.5 * l * l + 3.0 * l * r + 4.5 * l - 3.0 * r - 2.0) / (k * l * r),
        None => 0.0,
    };
    gamma_sys_asymptotic(r, l) + tail
}

/// Parity-node ratio, with `L` treated as a real; `k = None` is the limit.
pub fn gamma_par_real(k: Option<f64>, r: f64, l: f64) -> f64 {
    let head = match k {
        Some(k) => (k + r - 1.0) / (k * r),
        None => 1.0 / r,
    };
    head + (l - 1.0) * (2.0 * r - l) / (2.0 * l * r * r)
}

/// Group count minimizing repair bandwidth among the two integers nearest
/// `sqrt(2r - 1)`, clamped to `[2, r]`. Without `k` the asymptotic data-node
/// ratio decides; with `k` the exact all-node ratio does. Ties go to the
/// smaller count.
pub fn optimal_l(r: usize, k: Option<usize>) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
    }
    let root = ((2 * r - 1) as f64).sqrt();
    let mut candidates = vec![
        (root.floor() as usize).clamp(2, r),
        (root.ceil() as usize).clamp(2, r),
    ];
    candidates.dedup();
    let best = match k {
        None => candidates
            .into_iter()
            .map(|l| (gamma_sys_asymptotic(r as f64, l as f64), l))
            .fold(None, |acc: Option<(f64, usize)>, (g, l)| match acc {
                Some((bg, _)) if bg <= g + BOUND_TOLERANCE => acc,
                _ => Some((g, l)),
            })
            .map(|(_, l)| l),
        Some(k) => {
            let mut best: Option<(Rational, usize)> = None;
            for l in candidates {
                let g = exact_profile(&CodeShape::new(k + r, k, l)?).gamma_all;
                if best.as_ref().is_none_or(|(bg, _)| g < *bg) {
                    best = Some((g, l));
                }
            }
            best.map(|(_, l)| l)
        }
    };
    Ok(best.expect("at least one candidate"))
}

/// Group count in `[2, r]` with the smallest exact all-node ratio; ties go
/// to the smaller count.
pub fn best_group_count(k: usize, r: usize) -> Result<usize> {
    let mut best: Option<(Rational, usize)> = None;
    for l in 2..=r {
        let g = exact_profile(&CodeShape::new(k + r, k, l)?).gamma_all;
        if best.as_ref().is_none_or(|(bg, _)| g < *bg) {
            best = Some((g, l));
        }
    }
    best.map(|(_, l)| l)
        .ok_or_else(|| Error::InvalidParams(format!("r = {r} must be at least 2")))
}

/// Minimum repair bandwidth `(n-1) l / (n-k)` of any MDS array code with
/// sub-packetization `l = r`: `n - 1` symbols.
pub fn msr_bound(shape: &CodeShape) -> usize {
    shape.n() - 1
}

/// Codes whose published bounds are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CodeName {
    RsrI,
    RsrII,
    Repb,
    Oop,
    C0,
    C1,
    FirstCode23,
    Proposed,
}

impl CodeName {
    pub fn label(self) -> &'static str {
        match self {
            CodeName::RsrI => "RSR-I",
            CodeName::RsrII => "RSR-II",
            CodeName::Repb => "REPB",
            CodeName::Oop => "OOP",
            CodeName::C0 => "C0",
            CodeName::C1 => "C1",
            CodeName::FirstCode23 => "FirstCode23",
            CodeName::Proposed => "Proposed",
        }
    }
}

impl fmt::Display for CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which nodes a ratio averages over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RatioKind {
    Data,
    Parity,
    All,
}

impl RatioKind {
    pub fn label(self) -> &'static str {
        match self {
            RatioKind::Data => "data",
            RatioKind::Parity => "parity",
            RatioKind::All => "all",
        }
    }
}

/// A lower bound on an average repair-bandwidth ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparatorBound {
    pub code: CodeName,
    pub kind: RatioKind,
    pub value: f64,
    /// `None` for the `k -> infinity` limit.
    pub k: Option<usize>,
    pub r: usize,
    /// Real-valued group parameter (`L*`, `L**`, or the proposed `L`).
    pub l_real: Option<f64>,
    /// Integer parameters of the first-code family, at the minimizer.
    pub m: Option<usize>,
    pub l: Option<usize>,
}

/// A bound that could not be evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmittedBound {
    pub code: CodeName,
    pub kind: RatioKind,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComparatorTable {
    pub bounds: Vec<ComparatorBound>,
    pub omitted: Vec<OmittedBound>,
}

impl ComparatorTable {
    pub fn get(&self, code: CodeName, kind: RatioKind) -> Option<f64> {
        self.bounds
            .iter()
            .find(|b| b.code == code && b.kind == kind)
            .map(|b| b.value)
    }
}

/// RSR-I / RSR-II parity bound.
fn rsr_parity(k: Option<f64>, r: f64) -> f64 {
    match k {
        Some(k) => 1.0 / r + (r - 1.0) * (k + r - 1.0) / (2.0 * k * r),
        None => 1.0 / r + (r - 1.0) / (2.0 * r),
    }
}

pub fn oop_data(r: f64) -> f64 {
    let s = (r - 1.0).sqrt();
    (2.0 * s + 1.0) / (2.0 * s + r)
}

pub fn oop_parity(k: Option<f64>, r: f64) -> f64 {
    let s = (r - 1.0).sqrt();
    let tail = k.map_or(0.0, |k| ((r - 1.0).powi(2) - (r - 1.0).powf(1.5)) / (k * r));
    (s + 1.0) / r + tail
}

fn c0_data(r: f64, l: f64) -> f64 {
    l / (2.0 * r) + 1.0 / l - 1.0 / (2.0 * l * r)
}

fn c0_parity(k: Option<f64>, r: f64, l: f64) -> f64 {
    match k {
        Some(k) => {
            (k + r) / (k * r)
                + 2.0 * (r - l - 1.0).powi(2) / (k * (4.0 * r - 3.0 - l))
                + (k * r - k - r) * (l + 1.0) / (k * r * r)
        }
        None => 1.0 / r + (r - 1.0) * (l + 1.0) / (r * r),
    }
}

/// C1's data bound coincides with the proposed `k -> infinity` form.
pub fn c1_data(r: f64, l: f64) -> f64 {
    gamma_sys_asymptotic(r, l)
}

pub fn c1_parity(k: Option<f64>, r: f64, l: f64) -> f64 {
    let head = l / r + (r - l) / (r * r);
    match k {
        Some(k) => {
            let denom = ((l - 2.0) * (l - 1.0) + 2.0 * r - 4.0) * k * r * r;
            head + (r - l) * (r - 1.0) / (k * r * r)
                + 2.0 * (r - l).powi(2) * (r - 1.0).powi(2) / denom
        }
        None => head,
    }
}

/// All-node ratio of the first code of the 2023 piggybacking family with
/// parameters `1 <= L < m < r`; `k = None` is the limit.
pub fn first_code23(k: Option<f64>, r: f64, m: f64, l: f64) -> f64 {
    let inner = m * m - m * (l + 1.0) + (l + 1.0) * (2.0 * l + 1.0) / 6.0;
    let (factor, tail) = match k {
        Some(k) => ((k + r) / k, (m - l) / (m * k)),
        None => (1.0, 0.0),
    };
    factor * inner / (l * m * (r - 1.0)) + (l + 1.0) / (2.0 * m) + tail
}

/// Minimum of [`first_code23`] over the integer grid `1 <= L < m < r`,
/// returning `(value, m, L)`.
pub fn first_code23_min(k: Option<usize>, r: usize) -> Option<(f64, usize, usize)> {
    let kf = k.map(|k| k as f64);
    let mut best: Option<(f64, usize, usize)> = None;
    for m in 2..r {
        for l in 1..m {
            let v = first_code23(kf, r as f64, m as f64, l as f64);
            if best.is_none_or(|(b, _, _)| v < b) {
                best = Some((v, m, l));
            }
        }
    }
    best
}

/// Evaluates every closed-form bound at `(k, r)`; `k = None` takes the
/// `k -> infinity` limit. The proposed entries use `L = sqrt(2r - 1)`.
pub fn comparator_bounds(k: Option<usize>, r: usize) -> Result<ComparatorTable> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("r = {r} must be at least 2")));
    }
    if k == Some(0) {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let kf = k.map(|k| k as f64);
    let rf = r as f64;
    let star = (2.0 * rf - 1.0).sqrt();
    let mut table = ComparatorTable::default();
    let mut push = |code, kind, value: f64, l_real, ml: Option<(usize, usize)>| {
        if value.is_finite() && value > 0.0 {
            table.bounds.push(ComparatorBound {
                code,
                kind,
                value,
                k,
                r,
                l_real,
                m: ml.map(|x| x.0),
                l: ml.map(|x| x.1),
            });
        } else {
            table.omitted.push(OmittedBound {
                code,
                kind,
                reason: if code == CodeName::FirstCode23 {
                    format!("no integers 1 <= L < m < r at r = {r}")
                } else {
                    format!("formula is not a positive real at r = {r}")
                },
            });
        }
    };
    // all-node ratio from data and parity ratios
    let all = |d: f64, p: f64| match kf {
        Some(k) => (k * d + rf * p) / (k + rf),
        None => d,
    };

    let rsr_p = rsr_parity(kf, rf);
    let rsr1 = (rf + 1.0) / (2.0 * rf);
    push(CodeName::RsrI, RatioKind::Data, rsr1, None, None);
    push(CodeName::RsrI, RatioKind::Parity, rsr_p, None, None);
    push(CodeName::RsrI, RatioKind::All, all(rsr1, rsr_p), None, None);
    let rsr2 = (rf + 1.0) / (2.0 * rf - 3.0);
    push(CodeName::RsrII, RatioKind::Data, rsr2, None, None);
    push(CodeName::RsrII, RatioKind::Parity, rsr_p, None, None);
    push(
        CodeName::RsrII,
        RatioKind::All,
        all(rsr2, rsr_p),
        None,
        None,
    );

    let repb = 2.0 / (rf.sqrt() + 1.0);
    push(CodeName::Repb, RatioKind::Data, repb, None, None);
    push(CodeName::Repb, RatioKind::Parity, 1.0, None, None);
    push(CodeName::Repb, RatioKind::All, all(repb, 1.0), None, None);

    let (od, op) = (oop_data(rf), oop_parity(kf, rf));
    push(CodeName::Oop, RatioKind::Data, od, None, None);
    push(CodeName::Oop, RatioKind::Parity, op, None, None);
    push(CodeName::Oop, RatioKind::All, all(od, op), None, None);

    let (c0d, c0p) = (c0_data(rf, star), c0_parity(kf, rf, star));
    push(CodeName::C0, RatioKind::Data, c0d, Some(star), None);
    push(CodeName::C0, RatioKind::Parity, c0p, Some(star), None);
    push(
        CodeName::C0,
        RatioKind::All,
        all(c0d, c0p),
        Some(star),
        None,
    );

    let (c1d, c1p) = (c1_data(rf, star), c1_parity(kf, rf, star));
    push(CodeName::C1, RatioKind::Data, c1d, Some(star), None);
    push(CodeName::C1, RatioKind::Parity, c1p, Some(star), None);
    push(
        CodeName::C1,
        RatioKind::All,
        all(c1d, c1p),
        Some(star),
        None,
    );

    match first_code23_min(k, r) {
        Some((v, m, l)) => push(CodeName::FirstCode23, RatioKind::All, v, None, Some((m, l))),
        None => push(CodeName::FirstCode23, RatioKind::All, f64::NAN, None, None),
    }

    let (pd, pp) = (gamma_sys_real(kf, rf, star), gamma_par_real(kf, rf, star));
    push(CodeName::Proposed, RatioKind::Data, pd, Some(star), None);
    push(CodeName::Proposed, RatioKind::Parity, pp, Some(star), None);
    push(
        CodeName::Proposed,
        RatioKind::All,
        all(pd, pp),
        Some(star),
        None,
    );
    Ok(table)
}

/// One inequality of the form `proposed < comparator`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub label: &'static str,
    pub r: usize,
    pub proposed: f64,
    pub comparator: f64,
}

impl BoundCheck {
    pub fn margin(&self) -> f64 {
        self.comparator - self.proposed
    }

    pub fn holds(&self) -> bool {
        self.margin() > BOUND_TOLERANCE
    }
}

/// Data and parity bounds against OOP in the `k -> infinity` limit.
pub fn check_against_oop(r: usize) -> [BoundCheck; 2] {
    let rf = r as f64;
    let l = (2.0 * rf - 1.0).sqrt();
    [
        BoundCheck {
            label: "OOP data",
            r,
            proposed: gamma_sys_asymptotic(rf, l),
            comparator: oop_data(rf),
        },
        BoundCheck {
            label: "OOP parity",
            r,
            proposed: gamma_par_real(None, rf, l),
            comparator: oop_parity(None, rf),
        },
    ]
}

/// Parity bound against C1 in the `k -> infinity` limit.
pub fn check_against_c1(r: usize) -> BoundCheck {
    let rf = r as f64;
    let l = (2.0 * rf - 1.0).sqrt();
    BoundCheck {
        label: "C1 parity",
        r,
        proposed: gamma_par_real(None, rf, l),
        comparator: c1_parity(None, rf, l),
    }
}

/// All-node bound against the best first-code parameters in the
/// `k -> infinity` limit. `None` when the grid is empty (`r < 3`).
pub fn check_against_first_code23(r: usize) -> Option<BoundCheck> {
    let rf = r as f64;
    let (best, _, _) = first_code23_min(None, r)?;
    Some(BoundCheck {
        label: "FirstCode23 all",
        r,
        proposed: gamma_sys_asymptotic(rf, (2.0 * rf - 1.0).sqrt()),
        comparator: best,
    })
}

/// Minimum field size a construction needs, with its sub-packetization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldRequirement {
    pub scheme: &'static str,
    pub min_field: BigUint,
    pub sub_packetization: String,
}

fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Sufficient field size for the code implemented here: `k r^2`.
pub fn proposed_field_size(k: usize, r: usize) -> BigUint {
    BigUint::from(k) * BigUint::from(r) * BigUint::from(r)
}

pub fn bpd_field_size(n: usize, k: usize) -> BigUint {
    binom(n as u64 - 1, k as u64 - 1) + 2u32
}

/// `alpha` is the HTEC sub-packetization.
pub fn htec_field_size(n: usize, k: usize, alpha: usize) -> BigUint {
    binom(n as u64, k as u64) * BigUint::from(n - k) * BigUint::from(alpha)
}

/// `alpha_star` is the ET-RS transformation parameter.
pub fn etrs_field_size(n: usize, k: usize, alpha_star: usize) -> BigUint {
    let a = binom(n as u64 - 1, k as u64 - 1);
    let b = binom(
        n.div_ceil(alpha_star) as u64 - 1,
        k.div_ceil(alpha_star) as u64 - 1,
    );
    if a >= b {
        (a - b) * 2u32
    } else {
        BigUint::zero()
    }
}

/// Field-size comparison for `(n, k)`. HTEC and ET-RS are evaluated with
/// their free parameter set to `r`.
pub fn field_requirements(n: usize, k: usize) -> Result<Vec<FieldRequirement>> {
    if k == 0 || n <= k {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    let r = n - k;
    let ceil_k_r = k.div_ceil(r) as u32;
    Ok(vec![
        FieldRequirement {
            scheme: "HTEC",
            min_field: htec_field_size(n, k, r),
            sub_packetization: format!("2 <= l <= r^{ceil_k_r}"),
        },
        FieldRequirement {
            scheme: "BPD",
            min_field: bpd_field_size(n, k),
            sub_packetization: "2 <= l <= r".into(),
        },
        FieldRequirement {
            scheme: "ET-RS",
            min_field: etrs_field_size(n, k, r),
            sub_packetization: format!("2 <= l <= r^{}", n / r),
        },
        FieldRequirement {
            scheme: "Piggybacking",
            min_field: BigUint::from(n),
            sub_packetization: "flexible".into(),
        },
        FieldRequirement {
            scheme: "Piggybacking+",
            min_field: BigUint::from(n),
            sub_packetization: "l = s r, 2 <= s <= r".into(),
        },
        FieldRequirement {
            scheme: "Proposed",
            min_field: proposed_field_size(k, r),
            sub_packetization: "l = r".into(),
        },
    ])
}

/// Converts an exact ratio to `f64`.
pub fn to_f64(value: Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(k: usize, r: usize, l: usize) -> CodeShape {
        CodeShape::new(k + r, k, l).unwrap()
    }

    #[test]
    fn rendering_rounds_half_even() {
        assert_eq!(render_decimal(q(21, 32), 4), "0.6562");
        assert_eq!(render_decimal(q(6563, 10000), 3), "0.656");
        assert_eq!(render_decimal(q(65635, 100000), 4), "0.6564");
        assert_eq!(render_decimal(q(5, 12), 4), "0.4167");
        assert_eq!(render_decimal(q(3, 4), 3), "0.750");
        assert_eq!(render_decimal(q(7, 2), 0), "4");
        assert_eq!(render_decimal(q(-1, 8), 2), "-0.12");
    }

    #[test]
    fn closed_forms_on_table_rows() {
        assert_eq!(gamma_par_closed(&shape(12, 4, 3)).unwrap(), q(5, 12));
        assert_eq!(
            render_decimal(gamma_sys_closed(&shape(12, 4, 3)).unwrap(), 4),
            "0.7014"
        );
        assert_eq!(
            render_decimal(gamma_sys_closed(&shape(48, 8, 4)).unwrap(), 4),
            "0.4922"
        );
        assert_eq!(
            render_decimal(gamma_par_closed(&shape(30, 5, 3)).unwrap(), 4),
            "0.3200"
        );
        assert_eq!(
            gamma_sys_closed(&shape(10, 4, 3)).unwrap_err(),
            Error::GroupsDoNotDivide { k: 10, l: 3 }
        );
    }

    #[test]
    fn profile_of_worked_example() {
        let p = exact_profile(&shape(10, 4, 3));
        assert_eq!(p.total(), 356);
        assert_eq!(p.gamma_all, q(356, 560));
        assert_eq!(render_decimal(p.gamma_all, 4), "0.6357");
        assert_eq!(p.gamma_sys, q(25 * 4 + 28 * 3 + 34 * 3, 400));
    }

    #[test]
    fn optimal_group_counts() {
        assert_eq!(optimal_l(4, None).unwrap(), 3);
        assert_eq!(optimal_l(5, None).unwrap(), 3);
        assert_eq!(optimal_l(8, None).unwrap(), 4);
        assert_eq!(optimal_l(2, None).unwrap(), 2);
        assert!(optimal_l(1, None).is_err());
        assert!((gamma_sys_asymptotic(4.0, 2.0) - 0.625).abs() < 1e-12);
        assert!((gamma_sys_asymptotic(4.0, 3.0) - 0.611_111_111_111).abs() < 1e-9);
        assert_eq!(optimal_l(4, Some(12)).unwrap(), 3);
    }

    #[test]
    fn msr_is_below_every_node() {
        for (k, r, l) in [(10, 4, 3), (12, 4, 3), (30, 5, 3)] {
            let s = shape(k, r, l);
            let p = exact_profile(&s);
            assert!(p.per_node.iter().all(|&b| b >= msr_bound(&s)));
        }
        assert_eq!(msr_bound(&shape(10, 4, 3)), 13);
    }

    #[test]
    fn field_sizes() {
        assert_eq!(bpd_field_size(29, 25), BigUint::from(20477u32));
        assert_eq!(proposed_field_size(10, 4), BigUint::from(160u32));
        let reqs = field_requirements(14, 10).unwrap();
        assert_eq!(reqs.len(), 6);
        assert_eq!(reqs[0].min_field, BigUint::from(1001u32 * 4 * 4));
    }

    #[test]
    fn bounds_omitted_when_undefined() {
        let t = comparator_bounds(None, 2).unwrap();
        assert!(t.get(CodeName::FirstCode23, RatioKind::All).is_none());
        assert!(t.omitted.iter().any(|o| o.code == CodeName::FirstCode23));
        // 2r - 3 = 1 keeps RSR-II defined but above 1
        assert!(t.get(CodeName::RsrII, RatioKind::Data).unwrap() > 1.0);
        assert!(comparator_bounds(Some(0), 4).is_err());
    }
}
