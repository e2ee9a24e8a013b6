//! Reconstruction of the data array from any `k` surviving nodes.
//!
//! Two decoders are provided. [`decode_generic`] linearizes every stored
//! symbol over the `kr` data symbols and solves the resulting system
//! directly. [`decode_structured`] exploits the code's layout and only ever
//! solves `t x t` systems, where `t` is the number of erased data nodes:
//!
//! 1. undo the conjugate transform on the parity symbols shared by the
//!    surviving parity rows `i_1 < ... < i_t`;
//! 2. recover columns `i_1, i_2, ..., i_t` in order, peeling the piggybacks
//!    of columns already known;
//! 3. recover every column `v > i_t`;
//! 4. recover the remaining columns `v < i_t`, whose equations carry
//!    piggybacks of `a_v` itself (the matrices `M_v`).
//!
//! [`verify_mds`] enumerates every `r`-node erasure and checks that the
//! surviving symbols determine the data.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::code::{inverse_pair, CodeParams, CodedStripe, DataMatrix};
use crate::error::{Error, Result};
use crate::galois::{FieldElement, FieldMatrix};

/// Default cap on the number of erasure patterns [`verify_mds`] enumerates.
pub const DEFAULT_PATTERN_CAP: u128 = 1_000_000;

/// A set of erased nodes, sorted ascending, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ErasurePattern {
    pub erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(params: &CodeParams, erased: &[usize]) -> Result<ErasurePattern> {
        let set: BTreeSet<usize> = erased.iter().copied().collect();
        if set.len() != erased.len() {
            return Err(Error::InvalidParams(format!(
                "duplicate node in erasure list {erased:?}"
            )));
        }
        for &node in &set {
            params.check_node(node)?;
        }
        Ok(ErasurePattern {
            erased: set.into_iter().collect(),
        })
    }

    pub fn contains(&self, node: usize) -> bool {
        self.erased.binary_search(&node).is_ok()
    }
}

/// Read access to stored symbols. Returns `None` for unavailable nodes.
pub trait ShareSource {
    fn symbol(&self, node: usize, col: usize) -> Option<FieldElement>;
}

impl ShareSource for CodedStripe {
    fn symbol(&self, node: usize, col: usize) -> Option<FieldElement> {
        (node >= 1 && node <= self.n() && col >= 1 && col <= self.r()).then(|| self.get(node, col))
    }
}

/// The node rows that survived, each holding `r` symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shares {
    r: usize,
    rows: Vec<Option<Vec<FieldElement>>>,
}

impl Shares {
    /// An empty collection for `n` nodes of `r` symbols each.
    pub fn new(n: usize, r: usize) -> Shares {
        Shares {
            r,
            rows: vec![None; n],
        }
    }

    /// Every node of `stripe` except the ones in `erased`.
    pub fn from_stripe(stripe: &CodedStripe, erased: &[usize]) -> Shares {
        let mut shares = Shares::new(stripe.n(), stripe.r());
        for node in 1..=stripe.n() {
            if !erased.contains(&node) {
                shares.rows[node - 1] = Some(stripe.row(node).to_vec());
            }
        }
        shares
    }

    pub fn insert(&mut self, node: usize, symbols: Vec<FieldElement>) -> Result<()> {
        if node == 0 || node > self.rows.len() {
            return Err(Error::IndexOutOfRange {
                what: "node",
                index: node,
                max: self.rows.len(),
            });
        }
        if symbols.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "node {node} has {} symbols, expected {}",
                symbols.len(),
                self.r
            )));
        }
        self.rows[node - 1] = Some(symbols);
        Ok(())
    }

    pub fn remove(&mut self, node: usize) {
        if let Some(slot) = self.rows.get_mut(node.wrapping_sub(1)) {
            *slot = None;
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn has(&self, node: usize) -> bool {
        matches!(self.rows.get(node.wrapping_sub(1)), Some(Some(_)))
    }

    /// Available nodes in ascending order.
    pub fn available(&self) -> Vec<usize> {
        (1..=self.rows.len()).filter(|&v| self.has(v)).collect()
    }

    /// Missing nodes in ascending order.
    pub fn missing(&self) -> Vec<usize> {
        (1..=self.rows.len()).filter(|&v| !self.has(v)).collect()
    }

    pub fn row(&self, node: usize) -> Option<&[FieldElement]> {
        self.rows.get(node.wrapping_sub(1))?.as_deref()
    }
}

impl ShareSource for Shares {
    fn symbol(&self, node: usize, col: usize) -> Option<FieldElement> {
        self.row(node)?.get(col.wrapping_sub(1)).copied()
    }
}

fn unit(len: usize, pos: usize) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::ZERO; len];
    v[pos] = FieldElement::ONE;
    v
}

/// Coefficients of the pre-transform parity `R(i, j)` over the flattened
/// data: `P_i` on column `j`, plus `q_{i,t}` on column `i` when `(i, j)`
/// carries a piggyback.
fn r_coefficients(params: &CodeParams, i: usize, j: usize) -> Vec<FieldElement> {
    let (k, r) = (params.k(), params.r());
    let mut v = vec![FieldElement::ZERO; k * r];
    for delta in 1..=k {
        v[(delta - 1) * r + j - 1] += params.coefficient(i, delta);
    }
    if let Some(t) = params.piggyback_group(i, j) {
        for delta in params.group_range(t) {
            v[(delta - 1) * r + i - 1] += params.coefficient(i, delta);
        }
    }
    v
}

/// Linear form of the stored symbol at `(node, col)` over the `kr` data
/// symbols, flattened row-major (`a_{i,j}` at `(i-1) r + (j-1)`).
pub fn symbol_coefficients(
    params: &CodeParams,
    node: usize,
    col: usize,
) -> Result<Vec<FieldElement>> {
    params.check_node(node)?;
    params.check_column(col)?;
    let (k, r) = (params.k(), params.r());
    if node <= k {
        return Ok(unit(k * r, (node - 1) * r + col - 1));
    }
    let field = params.field();
    let i = node - k;
    let j = col;
    let r_ij = r_coefficients(params, i, j);
    if i == j {
        return Ok(r_ij);
    }
    let r_ji = r_coefficients(params, j, i);
    let out = if i < j {
        r_ij.iter()
            .zip(&r_ji)
            .map(|(&x, &y)| x + field.mul(field.alpha(), y))
            .collect()
    } else {
        r_ij.iter().zip(&r_ji).map(|(&x, &y)| x + y).collect()
    };
    Ok(out)
}

/// Decodes from the first `k` available nodes (ascending) by solving the
/// `kr x kr` system of their symbols.
pub fn decode_generic(params: &CodeParams, shares: &Shares) -> Result<DataMatrix> {
    let (k, r) = (params.k(), params.r());
    if shares.n() != params.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} share slots for a code with n = {}",
            shares.n(),
            params.n()
        )));
    }
    let available = shares.available();
    if available.len() < k {
        return Err(Error::InsufficientShares {
            have: available.len(),
            need: k,
        });
    }
    let nodes = &available[..k];
    let mut rows = Vec::with_capacity(k * r);
    let mut rhs = Vec::with_capacity(k * r);
    for &node in nodes {
        let symbols = shares.row(node).expect("node is available");
        for col in 1..=r {
            rows.push(symbol_coefficients(params, node, col)?);
            rhs.push(symbols[col - 1]);
        }
    }
    let a = FieldMatrix::from_rows(rows)?;
    match params.field().solve(&a, &rhs) {
        Ok(x) => DataMatrix::new(k, r, x),
        Err(Error::SingularMatrix { .. }) => Err(Error::NotDecodable {
            nodes: nodes.to_vec(),
        }),
        Err(e) => Err(e),
    }
}

/// Options for [`decode_structured`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecodeOptions {
    /// Fall back to [`decode_generic`] when a column solve is singular.
    pub fallback_to_generic: bool,
}

/// Everything about an erasure pattern the structured decoder needs before
/// touching any data: which rows survive and the `t x t` solve matrices.
#[derive(Clone, Debug)]
pub struct StructuredDecodePlan {
    /// Erased data nodes `j_1 < ... < j_t`.
    pub erased_data: Vec<usize>,
    /// Surviving parity indices `i_1 < ... < i_t` (node `k + i_u`).
    pub surviving_parity: Vec<usize>,
    /// Columns in `[i_t]` that are not surviving parity indices.
    pub mixed_columns: Vec<usize>,
    /// Inverse of the rows `P_{i_u}` restricted to the erased nodes.
    base_inverse: Option<FieldMatrix>,
    /// For each mixed column `v`, the inverse of `M_v` restricted to the
    /// erased nodes, in the order of `mixed_columns`.
    mixed_inverses: Vec<FieldMatrix>,
    /// Row `u` of `M_v` carries `q_{v,g}` for these `(u, g)`, per mixed column.
    mixed_piggybacks: Vec<Vec<Option<usize>>>,
}

impl StructuredDecodePlan {
    /// Plans decoding for exactly `r` erased nodes.
    pub fn new(params: &CodeParams, pattern: &ErasurePattern) -> Result<StructuredDecodePlan> {
        let (k, r) = (params.k(), params.r());
        if pattern.erased.len() != r {
            return Err(Error::ErasureCount {
                expected: r,
                found: pattern.erased.len(),
            });
        }
        let erased_data: Vec<usize> = pattern.erased.iter().copied().filter(|&v| v <= k).collect();
        let surviving_parity: Vec<usize> = (1..=r).filter(|&i| !pattern.contains(k + i)).collect();
        debug_assert_eq!(erased_data.len(), surviving_parity.len());
        let t = erased_data.len();
        if t == 0 {
            return Ok(StructuredDecodePlan {
                erased_data,
                surviving_parity,
                mixed_columns: vec![],
                base_inverse: None,
                mixed_inverses: vec![],
                mixed_piggybacks: vec![],
            });
        }
        let field = params.field();
        let i_t = *surviving_parity.last().expect("t >= 1");
        let mixed_columns: Vec<usize> = (1..=i_t)
            .filter(|v| !surviving_parity.contains(v))
            .collect();

        let base = FieldMatrix::from_rows(
            surviving_parity
                .iter()
                .map(|&i| {
                    erased_data
                        .iter()
                        .map(|&j| params.coefficient(i, j))
                        .collect()
                })
                .collect(),
        )?;
        let base_inverse = field.invert(&base).map_err(|_| Error::FieldTooSmall {
            column: surviving_parity[0],
        })?;

        let mut mixed_inverses = Vec::with_capacity(mixed_columns.len());
        let mut mixed_piggybacks = Vec::with_capacity(mixed_columns.len());
        for &v in &mixed_columns {
            // rows with i_u > v see R(v, i_u) = P_v.a_{i_u} + q_{v,g}.a_v
            let piggy: Vec<Option<usize>> = surviving_parity
                .iter()
                .map(|&i| {
                    if i > v {
                        params.piggyback_group(v, i)
                    } else {
                        None
                    }
                })
                .collect();
            let rows = surviving_parity
                .iter()
                .zip(&piggy)
                .map(|(&i, g)| {
                    erased_data
                        .iter()
                        .map(|&j| {
                            let mut c = params.coefficient(i, j);
                            if let Some(g) = g {
                                if params.group_range(*g).contains(&j) {
                                    c += params.coefficient(v, j);
                                }
                            }
                            c
                        })
                        .collect()
                })
                .collect();
            let m_v = FieldMatrix::from_rows(rows)?;
            mixed_inverses.push(
                field
                    .invert(&m_v)
                    .map_err(|_| Error::FieldTooSmall { column: v })?,
            );
            mixed_piggybacks.push(piggy);
        }

        Ok(StructuredDecodePlan {
            erased_data,
            surviving_parity,
            mixed_columns,
            base_inverse: Some(base_inverse),
            mixed_inverses,
            mixed_piggybacks,
        })
    }

    /// Number of erased data nodes.
    pub fn t(&self) -> usize {
        self.erased_data.len()
    }

    /// Runs the column-by-column recovery on `shares`.
    pub fn execute(&self, params: &CodeParams, shares: &Shares) -> Result<DataMatrix> {
        let (k, r) = (params.k(), params.r());
        let field = params.field();
        let t = self.t();

        let mut data = DataMatrix::zeros(k, r);
        for node in 1..=k {
            if let Some(row) = shares.row(node) {
                for col in 1..=r {
                    data.set(node, col, row[col - 1]);
                }
            } else if !self.erased_data.contains(&node) {
                return Err(Error::UnreadableNode(node));
            }
        }
        if t == 0 {
            return Ok(data);
        }
        let stored = |i: usize, col: usize| -> Result<FieldElement> {
            shares
                .symbol(k + i, col)
                .ok_or(Error::UnreadableNode(k + i))
        };
        // P_i.a_col over a fully known column
        let p_dot = |data: &DataMatrix, i: usize, col: usize| -> FieldElement {
            (1..=k)
                .map(|delta| field.mul(params.coefficient(i, delta), data.get(delta, col)))
                .sum()
        };
        // q_{i,g}.a_i over a fully known column i
        let piggy_dot = |data: &DataMatrix, i: usize, g: usize| -> FieldElement {
            params
                .group_range(g)
                .map(|delta| field.mul(params.coefficient(i, delta), data.get(delta, i)))
                .sum()
        };
        // Given y_u = (row_u . a_col) for every u, solve for the erased
        // entries of column col; `extra` adds q_{col,g} to rows that carry it.
        let solve_column = |data: &mut DataMatrix,
                            col: usize,
                            mut y: Vec<FieldElement>,
                            inverse: &FieldMatrix,
                            extra: Option<&[Option<usize>]>| {
            for (u, &i) in self.surviving_parity.iter().enumerate() {
                let g = extra.and_then(|e| e[u]);
                for delta in 1..=k {
                    if self.erased_data.contains(&delta) {
                        continue;
                    }
                    let mut c = params.coefficient(i, delta);
                    if let Some(g) = g {
                        if params.group_range(g).contains(&delta) {
                            c += params.coefficient(col, delta);
                        }
                    }
                    y[u] -= field.mul(c, data.get(delta, col));
                }
            }
            let x = field.mul_vec(inverse, &y).expect("dimensions agree");
            for (&node, value) in self.erased_data.iter().zip(x) {
                data.set(node, col, value);
            }
        };

        let base_inverse = self.base_inverse.as_ref().expect("t >= 1");
        let sp = &self.surviving_parity;

        // (1) R(i_u, i_w) for all u, w from the surviving transformed pairs
        let mut r_sq = vec![vec![FieldElement::ZERO; t]; t];
        for u in 0..t {
            r_sq[u][u] = stored(sp[u], sp[u])?;
            for w in u + 1..t {
                let (r_uw, r_wu) =
                    inverse_pair(field, stored(sp[u], sp[w])?, stored(sp[w], sp[u])?);
                r_sq[u][w] = r_uw;
                r_sq[w][u] = r_wu;
            }
        }

        // (2) columns i_1, ..., i_t in order. For u < w the symbol R(i_u, i_w)
        // may carry a piggyback of a_{i_u}, which is known by now; for u >= w
        // the row sits on or below the diagonal and carries none.
        for w in 0..t {
            let col = sp[w];
            let y: Vec<FieldElement> = (0..t)
                .map(|u| {
                    let mut y = r_sq[u][w];
                    if u < w {
                        if let Some(g) = params.piggyback_group(sp[u], col) {
                            y -= piggy_dot(&data, sp[u], g);
                        }
                    }
                    y
                })
                .collect();
            solve_column(&mut data, col, y, base_inverse, None);
        }

        // For i_u < v: P(i_u, v) = R(i_u, v) + alpha P_v.a_{i_u}, and
        // R(i_u, v) = P_{i_u}.a_v + [q_{i_u,g}.a_{i_u}].
        let upper = |data: &DataMatrix, i: usize, v: usize| -> Result<FieldElement> {
            let mut y = stored(i, v)? - field.mul(field.alpha(), p_dot(data, v, i));
            if let Some(g) = params.piggyback_group(i, v) {
                y -= piggy_dot(data, i, g);
            }
            Ok(y)
        };

        // (3) columns beyond i_t
        for v in sp[t - 1] + 1..=r {
            let y = sp
                .iter()
                .map(|&i| upper(&data, i, v))
                .collect::<Result<Vec<_>>>()?;
            solve_column(&mut data, v, y, base_inverse, None);
        }

        // (4) mixed columns. For i_u > v: P(i_u, v) = P_{i_u}.a_v + P_v.a_{i_u}
        // + [q_{v,g}.a_v], the piggyback landing in the unknown column.
        for (idx, &v) in self.mixed_columns.iter().enumerate() {
            let y = sp
                .iter()
                .map(|&i| {
                    if i < v {
                        upper(&data, i, v)
                    } else {
                        Ok(stored(i, v)? - p_dot(&data, v, i))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            solve_column(
                &mut data,
                v,
                y,
                &self.mixed_inverses[idx],
                Some(&self.mixed_piggybacks[idx]),
            );
        }

        Ok(data)
    }
}

/// Decodes from exactly `n - r` surviving nodes via [`StructuredDecodePlan`].
pub fn decode_structured(
    params: &CodeParams,
    shares: &Shares,
    options: DecodeOptions,
) -> Result<DataMatrix> {
    if shares.n() != params.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} share slots for a code with n = {}",
            shares.n(),
            params.n()
        )));
    }
    let pattern = ErasurePattern {
        erased: shares.missing(),
    };
    match StructuredDecodePlan::new(params, &pattern) {
        Ok(plan) => plan.execute(params, shares),
        Err(Error::FieldTooSmall { .. }) if options.fallback_to_generic => {
            decode_generic(params, shares)
        }
        Err(e) => Err(e),
    }
}

/// Result of an exhaustive MDS search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsReport {
    pub patterns_checked: u64,
    /// Patterns whose surviving symbols do not determine the data, sorted.
    pub failures: Vec<ErasurePattern>,
}

impl MdsReport {
    pub fn is_mds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Whether the symbols left after erasing `erased` determine the data.
///
/// Surviving data symbols are unit rows, so the `kr x kr` system is
/// invertible iff the surviving parity symbols, restricted to the erased
/// data positions, form an invertible `tr x tr` matrix.
pub fn is_recoverable(
    params: &CodeParams,
    coefficients: &[Vec<Vec<FieldElement>>],
    erased: &[usize],
) -> bool {
    let (k, r) = (params.k(), params.r());
    let positions: Vec<usize> = erased
        .iter()
        .filter(|&&v| v <= k)
        .flat_map(|&v| (0..r).map(move |c| (v - 1) * r + c))
        .collect();
    if positions.is_empty() {
        return true;
    }
    let rows: Vec<Vec<FieldElement>> = (k + 1..=params.n())
        .filter(|v| !erased.contains(v))
        .flat_map(|v| coefficients[v - k - 1].iter())
        .map(|row| positions.iter().map(|&p| row[p]).collect())
        .collect();
    let m = FieldMatrix::from_rows(rows).expect("rows have equal length");
    params.field().is_invertible(&m)
}

/// Checks every `r`-subset erasure. Refuses when `C(n, r)` exceeds `cap`.
pub fn verify_mds(params: &CodeParams, cap: u128) -> Result<MdsReport> {
    let (n, k, r) = (params.n(), params.k(), params.r());
    let patterns = binomial(n as u64, r as u64);
    if patterns > cap {
        return Err(Error::EnumerationCap { patterns, cap });
    }
    // coefficients[i-1][j-1]: linear form of parity symbol (k+i, j)
    let coefficients: Vec<Vec<Vec<FieldElement>>> = (k + 1..=n)
        .map(|node| {
            (1..=r)
                .map(|col| symbol_coefficients(params, node, col))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let all: Vec<Vec<usize>> = (1..=n).combinations(r).collect();
    let mut failures: Vec<ErasurePattern> = all
        .par_iter()
        .filter(|erased| !is_recoverable(params, &coefficients, erased))
        .map(|erased| ErasurePattern {
            erased: erased.clone(),
        })
        .collect();
    failures.sort();
    Ok(MdsReport {
        patterns_checked: all.len() as u64,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::encode;
    use crate::galois::GaloisField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(n: usize, k: usize, l: usize) -> CodeParams {
        CodeParams::new(n, k, l, GaloisField::with_degree(8).unwrap()).unwrap()
    }

    #[test]
    fn coefficients_of_data_and_diagonal() {
        let p = params(14, 10, 3);
        let v = symbol_coefficients(&p, 3, 2).unwrap();
        assert_eq!(v, unit(40, 2 * 4 + 1));
        // parity (k+2, 2) involves column 2 only
        let d = symbol_coefficients(&p, 12, 2).unwrap();
        for (idx, c) in d.iter().enumerate() {
            assert_eq!(!c.is_zero(), idx % 4 == 1, "position {idx}");
        }
        assert!(symbol_coefficients(&p, 15, 1).is_err());
        assert!(symbol_coefficients(&p, 1, 5).is_err());
    }

    #[test]
    fn coefficients_match_encoder() {
        let p = params(14, 10, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let d = DataMatrix::random(&p, &mut rng);
            let s = encode(&p, &d).unwrap();
            for node in 1..=14 {
                for col in 1..=4 {
                    let c = symbol_coefficients(&p, node, col).unwrap();
                    assert_eq!(p.field().dot(&c, d.as_slice()), s.get(node, col));
                }
            }
        }
    }

    #[test]
    fn piggyback_support_lies_above_diagonal() {
        // parity (k+i, j) involves data column i != j only if i < j
        let p = params(14, 10, 3);
        for i in 1..=4 {
            for j in 1..=4 {
                let r = r_coefficients(&p, i, j);
                for col in 1..=4 {
                    let touches = (1..=10).any(|d| !r[(d - 1) * 4 + col - 1].is_zero());
                    if col != j && touches {
                        assert!(col == i && i < j);
                    }
                }
            }
        }
    }

    #[test]
    fn generic_decode_paths() {
        let p = params(14, 10, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = DataMatrix::random(&p, &mut rng);
        let s = encode(&p, &d).unwrap();
        assert_eq!(
            decode_generic(&p, &Shares::from_stripe(&s, &[])).unwrap(),
            d
        );
        assert_eq!(
            decode_generic(&p, &Shares::from_stripe(&s, &[1, 2, 3, 4])).unwrap(),
            d
        );
        assert_eq!(
            decode_generic(&p, &Shares::from_stripe(&s, &[1, 2, 3, 4, 5])).unwrap_err(),
            Error::InsufficientShares { have: 9, need: 10 }
        );
    }

    #[test]
    fn structured_matches_generic_on_named_patterns() {
        let p = params(14, 10, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = DataMatrix::random(&p, &mut rng);
        let s = encode(&p, &d).unwrap();
        for erased in [vec![11, 12, 13, 14], vec![1, 5, 8, 10], vec![2, 7, 11, 13]] {
            let shares = Shares::from_stripe(&s, &erased);
            let structured = decode_structured(&p, &shares, DecodeOptions::default()).unwrap();
            assert_eq!(structured, decode_generic(&p, &shares).unwrap());
            assert_eq!(structured, d);
        }
        let plan =
            StructuredDecodePlan::new(&p, &ErasurePattern::new(&p, &[2, 7, 11, 13]).unwrap())
                .unwrap();
        assert_eq!(plan.t(), 2);
        assert_eq!(plan.surviving_parity, vec![2, 4]);
        assert_eq!(plan.mixed_columns, vec![1, 3]);
    }

    #[test]
    fn structured_requires_exactly_r_erasures() {
        let p = params(14, 10, 3);
        let s = encode(&p, &DataMatrix::zeros(10, 4)).unwrap();
        let shares = Shares::from_stripe(&s, &[1, 2]);
        assert_eq!(
            decode_structured(&p, &shares, DecodeOptions::default()).unwrap_err(),
            Error::ErasureCount {
                expected: 4,
                found: 2
            }
        );
    }

    #[test]
    fn singular_column_and_fallback() {
        // under x^8+x^4+x^3+x^2+1, 1 + alpha = alpha^25 makes M_3 singular
        // for erasure {1, 9, 12, 13}
        let gf = GaloisField::new(8, Some(0x11d)).unwrap();
        let p = CodeParams::new(14, 10, 3, gf).unwrap();
        let s = encode(&p, &DataMatrix::zeros(10, 4)).unwrap();
        let shares = Shares::from_stripe(&s, &[1, 9, 12, 13]);
        assert_eq!(
            decode_structured(&p, &shares, DecodeOptions::default()).unwrap_err(),
            Error::FieldTooSmall { column: 3 }
        );
        // the generic system is singular too, so the fallback reports it
        assert!(matches!(
            decode_structured(
                &p,
                &shares,
                DecodeOptions {
                    fallback_to_generic: true
                }
            ),
            Err(Error::NotDecodable { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 4), 1001);
        assert_eq!(binomial(56, 8), 1_420_494_075);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn verify_respects_cap() {
        let p = params(14, 10, 3);
        assert_eq!(
            verify_mds(&p, 1000).unwrap_err(),
            Error::EnumerationCap {
                patterns: 1001,
                cap: 1000
            }
        );
    }

    #[test]
    fn reduced_check_agrees_with_full_system() {
        let gf = GaloisField::new(8, Some(0x11d)).unwrap();
        let p = CodeParams::new(14, 10, 3, gf).unwrap();
        let field = p.field();
        let coeffs: Vec<Vec<Vec<FieldElement>>> = (11..=14)
            .map(|v| {
                (1..=4)
                    .map(|c| symbol_coefficients(&p, v, c).unwrap())
                    .collect()
            })
            .collect();
        let mut singular = 0;
        for erased in (1..=14).combinations(4) {
            let rows: Vec<_> = (1..=14)
                .filter(|v| !erased.contains(v))
                .flat_map(|v| (1..=4).map(move |c| (v, c)))
                .map(|(v, c)| symbol_coefficients(&p, v, c).unwrap())
                .collect();
            let full = field.is_invertible(&FieldMatrix::from_rows(rows).unwrap());
            assert_eq!(full, is_recoverable(&p, &coeffs, &erased), "{erased:?}");
            singular += usize::from(!full);
        }
        assert_eq!(singular, 2);
    }
}
