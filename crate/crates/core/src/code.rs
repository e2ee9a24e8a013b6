//! Code parameters and the three-stage encoder.
//!
//! A stripe is an `n x r` array: rows `1..=k` hold data, rows `k+1..=k+r`
//! hold parity, and column `j` of the data rows is the data vector `a_j`.
//! Encoding proceeds in three stages:
//!
//! * **G1**: each column is an independent systematic codeword whose parity
//!   `i` is `P_i . a_j` with `P_i = (alpha^i, alpha^2i, ..., alpha^ki)`.
//! * **G2**: for every group `t < L` and parity row `j <= r - t`, the
//!   piggyback `q_{j,t} . a_j` is added to parity `(j, r - t + 1)`. Here
//!   `q_{j,t}` is `P_j` restricted to the data nodes of group `t`.
//! * **G3**: every off-diagonal pair of the parity square `R` is mixed:
//!   `P(i,j) = R(i,j) + alpha R(j,i)` and `P(j,i) = R(i,j) + R(j,i)` for
//!   `i < j`. The diagonal is left alone.
//!
//! Node, column, parity and group indices are 1-based in the public API.

use std::fmt;
use std::ops::{Deref, RangeInclusive};

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{FieldElement, GaloisField};

/// Field-independent code geometry: `(n, k, r, L)` and the data groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeShape {
    n: usize,
    k: usize,
    r: usize,
    groups: usize,
    group_sizes: Vec<usize>,
    /// group_starts[t-1] is the first node of group t; one extra entry k+1.
    group_starts: Vec<usize>,
}

impl CodeShape {
    /// Validates `(n, k, L)` and splits the `k` data nodes into `L`
    /// contiguous groups, larger groups first, sizes differing by at most 1.
    pub fn new(n: usize, k: usize, groups: usize) -> Result<CodeShape> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if n <= k {
            return Err(Error::InvalidParams(format!("n = {n} must exceed k = {k}")));
        }
        let r = n - k;
        if groups < 2 || groups > r {
            return Err(Error::InvalidParams(format!(
                "L = {groups} must satisfy 2 <= L <= r = {r}"
            )));
        }
        let floor = k / groups;
        let big = k - floor * groups;
        let group_sizes: Vec<usize> = (1..=groups)
            .map(|i| if i <= big { floor + 1 } else { floor })
            .collect();
        let mut group_starts = Vec::with_capacity(groups + 1);
        let mut next = 1;
        for &size in &group_sizes {
            group_starts.push(next);
            next += size;
        }
        group_starts.push(next);
        Ok(CodeShape {
            n,
            k,
            r,
            groups,
            group_sizes,
            group_starts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of groups `L`.
    pub fn groups(&self) -> usize {
        self.groups
    }

    /// Symbols per node; always `r`.
    pub fn sub_packetization(&self) -> usize {
        self.r
    }

    pub fn group_sizes(&self) -> &[usize] {
        &self.group_sizes
    }

    pub fn group_size(&self, t: usize) -> usize {
        self.group_sizes[t - 1]
    }

    /// Data nodes of group `t`.
    pub fn group_range(&self, t: usize) -> RangeInclusive<usize> {
        self.group_starts[t - 1]..=self.group_starts[t] - 1
    }

    /// Group of data node `node`, or `None` for parity nodes.
    pub fn group_of(&self, node: usize) -> Option<usize> {
        if node == 0 || node > self.k {
            return None;
        }
        Some(self.group_starts.partition_point(|&s| s <= node))
    }

    pub fn is_data_node(&self, node: usize) -> bool {
        (1..=self.k).contains(&node)
    }

    pub fn is_parity_node(&self, node: usize) -> bool {
        (self.k + 1..=self.n).contains(&node)
    }

    /// Group whose piggyback sits in parity symbol `R(i, j)`, if any.
    ///
    /// Column `j = r - t + 1` carries piggybacks of group `t` in rows
    /// `i <= r - t`, i.e. strictly above the diagonal.
    pub fn piggyback_group(&self, i: usize, j: usize) -> Option<usize> {
        let t = (self.r + 1).checked_sub(j)?;
        (t >= 1 && t < self.groups && i + t <= self.r).then_some(t)
    }

    /// Total number of piggybacked parity symbols, `(L-1)(2r-L)/2`.
    pub fn piggyback_count(&self) -> usize {
        (self.groups - 1) * (2 * self.r - self.groups) / 2
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.n {
            return Err(Error::IndexOutOfRange {
                what: "node",
                index: node,
                max: self.n,
            });
        }
        Ok(())
    }

    pub fn check_column(&self, col: usize) -> Result<()> {
        if col == 0 || col > self.r {
            return Err(Error::IndexOutOfRange {
                what: "column",
                index: col,
                max: self.r,
            });
        }
        Ok(())
    }

    fn check_parity_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.r {
            return Err(Error::IndexOutOfRange {
                what: "parity",
                index: i,
                max: self.r,
            });
        }
        Ok(())
    }

    fn check_group(&self, t: usize) -> Result<()> {
        if t == 0 || t > self.groups {
            return Err(Error::IndexOutOfRange {
                what: "group",
                index: t,
                max: self.groups,
            });
        }
        Ok(())
    }
}

/// Validated code parameters bound to a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    shape: CodeShape,
    field: GaloisField,
}

impl Deref for CodeParams {
    type Target = CodeShape;

    fn deref(&self) -> &CodeShape {
        &self.shape
    }
}

impl CodeParams {
    /// Builds parameters for `C(n, k, L)` over `field`.
    ///
    /// The field must have at least `n` elements. Fields of order at most
    /// `k r^2` are accepted; see [`CodeParams::meets_field_bound`].
    pub fn new(n: usize, k: usize, groups: usize, field: GaloisField) -> Result<CodeParams> {
        let shape = CodeShape::new(n, k, groups)?;
        if field.order() < n {
            return Err(Error::InvalidParams(format!(
                "field of order {} is smaller than n = {n}",
                field.order()
            )));
        }
        Ok(CodeParams { shape, field })
    }

    pub fn shape(&self) -> &CodeShape {
        &self.shape
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Whether the field order exceeds `k r^2`, the sufficient condition for
    /// the MDS property. When false, MDS must be checked by search.
    pub fn meets_field_bound(&self) -> bool {
        (self.field.order() as u128) > (self.k as u128) * (self.r as u128).pow(2)
    }

    /// `P_i = (alpha^i, alpha^{2i}, ..., alpha^{ki})`.
    pub fn parity_vector(&self, i: usize) -> Result<Vec<FieldElement>> {
        self.check_parity_index(i)?;
        Ok((1..=self.k)
            .map(|delta| self.field.alpha_pow((delta * i) as i64))
            .collect())
    }

    /// `q_{i,t}`: `P_i` with every entry outside group `t` zeroed.
    pub fn piggy_vector(&self, i: usize, t: usize) -> Result<Vec<FieldElement>> {
        self.check_group(t)?;
        let mut v = self.parity_vector(i)?;
        let range = self.group_range(t);
        for (idx, x) in v.iter_mut().enumerate() {
            if !range.contains(&(idx + 1)) {
                *x = FieldElement::ZERO;
            }
        }
        Ok(v)
    }

    /// Coefficient `alpha^{delta i}` of data node `delta` in `P_i`.
    #[inline]
    pub fn coefficient(&self, i: usize, delta: usize) -> FieldElement {
        self.field.alpha_pow((delta * i) as i64)
    }
}

/// Where one piggyback goes: `q_{parity_row, group} . a_{parity_row}` is
/// added to parity symbol `(parity_row, column)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiggybackAssignment {
    pub parity_row: usize,
    pub column: usize,
    pub group: usize,
}

/// The coding vectors of a code instance, materialized.
#[derive(Clone, Debug)]
pub struct EncodingPlan {
    /// p[i-1] = P_i
    pub p: Vec<Vec<FieldElement>>,
    /// q[i-1][t-1] = q_{i,t}
    pub q: Vec<Vec<Vec<FieldElement>>>,
    pub piggybacks: Vec<PiggybackAssignment>,
}

impl EncodingPlan {
    pub fn new(params: &CodeParams) -> EncodingPlan {
        let r = params.r();
        let l = params.groups();
        let p = (1..=r)
            .map(|i| params.parity_vector(i).expect("index in range"))
            .collect();
        let q = (1..=r)
            .map(|i| {
                (1..=l)
                    .map(|t| params.piggy_vector(i, t).expect("index in range"))
                    .collect()
            })
            .collect();
        let mut piggybacks = Vec::new();
        for t in 1..l {
            for j in 1..=r - t {
                piggybacks.push(PiggybackAssignment {
                    parity_row: j,
                    column: r - t + 1,
                    group: t,
                });
            }
        }
        EncodingPlan { p, q, piggybacks }
    }
}

/// The `k x r` source array; entry `(i, j)` is `a_{i,j}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DataMatrix {
    k: usize,
    r: usize,
    symbols: Vec<FieldElement>,
}

impl DataMatrix {
    pub fn new(k: usize, r: usize, symbols: Vec<FieldElement>) -> Result<DataMatrix> {
        if symbols.len() != k * r {
            return Err(Error::DimensionMismatch(format!(
                "{} symbols for a {k}x{r} data array",
                symbols.len()
            )));
        }
        Ok(DataMatrix { k, r, symbols })
    }

    pub fn zeros(k: usize, r: usize) -> DataMatrix {
        DataMatrix {
            k,
            r,
            symbols: vec![FieldElement::ZERO; k * r],
        }
    }

    /// Uniformly random data for `params`.
    pub fn random<R: Rng + ?Sized>(params: &CodeParams, rng: &mut R) -> DataMatrix {
        let order = params.field().order() as u32;
        let symbols = (0..params.k() * params.r())
            .map(|_| FieldElement(rng.gen_range(0..order) as u16))
            .collect();
        DataMatrix {
            k: params.k(),
            r: params.r(),
            symbols,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `a_{node, col}`.
    #[inline]
    pub fn get(&self, node: usize, col: usize) -> FieldElement {
        self.symbols[(node - 1) * self.r + col - 1]
    }

    #[inline]
    pub fn set(&mut self, node: usize, col: usize, v: FieldElement) {
        self.symbols[(node - 1) * self.r + col - 1] = v;
    }

    pub fn row(&self, node: usize) -> &[FieldElement] {
        &self.symbols[(node - 1) * self.r..node * self.r]
    }

    /// `a_col` as a length-`k` vector.
    pub fn column(&self, col: usize) -> Vec<FieldElement> {
        (1..=self.k).map(|i| self.get(i, col)).collect()
    }

    /// Row-major flattening: `a_{i,j}` sits at `(i-1) r + (j-1)`.
    pub fn as_slice(&self) -> &[FieldElement] {
        &self.symbols
    }

    pub fn into_vec(self) -> Vec<FieldElement> {
        self.symbols
    }

    /// Elementwise sum (XOR).
    pub fn add(&self, other: &DataMatrix) -> Result<DataMatrix> {
        if self.k != other.k || self.r != other.r {
            return Err(Error::DimensionMismatch(
                "data arrays differ in shape".into(),
            ));
        }
        Ok(DataMatrix {
            k: self.k,
            r: self.r,
            symbols: self
                .symbols
                .iter()
                .zip(&other.symbols)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    fn check(&self, params: &CodeParams) -> Result<()> {
        if self.k != params.k() || self.r != params.r() {
            return Err(Error::DimensionMismatch(format!(
                "data array is {}x{}, code expects {}x{}",
                self.k,
                self.r,
                params.k(),
                params.r()
            )));
        }
        Ok(())
    }
}

/// Encoding stage of a [`CodedStripe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// r independent base codewords
    G1,
    /// after piggybacking
    G2,
    /// after the conjugate transform; the stored code
    G3,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::G1 => "G1",
            Stage::G2 => "G2",
            Stage::G3 => "G3",
        }
    }

    pub fn from_name(s: &str) -> Option<Stage> {
        match s {
            "G1" => Some(Stage::G1),
            "G2" => Some(Stage::G2),
            "G3" => Some(Stage::G3),
            _ => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An `n x r` stored array, one row per node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodedStripe {
    n: usize,
    k: usize,
    r: usize,
    stage: Stage,
    symbols: Vec<FieldElement>,
}

impl CodedStripe {
    pub fn new(
        n: usize,
        k: usize,
        stage: Stage,
        symbols: Vec<FieldElement>,
    ) -> Result<CodedStripe> {
        if n <= k {
            return Err(Error::InvalidParams(format!("n = {n} must exceed k = {k}")));
        }
        let r = n - k;
        if symbols.len() != n * r {
            return Err(Error::DimensionMismatch(format!(
                "{} symbols for a {n}x{r} stripe",
                symbols.len()
            )));
        }
        Ok(CodedStripe {
            n,
            k,
            r,
            stage,
            symbols,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    /// Symbol stored by `node` in column `col`.
    #[inline]
    pub fn get(&self, node: usize, col: usize) -> FieldElement {
        self.symbols[(node - 1) * self.r + col - 1]
    }

    #[inline]
    pub fn set(&mut self, node: usize, col: usize, v: FieldElement) {
        self.symbols[(node - 1) * self.r + col - 1] = v;
    }

    /// Parity symbol in row `k + i`, column `j`.
    #[inline]
    pub fn parity(&self, i: usize, j: usize) -> FieldElement {
        self.get(self.k + i, j)
    }

    #[inline]
    fn set_parity(&mut self, i: usize, j: usize, v: FieldElement) {
        let k = self.k;
        self.set(k + i, j, v);
    }

    pub fn row(&self, node: usize) -> &[FieldElement] {
        &self.symbols[(node - 1) * self.r..node * self.r]
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.symbols
    }

    /// The systematic rows as a data array.
    pub fn data(&self) -> DataMatrix {
        DataMatrix {
            k: self.k,
            r: self.r,
            symbols: self.symbols[..self.k * self.r].to_vec(),
        }
    }

    fn expect_stage(&self, expected: Stage, params: &CodeParams) -> Result<()> {
        if self.n != params.n() || self.k != params.k() {
            return Err(Error::DimensionMismatch(format!(
                "stripe is ({}, {}), code is ({}, {})",
                self.n,
                self.k,
                params.n(),
                params.k()
            )));
        }
        if self.stage != expected {
            return Err(Error::WrongStage {
                expected: expected.name(),
                found: self.stage.name(),
            });
        }
        Ok(())
    }
}

/// Applies the conjugate transform to one symmetric pair `(R(i,j), R(j,i))`
/// with `i < j`, returning `(P(i,j), P(j,i))`.
#[inline]
pub fn conjugate_pair(
    field: &GaloisField,
    r_ij: FieldElement,
    r_ji: FieldElement,
) -> (FieldElement, FieldElement) {
    (r_ij + field.mul(field.alpha(), r_ji), r_ij + r_ji)
}

/// Inverts [`conjugate_pair`]: from `(P(i,j), P(j,i))`, `i < j`, recovers
/// `(R(i,j), R(j,i))` by inverting `[[1, alpha], [1, 1]]`.
#[inline]
pub fn inverse_pair(
    field: &GaloisField,
    p_ij: FieldElement,
    p_ji: FieldElement,
) -> (FieldElement, FieldElement) {
    // determinant 1 + alpha; alpha = x is never 1
    let det_inv = field
        .inv(FieldElement::ONE + field.alpha())
        .expect("1 + alpha is nonzero");
    let r_ji = field.mul(det_inv, p_ij + p_ji);
    (p_ji + r_ji, r_ji)
}

/// Stage 1: `r` systematic base codewords, parity `(i, j) = P_i . a_j`.
pub fn encode_base(params: &CodeParams, data: &DataMatrix) -> Result<CodedStripe> {
    data.check(params)?;
    let (n, k, r) = (params.n(), params.k(), params.r());
    let field = params.field();
    let mut symbols = Vec::with_capacity(n * r);
    symbols.extend_from_slice(data.as_slice());
    let columns: Vec<Vec<FieldElement>> = (1..=r).map(|j| data.column(j)).collect();
    for i in 1..=r {
        let p = params.parity_vector(i)?;
        for column in &columns {
            symbols.push(field.dot(&p, column));
        }
    }
    CodedStripe::new(n, k, Stage::G1, symbols)
}

/// Stage 2: add every piggyback `q_{j,t} . a_j` to parity `(j, r - t + 1)`.
pub fn apply_piggyback(params: &CodeParams, g1: &CodedStripe) -> Result<CodedStripe> {
    g1.expect_stage(Stage::G1, params)?;
    let plan = EncodingPlan::new(params);
    let field = params.field();
    let mut out = g1.clone();
    for pb in &plan.piggybacks {
        let a = g1.data().column(pb.parity_row);
        let extra = field.dot(&plan.q[pb.parity_row - 1][pb.group - 1], &a);
        let cur = out.parity(pb.parity_row, pb.column);
        out.set_parity(pb.parity_row, pb.column, cur + extra);
    }
    out.stage = Stage::G2;
    Ok(out)
}

/// Stage 3: replace each symmetric pair of the parity square by its
/// conjugate combination.
pub fn conjugate_transform(params: &CodeParams, g2: &CodedStripe) -> Result<CodedStripe> {
    g2.expect_stage(Stage::G2, params)?;
    let field = params.field();
    let mut out = g2.clone();
    let r = params.r();
    for i in 1..=r {
        for j in i + 1..=r {
            let (p_ij, p_ji) = conjugate_pair(field, g2.parity(i, j), g2.parity(j, i));
            out.set_parity(i, j, p_ij);
            out.set_parity(j, i, p_ji);
        }
    }
    out.stage = Stage::G3;
    Ok(out)
}

/// Undoes [`conjugate_transform`].
pub fn inverse_conjugate(params: &CodeParams, g3: &CodedStripe) -> Result<CodedStripe> {
    g3.expect_stage(Stage::G3, params)?;
    let field = params.field();
    let mut out = g3.clone();
    let r = params.r();
    for i in 1..=r {
        for j in i + 1..=r {
            let (r_ij, r_ji) = inverse_pair(field, g3.parity(i, j), g3.parity(j, i));
            out.set_parity(i, j, r_ij);
            out.set_parity(j, i, r_ji);
        }
    }
    out.stage = Stage::G2;
    Ok(out)
}

/// Full encoder: data array to the stored stripe.
pub fn encode(params: &CodeParams, data: &DataMatrix) -> Result<CodedStripe> {
    let g1 = encode_base(params, data)?;
    let g2 = apply_piggyback(params, &g1)?;
    conjugate_transform(params, &g2)
}
