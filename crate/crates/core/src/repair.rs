//! Single-node repair with reduced download.
//!
//! Bandwidth is the number of distinct symbols read from helper nodes.
//! Values derived locally from downloaded symbols are free.

use std::collections::HashMap;

use crate::code::{inverse_pair, CodeParams, CodeShape};
use crate::decode::ShareSource;
use crate::error::{Error, Result};
use crate::galois::FieldElement;

/// One symbol read from a helper node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Download {
    pub node: usize,
    pub col: usize,
    pub symbol: FieldElement,
}

/// Outcome of repairing one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairReport {
    pub failed_node: usize,
    /// The `r` rebuilt symbols of the failed node.
    pub recovered: Vec<FieldElement>,
    /// Distinct downloads in the order they were first fetched.
    pub downloads: Vec<Download>,
    pub bandwidth: usize,
    pub predicted: usize,
}

impl RepairReport {
    /// Bandwidth relative to the `kr` symbols a conventional repair reads.
    pub fn ratio(&self, shape: &CodeShape) -> f64 {
        self.bandwidth as f64 / (shape.k() * shape.r()) as f64
    }
}

struct Fetcher<'a> {
    source: &'a dyn ShareSource,
    failed: usize,
    seen: HashMap<(usize, usize), FieldElement>,
    log: Vec<Download>,
}

impl<'a> Fetcher<'a> {
    fn new(source: &'a dyn ShareSource, failed: usize) -> Fetcher<'a> {
        Fetcher {
            source,
            failed,
            seen: HashMap::new(),
            log: Vec::new(),
        }
    }

    fn get(&mut self, node: usize, col: usize) -> Result<FieldElement> {
        if node == self.failed {
            return Err(Error::UnreadableNode(node));
        }
        if let Some(&s) = self.seen.get(&(node, col)) {
            return Ok(s);
        }
        let symbol = self
            .source
            .symbol(node, col)
            .ok_or(Error::UnreadableNode(node))?;
        self.seen.insert((node, col), symbol);
        self.log.push(Download { node, col, symbol });
        Ok(symbol)
    }
}

/// Closed-form download count for repairing `node`.
pub fn predicted_bandwidth(shape: &CodeShape, node: usize) -> Result<usize> {
    shape.check_node(node)?;
    let (k, r, l) = (shape.k(), shape.r(), shape.groups());
    if node <= k {
        let i = shape.group_of(node).expect("data node");
        let n_i = shape.group_size(i);
        return Ok(if i < l {
            k * i + (r - i) * (n_i + 1)
        } else {
            k * (l - 1) + (r - l + 1) * n_i + 2 * (l - 1) * (r - l + 1)
        });
    }
    let mut b = k + r - 1;
    if node + l >= k + r + 2 {
        b += shape.group_size(k + r + 1 - node) * (node - k - 1);
    }
    Ok(b)
}

/// `sum_{delta} alpha^{delta i} a_{delta, col}` over `nodes`, skipping `skip`.
fn weighted_sum(
    params: &CodeParams,
    fetch: &mut Fetcher,
    i: usize,
    col: usize,
    nodes: impl Iterator<Item = usize>,
    skip: usize,
) -> Result<FieldElement> {
    let field = params.field();
    let mut acc = FieldElement::ZERO;
    for delta in nodes.filter(|&d| d != skip) {
        acc += field.mul(params.coefficient(i, delta), fetch.get(delta, col)?);
    }
    Ok(acc)
}

fn repair_data(params: &CodeParams, fetch: &mut Fetcher, f: usize) -> Result<Vec<FieldElement>> {
    let (k, r, l) = (params.k(), params.r(), params.groups());
    let field = params.field();
    let group = params.group_of(f).expect("data node");
    let mut out = vec![FieldElement::ZERO; r];
    // known[c-1]: column c of the data, once complete
    let mut known: Vec<Option<Vec<FieldElement>>> = vec![None; r];

    // Step 1: the last `g` columns from their diagonal parity.
    let g = group.min(l - 1);
    for c in r - g + 1..=r {
        let rest = weighted_sum(params, fetch, c, c, 1..=k, f)?;
        let diag = fetch.get(k + c, c)?;
        let a_fc = field.div(diag - rest, params.coefficient(c, f))?;
        out[c - 1] = a_fc;
        let mut column = Vec::with_capacity(k);
        for delta in 1..=k {
            column.push(if delta == f {
                a_fc
            } else {
                fetch.get(delta, c)?
            });
        }
        known[c - 1] = Some(column);
    }
    let p_dot = |i: usize, col: &[FieldElement]| -> FieldElement {
        col.iter()
            .enumerate()
            .map(|(d, &x)| field.mul(params.coefficient(i, d + 1), x))
            .sum()
    };

    // Step 2: the remaining columns from the piggybacks of the failed group.
    if group < l {
        let c0 = r + 1 - group;
        let a_c0 = known[c0 - 1].clone().expect("recovered in step 1");
        for v in 1..=r - group {
            let p_v_c0 = fetch.get(k + v, c0)?;
            let p_c0_v = fetch.get(k + c0, v)?;
            let (r_v_c0, _) = inverse_pair(field, p_v_c0, p_c0_v);
            let piggy = r_v_c0 - p_dot(v, &a_c0);
            let rest = weighted_sum(params, fetch, v, v, params.group_range(group), f)?;
            out[v - 1] = field.div(piggy - rest, params.coefficient(v, f))?;
        }
    } else {
        let tail = r - l + 2..=r;
        let mut a_sum = vec![FieldElement::ZERO; k];
        for u in tail.clone() {
            for (s, x) in a_sum.iter_mut().zip(known[u - 1].as_ref().expect("step 1")) {
                *s += *x;
            }
        }
        for v in 1..=r - l + 1 {
            let mut acc = FieldElement::ZERO;
            for u in tail.clone() {
                let p_vu = fetch.get(k + v, u)?;
                let p_uv = fetch.get(k + u, v)?;
                let (r_vu, _) = inverse_pair(field, p_vu, p_uv);
                acc += r_vu;
            }
            let diag = fetch.get(k + v, v)?;
            let piggy = diag - acc + p_dot(v, &a_sum);
            let rest = weighted_sum(params, fetch, v, v, params.group_range(l), f)?;
            out[v - 1] = field.div(piggy - rest, params.coefficient(v, f))?;
        }
    }
    Ok(out)
}

fn repair_parity(params: &CodeParams, fetch: &mut Fetcher, c: usize) -> Result<Vec<FieldElement>> {
    let (k, r) = (params.k(), params.r());
    let field = params.field();
    let alpha = field.alpha();

    // Step 1: column c of the data.
    let a_c = (1..=k)
        .map(|d| fetch.get(d, c))
        .collect::<Result<Vec<_>>>()?;
    let p_dot = |i: usize| -> FieldElement {
        a_c.iter()
            .enumerate()
            .map(|(d, &x)| field.mul(params.coefficient(i, d + 1), x))
            .sum()
    };

    // Step 2: R(u, c) for every u, then R(c, u) from the stored P(u, c).
    let mut r_uc = vec![FieldElement::ZERO; r + 1];
    for u in (1..=r).filter(|&u| u != c) {
        r_uc[u] = p_dot(u);
        if let Some(g) = params.piggyback_group(u, c) {
            r_uc[u] += weighted_sum(params, fetch, u, u, params.group_range(g), 0)?;
        }
    }
    let mut r_cu = vec![FieldElement::ZERO; r + 1];
    for u in (1..=r).filter(|&u| u != c) {
        let p_uc = fetch.get(k + u, c)?;
        r_cu[u] = if u < c {
            field.div(p_uc - r_uc[u], alpha)?
        } else {
            p_uc - r_uc[u]
        };
    }

    // Step 3: re-apply the conjugate transform.
    Ok((1..=r)
        .map(|u| {
            if u == c {
                p_dot(c)
            } else if u < c {
                r_cu[u] + r_uc[u]
            } else {
                r_cu[u] + field.mul(alpha, r_uc[u])
            }
        })
        .collect())
}

fn finish(
    params: &CodeParams,
    node: usize,
    recovered: Vec<FieldElement>,
    fetch: Fetcher,
) -> Result<RepairReport> {
    Ok(RepairReport {
        failed_node: node,
        recovered,
        bandwidth: fetch.log.len(),
        downloads: fetch.log,
        predicted: predicted_bandwidth(params.shape(), node)?,
    })
}

/// Rebuilds data node `node` (1..=k) from helper symbols in `source`.
pub fn repair_data_node(
    params: &CodeParams,
    source: &dyn ShareSource,
    node: usize,
) -> Result<RepairReport> {
    params.check_node(node)?;
    if !params.is_data_node(node) {
        return Err(Error::InvalidParams(format!(
            "node {node} is not a data node"
        )));
    }
    let mut fetch = Fetcher::new(source, node);
    let recovered = repair_data(params, &mut fetch, node)?;
    finish(params, node, recovered, fetch)
}

/// Rebuilds parity node `node` (k+1..=n) from helper symbols in `source`.
pub fn repair_parity_node(
    params: &CodeParams,
    source: &dyn ShareSource,
    node: usize,
) -> Result<RepairReport> {
    params.check_node(node)?;
    if !params.is_parity_node(node) {
        return Err(Error::InvalidParams(format!(
            "node {node} is not a parity node"
        )));
    }
    let mut fetch = Fetcher::new(source, node);
    let recovered = repair_parity(params, &mut fetch, node - params.k())?;
    finish(params, node, recovered, fetch)
}

/// Rebuilds any node.
pub fn repair_node(
    params: &CodeParams,
    source: &dyn ShareSource,
    node: usize,
) -> Result<RepairReport> {
    params.check_node(node)?;
    if params.is_data_node(node) {
        repair_data_node(params, source, node)
    } else {
        repair_parity_node(params, source, node)
    }
}
