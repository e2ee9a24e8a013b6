//! Arithmetic in GF(2^m) for 2 <= m <= 16, plus dense linear algebra over it.
//!
//! Elements are polynomials over GF(2) stored as bit vectors. Addition is
//! XOR; multiplication, inversion and powers go through discrete exp/log
//! tables generated from the reduction polynomial. The generator used for the
//! tables is always the polynomial `x` (value 2), and construction fails if it
//! is not primitive for the chosen polynomial.
//!
//! ```
//! use cpcode::galois::{FieldElement, GaloisField};
//!
//! let gf = GaloisField::new(8, Some(0x11d)).unwrap();
//! let a = FieldElement(0x02);
//! let b = FieldElement(0x80);
//! assert_eq!(gf.mul(a, b), FieldElement(0x1d));
//! assert_eq!(gf.mul(a, gf.inv(a).unwrap()), FieldElement::ONE);
//! ```

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub, SubAssign};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default reduction polynomial for each supported degree. Every entry is
/// primitive, i.e. `x` generates the multiplicative group.
///
/// For m = 8 the default is x^8+x^6+x^5+x^2+1 rather than the common 0x11d:
/// under 0x11d the (14, 10, L=3) code has two erasure patterns whose
/// surviving-symbol system is singular.
pub const DEFAULT_POLYNOMIALS: [(u32, u32); 15] = [
    (2, 0x7),
    (3, 0xb),
    (4, 0x13),
    (5, 0x25),
    (6, 0x43),
    (7, 0x89),
    (8, 0x165),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
    (13, 0x201b),
    (14, 0x4443),
    (15, 0x8003),
    (16, 0x1100b),
];

/// Default reduction polynomial for degree `m`, if `m` is supported.
pub fn default_polynomial(m: u32) -> Option<u32> {
    DEFAULT_POLYNOMIALS
        .iter()
        .find(|(deg, _)| *deg == m)
        .map(|(_, poly)| *poly)
}

/// A single field symbol. The value is only meaningful relative to a
/// [`GaloisField`]; addition does not need the field since it is XOR.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.0)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

// characteristic 2: subtraction is addition
impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> FieldElement {
        iter.fold(FieldElement::ZERO, |acc, x| acc + x)
    }
}

struct Tables {
    m: u32,
    poly: u32,
    /// 2^m
    order: usize,
    /// exp[i] = x^i, doubled so that exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
}

/// GF(2^m) arithmetic context. Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct GaloisField {
    tables: Arc<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("m", &self.tables.m)
            .field("poly", &format_args!("{:#x}", self.tables.poly))
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.tables.m == other.tables.m && self.tables.poly == other.tables.poly
    }
}

impl Eq for GaloisField {}

fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of `a` divided by `b` as polynomials over GF(2).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=m/2.
fn is_irreducible(poly: u32) -> bool {
    let m = degree(poly);
    for d in 1..=m / 2 {
        for low in 0..(1u32 << d) {
            let divisor = (1 << d) | low;
            if poly_rem(poly, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds GF(2^m) from `poly`, or from the default polynomial for `m`.
    ///
    /// The polynomial is given with its leading term, e.g. `0x11d` for
    /// x^8+x^4+x^3+x^2+1. Fails when `m` is out of range, the polynomial has
    /// the wrong degree or is reducible, or `x` is not primitive for it.
    pub fn new(m: u32, poly: Option<u32>) -> Result<GaloisField> {
        if !(2..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let poly = match poly {
            Some(p) => p,
            None => default_polynomial(m).ok_or(Error::DegreeOutOfRange(m))?,
        };
        if poly == 0 || degree(poly) != m {
            return Err(Error::PolynomialDegree { poly, m });
        }
        if !is_irreducible(poly) {
            return Err(Error::ReduciblePolynomial(poly));
        }

        let order = 1usize << m;
        let group = order - 1;
        let mut exp = vec![0u16; 2 * group];
        let mut log = vec![0u32; order];
        let mut x: u32 = 1;
        for i in 0..group {
            if i > 0 && x == 1 {
                // x has order i < 2^m - 1
                return Err(Error::NotPrimitive(poly));
            }
            exp[i] = x as u16;
            exp[i + group] = x as u16;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive(poly));
        }

        Ok(GaloisField {
            tables: Arc::new(Tables {
                m,
                poly,
                order,
                exp,
                log,
            }),
        })
    }

    /// GF(2^m) with the default polynomial for `m`.
    pub fn with_degree(m: u32) -> Result<GaloisField> {
        GaloisField::new(m, None)
    }

    pub fn m(&self) -> u32 {
        self.tables.m
    }

    pub fn reduction_poly(&self) -> u32 {
        self.tables.poly
    }

    /// Number of field elements, 2^m.
    pub fn order(&self) -> usize {
        self.tables.order
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn group_order(&self) -> usize {
        self.tables.order - 1
    }

    /// The primitive element `x`.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(2)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as usize) < self.tables.order
    }

    /// Checked conversion from a raw value.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.tables.order {
            Ok(FieldElement(value as u16))
        } else {
            Err(Error::Format(format!(
                "value {value:#x} is not an element of GF(2^{})",
                self.tables.m
            )))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.tables.order).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.tables;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.tables;
        let group = (t.order - 1) as u32;
        Ok(FieldElement(
            t.exp[((group - t.log[a.0 as usize]) % group) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with the exponent reduced modulo 2^m - 1 for nonzero `a`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return if e > 0 {
                Ok(FieldElement::ZERO)
            } else {
                Err(Error::ZeroPower(e))
            };
        }
        let group = self.group_order() as i64;
        let l = self.tables.log[a.0 as usize] as i64;
        let idx = (l * e.rem_euclid(group)).rem_euclid(group);
        Ok(FieldElement(self.tables.exp[idx as usize]))
    }

    /// `alpha^e` for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let group = self.group_order() as i64;
        FieldElement(self.tables.exp[e.rem_euclid(group) as usize])
    }

    /// Discrete logarithm to base alpha; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.tables.log[a.0 as usize])
        }
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(a.len(), b.len());
        a.iter().zip(b).map(|(&x, &y)| self.mul(x, y)).sum()
    }

    /// `dst += factor * src`, elementwise.
    #[inline]
    pub fn mul_add_into(
        &self,
        dst: &mut [FieldElement],
        factor: FieldElement,
        src: &[FieldElement],
    ) {
        if factor.0 == 0 {
            return;
        }
        let t = &*self.tables;
        let lf = t.log[factor.0 as usize];
        for (d, s) in dst.iter_mut().zip(src) {
            if s.0 != 0 {
                d.0 ^= t.exp[(lf + t.log[s.0 as usize]) as usize];
            }
        }
    }

    /// `row *= factor`, elementwise.
    #[inline]
    pub fn scale(&self, row: &mut [FieldElement], factor: FieldElement) {
        for x in row.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    pub fn mul_vec(&self, a: &FieldMatrix, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if a.cols != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                a.rows,
                a.cols,
                x.len()
            )));
        }
        Ok((0..a.rows).map(|i| self.dot(a.row(i), x)).collect())
    }

    pub fn mul_matrix(&self, a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix> {
        if a.cols != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        let mut out = FieldMatrix::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for l in 0..a.cols {
                let f = a.get(i, l);
                let (dst, src) = (i * b.cols, l * b.cols);
                self.mul_add_into(
                    &mut out.data[dst..dst + b.cols],
                    f,
                    &b.data[src..src + b.cols],
                );
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination to reduced row echelon form, applying the same
    /// row operations to `aug` when given. Pivots are the first nonzero entry
    /// of each column at or below the current row. Returns the rank.
    fn reduce(&self, a: &mut FieldMatrix, mut aug: Option<&mut FieldMatrix>) -> usize {
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(pivot) = (rank..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            if let Some(m) = aug.as_deref_mut() {
                m.swap_rows(rank, pivot);
            }
            let inv = self.inv(a.get(rank, col)).expect("pivot is nonzero");
            self.scale(a.row_mut(rank), inv);
            if let Some(m) = aug.as_deref_mut() {
                self.scale(m.row_mut(rank), inv);
            }
            let pivot_row = a.row(rank).to_vec();
            let pivot_aug = aug.as_deref().map(|m| m.row(rank).to_vec());
            for i in 0..a.rows {
                if i == rank {
                    continue;
                }
                let f = a.get(i, col);
                if f.is_zero() {
                    continue;
                }
                self.mul_add_into(a.row_mut(i), f, &pivot_row);
                if let (Some(m), Some(p)) = (aug.as_deref_mut(), pivot_aug.as_ref()) {
                    self.mul_add_into(m.row_mut(i), f, p);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self, a: &FieldMatrix) -> usize {
        let mut work = a.clone();
        self.reduce(&mut work, None)
    }

    /// True iff `a` is square and nonsingular. Non-square input is simply
    /// not invertible.
    pub fn is_invertible(&self, a: &FieldMatrix) -> bool {
        a.is_square() && self.rank(a) == a.rows
    }

    /// Solves `a x = b` for square `a`.
    pub fn solve(&self, a: &FieldMatrix, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if !a.is_square() || a.rows != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot solve {}x{} system with right-hand side of length {}",
                a.rows,
                a.cols,
                b.len()
            )));
        }
        let mut work = a.clone();
        let mut rhs = FieldMatrix::from_vec(b.len(), 1, b.to_vec())?;
        let rank = self.reduce(&mut work, Some(&mut rhs));
        if rank < a.rows {
            return Err(Error::SingularMatrix { rank, size: a.rows });
        }
        Ok(rhs.data)
    }

    pub fn invert(&self, a: &FieldMatrix) -> Result<FieldMatrix> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                a.rows, a.cols
            )));
        }
        let mut work = a.clone();
        let mut inv = FieldMatrix::identity(a.rows);
        let rank = self.reduce(&mut work, Some(&mut inv));
        if rank < a.rows {
            return Err(Error::SingularMatrix { rank, size: a.rows });
        }
        Ok(inv)
    }
}

/// Dense row-major matrix of field elements. Indices are 0-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<FieldMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FieldMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<FieldMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(FieldMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElement] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Carry-less schoolbook multiply followed by polynomial reduction.
    fn schoolbook_mul(a: u32, b: u32, poly: u32, m: u32) -> u32 {
        let mut acc = 0u32;
        for i in 0..m {
            if b & (1 << i) != 0 {
                acc ^= a << i;
            }
        }
        for bit in (m..2 * m).rev() {
            if acc & (1 << bit) != 0 {
                acc ^= poly << (bit - m);
            }
        }
        acc
    }

    fn fe(v: u16) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn default_gf256_alpha_is_primitive() {
        let gf = GaloisField::with_degree(8).unwrap();
        assert_eq!(gf.order(), 256);
        assert_eq!(gf.alpha(), fe(2));
        let mut seen = std::collections::HashSet::new();
        let mut x = FieldElement::ONE;
        for _ in 0..255 {
            assert!(seen.insert(x));
            x = gf.mul(x, gf.alpha());
        }
        assert_eq!(x, FieldElement::ONE);
    }

    #[test]
    fn all_default_polynomials_build() {
        for (m, poly) in DEFAULT_POLYNOMIALS {
            let gf = GaloisField::new(m, None).unwrap();
            assert_eq!(gf.reduction_poly(), poly);
            assert_eq!(
                gf.pow(gf.alpha(), gf.group_order() as i64).unwrap(),
                FieldElement::ONE
            );
        }
    }

    #[test]
    fn named_defaults_for_larger_degrees() {
        assert_eq!(default_polynomial(10), Some(0x409));
        assert_eq!(default_polynomial(12), Some(0x1053));
        assert_eq!(default_polynomial(16), Some(0x1100b));
    }

    #[test]
    fn smallest_field() {
        let gf = GaloisField::new(2, Some(0b111)).unwrap();
        assert_eq!(gf.order(), 4);
        assert_eq!(gf.pow(gf.alpha(), 3).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            GaloisField::new(8, Some(0x100)).unwrap_err(),
            Error::ReduciblePolynomial(0x100)
        );
        // x^4+x^3+x^2+x+1 is irreducible but x has order 5
        assert_eq!(
            GaloisField::new(4, Some(0x1f)).unwrap_err(),
            Error::NotPrimitive(0x1f)
        );
        assert_eq!(
            GaloisField::new(1, None).unwrap_err(),
            Error::DegreeOutOfRange(1)
        );
        assert_eq!(
            GaloisField::new(17, None).unwrap_err(),
            Error::DegreeOutOfRange(17)
        );
        assert!(matches!(
            GaloisField::new(8, Some(0x1d)),
            Err(Error::PolynomialDegree { .. })
        ));
    }

    #[test]
    fn add_examples() {
        let gf = GaloisField::with_degree(8).unwrap();
        assert_eq!(gf.add(fe(0x57), fe(0x57)), fe(0));
        assert_eq!(gf.add(fe(0x57), fe(0)), fe(0x57));
        assert_eq!(gf.add(fe(0x05), fe(0x0e)), fe(0x0b));
    }

    #[test]
    fn mul_examples() {
        let gf = GaloisField::new(8, Some(0x11d)).unwrap();
        assert_eq!(gf.mul(fe(0), fe(0x57)), fe(0));
        assert_eq!(gf.mul(fe(1), fe(0x57)), fe(0x57));
        assert_eq!(schoolbook_mul(0x02, 0x80, 0x11d, 8), 0x1d);
        assert_eq!(gf.mul(fe(0x02), fe(0x80)), fe(0x1d));
    }

    #[test]
    fn tables_agree_with_schoolbook_exhaustively() {
        for poly in [0x11d, 0x165] {
            let gf = GaloisField::new(8, Some(poly)).unwrap();
            for a in 0..256u32 {
                for b in 0..256u32 {
                    assert_eq!(
                        gf.mul(fe(a as u16), fe(b as u16)).0 as u32,
                        schoolbook_mul(a, b, poly, 8)
                    );
                }
            }
        }
        let gf = GaloisField::with_degree(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let a = rng.gen_range(0..4096u32);
            let b = rng.gen_range(0..4096u32);
            assert_eq!(
                gf.mul(fe(a as u16), fe(b as u16)).0 as u32,
                schoolbook_mul(a, b, gf.reduction_poly(), 12)
            );
        }
    }

    #[test]
    fn inverse_matches_exhaustive_scan() {
        let gf = GaloisField::with_degree(8).unwrap();
        assert_eq!(gf.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(gf.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        for a in gf.elements().skip(1) {
            let scan: Vec<_> = gf
                .elements()
                .filter(|&b| gf.mul(a, b) == FieldElement::ONE)
                .collect();
            assert_eq!(scan, vec![gf.inv(a).unwrap()]);
            assert_eq!(gf.inv(gf.inv(a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn pow_examples() {
        let gf = GaloisField::with_degree(8).unwrap();
        let a = gf.alpha();
        assert_eq!(gf.pow(a, 255).unwrap(), FieldElement::ONE);
        assert_eq!(gf.pow(fe(0x37), 1).unwrap(), fe(0x37));
        assert_eq!(
            gf.mul(gf.pow(a, 5).unwrap(), gf.pow(a, -5).unwrap()),
            FieldElement::ONE
        );
        assert_eq!(gf.pow(FieldElement::ZERO, 3).unwrap(), FieldElement::ZERO);
        assert_eq!(gf.pow(FieldElement::ZERO, 0), Err(Error::ZeroPower(0)));
        assert_eq!(gf.pow(FieldElement::ZERO, -1), Err(Error::ZeroPower(-1)));
        for x in gf.elements().skip(1) {
            assert_eq!(gf.alpha_pow(gf.log(x).unwrap() as i64), x);
        }
    }

    #[test]
    fn field_axioms_exhaustive_pairs() {
        let gf = GaloisField::with_degree(8).unwrap();
        for a in gf.elements() {
            for b in gf.elements() {
                assert_eq!(gf.mul(a, b), gf.mul(b, a));
                assert_eq!(a + b, b + a);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100_000 {
            let a = fe(rng.gen_range(0..256));
            let b = fe(rng.gen_range(0..256));
            let c = fe(rng.gen_range(0..256));
            assert_eq!(gf.mul(a, b + c), gf.mul(a, b) + gf.mul(a, c));
            assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, gf: &GaloisField) -> FieldMatrix {
        let data = (0..n * n)
            .map(|_| fe(rng.gen_range(0..gf.order() as u32) as u16))
            .collect();
        FieldMatrix::from_vec(n, n, data).unwrap()
    }

    #[test]
    fn solve_identity() {
        let gf = GaloisField::with_degree(8).unwrap();
        let b = vec![fe(3), fe(0), fe(0xff)];
        assert_eq!(gf.solve(&FieldMatrix::identity(3), &b).unwrap(), b);
    }

    #[test]
    fn solve_conjugate_pair() {
        let gf = GaloisField::new(8, Some(0x11d)).unwrap();
        let a = FieldMatrix::from_rows(vec![
            vec![FieldElement::ONE, gf.alpha()],
            vec![FieldElement::ONE, FieldElement::ONE],
        ])
        .unwrap();
        // P(1,2) = R(1,2) + a R(2,1), P(2,1) = R(1,2) + R(2,1)
        let (r12, r21) = (fe(0x05), fe(0x07));
        let p = vec![r12 + gf.mul(gf.alpha(), r21), r12 + r21];
        assert_eq!(p, vec![fe(0x0b), fe(0x02)]);
        assert_eq!(gf.solve(&a, &p).unwrap(), vec![r12, r21]);
        assert!(gf.is_invertible(&a));
    }

    #[test]
    fn solve_random_systems() {
        let gf = GaloisField::with_degree(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [5, 12, 40] {
            let mut solved = 0;
            while solved < 5 {
                let a = random_matrix(&mut rng, n, &gf);
                if !gf.is_invertible(&a) {
                    continue;
                }
                let x: Vec<_> = (0..n).map(|_| fe(rng.gen_range(0..256))).collect();
                let b = gf.mul_vec(&a, &x).unwrap();
                assert_eq!(gf.solve(&a, &b).unwrap(), x);
                let inv = gf.invert(&a).unwrap();
                assert_eq!(gf.mul_matrix(&a, &inv).unwrap(), FieldMatrix::identity(n));
                solved += 1;
            }
        }
    }

    #[test]
    fn singular_systems() {
        let gf = GaloisField::with_degree(8).unwrap();
        let row = vec![fe(1), fe(2), fe(3)];
        let a = FieldMatrix::from_rows(vec![row.clone(), vec![fe(4), fe(5), fe(6)], row]).unwrap();
        assert!(!gf.is_invertible(&a));
        assert_eq!(
            gf.solve(&a, &[fe(0); 3]),
            Err(Error::SingularMatrix { rank: 2, size: 3 })
        );
        assert!(gf.invert(&a).is_err());
        assert!(!gf.is_invertible(&FieldMatrix::zeros(2, 3)));
        assert_eq!(
            gf.invert(&FieldMatrix::identity(4)).unwrap(),
            FieldMatrix::identity(4)
        );
    }
}
