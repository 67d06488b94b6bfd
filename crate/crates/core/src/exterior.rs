//! Exact exterior algebra on at most 8 generators, with coefficients in
//! ℚ[t] (univariate polynomials over exact rationals). No floating
//! point anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;
pub type RationalMatrix = Vec<Vec<Rational>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("operands live over different generator counts ({0} vs {1})")]
    GeneratorMismatch(usize, usize),
    #[error("matrix size {0} does not match generator count {1}")]
    SizeMismatch(usize, usize),
}

/// A univariate polynomial in `t` with exact rational coefficients,
/// stored by ascending power with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyScalar {
    coeffs: Vec<Rational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self { coeffs: vec![c] }.trimmed()
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Ratio::from_integer(c))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self {
            coeffs: vec![Ratio::zero(), Ratio::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }.trimmed()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Ratio::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self { coeffs: out }.trimmed()
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Ratio::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }.trimmed()
    }

    pub fn scale(&self, c: Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
        .trimmed()
    }

    pub fn evaluate(&self, t: Rational) -> Rational {
        let mut acc = Ratio::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && p > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match p {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{p}")?,
            }
        }
        Ok(())
    }
}

/// An exterior-algebra element over `generators ≤ 8` generators:
/// a map from strictly increasing index subsets (stored as bitmasks)
/// to polynomial coefficients, zero coefficients absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormElement {
    generators: usize,
    terms: BTreeMap<u8, PolyScalar>,
}

impl FormElement {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= 8, "at most 8 generators");
        Self {
            generators,
            terms: BTreeMap::new(),
        }
    }

    /// The basis 1-form `dθ_i` (0-based generator index).
    pub fn generator(generators: usize, i: usize) -> Self {
        assert!(i < generators && generators <= 8);
        let mut terms = BTreeMap::new();
        terms.insert(1u8 << i, PolyScalar::int(1));
        Self { generators, terms }
    }

    /// The basis monomial `dθ_{i₁} ∧ … ∧ dθ_{i_p}` for a strictly
    /// increasing index list.
    pub fn monomial(generators: usize, indices: &[usize], coeff: PolyScalar) -> Self {
        assert!(generators <= 8);
        let mut mask = 0u8;
        for pair in indices.windows(2) {
            assert!(pair[0] < pair[1], "indices must be strictly increasing");
        }
        for &i in indices {
            assert!(i < generators);
            mask |= 1 << i;
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Self { generators, terms }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &PolyScalar)> {
        self.terms.iter().map(|(&mask, c)| (mask_indices(mask), c))
    }

    pub fn coefficient(&self, indices: &[usize]) -> PolyScalar {
        let mut mask = 0u8;
        for &i in indices {
            mask |= 1 << i;
        }
        self.terms.get(&mask).cloned().unwrap_or_else(PolyScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if every term has the same grade `p`.
    pub fn is_homogeneous_of(&self, p: u32) -> bool {
        self.terms.keys().all(|m| m.count_ones() == p)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.check_generators(other)?;
        let mut terms = self.terms.clone();
        for (&mask, c) in &other.terms {
            let merged = terms
                .get(&mask)
                .map_or_else(|| c.clone(), |mine| mine.add(c));
            if merged.is_zero() {
                terms.remove(&mask);
            } else {
                terms.insert(mask, merged);
            }
        }
        Ok(Self {
            generators: self.generators,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &PolyScalar) -> Self {
        let mut terms = BTreeMap::new();
        for (&mask, mine) in &self.terms {
            let prod = mine.mul(c);
            if !prod.is_zero() {
                terms.insert(mask, prod);
            }
        }
        Self {
            generators: self.generators,
            terms,
        }
    }

    fn check_generators(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.generators != other.generators {
            return Err(ExteriorError::GeneratorMismatch(
                self.generators,
                other.generators,
            ));
        }
        Ok(())
    }

    /// Renders sorted monomials with exact coefficients, e.g.
    /// `(1 - 2t)·dθ1∧dθ2 + dθ3∧dθ4` (generator indices printed 1-based).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&mask, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let monomial: Vec<String> = mask_indices(mask)
                .iter()
                .map(|i| format!("dθ{}", i + 1))
                .collect();
            let coeff = format!("{c}");
            if monomial.is_empty() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&monomial.join("∧"));
            } else {
                let wrapped = if c.coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
                    format!("({coeff})")
                } else {
                    coeff
                };
                out.push_str(&format!("{wrapped}·{}", monomial.join("∧")));
            }
        }
        out
    }
}

fn mask_indices(mask: u8) -> Vec<usize> {
    (0..8).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of merging the sorted generator lists of two disjoint masks:
/// (−1) to the number of transpositions.
fn merge_sign(a: u8, b: u8) -> i64 {
    let mut inversions = 0u32;
    for j in 0..8 {
        if b & (1 << j) != 0 {
            inversions += u32::from(a >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Graded-antisymmetric product, bilinear over ℚ[t] with exact signs.
pub fn wedge(a: &FormElement, b: &FormElement) -> Result<FormElement, ExteriorError> {
    a.check_generators(b)?;
    let mut out = FormElement::zero(a.generators);
    for (&ma, ca) in &a.terms {
        for (&mb, cb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            let sign = merge_sign(ma, mb);
            let mut c = ca.mul(cb);
            if sign < 0 {
                c = c.neg();
            }
            if c.is_zero() {
                continue;
            }
            let mask = ma | mb;
            let merged = out
                .terms
                .get(&mask)
                .map_or_else(|| c.clone(), |prev| prev.add(&c));
            if merged.is_zero() {
                out.terms.remove(&mask);
            } else {
                out.terms.insert(mask, merged);
            }
        }
    }
    Ok(out)
}

/// Pullback along the linear map with matrix `m`: each generator
/// `dθ_i ↦ Σ_j m[i][j]·dθ_j`, extended multiplicatively with exact
/// signs.
pub fn pullback(m: &RationalMatrix, a: &FormElement) -> Result<FormElement, ExteriorError> {
    let n = a.generators;
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(ExteriorError::SizeMismatch(m.len(), n));
    }
    let images: Vec<FormElement> = (0..n)
        .map(|i| {
            let mut img = FormElement::zero(n);
            for (j, c) in m[i].iter().enumerate() {
                if !c.is_zero() {
                    img = img
                        .add(&FormElement::monomial(n, &[j], PolyScalar::constant(*c)))
                        .expect("same generator count");
                }
            }
            img
        })
        .collect();
    let mut out = FormElement::zero(n);
    for (&mask, c) in &a.terms {
        let mut term = FormElement::monomial(n, &[], PolyScalar::int(1));
        for i in mask_indices(mask) {
            term = wedge(&term, &images[i])?;
        }
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// Exact basis of the fixed space of `m`: the kernel of `m − identity`,
/// by Gauss–Jordan elimination over ℚ. An empty result means the only
/// fixed point is zero.
pub fn fixed_vectors(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    // a = m − I
    let mut a: Vec<Vec<Rational>> = m.clone();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= Ratio::one();
    }
    // reduced row echelon form
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..n {
                    let sub = f * a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Ratio::zero(); n];
        v[fc] = Ratio::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[ri][fc];
        }
        basis.push(v);
    }
    basis
}

pub fn identity_matrix(n: usize) -> RationalMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ratio::one()
                    } else {
                        Ratio::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_product(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// The degree-2 basis in the frozen order (12, 13, 14, 23, 24, 34),
/// 0-based index pairs.
pub fn degree2_basis(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Matrix of the pullback on the degree-2 component: column `j` holds
/// the coordinates of the pullback of the j-th basis monomial.
pub fn degree2_pullback_matrix(m: &RationalMatrix) -> Result<RationalMatrix, ExteriorError> {
    let n = m.len();
    let basis = degree2_basis(n);
    let dim = basis.len();
    let mut out = vec![vec![Ratio::zero(); dim]; dim];
    for (col, &(i, j)) in basis.iter().enumerate() {
        let b = FormElement::monomial(n, &[i, j], PolyScalar::int(1));
        let img = pullback(m, &b)?;
        for (row, &(p, q)) in basis.iter().enumerate() {
            let c = img.coefficient(&[p, q]);
            let val = match c.coeffs().len() {
                0 => Ratio::zero(),
                1 => c.coeffs()[0],
                _ => unreachable!("constant-coefficient pullback of a constant form"),
            };
            out[row][col] = val;
        }
    }
    Ok(out)
}

/// The worked 4-torus suspension example: the gluing matrix, the two
/// symplectic classes, and the family interpolating them.
pub mod torus {
    use super::*;

    fn r(n: i64) -> Rational {
        Ratio::from_integer(n)
    }

    /// The 4×4 gluing matrix (rows are images of the coordinates).
    pub fn suspension_matrix() -> RationalMatrix {
        [
            [0, 0, -1, 0],
            [0, -1, 0, 0],
            [0, 0, 0, 1],
            [1, 0, 1, 0],
        ]
        .iter()
        .map(|row| row.iter().map(|&x| r(x)).collect())
        .collect()
    }

    /// The induced matrix on degree 2 over the basis
    /// (12, 13, 14, 23, 24, 34), spelled out for cross-checking.
    pub fn reference_induced_matrix() -> RationalMatrix {
        [
            [0, 0, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, -1],
            [-1, 0, 0, 0, -1, 0],
            [0, 0, 0, -1, 0, 0],
            [0, -1, 0, 0, 0, -1],
        ]
        .iter()
        .map(|row| row.iter().map(|&x| r(x)).collect())
        .collect()
    }

    /// ω₀ = dθ₁∧dθ₂ + dθ₃∧dθ₄
    pub fn omega_zero() -> FormElement {
        FormElement::monomial(4, &[0, 1], PolyScalar::int(1))
            .add(&FormElement::monomial(4, &[2, 3], PolyScalar::int(1)))
            .expect("same generator count")
    }

    /// ω₁ = −dθ₁∧dθ₂ − dθ₁∧dθ₃ + dθ₂∧dθ₄
    pub fn omega_one() -> FormElement {
        FormElement::monomial(4, &[0, 1], PolyScalar::int(-1))
            .add(&FormElement::monomial(4, &[0, 2], PolyScalar::int(-1)))
            .expect("same generator count")
            .add(&FormElement::monomial(4, &[1, 3], PolyScalar::int(1)))
            .expect("same generator count")
    }

    /// ω_t = t·ω₁ + (1−t)·ω₀
    pub fn omega_t() -> FormElement {
        let t = PolyScalar::t();
        let one_minus_t = PolyScalar::int(1).add(&t.neg());
        omega_one()
            .scale(&t)
            .add(&omega_zero().scale(&one_minus_t))
            .expect("same generator count")
    }

    /// The quadratic 3t² − 3t + 1 as displayed alongside the example;
    /// the exact computed volume coefficient is twice this (see
    /// [`volume_coefficient`]).
    pub fn displayed_quadratic() -> PolyScalar {
        PolyScalar::from_coeffs(vec![r(1), r(-3), r(3)])
    }

    /// The exact coefficient of dθ₁∧dθ₂∧dθ₃∧dθ₄ in ω_t ∧ ω_t.
    pub fn volume_coefficient() -> PolyScalar {
        let sq = wedge(&omega_t(), &omega_t()).expect("same generator count");
        sq.coefficient(&[0, 1, 2, 3])
    }
}
