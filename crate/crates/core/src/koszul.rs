//! Koszul complexes on linear forms over a graded ring, one graded strand at
//! a time.
//!
//! The differential is `∂(e_{a_1} ∧ … ∧ e_{a_i}) = Σ_l (−1)^{l+1} x_{a_l} e_{…â_l…}`.
//! Strand bases are ordered lexicographically by (index tuple, monomial).

use std::collections::HashMap;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::grading::GradedModel;
use crate::linalg::{kernel, solve, Matrix};
use crate::poly::Polynomial;

/// Increasing `i`-subsets of `0..k` in lexicographic order.
pub fn subsets(k: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..k {
            if k - a < left {
                break;
            }
            cur.push(a);
            rec(a + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= k {
        rec(0, k, i, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplication data for a list of linear forms over a graded model.
pub struct KoszulComplex<'a, F: Field, M: GradedModel<F> + ?Sized> {
    model: &'a M,
    forms: Vec<Polynomial<F>>,
    dims: Vec<usize>,
    /// `mult[l][d]`: multiplication by `forms[l]` from degree `d` to `d + 1`.
    mult: Vec<Vec<Matrix<F>>>,
}

/// The two differentials around `C_i` in internal degree `j`.
#[derive(Clone, Debug)]
pub struct KoszulStrand<F: Field> {
    pub forms: usize,
    pub i: usize,
    pub j: i64,
    /// `∂_{i+1} : C_{i+1} → C_i`.
    pub incoming: Matrix<F>,
    /// `∂_i : C_i → C_{i-1}`.
    pub outgoing: Matrix<F>,
}

impl<F: Field> KoszulStrand<F> {
    pub fn dim(&self) -> usize {
        self.outgoing.cols()
    }

    pub fn homology_dimension(&self, field: &F) -> usize {
        let ker = self.dim() - field.rank(&self.outgoing);
        ker - field.rank(&self.incoming)
    }

    /// `∂_i ∘ ∂_{i+1} = 0`.
    pub fn composes_to_zero(&self, field: &F) -> bool {
        self.outgoing.cols() == self.incoming.rows()
            && self.outgoing.mul(field, &self.incoming).is_zero(field)
    }
}

impl<'a, F: Field, M: GradedModel<F> + ?Sized> KoszulComplex<'a, F, M> {
    /// Prepares multiplication maps into degrees `≤ top`.
    pub fn new(model: &'a M, forms: &[Polynomial<F>], top: u32) -> Result<Self> {
        for x in forms {
            model.check_linear(x)?;
        }
        if let Some(max) = model.max_degree() {
            if top > max {
                return Err(AlgebraError::BeyondWindow {
                    needed: top as usize,
                    available: max as usize,
                });
            }
        }
        let dims = (0..=top)
            .map(|d| model.dim(d))
            .collect::<Result<Vec<_>>>()?;
        let mut mult = Vec::with_capacity(forms.len());
        for x in forms {
            let per = (0..top)
                .map(|d| model.multiplication_matrix(x, d))
                .collect::<Result<Vec<_>>>()?;
            mult.push(per);
        }
        Ok(KoszulComplex {
            model,
            forms: forms.to_vec(),
            dims,
            mult,
        })
    }

    pub fn model(&self) -> &M {
        self.model
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    pub fn top_degree(&self) -> u32 {
        self.dims.len() as u32 - 1
    }

    fn field(&self) -> &F {
        self.model.field()
    }

    /// `λ(G_d)`, zero in negative degrees.
    pub fn graded_dim(&self, d: i64) -> Result<usize> {
        if d < 0 {
            return Ok(0);
        }
        self.dims
            .get(d as usize)
            .copied()
            .ok_or(AlgebraError::BeyondWindow {
                needed: d as usize,
                available: self.dims.len() - 1,
            })
    }

    fn mult(&self, l: usize, d: i64) -> Result<&Matrix<F>> {
        self.mult[l]
            .get(d as usize)
            .ok_or(AlgebraError::BeyondWindow {
                needed: d as usize + 1,
                available: self.dims.len() - 1,
            })
    }

    /// Dimension of `C_i` in internal degree `j` for the first `k` forms.
    pub fn chain_dim(&self, k: usize, i: usize, j: i64) -> Result<usize> {
        Ok(binomial(k, i) * self.graded_dim(j - i as i64)?)
    }

    /// Matrix of `∂_i : C_i → C_{i-1}` in internal degree `j` on the first `k`
    /// forms.
    pub fn differential(&self, k: usize, i: usize, j: i64) -> Result<Matrix<F>> {
        let field = self.field();
        if i == 0 || i > k {
            let cols = if i > k { 0 } else { self.chain_dim(k, 0, j)? };
            let rows = if i == 0 {
                0
            } else {
                self.chain_dim(k, i - 1, j)?
            };
            return Ok(Matrix::zeros(field, rows, cols));
        }
        let src_deg = j - i as i64;
        let src_dim = self.graded_dim(src_deg)?;
        let dst_dim = self.graded_dim(src_deg + 1)?;
        let src_sets = subsets(k, i);
        let dst_sets = subsets(k, i - 1);
        let dst_index: HashMap<&Vec<usize>, usize> =
            dst_sets.iter().enumerate().map(|(p, s)| (s, p)).collect();
        let mut m = Matrix::zeros(field, dst_sets.len() * dst_dim, src_sets.len() * src_dim);
        if src_dim == 0 || dst_dim == 0 {
            return Ok(m);
        }
        for (a_pos, a) in src_sets.iter().enumerate() {
            for (l, &var) in a.iter().enumerate() {
                let mut b = a.clone();
                b.remove(l);
                let b_pos = dst_index[&b];
                let block = self.mult(var, src_deg)?;
                let negate = l % 2 == 1;
                for r in 0..dst_dim {
                    for c in 0..src_dim {
                        let v = block.get(r, c);
                        if field.is_zero(v) {
                            continue;
                        }
                        let v = if negate { field.neg(v) } else { v.clone() };
                        m.set(b_pos * dst_dim + r, a_pos * src_dim + c, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn strand(&self, k: usize, i: usize, j: i64) -> Result<KoszulStrand<F>> {
        Ok(KoszulStrand {
            forms: k,
            i,
            j,
            incoming: self.differential(k, i + 1, j)?,
            outgoing: self.differential(k, i, j)?,
        })
    }

    /// `dim H_i(x_1..x_k; G)_j`.
    pub fn homology(&self, k: usize, i: usize, j: i64) -> Result<usize> {
        if i > k || j < i as i64 {
            return Ok(0);
        }
        Ok(self.strand(k, i, j)?.homology_dimension(self.field()))
    }
}

/// `dim_k H_i(x_1..x_k; G)_j` for all the given forms.
pub fn homology_dimension<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    i: usize,
    j: i64,
) -> Result<usize> {
    for x in forms {
        model.check_linear(x)?;
    }
    if i > forms.len() || j < i as i64 {
        return Ok(0);
    }
    let top = (j - i as i64 + 1).max(0) as u32;
    KoszulComplex::new(model, forms, top)?.homology(forms.len(), i, j)
}

/// A skew-symmetric matrix `S` of ring elements with `r = S·x`, i.e.
/// `r_a = Σ_b S_ab x_b`, certifying that `r` is a Koszul boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewCertificate<F: Field> {
    pub entries: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> SkewCertificate<F> {
    pub fn is_skew(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|a| {
            self.entries[a].len() == n
                && self.entries[a][a].is_zero()
                && (0..n).all(|b| self.entries[a][b] == self.entries[b][a].neg())
        })
    }

    /// Recomputes `S·x` and compares with `r` in the graded ring.
    pub fn verify<M: GradedModel<F> + ?Sized>(
        &self,
        model: &M,
        forms: &[Polynomial<F>],
        vector: &[Polynomial<F>],
        degree: u32,
    ) -> Result<bool> {
        if !self.is_skew() || vector.len() != forms.len() {
            return Ok(false);
        }
        for (a, r) in vector.iter().enumerate() {
            let mut acc = r.neg();
            for (b, x) in forms.iter().enumerate() {
                acc = &acc + &(&self.entries[a][b] * x);
            }
            if model
                .coordinates(&acc, degree)?
                .iter()
                .any(|c| !model.field().is_zero(c))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleVerdict<F: Field> {
    NotACycle,
    Boundary(SkewCertificate<F>),
    NonzeroClass,
}

/// Decides whether `(r_1, …, r_k)` with `Σ r_a x_a = 0` is a boundary.
pub fn classify_cycle<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    vector: &[Polynomial<F>],
) -> Result<CycleVerdict<F>> {
    let k = forms.len();
    if vector.len() != k {
        return Err(AlgebraError::LengthMismatch {
            expected: k,
            found: vector.len(),
        });
    }
    let field = model.field();
    let ring = model.ring();
    let mut degree: Option<u32> = None;
    for r in vector.iter().filter(|r| !r.is_zero()) {
        let d = model.degree_of(r)?;
        if degree.is_some_and(|e| e != d) {
            return Err(AlgebraError::MixedDegrees);
        }
        degree = Some(d);
    }
    let Some(e) = degree else {
        let zero = vec![vec![Polynomial::zero(ring); k]; k];
        return Ok(CycleVerdict::Boundary(SkewCertificate { entries: zero }));
    };
    let complex = KoszulComplex::new(model, forms, e + 1)?;
    let j = e as i64 + 1;
    let dim_e = complex.graded_dim(e as i64)?;
    let mut coords = Vec::with_capacity(k * dim_e);
    for r in vector {
        if r.is_zero() {
            coords.extend(std::iter::repeat_n(field.zero(), dim_e));
        } else {
            coords.extend(model.coordinates(r, e)?);
        }
    }
    let d1 = complex.differential(k, 1, j)?;
    if d1.mul_vec(field, &coords).iter().any(|c| !field.is_zero(c)) {
        return Ok(CycleVerdict::NotACycle);
    }
    if coords.iter().all(|c| field.is_zero(c)) {
        let zero = vec![vec![Polynomial::zero(ring); k]; k];
        return Ok(CycleVerdict::Boundary(SkewCertificate { entries: zero }));
    }
    let d2 = complex.differential(k, 2, j)?;
    let Some(s) = solve(field, &d2, &coords) else {
        return Ok(CycleVerdict::NonzeroClass);
    };
    // s holds coefficients of e_a ∧ e_b (a < b); ∂ sends them to the vector
    // with r_c = Σ_{a<c} s_ac x_a − Σ_{b>c} s_cb x_b, so S_cb = −s_cb above
    // the diagonal.
    let src_deg = e - 1;
    let width = complex.graded_dim(src_deg as i64)?;
    let mut entries = vec![vec![Polynomial::zero(ring); k]; k];
    for (pos, pair) in subsets(k, 2).iter().enumerate() {
        let elem = model.element(&s[pos * width..(pos + 1) * width], src_deg)?;
        let (a, b) = (pair[0], pair[1]);
        entries[a][b] = elem.neg();
        entries[b][a] = elem;
    }
    Ok(CycleVerdict::Boundary(SkewCertificate { entries }))
}

/// Outcome of the colon test for one prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonEntry<F: Field> {
    /// Number of forms in the prefix (the colon is by the last one).
    pub k: usize,
    pub holds: bool,
    pub failing_degree: Option<u32>,
    /// A colon element of `failing_degree` outside `(x_1..x_{k-1})`.
    pub witness: Option<Polynomial<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonReport<F: Field> {
    pub n: u32,
    pub entries: Vec<ColonEntry<F>>,
}

impl<F: Field> ColonReport<F> {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Tests `(x_1..x_{k-1}) : x_k ⊆ (x_1..x_{k-1}) + G_{≥n}` for every `k`,
/// checking colon elements in each degree `d < n`.
pub fn colon_condition<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    n: u32,
) -> Result<ColonReport<F>> {
    let field = model.field();
    let complex = KoszulComplex::new(model, forms, n)?;
    let mut entries = Vec::new();
    for k in 1..=forms.len() {
        let mut entry = ColonEntry {
            k,
            holds: true,
            failing_degree: None,
            witness: None,
        };
        for d in 0..n {
            let dim_d = complex.graded_dim(d as i64)?;
            let dim_up = complex.graded_dim(d as i64 + 1)?;
            if dim_d == 0 {
                continue;
            }
            // colon: kernel of [M_k | x_1 G_d | … | x_{k-1} G_d]
            let mut big = complex.mult(k - 1, d as i64)?.clone();
            for l in 0..k - 1 {
                big = big.hstack(complex.mult(l, d as i64)?);
            }
            debug_assert_eq!(big.rows(), dim_up);
            let colon: Vec<Vec<F::Elem>> = kernel(field, &big)
                .into_iter()
                .map(|v| v[..dim_d].to_vec())
                .collect();
            // subideal in degree d: columns x_l G_{d-1}
            let mut sub: Vec<Vec<F::Elem>> = Vec::new();
            if d > 0 {
                for l in 0..k - 1 {
                    sub.extend(complex.mult(l, d as i64 - 1)?.transpose().to_rows());
                }
            }
            let base = crate::linalg::span_rank(field, dim_d, &sub);
            for g in colon {
                sub.push(g.clone());
                if crate::linalg::span_rank(field, dim_d, &sub) > base {
                    entry.holds = false;
                    entry.failing_degree = Some(d);
                    entry.witness = Some(model.element(&g, d)?);
                    break;
                }
                sub.pop();
            }
            if !entry.holds {
                break;
            }
        }
        entries.push(entry);
    }
    Ok(ColonReport { n, entries })
}

/// If `H_i(x_1..x_k)_j = 0` for all `k ≤ n`, checks that
/// `H_{i+1}(x_1..x_k)_{j+1} = 0` for all `k ≤ n`. Returns whether the
/// implication held on this instance.
pub fn vanishing_propagation_check<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    i: usize,
    j: i64,
    n: usize,
) -> Result<bool> {
    let n = n.min(forms.len());
    let top = (j - i as i64 + 1).max(0) as u32;
    let complex = KoszulComplex::new(model, forms, top)?;
    for k in 1..=n {
        if complex.homology(k, i, j)? != 0 {
            return Ok(true);
        }
    }
    for k in 1..=n {
        if complex.homology(k, i + 1, j + 1)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lengths attached to the truncated degree-`k` strand
/// `0 → G_0^{C(d,k)} → … → G_{k-1}^{d} → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedStrand {
    pub h0_length: usize,
    pub alternating_sum: i64,
    /// `H_i(x; G)_k = 0` for `2 ≤ i ≤ k`, i.e. the truncated complex is
    /// exact away from its end.
    pub homology_above_vanishes: bool,
}

pub fn truncated_strand_length<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    k: usize,
) -> Result<TruncatedStrand> {
    if k < 1 {
        return Err(AlgebraError::InvalidArgument(
            "strand degree must be positive".into(),
        ));
    }
    let d = forms.len();
    let field = model.field();
    let complex = KoszulComplex::new(model, forms, k as u32)?;
    let j = k as i64;
    let d2 = complex.differential(d, 2, j)?;
    let h0 = d * complex.graded_dim(j - 1)? - field.rank(&d2);
    let mut sum = 0i64;
    for i in 1..=k {
        let term = (binomial(d, i) * complex.graded_dim(j - i as i64)?) as i64;
        sum += if i % 2 == 1 { term } else { -term };
    }
    let mut vanishes = true;
    for i in 2..=k.min(d) {
        if complex.homology(d, i, j)? != 0 {
            vanishes = false;
        }
    }
    Ok(TruncatedStrand {
        h0_length: h0,
        alternating_sum: sum,
        homology_above_vanishes: vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{parse_all, rees_cubic};
    use crate::field::{PrimeField, Rationals};
    use crate::grading::GradedAlgebra;
    use crate::groebner::Ideal;
    use crate::poly::PolyRing;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn algebra<F: Field>(field: F, vars: &[&str], rels: &[&str]) -> GradedAlgebra<F> {
        let r = PolyRing::new(field, vars.iter().copied());
        GradedAlgebra::new(Ideal::new(&r, parse_all(&r, rels).unwrap()).unwrap()).unwrap()
    }

    fn forms<F: Field>(g: &GradedAlgebra<F>, exprs: &[&str]) -> Vec<Polynomial<F>> {
        parse_all(g.ring(), exprs).unwrap()
    }

    #[test]
    fn subsets_are_lex() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn regular_sequence_is_acyclic() {
        let g = algebra(Rationals, &["x", "y", "z"], &[]);
        let xs = forms(&g, &["x", "y", "z"]);
        let c = KoszulComplex::new(&g, &xs, 5).unwrap();
        for j in 0..=5 {
            for i in 1..=3 {
                assert_eq!(c.homology(3, i, j).unwrap(), 0, "H_{i} in degree {j}");
            }
        }
        assert_eq!(c.homology(3, 0, 0).unwrap(), 1);
        assert_eq!(c.homology(3, 0, 1).unwrap(), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let g = algebra(Rationals, &["x", "y", "z"], &["x*y - z^2", "y^3"]);
        let xs = forms(&g, &["x + y", "y - z", "z"]);
        let c = KoszulComplex::new(&g, &xs, 5).unwrap();
        for i in 0..=3 {
            for j in 0..=5 {
                assert!(c.strand(3, i, j).unwrap().composes_to_zero(&Rationals));
            }
        }
    }

    #[test]
    fn vanishes_outside_range() {
        let g = algebra(Rationals, &["x", "y"], &["x^2"]);
        let xs = forms(&g, &["x", "y"]);
        assert_eq!(homology_dimension(&g, &xs, 3, 4).unwrap(), 0);
        assert_eq!(homology_dimension(&g, &xs, 2, 1).unwrap(), 0);
        assert_eq!(homology_dimension(&g, &xs, 1, 0).unwrap(), 0);
        // x is a zero divisor: x·x = 0 gives a class in H_1 of degree 2.
        assert_eq!(homology_dimension(&g, &xs[..1], 1, 2).unwrap(), 1);
    }

    #[test]
    fn nonlinear_form_rejected() {
        let g = algebra(Rationals, &["x", "y"], &[]);
        let xs = forms(&g, &["x^2"]);
        assert!(matches!(
            homology_dimension(&g, &xs, 1, 2),
            Err(AlgebraError::NotLinear(_))
        ));
    }

    #[test]
    fn koszul_relation_certificate() {
        let g = algebra(Rationals, &["x", "y"], &[]);
        let xs = forms(&g, &["x", "y"]);
        let r = forms(&g, &["y", "-x"]);
        let CycleVerdict::Boundary(cert) = classify_cycle(&g, &xs, &r).unwrap() else {
            panic!("expected a boundary");
        };
        let expected = vec![forms(&g, &["0", "1"]), forms(&g, &["-1", "0"])];
        assert_eq!(cert.entries, expected);
        assert!(cert.verify(&g, &xs, &r, 1).unwrap());
    }

    #[test]
    fn cycle_verdicts() {
        let g = algebra(Rationals, &["x", "y"], &[]);
        let xs = forms(&g, &["x", "y"]);
        assert_eq!(
            classify_cycle(&g, &xs, &forms(&g, &["y", "x"])).unwrap(),
            CycleVerdict::NotACycle
        );
        assert!(matches!(
            classify_cycle(&g, &xs, &forms(&g, &["y^2", "x"])),
            Err(AlgebraError::MixedDegrees)
        ));
        assert!(matches!(
            classify_cycle(&g, &xs, &forms(&g, &["y"])),
            Err(AlgebraError::LengthMismatch { .. })
        ));
        let h = algebra(Rationals, &["x", "y"], &["x*y"]);
        let xs = forms(&h, &["x"]);
        assert_eq!(
            classify_cycle(&h, &xs, &forms(&h, &["y"])).unwrap(),
            CycleVerdict::NonzeroClass
        );
    }

    #[test]
    fn colon_in_polynomial_ring() {
        let g = algebra(Rationals, &["x", "y", "z"], &[]);
        let xs = forms(&g, &["x", "y", "z"]);
        assert!(colon_condition(&g, &xs, 4).unwrap().all_hold());
    }

    #[test]
    fn colon_failure_has_witness() {
        let g = algebra(Rationals, &["x", "y"], &["x*y"]);
        let xs = forms(&g, &["x", "y"]);
        let report = colon_condition(&g, &xs, 3).unwrap();
        // 0 : x = (y), while y is regular modulo x
        let e = &report.entries[0];
        assert!(!e.holds);
        assert_eq!(e.failing_degree, Some(1));
        assert_eq!(e.witness.clone().unwrap().to_string(), "y");
        assert!(report.entries[1].holds);
        assert!(colon_condition(&g, &xs, 1).unwrap().all_hold());
    }

    #[test]
    fn truncated_strand_examples() {
        let g = algebra(Rationals, &["x", "y"], &[]);
        let xs = forms(&g, &["x", "y"]);
        let t = truncated_strand_length(&g, &xs, 2).unwrap();
        assert_eq!(t.h0_length, 3);
        assert_eq!(t.alternating_sum, 3);
        assert!(t.homology_above_vanishes);
        let g3 = algebra(Rationals, &["x", "y", "z"], &[]);
        let xs3 = forms(&g3, &["x", "y", "z"]);
        let t = truncated_strand_length(&g3, &xs3, 3).unwrap();
        assert_eq!(t.alternating_sum, 10);
        assert_eq!(t.h0_length, 10);
    }

    #[test]
    fn rees_cubic_first_homology() {
        let rc = rees_cubic(PrimeField::new(32003).unwrap()).unwrap();
        let c = KoszulComplex::new(&rc.algebra, &rc.forms, 4).unwrap();
        assert_eq!(c.homology(3, 1, 1).unwrap(), 0);
        assert_eq!(c.homology(3, 1, 2).unwrap(), 0);
        assert!(c.homology(3, 1, 3).unwrap() >= 1);
        assert_eq!(
            classify_cycle(&rc.algebra, &rc.forms, &rc.cycle).unwrap(),
            CycleVerdict::NonzeroClass
        );
        let report = colon_condition(&rc.algebra, &rc.forms, 2).unwrap();
        assert!(report.all_hold());
        let report = colon_condition(&rc.algebra, &rc.forms, 3).unwrap();
        assert!(!report.all_hold());
        assert_eq!(
            report
                .entries
                .iter()
                .find(|e| !e.holds)
                .unwrap()
                .failing_degree,
            Some(2)
        );
    }

    fn random_algebra(seed: &[i64]) -> (GradedAlgebra<PrimeField>, Vec<Polynomial<PrimeField>>) {
        let f = PrimeField::new(101).unwrap();
        let r: Arc<PolyRing<PrimeField>> = PolyRing::new(f, ["x", "y", "z"]);
        let quad = crate::poly::Monomial::all_of_degree(3, 2);
        let mut rel = Polynomial::zero(&r);
        for (m, c) in quad.iter().zip(seed) {
            rel = &rel + &Polynomial::term(&r, m.clone(), f.from_i64(*c));
        }
        let g = GradedAlgebra::new(Ideal::new(&r, vec![rel]).unwrap()).unwrap();
        let lin = crate::poly::Monomial::all_of_degree(3, 1);
        let xs = (0..3)
            .map(|a| {
                let mut p = Polynomial::zero(&r);
                for (b, m) in lin.iter().enumerate() {
                    p = &p + &Polynomial::term(&r, m.clone(), f.from_i64(seed[6 + 3 * a + b]));
                }
                p
            })
            .filter(|p| !p.is_zero())
            .collect();
        (g, xs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn euler_characteristic_matches(seed in prop::collection::vec(-3i64..4, 15)) {
            let (g, xs) = random_algebra(&seed);
            let k = xs.len();
            let c = KoszulComplex::new(&g, &xs, 5).unwrap();
            for j in 0..=5i64 {
                let mut lhs = 0i64;
                let mut rhs = 0i64;
                for i in 0..=k {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    lhs += sign * c.homology(k, i, j).unwrap() as i64;
                    rhs += sign * c.chain_dim(k, i, j).unwrap() as i64;
                }
                prop_assert_eq!(lhs, rhs);
                for i in 0..=k {
                    prop_assert!(c.strand(k, i, j).unwrap().composes_to_zero(&c.field().clone()));
                }
            }
        }

        #[test]
        fn long_exact_sequence_bound(seed in prop::collection::vec(-3i64..4, 15)) {
            let (g, xs) = random_algebra(&seed);
            let c = KoszulComplex::new(&g, &xs, 5).unwrap();
            for k in 1..=xs.len() {
                for i in 1..=k {
                    for j in 1..=5i64 {
                        let whole = c.homology(k, i, j).unwrap();
                        let bound = c.homology(k - 1, i, j).unwrap() + c.homology(k - 1, i - 1, j - 1).unwrap();
                        prop_assert!(whole <= bound);
                    }
                }
            }
        }

        #[test]
        fn colon_condition_controls_first_homology(seed in prop::collection::vec(-3i64..4, 15), n in 1u32..4) {
            let (g, xs) = random_algebra(&seed);
            let report = colon_condition(&g, &xs, n).unwrap();
            let c = KoszulComplex::new(&g, &xs, n + 1).unwrap();
            let vanish = (1..=xs.len()).all(|k| (0..=n as i64).all(|j| c.homology(k, 1, j).unwrap() == 0));
            prop_assert_eq!(report.all_hold(), vanish);
        }

        #[test]
        fn propagation_holds(seed in prop::collection::vec(-3i64..4, 15), j in 1i64..4) {
            let (g, xs) = random_algebra(&seed);
            let n = xs.len();
            prop_assert!(vanishing_propagation_check(&g, &xs, 1, j, n).unwrap());
        }

        #[test]
        fn boundaries_recompose(seed in prop::collection::vec(-3i64..4, 15), s in prop::collection::vec(-3i64..4, 9)) {
            let (g, xs) = random_algebra(&seed);
            prop_assume!(xs.len() == 3);
            let f = *g.field();
            let r = g.ring().clone();
            let lin = crate::poly::Monomial::all_of_degree(3, 1);
            let lin_form = |cs: &[i64]| {
                let mut p = Polynomial::zero(&r);
                for (m, c) in lin.iter().zip(cs) {
                    p = &p + &Polynomial::term(&r, m.clone(), f.from_i64(*c));
                }
                p
            };
            // S skew with linear entries; r = S·x is a boundary of degree 2
            let s01 = lin_form(&s[0..3]);
            let s02 = lin_form(&s[3..6]);
            let s12 = lin_form(&s[6..9]);
            let sm = [
                [Polynomial::zero(&r), s01.clone(), s02.clone()],
                [s01.neg(), Polynomial::zero(&r), s12.clone()],
                [s02.neg(), s12.neg(), Polynomial::zero(&r)],
            ];
            let vector: Vec<_> = (0..3)
                .map(|a| (0..3).fold(Polynomial::zero(&r), |acc, b| &acc + &(&sm[a][b] * &xs[b])))
                .map(|p| g.normal_form(&p).unwrap())
                .collect();
            prop_assume!(vector.iter().any(|p| !p.is_zero()));
            match classify_cycle(&g, &xs, &vector).unwrap() {
                CycleVerdict::Boundary(cert) => prop_assert!(cert.verify(&g, &xs, &vector, 2).unwrap()),
                other => prop_assert!(false, "unexpected verdict {:?}", other),
            }
        }
    }
}
