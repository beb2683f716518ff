//! Minimal reductions, `n`-standardness of filtrations, and the length
//! formulas that standardness implies.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::grading::{
    lowest_form_ideal, Filtration, FiltrationModel, GradedAlgebra, GradedModel, LocalIdeal,
    LocalRing,
};
use crate::koszul::{binomial, KoszulComplex};
use crate::poly::Polynomial;

pub const DEFAULT_REDUCTION_BOUND: usize = 12;

/// Smallest field size accepted for generic linear combinations.
pub const MIN_RANDOM_FIELD_SIZE: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionVerdict {
    /// `J ⊆ I_1`.
    pub contained: bool,
    /// Least `r ≤ bound` with `J·I_n = I_{n+1}` for every `r ≤ n ≤ bound`.
    pub reduction_number: Option<usize>,
    pub bound: usize,
    pub generators: usize,
    pub dimension: usize,
}

impl ReductionVerdict {
    pub fn is_reduction(&self) -> bool {
        self.contained && self.reduction_number.is_some()
    }

    pub fn is_minimal(&self) -> bool {
        self.is_reduction() && self.generators == self.dimension
    }
}

/// Finds the reduction number of `J` with respect to the filtration,
/// searching `n ≤ bound`. Adic filtrations are extended as needed; for a
/// finite ladder the search stops at `I_N = J·I_{N-1}`.
pub fn verify_minimal_reduction<F: Field>(
    filtration: &Filtration<F>,
    j: &LocalIdeal<F>,
    bound: usize,
) -> Result<ReductionVerdict> {
    let bound = if filtration.is_adic() {
        bound
    } else {
        bound.min(filtration.len().saturating_sub(1))
    };
    let f = filtration.extended_to(bound + 1)?;
    let ring = f.ring();
    if let Some(w) = f.level(1)?.ideal().non_member_of(j.ideal())? {
        return Err(AlgebraError::NotContained {
            witness: w.to_string(),
        });
    }
    let mut first = None;
    for n in 0..=bound {
        let prod = ring.product(j, f.level(n)?)?;
        let equal = prod.equals(f.level(n + 1)?)?;
        match (equal, first) {
            (true, None) => first = Some(n),
            (false, Some(_)) => first = None,
            _ => {}
        }
    }
    Ok(ReductionVerdict {
        contained: true,
        reduction_number: first,
        bound,
        generators: j.gens().len(),
        dimension: ring.dim(),
    })
}

/// `dim R` generic linear combinations of the generators of `I`, drawn from
/// a ChaCha stream seeded with `seed`.
pub fn random_linear_reduction<F: Field>(
    ring: &LocalRing<F>,
    i: &LocalIdeal<F>,
    seed: u64,
) -> Result<LocalIdeal<F>> {
    let field = ring.field();
    if let Some(size) = field.size() {
        if size < MIN_RANDOM_FIELD_SIZE {
            return Err(AlgebraError::FieldTooSmall(size));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = i.gens();
    let mut out = Vec::with_capacity(ring.dim());
    for _ in 0..ring.dim() {
        let mut acc = Polynomial::zero(ring.ring());
        for g in gens {
            acc = &acc + &g.scale(&field.random_elem(&mut rng));
        }
        out.push(acc);
    }
    ring.ideal(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardnessOptions {
    pub reduction_bound: usize,
    /// Skip the reduction check and tag the report.
    pub force: bool,
}

impl Default for StandardnessOptions {
    fn default() -> Self {
        StandardnessOptions {
            reduction_bound: DEFAULT_REDUCTION_BOUND,
            force: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelVerdict<F: Field> {
    pub k: usize,
    /// `J ∩ I_k = J·I_{k-1}`.
    pub equal: bool,
    /// An element of `(J ∩ I_k) \ J·I_{k-1}`.
    pub witness: Option<Polynomial<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardnessReport<F: Field> {
    pub n: usize,
    pub levels: Vec<LevelVerdict<F>>,
    pub forced: bool,
}

impl<F: Field> StandardnessReport<F> {
    pub fn is_standard(&self) -> bool {
        self.levels.iter().all(|l| l.equal)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.levels.iter().find(|l| !l.equal).map(|l| l.k)
    }

    pub fn witness(&self) -> Option<&Polynomial<F>> {
        self.levels.iter().find_map(|l| l.witness.as_ref())
    }
}

/// Compares `J ∩ I_k` with `J·I_{k-1}` for `1 ≤ k ≤ n`.
pub fn check_n_standard<F: Field>(
    filtration: &Filtration<F>,
    j: &LocalIdeal<F>,
    n: usize,
    options: &StandardnessOptions,
) -> Result<StandardnessReport<F>> {
    if !options.force {
        let verdict = verify_minimal_reduction(filtration, j, options.reduction_bound)?;
        if !verdict.is_reduction() {
            return Err(AlgebraError::NotAReduction {
                bound: options.reduction_bound,
            });
        }
    }
    let f = filtration.extended_to(n)?;
    let ring = f.ring();
    let mut levels = Vec::with_capacity(n);
    for k in 1..=n {
        let meet = ring.intersect(j, f.level(k)?)?;
        let prod = ring.product(j, f.level(k - 1)?)?;
        let witness = prod.ideal().non_member_of(meet.ideal())?;
        levels.push(LevelVerdict {
            k,
            equal: witness.is_none(),
            witness,
        });
    }
    Ok(StandardnessReport {
        n,
        levels,
        forced: options.force,
    })
}

/// One row of a length audit: an ideal-theoretic length against a closed
/// form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub k: usize,
    pub lhs: i64,
    pub rhs: i64,
}

impl AuditRow {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn signed(i: usize, value: i64) -> i64 {
    if i % 2 == 0 {
        value
    } else {
        -value
    }
}

/// `e_0(I)` computed as `λ(R/J)`.
pub fn multiplicity<F: Field>(ring: &LocalRing<F>, j: &LocalIdeal<F>) -> Result<usize> {
    ring.length(j)
}

/// `λ(I_{k+1}/J·I_k)` against `e_0 + Σ_{i=0}^k (−1)^{i+1} C(d−1,i) λ_F(k−i)`
/// for `0 ≤ k ≤ n`.
pub fn length_formula_audit<F: Field>(
    filtration: &Filtration<F>,
    j: &LocalIdeal<F>,
    n: usize,
) -> Result<Vec<AuditRow>> {
    let f = filtration.extended_to(n + 1)?;
    let ring = f.ring();
    let d = ring.dim();
    let e0 = multiplicity(ring, j)? as i64;
    let lambdas = (0..=n)
        .map(|i| f.lambda(i).map(|l| l as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for k in 0..=n {
        let prod = ring.product(j, f.level(k)?)?;
        let lhs = ring.length_quotient(f.level(k + 1)?, &prod)? as i64;
        let mut rhs = e0;
        for i in 0..=k {
            rhs += signed(
                i + 1,
                binomial(d.saturating_sub(1), i) as i64 * lambdas[k - i],
            );
        }
        rows.push(AuditRow { k, lhs, rhs });
    }
    Ok(rows)
}

/// `λ(J·I_{k-1}/J·I_k)` against `Σ_{i=1}^k (−1)^{i−1} C(d,i) λ_F(k−i)` for
/// `1 ≤ k ≤ n`.
pub fn jpowers_length_audit<F: Field>(
    filtration: &Filtration<F>,
    j: &LocalIdeal<F>,
    n: usize,
) -> Result<Vec<AuditRow>> {
    let f = filtration.extended_to(n + 1)?;
    let ring = f.ring();
    let d = ring.dim();
    let lambdas = (0..n)
        .map(|i| f.lambda(i).map(|l| l as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut prev = ring.product(j, f.level(0)?)?;
    let mut rows = Vec::new();
    for k in 1..=n {
        let next = ring.product(j, f.level(k)?)?;
        let lhs = ring.length_quotient(&prev, &next)? as i64;
        let rhs = (1..=k)
            .map(|i| signed(i - 1, binomial(d, i) as i64 * lambdas[k - i]))
            .sum();
        rows.push(AuditRow { k, lhs, rhs });
        prev = next;
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
pub enum NamedFormula<F: Field> {
    /// `λ(m³/Jm²) = e_0 + (d−1)μ(m) − μ(m²) − C(d−1,2)`.
    Puthenpurakal3,
    /// `λ(m⁴/Jm³) = e_0 − μ(m³) + (d−1)μ(m²) − C(d−1,2)μ(m) + C(d−1,3)`.
    Invariance4,
    /// `λ(I³/JI²) = e_0(I) − λ(I²/I³) + (d−1)λ(I/I²) − C(d−1,2)λ(R/I)`.
    IntegrallyClosed3(LocalIdeal<F>),
}

impl<F: Field> NamedFormula<F> {
    pub fn name(&self) -> &'static str {
        match self {
            NamedFormula::Puthenpurakal3 => "puthenpurakal3",
            NamedFormula::Invariance4 => "invariance4",
            NamedFormula::IntegrallyClosed3(_) => "integrally_closed3",
        }
    }
}

/// Evaluates both sides of a named closed-form length identity.
pub fn named_formula<F: Field>(
    ring: &LocalRing<F>,
    j: &LocalIdeal<F>,
    which: &NamedFormula<F>,
) -> Result<AuditRow> {
    let d = ring.dim();
    let e0 = multiplicity(ring, j)? as i64;
    let c = |k: usize| binomial(d.saturating_sub(1), k) as i64;
    let (base, top) = match which {
        NamedFormula::Puthenpurakal3 => (ring.maximal(), 3),
        NamedFormula::Invariance4 => (ring.maximal(), 4),
        NamedFormula::IntegrallyClosed3(i) => (i.clone(), 3),
    };
    let powers = {
        let mut v = vec![ring.unit(), base.clone()];
        for _ in 2..=top {
            v.push(ring.product(v.last().unwrap(), &base)?);
        }
        v
    };
    let lam =
        |a: usize| -> Result<i64> { Ok(ring.length_quotient(&powers[a], &powers[a + 1])? as i64) };
    let lhs = ring.length_quotient(&powers[top], &ring.product(j, &powers[top - 1])?)? as i64;
    let rhs = match which {
        NamedFormula::Puthenpurakal3 => e0 + c(1) * lam(1)? - lam(2)? - c(2),
        NamedFormula::Invariance4 => e0 - lam(3)? + c(1) * lam(2)? - c(2) * lam(1)? + c(3),
        NamedFormula::IntegrallyClosed3(_) => e0 - lam(2)? + c(1) * lam(1)? - c(2) * lam(0)?,
    };
    Ok(AuditRow {
        k: top - 1,
        lhs,
        rhs,
    })
}

/// Source of the associated graded ring for the Koszul side of the
/// cross-validation.
#[derive(Clone, Debug)]
pub enum GrMode<F: Field> {
    /// `⊕ I_d/I_{d+1}` computed from the ladder.
    Filtration,
    /// Tangent cone of `R`, for the adic filtration of the maximal ideal.
    LowestForm,
    /// A user-supplied graded ring together with the leading forms of `J`.
    Presentation {
        algebra: GradedAlgebra<F>,
        forms: Vec<Polynomial<F>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub n: usize,
    pub ideal_standard: bool,
    /// First `k` with `J ∩ I_k ≠ J·I_{k-1}`.
    pub ideal_failure: Option<usize>,
    /// `H_1(x'_1..x'_k; G)_j = 0` for all `j < n` and all `k`.
    pub koszul_vanishes: bool,
    /// First `(k, j)` with nonzero `H_1`.
    pub koszul_failure: Option<(usize, usize)>,
    pub cohen_macaulay: bool,
}

impl CrossValidation {
    pub fn agree(&self) -> bool {
        self.ideal_standard == self.koszul_vanishes
    }
}

fn first_nonvanishing<F: Field, M: GradedModel<F> + ?Sized>(
    model: &M,
    forms: &[Polynomial<F>],
    n: usize,
) -> Result<Option<(usize, usize)>> {
    if n <= 1 {
        return Ok(None);
    }
    let complex = KoszulComplex::new(model, forms, n as u32 - 1)?;
    for j in 1..n {
        for k in 1..=forms.len() {
            if complex.homology(k, 1, j as i64)? != 0 {
                return Ok(Some((k, j)));
            }
        }
    }
    Ok(None)
}

/// Computes `n`-standardness of the filtration with respect to `J` and the
/// vanishing of `H_1(x'; G)_{<n}`, so the caller can compare them.
pub fn cross_validate<F: Field>(
    filtration: &Filtration<F>,
    j: &LocalIdeal<F>,
    n: usize,
    mode: &GrMode<F>,
    options: &StandardnessOptions,
) -> Result<CrossValidation> {
    let f = filtration.extended_to(n.max(1))?;
    let report = check_n_standard(&f, j, n, options)?;
    let koszul_failure = match mode {
        GrMode::Filtration => {
            let model = FiltrationModel::new(&f, n.saturating_sub(1) as u32)?;
            first_nonvanishing(&model, j.gens(), n)?
        }
        GrMode::LowestForm => {
            let ring = f.ring();
            if !f.is_adic() || !f.base().equals(&ring.maximal())? {
                return Err(AlgebraError::InvalidArgument(
                    "the tangent cone describes only the maximal-ideal-adic filtration".into(),
                ));
            }
            let g = lowest_form_ideal(ring.relations(), (n as u32).max(2))?;
            let forms: Vec<Polynomial<F>> = j.gens().iter().map(|x| x.lowest_form()).collect();
            first_nonvanishing(&g, &forms, n)?
        }
        GrMode::Presentation { algebra, forms } => first_nonvanishing(algebra, forms, n)?,
    };
    Ok(CrossValidation {
        n,
        ideal_standard: report.is_standard(),
        ideal_failure: report.first_failure(),
        koszul_vanishes: koszul_failure.is_none(),
        koszul_failure,
        cohen_macaulay: f.ring().is_cohen_macaulay(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{fermat_quintic, parse_all, rees_cubic_local, seven_powers};
    use crate::field::{PrimeField, Rationals};
    use crate::grading::make_adic_filtration;
    use crate::poly::PolyRing;
    use proptest::prelude::*;

    fn plane<F: Field>(field: F) -> LocalRing<F> {
        LocalRing::polynomial(&PolyRing::new(field, ["x", "y"]))
    }

    fn ideal<F: Field>(ring: &LocalRing<F>, gens: &[&str]) -> LocalIdeal<F> {
        ring.ideal(parse_all(ring.ring(), gens).unwrap()).unwrap()
    }

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn reduction_numbers() {
        let r = plane(Rationals);
        let m = r.maximal();
        let f = make_adic_filtration(&r, &m, 2).unwrap();
        let v = verify_minimal_reduction(&f, &m, 4).unwrap();
        assert_eq!(v.reduction_number, Some(0));
        assert!(v.is_minimal());

        let v = verify_minimal_reduction(&f, &ideal(&r, &["x"]), 4).unwrap();
        assert_eq!(v.reduction_number, None);
        assert!(!v.is_minimal());

        let ex = seven_powers(fp()).unwrap();
        let f = make_adic_filtration(&ex.ring, &ex.i, 1).unwrap();
        let v = verify_minimal_reduction(&f, &ex.j, 8).unwrap();
        assert!(v.is_minimal());
        assert!(v.reduction_number.unwrap() <= 6);
    }

    #[test]
    fn reduction_must_be_contained() {
        let r = plane(Rationals);
        let m2 = ideal(&r, &["x^2", "x*y", "y^2"]);
        let f = make_adic_filtration(&r, &m2, 2).unwrap();
        let err = verify_minimal_reduction(&f, &ideal(&r, &["x", "y^2"]), 3).unwrap_err();
        assert!(matches!(err, AlgebraError::NotContained { .. }));
    }

    #[test]
    fn random_reductions() {
        let r = plane(fp());
        let m = r.maximal();
        let a = random_linear_reduction(&r, &m, 7).unwrap();
        let b = random_linear_reduction(&r, &m, 7).unwrap();
        assert_eq!(a.gens(), b.gens());
        assert_eq!(a.gens().len(), 2);
        let f = make_adic_filtration(&r, &m, 1).unwrap();
        assert_eq!(
            verify_minimal_reduction(&f, &a, 3)
                .unwrap()
                .reduction_number,
            Some(0)
        );

        let small = plane(PrimeField::new(101).unwrap());
        let err = random_linear_reduction(&small, &small.maximal(), 0).unwrap_err();
        assert!(matches!(err, AlgebraError::FieldTooSmall(101)));
    }

    #[test]
    fn seven_powers_not_two_standard() {
        let ex = seven_powers(Rationals).unwrap();
        let f = make_adic_filtration(&ex.ring, &ex.i, 3).unwrap();
        let report = check_n_standard(&f, &ex.j, 2, &StandardnessOptions::default()).unwrap();
        assert_eq!(report.first_failure(), Some(2));
        assert!(report.levels[0].equal);
        let w = report.witness().unwrap();
        let meet = ex.ring.intersect(&ex.j, f.level(2).unwrap()).unwrap();
        let prod = ex.ring.product(&ex.j, f.level(1).unwrap()).unwrap();
        assert!(meet.contains(w).unwrap());
        assert!(!prod.contains(w).unwrap());
    }

    #[test]
    fn standard_examples() {
        let r = plane(Rationals);
        let m = r.maximal();
        let f = make_adic_filtration(&r, &m, 5).unwrap();
        assert!(check_n_standard(&f, &m, 5, &StandardnessOptions::default())
            .unwrap()
            .is_standard());

        let m2 = ideal(&r, &["x^2", "x*y", "y^2"]);
        let j = ideal(&r, &["x^2", "y^2"]);
        let f = make_adic_filtration(&r, &m2, 2).unwrap();
        assert!(check_n_standard(&f, &j, 2, &StandardnessOptions::default())
            .unwrap()
            .is_standard());
    }

    #[test]
    fn unverified_reduction_refused_unless_forced() {
        let r = plane(Rationals);
        let m = r.maximal();
        let f = make_adic_filtration(&r, &m, 3).unwrap();
        let j = ideal(&r, &["x"]);
        let opts = StandardnessOptions {
            reduction_bound: 3,
            force: false,
        };
        assert!(matches!(
            check_n_standard(&f, &j, 2, &opts),
            Err(AlgebraError::NotAReduction { bound: 3 })
        ));
        let forced = check_n_standard(
            &f,
            &j,
            2,
            &StandardnessOptions {
                force: true,
                ..opts
            },
        )
        .unwrap();
        assert!(forced.forced);
    }

    #[test]
    fn length_audits() {
        let ex = seven_powers(fp()).unwrap();
        let f = make_adic_filtration(&ex.ring, &ex.i, 3).unwrap();
        let rows = length_formula_audit(&f, &ex.j, 2).unwrap();
        assert_eq!((rows[2].lhs, rows[2].rhs), (3, 1));
        assert!(rows[0].matches() && rows[1].matches());

        let r = plane(Rationals);
        let m = r.maximal();
        let f = make_adic_filtration(&r, &m, 4).unwrap();
        for row in length_formula_audit(&f, &m, 3).unwrap() {
            assert_eq!((row.lhs, row.rhs), (0, 0));
        }
        let jp = jpowers_length_audit(&f, &m, 3).unwrap();
        assert_eq!((jp[0].lhs, jp[0].rhs), (2, 2));
        assert_eq!((jp[1].lhs, jp[1].rhs), (3, 3));
        assert!(jp[2].matches());

        let m2 = ideal(&r, &["x^2", "x*y", "y^2"]);
        let j = ideal(&r, &["x^2", "y^2"]);
        let f = make_adic_filtration(&r, &m2, 3).unwrap();
        let rows = length_formula_audit(&f, &j, 2).unwrap();
        assert_eq!((rows[2].lhs, rows[2].rhs), (0, 0));
    }

    #[test]
    fn named_formulas_on_plane() {
        let r = plane(Rationals);
        let m = r.maximal();
        let p = named_formula(&r, &m, &NamedFormula::Puthenpurakal3).unwrap();
        assert_eq!((p.lhs, p.rhs), (0, 0));
        let q = named_formula(&r, &m, &NamedFormula::Invariance4).unwrap();
        assert_eq!((q.lhs, q.rhs), (0, 0));
        let m2 = ideal(&r, &["x^2", "x*y", "y^2"]);
        let j = ideal(&r, &["x^2", "y^2"]);
        let c = named_formula(&r, &j, &NamedFormula::IntegrallyClosed3(m2)).unwrap();
        assert_eq!((c.lhs, c.rhs), (0, 0));
    }

    #[test]
    fn reduction_invariance_on_quintic() {
        let r = fermat_quintic(fp()).unwrap();
        let m = r.maximal();
        let mut values = Vec::new();
        for seed in 0..5 {
            let j = random_linear_reduction(&r, &m, seed).unwrap();
            let f = make_adic_filtration(&r, &m, 1).unwrap();
            assert!(verify_minimal_reduction(&f, &j, 6).unwrap().is_minimal());
            let row = named_formula(&r, &j, &NamedFormula::Invariance4).unwrap();
            assert!(row.matches());
            values.push(row.lhs);
        }
        assert!(values.iter().all(|&v| v == 1), "{values:?}");
    }

    #[test]
    fn cross_validation_examples() {
        let ex = seven_powers(fp()).unwrap();
        let f = make_adic_filtration(&ex.ring, &ex.i, 2).unwrap();
        let cv = cross_validate(
            &f,
            &ex.j,
            2,
            &GrMode::Filtration,
            &StandardnessOptions::default(),
        )
        .unwrap();
        assert!(!cv.ideal_standard && !cv.koszul_vanishes && cv.agree());
        assert_eq!(cv.ideal_failure, Some(2));

        let r = plane(fp());
        let m = r.maximal();
        let j = random_linear_reduction(&r, &m, 3).unwrap();
        let f = make_adic_filtration(&r, &m, 4).unwrap();
        for mode in [GrMode::Filtration, GrMode::LowestForm] {
            let cv = cross_validate(&f, &j, 4, &mode, &StandardnessOptions::default()).unwrap();
            assert!(cv.ideal_standard && cv.koszul_vanishes);
        }
    }

    #[test]
    fn rees_cubic_outside_hypotheses() {
        let ex = rees_cubic_local(fp()).unwrap();
        let f = make_adic_filtration(&ex.ring, &ex.i, 4).unwrap();
        let opts = StandardnessOptions {
            force: true,
            ..Default::default()
        };
        let cv = cross_validate(&f, &ex.j, 3, &GrMode::LowestForm, &opts).unwrap();
        assert!(cv.agree() && cv.ideal_standard);
        let cv = cross_validate(&f, &ex.j, 4, &GrMode::LowestForm, &opts).unwrap();
        assert!(cv.ideal_standard);
        assert_eq!(cv.koszul_failure, Some((3, 3)));
        assert!(!cv.cohen_macaulay);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn standardness_implies_formulas(a in 2u32..5, b in 2u32..5, c in 1u32..3, seed in 0u64..1000) {
            let r = plane(fp());
            let gens = [format!("x^{a}"), format!("y^{b}"), format!("x^{c}*y^{c}")];
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            let i = ideal(&r, &refs);
            let j = random_linear_reduction(&r, &i, seed).unwrap();
            let f = make_adic_filtration(&r, &i, 4).unwrap();
            prop_assume!(verify_minimal_reduction(&f, &j, 8).unwrap().is_minimal());
            let report = check_n_standard(&f, &j, 3, &StandardnessOptions { force: true, ..Default::default() }).unwrap();
            for level in &report.levels {
                if let Some(w) = &level.witness {
                    let meet = r.intersect(&j, f.level(level.k).unwrap()).unwrap();
                    let prod = r.product(&j, f.level(level.k - 1).unwrap()).unwrap();
                    prop_assert!(meet.contains(w).unwrap() && !prod.contains(w).unwrap());
                }
            }
            prop_assert!(report.levels[0].equal);
            let upto = report.first_failure().map_or(3, |k| k - 1);
            let power_rows = length_formula_audit(&f, &j, 3).unwrap();
            let jpower_rows = jpowers_length_audit(&f, &j, 3).unwrap();
            for row in &power_rows[..=upto] {
                prop_assert!(row.matches());
            }
            for k in 1..=upto {
                prop_assert!(jpower_rows[k - 1].matches());
            }
            let cv = cross_validate(&f, &j, 3, &GrMode::Filtration, &StandardnessOptions { force: true, ..Default::default() }).unwrap();
            prop_assert!(cv.agree());
        }
    }
}
