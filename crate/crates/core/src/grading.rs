//! Standard graded algebras, lengths of finite-colength quotients, initial
//! form ideals, local rings presented by polynomial data, and admissible
//! filtrations.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::linalg::{rref, span_rank, Matrix};
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Largest degree bound accepted by [`lowest_form_ideal`] unless overridden.
pub const DEFAULT_LOWEST_FORM_GUARD: u32 = 16;
/// Default truncation degree for initial-form ideals.
pub const DEFAULT_LOWEST_FORM_DEGREE: u32 = 8;

/// The monomials outside a monomial ideal, given by its minimal generators.
#[derive(Clone, Debug)]
pub struct Staircase {
    nvars: usize,
    leads: Vec<Monomial>,
}

impl Staircase {
    pub fn new(nvars: usize, leads: Vec<Monomial>) -> Self {
        Staircase { nvars, leads }
    }

    pub fn of_ideal<F: Field>(ideal: &Ideal<F>) -> Self {
        Staircase::new(ideal.ring().nvars(), ideal.leading_monomials())
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// Standard monomials of degree `d`, exponent vectors in descending
    /// lexicographic order.
    pub fn standard_of_degree(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// Index of a variable without a pure power among the leading terms.
    pub fn missing_pure_power(&self) -> Option<usize> {
        if self.leads.iter().any(Monomial::is_one) {
            return None;
        }
        (0..self.nvars).find(|&i| {
            !self
                .leads
                .iter()
                .any(|l| l.exponents()[i] > 0 && l.total_degree() == l.exponents()[i])
        })
    }

    /// All standard monomials, or `None` when there are infinitely many.
    pub fn all_standard(&self) -> Option<Vec<Monomial>> {
        if self.missing_pure_power().is_some() {
            return None;
        }
        let mut out = Vec::new();
        for d in 0.. {
            let layer = self.standard_of_degree(d);
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Some(out)
    }

    pub fn count(&self) -> Option<usize> {
        self.all_standard().map(|v| v.len())
    }

    /// Size of the largest set of variables supporting no leading monomial,
    /// which is the Krull dimension of the quotient.
    pub fn dimension(&self) -> usize {
        let n = self.nvars;
        let supports: Vec<u64> = self
            .leads
            .iter()
            .map(|l| l.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        if supports.contains(&0) {
            // unit ideal: the empty set is not even allowed; report 0
            return 0;
        }
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size > best && supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        best
    }
}

/// `k[x]/I` for a homogeneous ideal `I`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    ideal: Ideal<F>,
    staircase: Staircase,
    valid_up_to: Option<u32>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(ideal: Ideal<F>) -> Result<Self> {
        if let Some(g) = ideal.gens().iter().find(|g| !g.is_homogeneous()) {
            return Err(AlgebraError::NotHomogeneous(g.to_string()));
        }
        Ok(GradedAlgebra {
            staircase: Staircase::of_ideal(&ideal),
            ideal,
            valid_up_to: None,
        })
    }

    pub fn from_forms(ring: &Arc<PolyRing<F>>, forms: Vec<Polynomial<F>>) -> Result<Self> {
        if let Some(g) = forms.iter().find(|g| !g.is_homogeneous()) {
            return Err(AlgebraError::NotHomogeneous(g.to_string()));
        }
        Self::new(Ideal::new(ring, forms)?)
    }

    pub fn polynomial_ring(ring: &Arc<PolyRing<F>>) -> Self {
        Self::new(Ideal::zero(ring)).expect("zero ideal is homogeneous")
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    pub fn field(&self) -> &F {
        self.ring().field()
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// Degrees above this bound are not determined by the presentation.
    pub fn valid_up_to(&self) -> Option<u32> {
        self.valid_up_to
    }

    fn check_window(&self, d: u32) -> Result<()> {
        match self.valid_up_to {
            Some(w) if d > w => Err(AlgebraError::BeyondWindow {
                needed: d as usize,
                available: w as usize,
            }),
            _ => Ok(()),
        }
    }

    pub fn graded_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        self.check_window(d)?;
        Ok(self.staircase.standard_of_degree(d))
    }

    pub fn hilbert(&self, d: u32) -> Result<usize> {
        Ok(self.graded_basis(d)?.len())
    }

    pub fn krull_dimension(&self) -> usize {
        self.staircase.dimension()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial<F>) -> Result<bool> {
        self.ideal.contains(f)
    }
}

fn coords_in<F: Field>(field: &F, nf: &Polynomial<F>, basis: &[Monomial]) -> Result<Vec<F::Elem>> {
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![field.zero(); basis.len()];
    for (m, c) in nf.terms() {
        match index.get(m) {
            Some(&i) => v[i] = c.clone(),
            None => return Err(AlgebraError::MixedDegrees),
        }
    }
    Ok(v)
}

/// Linear-algebra access to the graded pieces of a graded ring generated in
/// degree one. Elements are represented by polynomials.
pub trait GradedModel<F: Field> {
    fn ring(&self) -> &Arc<PolyRing<F>>;

    fn field(&self) -> &F {
        self.ring().field()
    }

    /// Highest degree that may be queried, if bounded.
    fn max_degree(&self) -> Option<u32>;

    fn dim(&self, d: u32) -> Result<usize>;

    /// Coordinates of the class of `f` in degree `d`.
    fn coordinates(&self, f: &Polynomial<F>, d: u32) -> Result<Vec<F::Elem>>;

    /// A representative of the degree-`d` element with the given coordinates.
    fn element(&self, coords: &[F::Elem], d: u32) -> Result<Polynomial<F>>;

    /// Checks that `x` represents a nonzero element of degree one.
    fn check_linear(&self, x: &Polynomial<F>) -> Result<()>;

    /// Degree of a representative as an element of the graded ring.
    fn degree_of(&self, f: &Polynomial<F>) -> Result<u32>;

    /// Matrix of multiplication by `x` from degree `d` to `d + 1`, acting on
    /// column vectors.
    fn multiplication_matrix(&self, x: &Polynomial<F>, d: u32) -> Result<Matrix<F>> {
        let field = self.field();
        let src = self.dim(d)?;
        let dst = self.dim(d + 1)?;
        let mut m = Matrix::zeros(field, dst, src);
        for j in 0..src {
            let mut e = vec![field.zero(); src];
            e[j] = field.one();
            let w = self.element(&e, d)?;
            let c = self.coordinates(&(x * &w), d + 1)?;
            for (i, v) in c.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }
}

impl<F: Field> GradedModel<F> for GradedAlgebra<F> {
    fn ring(&self) -> &Arc<PolyRing<F>> {
        self.ideal.ring()
    }

    fn max_degree(&self) -> Option<u32> {
        self.valid_up_to
    }

    fn dim(&self, d: u32) -> Result<usize> {
        self.hilbert(d)
    }

    fn coordinates(&self, f: &Polynomial<F>, d: u32) -> Result<Vec<F::Elem>> {
        if !f.is_zero() && (!f.is_homogeneous() || f.total_degree() != Some(d)) {
            return Err(AlgebraError::MixedDegrees);
        }
        let nf = self.normal_form(f)?;
        coords_in(self.field(), &nf, &self.graded_basis(d)?)
    }

    fn element(&self, coords: &[F::Elem], d: u32) -> Result<Polynomial<F>> {
        let basis = self.graded_basis(d)?;
        if coords.len() != basis.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        Ok(Polynomial::from_terms(
            self.ring(),
            basis.into_iter().zip(coords.iter().cloned()),
        ))
    }

    fn check_linear(&self, x: &Polynomial<F>) -> Result<()> {
        if !x.is_homogeneous() || x.total_degree() != Some(1) || self.is_zero(x)? {
            return Err(AlgebraError::NotLinear(x.to_string()));
        }
        Ok(())
    }

    fn degree_of(&self, f: &Polynomial<F>) -> Result<u32> {
        if !f.is_homogeneous() {
            return Err(AlgebraError::MixedDegrees);
        }
        Ok(f.total_degree().unwrap_or(0))
    }
}

pub fn graded_basis<F: Field>(g: &GradedAlgebra<F>, d: u32) -> Result<Vec<Monomial>> {
    g.graded_basis(d)
}

pub fn krull_dimension<F: Field>(g: &GradedAlgebra<F>) -> usize {
    g.krull_dimension()
}

/// `λ(k[x]/A)` as a standard-monomial count.
pub fn colength<F: Field>(a: &Ideal<F>) -> Result<usize> {
    let st = Staircase::of_ideal(a);
    match st.missing_pure_power() {
        Some(i) => Err(AlgebraError::NotCofinite {
            variable: a.ring().var_names()[i].clone(),
        }),
        None => Ok(st.count().expect("cofinite staircase")),
    }
}

/// `λ(A/B)` in the polynomial ring, for `B ⊆ A` of finite colength.
pub fn length_quotient<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<usize> {
    if let Some(w) = a.non_member_of(b)? {
        return Err(AlgebraError::NotContained {
            witness: w.to_string(),
        });
    }
    Ok(colength(b)? - colength(a)?)
}

/// Initial-form ideal of `k[x]_(x)/K` through degree `d_max`, as a graded
/// algebra valid in degrees `≤ d_max`.
pub fn lowest_form_ideal<F: Field>(k: &Ideal<F>, d_max: u32) -> Result<GradedAlgebra<F>> {
    lowest_form_ideal_with_guard(k, d_max, DEFAULT_LOWEST_FORM_GUARD)
}

pub fn lowest_form_ideal_with_guard<F: Field>(
    k: &Ideal<F>,
    d_max: u32,
    guard: u32,
) -> Result<GradedAlgebra<F>> {
    if d_max > guard {
        return Err(AlgebraError::DegreeBoundExceeded {
            requested: d_max as usize,
            guard: guard as usize,
        });
    }
    if d_max == 0 {
        return Err(AlgebraError::InvalidArgument(
            "degree bound must be at least 1".into(),
        ));
    }
    let ring = k.ring();
    let field = ring.field();
    let n = ring.nvars();
    let by_degree: Vec<Vec<Monomial>> =
        (0..=d_max).map(|d| Monomial::all_of_degree(n, d)).collect();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut degree_start = Vec::new();
    for layer in &by_degree {
        degree_start.push(index.len());
        for m in layer {
            let i = index.len();
            index.insert(m.clone(), i);
        }
    }
    degree_start.push(index.len());
    let ncols = index.len();

    let mut rows = Vec::new();
    for g in k.gens() {
        let Some(ord) = g.lowest_degree() else {
            continue;
        };
        if ord > d_max {
            continue;
        }
        for e in 0..=(d_max - ord) {
            for beta in &by_degree[e as usize] {
                let mut row = vec![field.zero(); ncols];
                let mut any = false;
                for (m, c) in g.mul_monomial(beta).terms() {
                    if let Some(&i) = index.get(m) {
                        row[i] = c.clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let ech = rref(field, &Matrix::from_rows(ncols, rows));
    if ech.pivots.first() == Some(&0) {
        return Err(AlgebraError::UnitIdeal);
    }
    // degree-d parts of echelon rows whose pivot sits in degree d
    let mut pieces: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); d_max as usize + 1];
    for (r, &p) in ech.pivots.iter().enumerate() {
        let d = degree_start.iter().rposition(|&s| s <= p).unwrap();
        let (lo, hi) = (degree_start[d], degree_start[d + 1]);
        pieces[d].push(ech.matrix.row(r)[lo..hi].to_vec());
    }
    // keep a minimal set: forms not already in the ideal generated below
    let mut forms = Vec::new();
    for d in 1..=d_max as usize {
        let layer = &by_degree[d];
        let local: HashMap<&Monomial, usize> =
            layer.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span: Vec<Vec<F::Elem>> = Vec::new();
        for w in &pieces[d - 1] {
            for v in 0..n {
                let mut row = vec![field.zero(); layer.len()];
                for (c, m) in w.iter().zip(&by_degree[d - 1]) {
                    if !field.is_zero(c) {
                        row[local[&m.mul(&Monomial::var(n, v, 1))]] = c.clone();
                    }
                }
                span.push(row);
            }
        }
        let mut rank = span_rank(field, layer.len(), &span);
        for w in &pieces[d] {
            span.push(w.clone());
            let r = span_rank(field, layer.len(), &span);
            if r > rank {
                rank = r;
                forms.push(Polynomial::from_terms(
                    ring,
                    layer.iter().cloned().zip(w.iter().cloned()),
                ));
            } else {
                span.pop();
            }
        }
    }
    let mut g = GradedAlgebra::from_forms(ring, forms)?;
    g.valid_up_to = Some(d_max);
    Ok(g)
}

/// `R = k[x]_(x)/P`: every ideal is stored together with `P`, and lengths of
/// finite-colength ideals are computed globally, which agrees with the local
/// value once the support is confirmed to be the origin.
#[derive(Clone, Debug)]
pub struct LocalRing<F: Field> {
    ring: Arc<PolyRing<F>>,
    relations: Ideal<F>,
    cohen_macaulay: bool,
    dim: usize,
}

/// An ideal of a [`LocalRing`]: its own generators plus the relations.
#[derive(Clone, Debug)]
pub struct LocalIdeal<F: Field> {
    gens: Vec<Polynomial<F>>,
    full: Ideal<F>,
}

impl<F: Field> LocalIdeal<F> {
    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// The preimage in the polynomial ring.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.full
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.full.contains(f)
    }

    pub fn contains_ideal(&self, other: &LocalIdeal<F>) -> Result<bool> {
        self.full.contains_ideal(&other.full)
    }

    pub fn equals(&self, other: &LocalIdeal<F>) -> Result<bool> {
        self.full.equals(&other.full)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.full.normal_form(f)
    }
}

impl<F: Field> std::fmt::Display for LocalIdeal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<F: Field> LocalRing<F> {
    /// The localized polynomial ring; regular, hence Cohen–Macaulay.
    pub fn polynomial(ring: &Arc<PolyRing<F>>) -> Self {
        LocalRing {
            ring: ring.clone(),
            relations: Ideal::zero(ring),
            cohen_macaulay: true,
            dim: ring.nvars(),
        }
    }

    /// `k[x]_(x)/(relations)`. Cohen–Macaulayness is asserted by the caller.
    pub fn quotient(
        ring: &Arc<PolyRing<F>>,
        relations: Vec<Polynomial<F>>,
        cohen_macaulay: bool,
    ) -> Result<Self> {
        let rel = Ideal::new(ring, relations)?;
        if rel.gens().iter().any(|g| g.lowest_degree() == Some(0)) {
            return Err(AlgebraError::UnitIdeal);
        }
        let dim = if rel.is_homogeneous() {
            Staircase::of_ideal(&rel).dimension()
        } else {
            lowest_form_ideal(&rel, DEFAULT_LOWEST_FORM_DEGREE)?.krull_dimension()
        };
        Ok(LocalRing {
            ring: ring.clone(),
            relations: rel,
            cohen_macaulay,
            dim,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn relations(&self) -> &Ideal<F> {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_cohen_macaulay(&self) -> bool {
        self.cohen_macaulay
    }

    /// Whether the defining relations are homogeneous, so that the maximal
    /// ideal's associated graded ring is `k[x]/P` itself.
    pub fn is_graded(&self) -> bool {
        self.relations.is_homogeneous()
    }

    pub fn ideal(&self, gens: Vec<Polynomial<F>>) -> Result<LocalIdeal<F>> {
        for g in &gens {
            if !same_ring(g.ring(), &self.ring) {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let mut all = gens.clone();
        all.extend(self.relations.gens().iter().cloned());
        Ok(LocalIdeal {
            gens,
            full: Ideal::new(&self.ring, all)?,
        })
    }

    fn wrap(&self, full: Ideal<F>) -> LocalIdeal<F> {
        LocalIdeal {
            gens: full.basis(),
            full,
        }
    }

    pub fn unit(&self) -> LocalIdeal<F> {
        LocalIdeal {
            gens: vec![Polynomial::one(&self.ring)],
            full: Ideal::unit(&self.ring),
        }
    }

    pub fn maximal(&self) -> LocalIdeal<F> {
        let gens = (0..self.ring.nvars())
            .map(|i| Polynomial::var(&self.ring, i))
            .collect();
        self.ideal(gens).expect("variables generate a proper ideal")
    }

    pub fn sum(&self, a: &LocalIdeal<F>, b: &LocalIdeal<F>) -> Result<LocalIdeal<F>> {
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().cloned());
        self.ideal(gens)
    }

    pub fn product(&self, a: &LocalIdeal<F>, b: &LocalIdeal<F>) -> Result<LocalIdeal<F>> {
        let order = MonomialOrder::grevlex();
        let mut gens: Vec<Polynomial<F>> = Vec::new();
        for f in &a.gens {
            for g in &b.gens {
                let p = (f * g).monic(&order);
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        let out = self.ideal(gens)?;
        // generators of large products are mostly redundant; keep whichever
        // list is shorter
        if out.full.gens().len() > out.full.groebner().len() + self.relations.gens().len() {
            let basis = out.full.basis();
            return Ok(LocalIdeal {
                gens: basis,
                full: out.full,
            });
        }
        Ok(out)
    }

    pub fn power(&self, a: &LocalIdeal<F>, k: u32) -> Result<LocalIdeal<F>> {
        let mut acc = self.unit();
        for i in 0..k {
            acc = if i == 0 {
                a.clone()
            } else {
                self.product(&acc, a)?
            };
        }
        Ok(acc)
    }

    pub fn intersect(&self, a: &LocalIdeal<F>, b: &LocalIdeal<F>) -> Result<LocalIdeal<F>> {
        Ok(self.wrap(a.full.intersect(&b.full)?))
    }

    pub fn quotient_ideal(&self, a: &LocalIdeal<F>, b: &LocalIdeal<F>) -> Result<LocalIdeal<F>> {
        Ok(self.wrap(a.full.quotient(&b.full)?))
    }

    /// `λ(R/A)`; fails unless `A` is primary to the maximal ideal.
    pub fn length(&self, a: &LocalIdeal<F>) -> Result<usize> {
        let count = colength(&a.full)?;
        // global colength equals the local one only when A lives at the origin
        for i in 0..self.ring.nvars() {
            let p = Polynomial::monomial(
                &self.ring,
                Monomial::var(self.ring.nvars(), i, count.max(1) as u32),
            );
            if !a.full.contains(&p)? {
                return Err(AlgebraError::InvalidArgument(format!(
                    "ideal {a} has points of its support away from the origin"
                )));
            }
        }
        Ok(count)
    }

    /// `λ(A/B)` for `B ⊆ A`.
    pub fn length_quotient(&self, a: &LocalIdeal<F>, b: &LocalIdeal<F>) -> Result<usize> {
        if let Some(w) = a.full.non_member_of(&b.full)? {
            return Err(AlgebraError::NotContained {
                witness: w.to_string(),
            });
        }
        Ok(self.length(b)? - self.length(a)?)
    }

    /// `μ(A) = λ(A/mA)`.
    pub fn minimal_generators(&self, a: &LocalIdeal<F>) -> Result<usize> {
        let ma = self.product(&self.maximal(), a)?;
        self.length_quotient(a, &ma)
    }
}

/// A violation of an admissibility condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `I_{n+1} ⊄ I_n`.
    NotDescending { n: usize, witness: String },
    /// `I_a · I_b ⊄ I_{a+b}`.
    NotMultiplicative { a: usize, b: usize, witness: String },
    /// `I^n ⊄ I_n`.
    BelowPower { n: usize, witness: String },
    /// `I_n ⊄ I^{n-k}` for the declared `k`.
    AbovePower { n: usize, k: usize, witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub window: usize,
    pub violations: Vec<Violation>,
}

impl AdmissibilityVerdict {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite ladder `R = I_0 ⊇ I_1 ⊇ … ⊇ I_N` over a base ideal `I`.
#[derive(Clone, Debug)]
pub struct Filtration<F: Field> {
    ring: LocalRing<F>,
    base: LocalIdeal<F>,
    ladder: Vec<LocalIdeal<F>>,
    window: usize,
    shift: Option<usize>,
    adic: bool,
}

/// The `I`-adic ladder `I_n = I^n` for `n ≤ N`.
pub fn make_adic_filtration<F: Field>(
    ring: &LocalRing<F>,
    base: &LocalIdeal<F>,
    n: usize,
) -> Result<Filtration<F>> {
    if n == 0 {
        return Err(AlgebraError::InvalidArgument(
            "filtration length must be at least 1".into(),
        ));
    }
    let mut ladder = vec![ring.unit(), base.clone()];
    for _ in 2..=n {
        let next = ring.product(ladder.last().unwrap(), base)?;
        ladder.push(next);
    }
    Ok(Filtration {
        ring: ring.clone(),
        base: base.clone(),
        ladder,
        window: n,
        shift: Some(0),
        adic: true,
    })
}

impl<F: Field> Filtration<F> {
    /// A general ladder. `levels` lists `I_1, …, I_N`; `shift` is the declared
    /// `k` of the upper inclusion `I_n ⊆ I^{n-k}`, if any.
    pub fn new(
        ring: &LocalRing<F>,
        base: LocalIdeal<F>,
        levels: Vec<LocalIdeal<F>>,
        window: usize,
        shift: Option<usize>,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(AlgebraError::InvalidArgument(
                "filtration needs at least I_1".into(),
            ));
        }
        if window > levels.len() {
            return Err(AlgebraError::BeyondWindow {
                needed: window,
                available: levels.len(),
            });
        }
        let mut ladder = vec![ring.unit()];
        ladder.extend(levels);
        Ok(Filtration {
            ring: ring.clone(),
            base,
            ladder,
            window,
            shift,
            adic: false,
        })
    }

    pub fn ring(&self) -> &LocalRing<F> {
        &self.ring
    }

    pub fn base(&self) -> &LocalIdeal<F> {
        &self.base
    }

    pub fn is_adic(&self) -> bool {
        self.adic
    }

    /// Largest `N` with `I_N` available.
    pub fn len(&self) -> usize {
        self.ladder.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ladder.len() <= 1
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn level(&self, n: usize) -> Result<&LocalIdeal<F>> {
        self.ladder.get(n).ok_or(AlgebraError::BeyondWindow {
            needed: n,
            available: self.len(),
        })
    }

    /// Extends an adic ladder so that `I_n` exists.
    pub fn extended_to(&self, n: usize) -> Result<Self> {
        if n <= self.len() {
            return Ok(self.clone());
        }
        if !self.adic {
            return Err(AlgebraError::BeyondWindow {
                needed: n,
                available: self.len(),
            });
        }
        let mut out = self.clone();
        while out.len() < n {
            let next = out.ring.product(out.ladder.last().unwrap(), &out.base)?;
            out.ladder.push(next);
        }
        out.window = n;
        Ok(out)
    }

    /// `λ_F(j) = λ(I_j/I_{j+1})`.
    pub fn lambda(&self, j: usize) -> Result<usize> {
        self.ring
            .length_quotient(self.level(j)?, self.level(j + 1)?)
    }

    pub fn validate_admissible(&self) -> Result<AdmissibilityVerdict> {
        let mut violations = Vec::new();
        let w = self.window;
        for n in 0..self.len() {
            if let Some(g) = self.ladder[n]
                .full
                .non_member_of(&self.ladder[n + 1].full)?
            {
                violations.push(Violation::NotDescending {
                    n,
                    witness: g.to_string(),
                });
            }
        }
        for a in 1..=w {
            for b in a..=w - a {
                let prod = self.ring.product(&self.ladder[a], &self.ladder[b])?;
                if let Some(g) = self.ladder[a + b].full.non_member_of(&prod.full)? {
                    violations.push(Violation::NotMultiplicative {
                        a,
                        b,
                        witness: g.to_string(),
                    });
                }
            }
        }
        let mut power = self.ring.unit();
        let mut powers = vec![power.clone()];
        for n in 1..=w {
            power = if n == 1 {
                self.base.clone()
            } else {
                self.ring.product(&power, &self.base)?
            };
            powers.push(power.clone());
            if let Some(g) = self.ladder[n].full.non_member_of(&power.full)? {
                violations.push(Violation::BelowPower {
                    n,
                    witness: g.to_string(),
                });
            }
        }
        if let Some(k) = self.shift {
            for n in k..=w {
                if let Some(g) = powers[n - k].full.non_member_of(&self.ladder[n].full)? {
                    violations.push(Violation::AbovePower {
                        n,
                        k,
                        witness: g.to_string(),
                    });
                }
            }
        }
        Ok(AdmissibilityVerdict {
            window: w,
            violations,
        })
    }
}

struct Level<F: Field> {
    /// Standard monomials of `I_{d+1}` lying in `LT(I_d)`, descending.
    support: Vec<Monomial>,
    /// `w_t` for each `t` in `support`: leading monomial `t`.
    reps: Vec<Polynomial<F>>,
}

/// The associated graded ring `⊕ I_d/I_{d+1}` of a filtration, computed from
/// the ladder itself.
pub struct FiltrationModel<'a, F: Field> {
    filtration: &'a Filtration<F>,
    levels: Vec<Level<F>>,
}

impl<'a, F: Field> FiltrationModel<'a, F> {
    /// Precomputes degrees `0..=max_degree`; needs `I_{max_degree+1}`.
    pub fn new(filtration: &'a Filtration<F>, max_degree: u32) -> Result<Self> {
        let order = MonomialOrder::grevlex();
        let mut levels = Vec::new();
        for d in 0..=max_degree as usize {
            let upper = filtration.level(d)?;
            let lower = filtration.level(d + 1)?;
            let std_lower = Staircase::of_ideal(&lower.full);
            let std_upper = Staircase::of_ideal(&upper.full);
            let all = std_lower
                .all_standard()
                .ok_or_else(|| AlgebraError::NotCofinite {
                    variable: filtration.ring.ring.var_names()
                        [std_lower.missing_pure_power().unwrap()]
                    .clone(),
                })?;
            let mut support: Vec<Monomial> = all
                .into_iter()
                .filter(|m| !std_upper.is_standard(m))
                .collect();
            support.sort_by(|a, b| b.cmp(a));
            let gb = upper.full.basis();
            let mut reps = Vec::with_capacity(support.len());
            for t in &support {
                let g = gb
                    .iter()
                    .find(|g| g.leading_monomial(&order).unwrap().divides(t))
                    .expect("t lies in the leading ideal");
                let u = g.leading_monomial(&order).unwrap().quotient_of(t).unwrap();
                let w = lower.full.normal_form(&g.mul_monomial(&u))?.monic(&order);
                reps.push(w);
            }
            levels.push(Level { support, reps });
        }
        Ok(FiltrationModel { filtration, levels })
    }

    fn level(&self, d: u32) -> Result<&Level<F>> {
        self.levels
            .get(d as usize)
            .ok_or(AlgebraError::BeyondWindow {
                needed: d as usize,
                available: self.levels.len().saturating_sub(1),
            })
    }

    /// Order of `f` with respect to the ladder (`None` for elements of the
    /// last stored level).
    pub fn order_of(&self, f: &Polynomial<F>) -> Result<Option<u32>> {
        for d in 0..self.levels.len() {
            if !self.filtration.level(d + 1)?.contains(f)? {
                return Ok(Some(d as u32));
            }
        }
        Ok(None)
    }
}

impl<F: Field> GradedModel<F> for FiltrationModel<'_, F> {
    fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.filtration.ring.ring
    }

    fn max_degree(&self) -> Option<u32> {
        Some(self.levels.len() as u32 - 1)
    }

    fn dim(&self, d: u32) -> Result<usize> {
        Ok(self.level(d)?.support.len())
    }

    fn coordinates(&self, f: &Polynomial<F>, d: u32) -> Result<Vec<F::Elem>> {
        let level = self.level(d)?;
        let field = self.field();
        let order = MonomialOrder::grevlex();
        if !self.filtration.level(d as usize)?.contains(f)? {
            return Err(AlgebraError::NotContained {
                witness: f.to_string(),
            });
        }
        let mut r = self.filtration.level(d as usize + 1)?.normal_form(f)?;
        let index: HashMap<&Monomial, usize> = level
            .support
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut v = vec![field.zero(); level.support.len()];
        while let Some((m, c)) = r.leading_term(&order) {
            let i = *index
                .get(m)
                .expect("leading monomial of a class in I_d lies in T_d");
            let c = c.clone();
            r = &r - &level.reps[i].scale(&c);
            v[i] = c;
        }
        Ok(v)
    }

    fn element(&self, coords: &[F::Elem], d: u32) -> Result<Polynomial<F>> {
        let level = self.level(d)?;
        if coords.len() != level.reps.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: level.reps.len(),
                found: coords.len(),
            });
        }
        let mut acc = Polynomial::zero(self.ring());
        for (c, w) in coords.iter().zip(&level.reps) {
            acc = &acc + &w.scale(c);
        }
        Ok(acc)
    }

    fn check_linear(&self, x: &Polynomial<F>) -> Result<()> {
        if !self.filtration.level(1)?.contains(x)? || self.filtration.level(2)?.contains(x)? {
            return Err(AlgebraError::NotLinear(x.to_string()));
        }
        Ok(())
    }

    fn degree_of(&self, f: &Polynomial<F>) -> Result<u32> {
        self.order_of(f)?.ok_or(AlgebraError::BeyondWindow {
            needed: self.levels.len(),
            available: self.levels.len() - 1,
        })
    }
}
