//! Buchberger's algorithm and the ideal calculus built on it.
//!
//! Internally polynomials are term vectors sorted ascending under the active
//! order, so the leading term is the last entry. Over the rationals the
//! reduction is fraction-free and content is stripped after every step.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};

/// S-polynomials above this total degree abort the computation.
pub const DEFAULT_DEGREE_GUARD: u32 = 64;

type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

fn to_terms<F: Field>(p: &Polynomial<F>, order: &MonomialOrder) -> Terms<F> {
    let mut t: Terms<F> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    if !order.is_default_grevlex() {
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    }
    t
}

fn from_terms<F: Field>(ring: &Arc<PolyRing<F>>, t: Terms<F>) -> Polynomial<F> {
    Polynomial::from_map(ring, t.into_iter().collect())
}

/// `s·p − c·m·g`, all ascending. `s = None` means 1.
fn sub_scaled<F: Field>(
    field: &F,
    order: &MonomialOrder,
    p: &[(Monomial, F::Elem)],
    s: Option<&F::Elem>,
    c: &F::Elem,
    m: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let scale = |x: &F::Elem| match s {
        Some(s) => field.mul(x, s),
        None => x.clone(),
    };
    let mut i = 0;
    let mut j = 0;
    let mut shifted: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < p.len() || j < g.len() {
        let ord = match (p.get(i), &shifted) {
            (Some(a), Some(b)) => order.cmp(&a.0, b),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push((p[i].0.clone(), scale(&p[i].1)));
                i += 1;
            }
            Ordering::Greater => {
                let v = field.neg(&field.mul(c, &g[j].1));
                out.push((shifted.take().unwrap(), v));
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = field.sub(&scale(&p[i].1), &field.mul(c, &g[j].1));
                if !field.is_zero(&v) {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

/// Scales to a canonical representative: primitive integral over the
/// rationals (positive leading coefficient), monic otherwise.
fn normalize<F: Field>(field: &F, t: &mut Terms<F>) {
    let Some((_, lc)) = t.last() else { return };
    let factor = {
        let coeffs: Vec<&F::Elem> = t.iter().rev().map(|(_, c)| c).collect();
        match field.content_normalizer(&coeffs) {
            Some(f) => f,
            None => field.inv(lc).expect("nonzero leading coefficient"),
        }
    };
    if !field.is_one(&factor) {
        for (_, c) in t.iter_mut() {
            *c = field.mul(c, &factor);
        }
    }
}

fn make_monic<F: Field>(field: &F, t: &mut Terms<F>) {
    if let Some((_, lc)) = t.last() {
        if !field.is_one(lc) {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
}

struct Reducer<'a, F: Field> {
    field: &'a F,
    order: &'a MonomialOrder,
    basis: &'a [Terms<F>],
    /// Indices into `basis` that may be used as divisors.
    active: &'a [usize],
    /// Return the remainder up to a unit (primitive over the rationals).
    up_to_unit: bool,
}

impl<F: Field> Reducer<'_, F> {
    fn find(&self, m: &Monomial) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&k| self.basis[k].last().is_some_and(|(lm, _)| lm.divides(m)))
    }

    /// Reduces `p`; with `full` the tail is reduced as well.
    fn reduce(&self, mut p: Terms<F>, full: bool) -> Terms<F> {
        let field = self.field;
        let exact = field.size().is_some();
        let mut done: Terms<F> = Vec::new();
        let mut steps = 0usize;
        while let Some((m, c)) = p.last() {
            match self.find(m) {
                Some(k) => {
                    let g = &self.basis[k];
                    let (lm, lc) = g.last().unwrap();
                    let q = lm.quotient_of(m).unwrap();
                    let c = c.clone();
                    if exact || field.is_one(lc) {
                        let coef = if field.is_one(lc) {
                            c
                        } else {
                            field.mul(&c, &field.inv(lc).unwrap())
                        };
                        p.pop();
                        p = sub_scaled(field, self.order, &p, None, &coef, &q, &g[..g.len() - 1]);
                    } else {
                        // fraction-free: lc·p − c·q·g
                        p.pop();
                        p = sub_scaled(field, self.order, &p, Some(lc), &c, &q, &g[..g.len() - 1]);
                        for (_, d) in done.iter_mut() {
                            *d = field.mul(d, lc);
                        }
                        steps += 1;
                        if steps % 8 == 0 {
                            self.strip_content(&mut p, &mut done);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(p.pop().unwrap());
                }
            }
        }
        // `done` holds terms in descending order; `p` is ascending.
        done.reverse();
        let mut out = p;
        out.extend(done);
        if self.up_to_unit && !exact {
            normalize(field, &mut out);
        }
        out
    }

    fn strip_content(&self, p: &mut Terms<F>, done: &mut Terms<F>) {
        let coeffs: Vec<&F::Elem> = done.iter().chain(p.iter()).map(|(_, c)| c).collect();
        if let Some(f) = self.field.content_normalizer(&coeffs) {
            for (_, c) in p.iter_mut().chain(done.iter_mut()) {
                *c = self.field.mul(c, &f);
            }
        }
    }
}

/// A reduced Gröbner basis under a fixed order, sorted by ascending leading
/// monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    order: MonomialOrder,
    elems: Vec<Terms<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].len() == 1 && self.elems[0][0].0.is_one()
    }

    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.elems
            .iter()
            .map(|t| from_terms(&self.ring, t.clone()))
            .collect()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elems.iter().map(|t| &t.last().unwrap().0)
    }

    /// Full remainder of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let active: Vec<usize> = (0..self.elems.len()).collect();
        let r = Reducer {
            field: self.ring.field(),
            order: &self.order,
            basis: &self.elems,
            active: &active,
            up_to_unit: false,
        };
        Ok(from_terms(
            &self.ring,
            r.reduce(to_terms(f, &self.order), true),
        ))
    }

    pub fn reduces_to_zero(&self, f: &Polynomial<F>) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        let active: Vec<usize> = (0..self.elems.len()).collect();
        let r = Reducer {
            field: self.ring.field(),
            order: &self.order,
            basis: &self.elems,
            active: &active,
            up_to_unit: true,
        };
        Ok(r.reduce(to_terms(f, &self.order), true).is_empty())
    }
}

impl<F: Field> fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.polynomials().iter().map(|p| p.to_string()))
            .finish()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    buchberger_with_guard(ring, gens, order, DEFAULT_DEGREE_GUARD)
}

pub fn buchberger_with_guard<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    guard: u32,
) -> Result<GroebnerBasis<F>> {
    let field = ring.field();
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(AlgebraError::RingMismatch);
        }
    }
    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(usize, usize)> = Vec::new();

    // interreduce the input once so that the initial pair set is small
    let mut input: Vec<Terms<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = to_terms(g, order);
            normalize(field, &mut t);
            t
        })
        .collect();
    input.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    input.dedup();

    let add = |h: Terms<F>,
               basis: &mut Vec<Terms<F>>,
               active: &mut Vec<usize>,
               pending: &mut HashSet<(usize, usize)>,
               queue: &mut Vec<(usize, usize)>| {
        let idx = basis.len();
        let lm = h.last().unwrap().0.clone();
        basis.push(h);
        for &i in active.iter() {
            pending.insert((i, idx));
            queue.push((i, idx));
        }
        // elements whose leading term the new one divides stay for pair
        // bookkeeping but stop being used as divisors
        active.retain(|&i| !lm.divides(&basis[i].last().unwrap().0));
        active.push(idx);
    };

    for t in input {
        let r = Reducer {
            field,
            order,
            basis: &basis,
            active: &active,
            up_to_unit: true,
        };
        let h = r.reduce(t, false);
        if !h.is_empty() {
            add(h, &mut basis, &mut active, &mut pending, &mut queue);
        }
    }

    // normal strategy: smallest lcm first, ties broken deterministically
    while let Some(pos) = (0..queue.len()).min_by(|&a, &b| {
        let (i, j) = queue[a];
        let (k, l) = queue[b];
        let la = basis[i].last().unwrap().0.lcm(&basis[j].last().unwrap().0);
        let lb = basis[k].last().unwrap().0.lcm(&basis[l].last().unwrap().0);
        la.total_degree()
            .cmp(&lb.total_degree())
            .then_with(|| order.cmp(&la, &lb))
            .then_with(|| (i, j).cmp(&(k, l)))
    }) {
        let (i, j) = queue.swap_remove(pos);
        pending.remove(&(i, j));
        let lmi = &basis[i].last().unwrap().0;
        let lmj = &basis[j].last().unwrap().0;
        if lmi.is_coprime(lmj) {
            continue;
        }
        if basis[i].len() == 1 && basis[j].len() == 1 {
            continue;
        }
        let l = lmi.lcm(lmj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].last().unwrap().0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if l.total_degree() > guard {
            return Err(AlgebraError::DegreeGuard {
                degree: l.total_degree(),
                limit: guard,
            });
        }
        let s = spoly(field, order, &basis[i], &basis[j]);
        let r = Reducer {
            field,
            order,
            basis: &basis,
            active: &active,
            up_to_unit: true,
        };
        let mut h = r.reduce(s, false);
        if h.is_empty() {
            continue;
        }
        normalize(field, &mut h);
        if h.len() == 1 && h[0].0.is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                order: order.clone(),
                elems: vec![vec![(h[0].0.clone(), field.one())]],
            });
        }
        add(h, &mut basis, &mut active, &mut pending, &mut queue);
    }

    // minimize, then interreduce
    let mut minimal: Vec<usize> = active.clone();
    minimal.sort_by(|&a, &b| order.cmp(&basis[a].last().unwrap().0, &basis[b].last().unwrap().0));
    let mut keep: Vec<usize> = Vec::new();
    for &k in &minimal {
        let lm = &basis[k].last().unwrap().0;
        if !keep.iter().any(|&o| basis[o].last().unwrap().0.divides(lm)) {
            keep.push(k);
        }
    }
    let monic: Vec<Terms<F>> = keep
        .iter()
        .map(|&k| {
            let mut t = basis[k].clone();
            make_monic(field, &mut t);
            t
        })
        .collect();
    let mut elems = Vec::with_capacity(monic.len());
    for (pos, t) in monic.iter().enumerate() {
        let others: Vec<usize> = (0..monic.len()).filter(|&p| p != pos).collect();
        let r = Reducer {
            field,
            order,
            basis: &monic,
            active: &others,
            up_to_unit: false,
        };
        let mut t = t.clone();
        let lead = t.pop().unwrap();
        let mut tail = r.reduce(t, true);
        tail.push(lead);
        elems.push(tail);
    }
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elems,
    })
}

fn spoly<F: Field>(field: &F, order: &MonomialOrder, f: &Terms<F>, g: &Terms<F>) -> Terms<F> {
    let (lf, cf) = f.last().unwrap();
    let (lg, cg) = g.last().unwrap();
    let l = lf.lcm(lg);
    let mf = lf.quotient_of(&l).unwrap();
    let mg = lg.quotient_of(&l).unwrap();
    let fs: Terms<F> = f[..f.len() - 1]
        .iter()
        .map(|(m, c)| (m.mul(&mf), field.mul(c, cg)))
        .collect();
    sub_scaled(field, order, &fs, None, cf, &mg, &g[..g.len() - 1])
}

/// An ideal of a polynomial ring with its reduced grevlex Gröbner basis.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    basis: GroebnerBasis<F>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineOp {
    Sum,
    Product,
    Power(u32),
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let basis = buchberger(ring, &gens, &MonomialOrder::grevlex())?;
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            basis,
        })
    }

    /// Wraps polynomials already known to form a reduced grevlex basis.
    fn from_reduced(ring: &Arc<PolyRing<F>>, basis: Vec<Polynomial<F>>) -> Self {
        let order = MonomialOrder::grevlex();
        let mut elems: Vec<Terms<F>> = basis.iter().map(|p| to_terms(p, &order)).collect();
        elems.sort_by(|a, b| a.last().unwrap().0.cmp(&b.last().unwrap().0));
        Ideal {
            ring: ring.clone(),
            gens: basis,
            basis: GroebnerBasis {
                ring: ring.clone(),
                order,
                elems,
            },
        }
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Self::from_reduced(ring, vec![])
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Self::from_reduced(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing<F>>) -> Self {
        Self::from_reduced(
            ring,
            (0..ring.nvars())
                .map(|i| Polynomial::var(ring, i))
                .collect(),
        )
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Polynomial<F>> {
        self.basis.polynomials()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.leading_monomials().cloned().collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.basis.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.basis.reduces_to_zero(f)
    }

    /// First generator of `other` not in `self`, if any.
    pub fn non_member_of(&self, other: &Ideal<F>) -> Result<Option<Polynomial<F>>> {
        self.check(other)?;
        for g in other.basis.polynomials() {
            if !self.contains(&g)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.non_member_of(other)?.is_none())
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    fn check(&self, other: &Ideal<F>) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut gens: Vec<Polynomial<F>> = Vec::new();
        let order = MonomialOrder::grevlex();
        for a in &self.gens {
            for b in &other.gens {
                let p = (a * b).monic(&order);
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = if acc.is_unit() {
                self.clone()
            } else {
                acc.product(self)?
            };
        }
        Ok(acc)
    }

    pub fn combine(&self, other: &Ideal<F>, op: CombineOp) -> Result<Self> {
        match op {
            CombineOp::Sum => self.sum(other),
            CombineOp::Product => self.product(other),
            CombineOp::Power(k) => self.power(k),
        }
    }

    /// Intersection by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ext = self.ring.with_extra_var("t");
        let n = self.ring.nvars();
        let t = Polynomial::var(&ext, n);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in self.basis.polynomials() {
            gens.push(&t * &g.extend_into(&ext));
        }
        for g in other.basis.polynomials() {
            gens.push(&one_minus_t * &g.extend_into(&ext));
        }
        let gb = buchberger(&ext, &gens, &MonomialOrder::eliminating(&[n]))?;
        let kept: Vec<Polynomial<F>> = gb
            .polynomials()
            .into_iter()
            .filter_map(|p| p.restrict_into(&self.ring))
            .collect();
        Ok(Ideal::from_reduced(&self.ring, kept))
    }

    /// `self : other`, the polynomials whose product with `other` lies in `self`.
    pub fn quotient(&self, other: &Ideal<F>) -> Result<Self> {
        self.check(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in other.basis.polynomials() {
            let part = self.quotient_by(&g)?;
            acc = if acc.is_unit() {
                part
            } else {
                acc.intersect(&part)?
            };
        }
        Ok(acc)
    }

    fn quotient_by(&self, g: &Polynomial<F>) -> Result<Self> {
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let inter = self.intersect(&principal)?;
        let mut gens = Vec::new();
        for h in inter.basis.polynomials() {
            let (q, r) = divide(&h, g)?;
            debug_assert!(r.is_zero());
            gens.push(q);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `self ∩ k[remaining variables]`.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        if let Some(&bad) = vars.iter().find(|&&v| v >= self.ring.nvars()) {
            return Err(AlgebraError::InvalidArgument(format!(
                "variable index {bad} out of range"
            )));
        }
        let gb = buchberger(&self.ring, &self.gens, &MonomialOrder::eliminating(vars))?;
        let kept: Vec<Polynomial<F>> = gb
            .polynomials()
            .into_iter()
            .filter(|p| {
                p.terms()
                    .all(|(m, _)| vars.iter().all(|&v| m.exponents()[v] == 0))
            })
            .collect();
        Ok(Ideal::from_reduced(&self.ring, kept))
    }
}

/// Multivariate division of `f` by a single `g` under grevlex: `f = q·g + r`.
pub fn divide<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<(Polynomial<F>, Polynomial<F>)> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    let order = MonomialOrder::grevlex();
    let ring = f.ring();
    let field = ring.field();
    let Some((lg, cg)) = g.leading_term(&order) else {
        return Err(AlgebraError::InvalidArgument("division by zero".into()));
    };
    let inv = field.inv(cg).unwrap();
    let gt = to_terms(g, &order);
    let mut p = to_terms(f, &order);
    let mut q: Terms<F> = Vec::new();
    let mut r: Terms<F> = Vec::new();
    while let Some((m, c)) = p.last() {
        match lg.quotient_of(m) {
            Some(mq) => {
                let coef = field.mul(c, &inv);
                p.pop();
                p = sub_scaled(field, &order, &p, None, &coef, &mq, &gt[..gt.len() - 1]);
                q.push((mq, coef));
            }
            None => r.push(p.pop().unwrap()),
        }
    }
    Ok((
        Polynomial::from_terms(ring, q),
        Polynomial::from_terms(ring, r),
    ))
}

pub fn normal_form<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<Polynomial<F>> {
    ideal.normal_form(f)
}

pub fn ideal_member<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    a.equals(b)
}

pub fn ideal_combine<F: Field>(a: &Ideal<F>, b: &Ideal<F>, op: CombineOp) -> Result<Ideal<F>> {
    a.combine(b, op)
}

pub fn ideal_intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    a.intersect(b)
}

pub fn ideal_quotient<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    a.quotient(b)
}

pub fn eliminate<F: Field>(ideal: &Ideal<F>, vars: &[usize]) -> Result<Ideal<F>> {
    ideal.eliminate(vars)
}
