//! Monomials, monomial orders and sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

/// Exponent vector. The `Ord` impl is graded reverse lexicographic with the
/// variables in declaration order, which is also the default term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = exp;
        m.degree = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|e| *e <= 1)
    }

    pub fn squarefree_part(&self) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().map(|e| (*e).min(1)).collect();
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    /// The same exponents with an extra trailing variable of exponent `e`.
    pub fn extended(&self, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(e);
        Monomial {
            exps,
            degree: self.degree + e,
        }
    }

    /// Drops the trailing variable, which must have exponent zero.
    pub fn truncated(&self) -> Option<Monomial> {
        let (last, rest) = self.exps.split_last()?;
        (*last == 0).then(|| Monomial::new(rest))
    }

    /// All monomials of total degree `d` in `nvars` variables, in descending
    /// lexicographic order of exponent vectors.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                cur[i] = left;
                out.push(Monomial::new(cur));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(nvars, i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
        out
    }
}

fn grevlex_cmp(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.exps, &other.exps, self.degree, other.degree)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GradedLex,
    GrevLex,
}

/// A term order: a base kind applied to a priority permutation of the
/// variables, optionally refined by an elimination block whose degree is
/// compared first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Option<Vec<usize>>,
    block: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            priority: None,
            block: None,
        }
    }

    pub fn grevlex() -> Self {
        Self::new(OrderKind::GrevLex)
    }

    pub fn lex() -> Self {
        Self::new(OrderKind::Lex)
    }

    pub fn graded_lex() -> Self {
        Self::new(OrderKind::GradedLex)
    }

    /// Reorders variables: `priority[0]` is the most significant.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Self {
        self.priority = Some(priority);
        self
    }

    /// Block order for elimination: the total degree in `vars` decides first,
    /// so anything involving them is larger than anything that does not.
    pub fn eliminating(vars: &[usize]) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: None,
            block: Some(vars.to_vec()),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_default_grevlex(&self) -> bool {
        self.kind == OrderKind::GrevLex && self.priority.is_none() && self.block.is_none()
    }

    /// Whether the order compares total degree first.
    pub fn is_degree_compatible(&self) -> bool {
        self.block.is_none() && self.kind != OrderKind::Lex
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison; both monomials must have the same length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let Some(block) = &self.block {
            let da: u32 = block.iter().map(|&i| a.exps[i]).sum();
            let db: u32 = block.iter().map(|&i| b.exps[i]).sum();
            if da != db {
                return da.cmp(&db);
            }
        }
        match &self.priority {
            None => match self.kind {
                OrderKind::GrevLex => a.cmp(b),
                OrderKind::Lex => a.exps.cmp(&b.exps),
                OrderKind::GradedLex => a.degree.cmp(&b.degree).then_with(|| a.exps.cmp(&b.exps)),
            },
            Some(p) => {
                let pa = p.iter().map(|&i| a.exps[i]);
                let pb = p.iter().map(|&i| b.exps[i]);
                match self.kind {
                    OrderKind::Lex => pa.cmp(pb),
                    OrderKind::GradedLex => a.degree.cmp(&b.degree).then_with(|| pa.cmp(pb)),
                    OrderKind::GrevLex => a.degree.cmp(&b.degree).then_with(|| {
                        for (x, y) in pa.rev().zip(pb.rev()) {
                            if x != y {
                                return y.cmp(&x);
                            }
                        }
                        Ordering::Equal
                    }),
                }
            }
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

/// `k[x_1, ..., x_n]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: Into<String>>(field: F, vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(PolyRing {
            field,
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with one more variable appended, named so as not to clash.
    pub fn with_extra_var(&self, base: &str) -> Arc<Self> {
        let mut name = base.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars,
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing<F>>, index: usize) -> Self {
        Self::term(
            ring,
            Monomial::var(ring.nvars(), index, 1),
            ring.field.one(),
        )
    }

    pub fn term(ring: &Arc<PolyRing<F>>, m: Monomial, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.field.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, m: Monomial) -> Self {
        Self::term(ring, m, ring.field.one())
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(
        ring: &Arc<PolyRing<F>>,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let field = &ring.field;
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match map.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !field.is_zero(c));
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The degree-`d` homogeneous part.
    pub fn graded_component(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of lowest degree (zero for zero).
    pub fn lowest_form(&self) -> Self {
        match self.lowest_degree() {
            Some(d) => self.graded_component(d),
            None => self.clone(),
        }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        if order.is_default_grevlex() {
            return self.terms.iter().next_back();
        }
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check_ring(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Sub => self.sub_unchecked(other),
            ArithOp::Mul => self.mul_unchecked(other),
        })
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    let s = field.add(v, c);
                    if field.is_zero(&s) {
                        terms.remove(m);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        self.add_unchecked(&other.neg())
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut terms: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = field.mul(c1, c2);
                match terms.get_mut(&m) {
                    Some(v) => *v = field.add(v, &c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !field.is_zero(c));
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Image under the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(AlgebraError::RingMismatch);
        }
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul_unchecked(&images[i].pow(e));
                }
            }
            acc = acc.add_unchecked(&t);
        }
        Ok(acc)
    }

    /// Moves the polynomial into `ring`, which must extend this ring by one
    /// trailing variable.
    pub fn extend_into(&self, ring: &Arc<PolyRing<F>>) -> Self {
        debug_assert_eq!(ring.nvars(), self.ring.nvars() + 1);
        Polynomial {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(0), c.clone()))
                .collect(),
        }
    }

    /// Inverse of [`extend_into`](Self::extend_into); `None` if the trailing
    /// variable occurs.
    pub fn restrict_into(&self, ring: &Arc<PolyRing<F>>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.truncated()?, c.clone());
        }
        Some(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Same terms, reinterpreted over an equal ring handle.
    pub fn rehome(&self, ring: &Arc<PolyRing<F>>) -> Result<Self> {
        if !same_ring(&self.ring, ring) {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    pub(crate) fn from_map(ring: &Arc<PolyRing<F>>, terms: BTreeMap<Monomial, F::Elem>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }
}

/// Exact arithmetic on two polynomials of the same ring.
pub fn poly_arith<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    op: ArithOp,
) -> Result<Polynomial<F>> {
    f.arith(g, op)
}

/// `a * b` as a [`Polynomial`] in the ring of `f`.
pub fn scalar_mul<F: Field>(f: &Polynomial<F>, c: &F::Elem) -> Polynomial<F> {
    f.scale(c)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics if the operands belong to different rings; use
            /// [`poly_arith`] for a checked variant.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                assert!(same_ring(&self.ring, &rhs.ring), "polynomial ring mismatch");
                self.$inner(rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut coeff = field.format_elem(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{coeff}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Parses `x^2*y - 3/2*y + 1`-style expressions with parentheses.
pub fn parse_polynomial<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Polynomial<F>> {
    let mut p = Parser {
        ring,
        chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    chars: Vec<char>,
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, what: &str) -> AlgebraError {
        AlgebraError::InvalidArgument(format!("{what} at offset {} in polynomial", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' {
                acc.add_unchecked(&t)
            } else {
                acc.sub_unchecked(&t)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul_unchecked(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<F>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    1.into()
                };
                let c =
                    self.ring.field.from_ratio(&num, &den).ok_or_else(|| {
                        self.error("denominator vanishes in the coefficient field")
                    })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn parse(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Self> {
        parse_polynomial(ring, text)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    pub fn ring_xy() -> Arc<PolyRing<Rationals>> {
        PolyRing::new(Rationals, ["x", "y"])
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::grevlex();
        assert_eq!(
            o.compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            o.compare(&m(&[1, 0]), &m(&[1, 0])).unwrap(),
            Ordering::Equal
        );
        for o in [MonomialOrder::grevlex(), MonomialOrder::graded_lex()] {
            assert_eq!(o.compare(&m(&[3, 0]), &m(&[0, 4])).unwrap(), Ordering::Less);
        }
        assert!(o.compare(&m(&[1]), &m(&[1, 0])).is_err());
        // grevlex and graded lex differ in three variables
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 2, 1]);
        assert_eq!(MonomialOrder::graded_lex().cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::grevlex().cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::eliminating(&[2]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let prod = poly_arith(&(&x + &y), &(&x - &y), ArithOp::Mul).unwrap();
        assert_eq!(prod.to_string(), "x^2 - y^2");
        assert_eq!(&prod + &Polynomial::zero(&r), prod);

        let f2 = PolyRing::new(PrimeField::new(2).unwrap(), ["x", "y"]);
        let s = &Polynomial::var(&f2, 0) + &Polynomial::var(&f2, 1);
        assert_eq!((&s * &s).to_string(), "x^2 + y^2");

        let other = PolyRing::new(Rationals, ["u", "v"]);
        assert_eq!(
            poly_arith(&x, &Polynomial::var(&other, 0), ArithOp::Add),
            Err(AlgebraError::RingMismatch)
        );
    }

    #[test]
    fn graded_component_examples() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = &x.pow(2) + &y;
        assert_eq!(f.graded_component(1), y);
        assert!(f.graded_component(3).is_zero());
        let g = &x.pow(2) + &(&x * &y);
        assert_eq!(g.graded_component(2), g);
    }

    #[test]
    fn parse_round_trips_display() {
        let r = ring_xy();
        let f = Polynomial::parse(&r, "x^2*y - 3/2*y + 1").unwrap();
        assert_eq!(f.to_string(), "x^2*y - 3/2*y + 1");
        assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
        assert_eq!(
            Polynomial::parse(&r, "-(x+y)^2").unwrap().to_string(),
            "-x^2 - 2*x*y - y^2"
        );
        assert!(Polynomial::parse(&r, "x + z").is_err());
        assert!(Polynomial::parse(&r, "x +").is_err());
        let f7 = PolyRing::new(PrimeField::new(7).unwrap(), ["x"]);
        assert_eq!(Polynomial::parse(&f7, "1/2*x").unwrap().to_string(), "-3*x");
        assert!(Polynomial::parse(&f7, "1/7").is_err());
    }

    #[test]
    fn display_rational_coefficients() {
        let r = ring_xy();
        let half = Polynomial::constant(&r, crate::linalg::rational(-1, 2));
        let f = &(&half * &Polynomial::var(&r, 0)) + &Polynomial::one(&r);
        assert_eq!(f.to_string(), "-1/2*x + 1");
    }

    fn arb_poly(r: Arc<PolyRing<PrimeField>>) -> impl Strategy<Value = Polynomial<PrimeField>> {
        proptest::collection::vec(((0u32..5, 0u32..5, 0u32..5), 0u64..101), 0..8).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    &r,
                    ts.into_iter()
                        .map(|((a, b, c), k)| (Monomial::new(&[a, b, c]), k)),
                )
            },
        )
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 3).prop_map(|e| Monomial::new(&e))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn distributivity(
            (f, g, h) in {
                let r = PolyRing::new(PrimeField::new(101).unwrap(), ["x", "y", "z"]);
                (arb_poly(r.clone()), arb_poly(r.clone()), arb_poly(r))
            }
        ) {
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        }

        #[test]
        fn components_sum_back(
            f in arb_poly(PolyRing::new(PrimeField::new(101).unwrap(), ["x", "y", "z"]))
        ) {
            let mut acc = Polynomial::zero(f.ring());
            for d in 0..=20 {
                let c = f.graded_component(d);
                prop_assert!(c.is_homogeneous());
                acc = &acc + &c;
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn orders_are_total_and_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono(), kind in 0..3usize) {
            let o = match kind {
                0 => MonomialOrder::grevlex(),
                1 => MonomialOrder::lex(),
                _ => MonomialOrder::graded_lex().with_priority(vec![2, 0, 1]),
            };
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
            if o.cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
            }
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
