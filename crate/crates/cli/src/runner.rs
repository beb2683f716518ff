//! Executes a parsed script against the library and assembles the report.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};
use stdlab::error::AlgebraError;
use stdlab::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use stdlab::grading::{
    lowest_form_ideal, make_adic_filtration, Filtration, FiltrationModel, GradedAlgebra,
    GradedModel, LocalIdeal, LocalRing,
};
use stdlab::koszul::{
    classify_cycle, colon_condition, homology_dimension, truncated_strand_length,
    vanishing_propagation_check, CycleVerdict,
};
use stdlab::monoprime::{
    connected_in_codim_one, is_reduced_monomial, minimal_primes_squarefree, Connectivity,
};
use stdlab::poly::{PolyRing, Polynomial};
use stdlab::semigroup::{
    sg_construct, sg_marley_audit, sg_standardness, toric_presentation, NumericalSemigroup,
};
use stdlab::standardness::{
    check_n_standard, cross_validate, jpowers_length_audit, length_formula_audit, named_formula,
    random_linear_reduction, verify_minimal_reduction, AuditRow, GrMode, NamedFormula,
    StandardnessOptions, DEFAULT_REDUCTION_BOUND,
};

use crate::ast::*;
use crate::commands::{self, CommandSpec, ParamKind};
use crate::printer::{print_check, print_expectation, print_script};

pub const SCHEMA_VERSION: u64 = 1;
pub const TOOL_NAME: &str = "stdlab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Coefficient field for rings declared without one.
    pub field: FieldSpec,
    /// Truncation degree for tangent cones and filtration-graded models.
    pub degree_bound: u32,
    pub reduction_bound: usize,
    pub fail_fast: bool,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            field: FieldSpec::Prime(DEFAULT_PRIME),
            degree_bound: 8,
            reduction_bound: DEFAULT_REDUCTION_BOUND,
            fail_fast: false,
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Met,
    Failed,
    Error,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Met => "met",
            Status::Failed => "failed",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }
}

/// The outcome of a whole run.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub exit_code: i32,
}

type RunResult<T> = Result<T, String>;

fn alg(e: AlgebraError) -> String {
    e.to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FieldKind {
    Prime(u64),
    Rationals,
}

impl FieldKind {
    fn label(self) -> String {
        match self {
            FieldKind::Prime(p) => format!("F{p}"),
            FieldKind::Rationals => "QQ".into(),
        }
    }
}

#[derive(Clone, Debug)]
enum Binding {
    Field(FieldKind),
    Ring(FieldKind),
    Ideal {
        ring: String,
    },
    Filtration {
        ring: String,
    },
    Semigroup,
    Algebra {
        ring: String,
    },
    /// The declaration raised an error.
    Failed(String),
}

struct Scope<F: Field> {
    rings: HashMap<String, LocalRing<F>>,
    ideals: HashMap<String, LocalIdeal<F>>,
    filtrations: HashMap<String, Filtration<F>>,
    algebras: HashMap<String, GradedAlgebra<F>>,
}

impl<F: Field> Default for Scope<F> {
    fn default() -> Self {
        Scope {
            rings: HashMap::new(),
            ideals: HashMap::new(),
            filtrations: HashMap::new(),
            algebras: HashMap::new(),
        }
    }
}

struct Env {
    opts: RunOptions,
    bindings: HashMap<String, Binding>,
    semigroups: HashMap<String, NumericalSemigroup>,
    current_ring: Option<String>,
    generic_draws: u64,
}

struct Session {
    env: Env,
    prime: Scope<PrimeField>,
    rational: Scope<Rationals>,
}

/// Runs `$body` with `$env` and `$scope` bound to the scope of `$kind`.
macro_rules! by_field {
    ($session:expr, $kind:expr, |$env:ident, $scope:ident| $body:expr) => {
        match $kind {
            FieldKind::Prime(_) => {
                let $env = &mut $session.env;
                let $scope = &mut $session.prime;
                $body
            }
            FieldKind::Rationals => {
                let $env = &mut $session.env;
                let $scope = &mut $session.rational;
                $body
            }
        }
    };
}

impl Env {
    fn binding(&self, name: &str) -> RunResult<&Binding> {
        match self.bindings.get(name) {
            None => Err(format!("`{name}` is not declared")),
            Some(Binding::Failed(e)) => Err(format!("`{name}` failed to evaluate: {e}")),
            Some(b) => Ok(b),
        }
    }

    fn ring_kind(&self, ring: &str) -> RunResult<FieldKind> {
        match self.binding(ring)? {
            Binding::Ring(k) => Ok(*k),
            _ => Err(format!("`{ring}` is not a ring")),
        }
    }

    fn resolve_field(&self, spec: &Option<FieldSpec>) -> RunResult<FieldKind> {
        match spec.as_ref().unwrap_or(&self.opts.field) {
            FieldSpec::Prime(p) => {
                PrimeField::new(*p).map_err(alg)?;
                Ok(FieldKind::Prime(*p))
            }
            FieldSpec::Rationals => Ok(FieldKind::Rationals),
            FieldSpec::Named(n) => match self.binding(n)? {
                Binding::Field(k) => Ok(*k),
                _ => Err(format!("`{n}` is not a field")),
            },
        }
    }

    /// The ring an object lives in, if it is a ring-level object.
    fn ring_of(&self, name: &str) -> RunResult<Option<String>> {
        Ok(match self.binding(name)? {
            Binding::Ring(_) => Some(name.to_string()),
            Binding::Ideal { ring } | Binding::Filtration { ring } | Binding::Algebra { ring } => {
                Some(ring.clone())
            }
            _ => None,
        })
    }

    fn first_ring_in(&self, e: &IdealExpr) -> RunResult<Option<String>> {
        Ok(match e {
            IdealExpr::Name(n) => self.ring_of(n)?,
            IdealExpr::Generic(a, _) | IdealExpr::Power(a, _) => self.first_ring_in(a)?,
            IdealExpr::Sum(a, b)
            | IdealExpr::Product(a, b)
            | IdealExpr::Intersect(a, b)
            | IdealExpr::Quotient(a, b) => match self.first_ring_in(a)? {
                Some(r) => Some(r),
                None => self.first_ring_in(b)?,
            },
            IdealExpr::Gens(_) | IdealExpr::Maximal => None,
        })
    }

    fn context_ring(&self, exprs: &[&IdealExpr]) -> RunResult<String> {
        for e in exprs {
            if let Some(r) = self.first_ring_in(e)? {
                return Ok(r);
            }
        }
        self.current_ring
            .clone()
            .ok_or_else(|| "no ring has been declared".to_string())
    }

    fn next_seed(&mut self) -> u64 {
        let s = self.opts.seed.wrapping_add(self.generic_draws);
        self.generic_draws += 1;
        s
    }
}

trait FromKind: Sized {
    fn from_kind(kind: FieldKind) -> RunResult<Self>;
}

impl FromKind for PrimeField {
    fn from_kind(kind: FieldKind) -> RunResult<Self> {
        match kind {
            FieldKind::Prime(p) => PrimeField::new(p).map_err(alg),
            FieldKind::Rationals => Err("expected a prime field".into()),
        }
    }
}

impl FromKind for Rationals {
    fn from_kind(kind: FieldKind) -> RunResult<Self> {
        match kind {
            FieldKind::Rationals => Ok(Rationals),
            FieldKind::Prime(_) => Err("expected the rationals".into()),
        }
    }
}

fn eval_poly<F: Field>(ring: &Arc<PolyRing<F>>, p: &PolyExpr) -> RunResult<Polynomial<F>> {
    Ok(match p {
        PolyExpr::Num(n, d) => {
            let text = match d {
                Some(d) => format!("{n}/{d}"),
                None => n.clone(),
            };
            Polynomial::parse(ring, &text).map_err(alg)?
        }
        PolyExpr::Var(v) => match ring.var_index(v) {
            Some(i) => Polynomial::var(ring, i),
            None => {
                return Err(format!(
                    "unknown variable `{v}` (the ring has {})",
                    ring.var_names().join(", ")
                ))
            }
        },
        PolyExpr::Neg(a) => eval_poly(ring, a)?.neg(),
        PolyExpr::Add(a, b) => &eval_poly(ring, a)? + &eval_poly(ring, b)?,
        PolyExpr::Sub(a, b) => &eval_poly(ring, a)? - &eval_poly(ring, b)?,
        PolyExpr::Mul(a, b) => &eval_poly(ring, a)? * &eval_poly(ring, b)?,
        PolyExpr::Pow(a, e) => eval_poly(ring, a)?.pow(*e),
    })
}

fn eval_polys<F: Field>(ring: &Arc<PolyRing<F>>, ps: &[PolyExpr]) -> RunResult<Vec<Polynomial<F>>> {
    ps.iter().map(|p| eval_poly(ring, p)).collect()
}

impl<F: Field> Scope<F> {
    fn ring(&self, name: &str) -> RunResult<&LocalRing<F>> {
        self.rings
            .get(name)
            .ok_or_else(|| format!("`{name}` is not a ring over this field"))
    }

    fn ideal(&self, env: &mut Env, ring_name: &str, e: &IdealExpr) -> RunResult<LocalIdeal<F>> {
        let ring = self.ring(ring_name)?;
        let bin = |a: &IdealExpr, b: &IdealExpr, env: &mut Env| -> RunResult<_> {
            Ok((
                self.ideal(env, ring_name, a)?,
                self.ideal(env, ring_name, b)?,
            ))
        };
        match e {
            IdealExpr::Gens(ps) => ring.ideal(eval_polys(ring.ring(), ps)?).map_err(alg),
            IdealExpr::Name(n) => {
                match env.binding(n)? {
                    Binding::Ideal { ring: r } if r == ring_name => {}
                    Binding::Ideal { ring: r } => {
                        return Err(format!(
                            "ideal `{n}` belongs to ring `{r}`, not `{ring_name}`"
                        ))
                    }
                    _ => return Err(format!("`{n}` is not an ideal")),
                }
                Ok(self.ideals[n].clone())
            }
            IdealExpr::Maximal => Ok(ring.maximal()),
            IdealExpr::Generic(a, seed) => {
                let base = self.ideal(env, ring_name, a)?;
                let seed = match seed {
                    Some(s) => *s,
                    None => env.next_seed(),
                };
                random_linear_reduction(ring, &base, seed).map_err(alg)
            }
            IdealExpr::Sum(a, b) => {
                let (a, b) = bin(a, b, env)?;
                ring.sum(&a, &b).map_err(alg)
            }
            IdealExpr::Product(a, b) => {
                let (a, b) = bin(a, b, env)?;
                ring.product(&a, &b).map_err(alg)
            }
            IdealExpr::Intersect(a, b) => {
                let (a, b) = bin(a, b, env)?;
                ring.intersect(&a, &b).map_err(alg)
            }
            IdealExpr::Quotient(a, b) => {
                let (a, b) = bin(a, b, env)?;
                ring.quotient_ideal(&a, &b).map_err(alg)
            }
            IdealExpr::Power(a, k) => {
                let a = self.ideal(env, ring_name, a)?;
                ring.power(&a, *k).map_err(alg)
            }
        }
    }

    /// A declared filtration, or the adic filtration of an ideal expression.
    fn filtration(
        &self,
        env: &mut Env,
        ring_name: &str,
        e: &IdealExpr,
    ) -> RunResult<Filtration<F>> {
        if let IdealExpr::Name(n) = e {
            if let Binding::Filtration { ring } = env.binding(n)? {
                if ring != ring_name {
                    return Err(format!("filtration `{n}` belongs to ring `{ring}`"));
                }
                return Ok(self.filtrations[n].clone());
            }
        }
        let base = self.ideal(env, ring_name, e)?;
        make_adic_filtration(self.ring(ring_name)?, &base, 1).map_err(alg)
    }

    /// A graded ring named by an algebra or by a ring with homogeneous
    /// relations.
    fn algebra(&self, env: &Env, name: &str) -> RunResult<GradedAlgebra<F>> {
        match env.binding(name)? {
            Binding::Algebra { .. } => Ok(self.algebras[name].clone()),
            Binding::Ring(_) => {
                GradedAlgebra::new(self.ring(name)?.relations().clone()).map_err(alg)
            }
            _ => Err(format!("`{name}` is not a graded algebra or ring")),
        }
    }
}

/// Named and positional arguments of a check, keyed by parameter name.
struct Args<'a> {
    values: HashMap<&'static str, &'a ArgValue>,
}

impl<'a> Args<'a> {
    fn new(spec: &'static CommandSpec, check: &'a Check) -> Self {
        let mut values = HashMap::new();
        for (slot, arg) in check.args.iter().enumerate() {
            let param = match &arg.name {
                Some(n) => spec.params.iter().find(|p| p.name == n),
                None => spec.params.get(slot),
            };
            if let Some(p) = param {
                values.insert(p.name, &arg.value);
            }
        }
        Args { values }
    }

    fn get(&self, name: &str) -> Option<&'a ArgValue> {
        self.values.get(name).copied()
    }

    fn expr(&self, name: &str) -> RunResult<&'a IdealExpr> {
        match self.get(name) {
            Some(ArgValue::Expr(e)) => Ok(e),
            Some(_) => Err(format!("argument `{name}` must be an expression")),
            None => Err(format!("missing argument `{name}`")),
        }
    }

    fn opt_expr(&self, name: &str) -> Option<&'a IdealExpr> {
        match self.get(name) {
            Some(ArgValue::Expr(e)) => Some(e),
            _ => None,
        }
    }

    fn int(&self, name: &str) -> RunResult<u64> {
        match self.get(name) {
            Some(ArgValue::Int(n)) => Ok(*n),
            Some(_) => Err(format!("argument `{name}` must be an integer")),
            None => Err(format!("missing argument `{name}`")),
        }
    }

    fn word(&self, name: &str) -> Option<&'a str> {
        match self.get(name) {
            Some(ArgValue::Expr(IdealExpr::Name(w))) => Some(w),
            _ => None,
        }
    }

    fn flag(&self, name: &str) -> bool {
        self.word(name) == Some("true")
    }

    fn name(&self, name: &str) -> RunResult<&'a str> {
        match self.expr(name)? {
            IdealExpr::Name(n) => Ok(n),
            _ => Err(format!("argument `{name}` must name a declared object")),
        }
    }

    fn forms(&self, name: &str) -> RunResult<&'a [PolyExpr]> {
        match self.expr(name)? {
            IdealExpr::Gens(ps) => Ok(ps),
            _ => Err(format!("argument `{name}` must be a list of polynomials")),
        }
    }
}

/// The verdict word and result record of one check.
struct Outcome {
    verdict: Option<&'static str>,
    result: Map<String, Value>,
}

impl Outcome {
    fn new(verdict: Option<&'static str>) -> Self {
        Outcome {
            verdict,
            result: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.result.insert(key.to_string(), value.into());
        self
    }
}

fn verdict(ok: bool, yes: &'static str, no: &'static str) -> Option<&'static str> {
    Some(if ok { yes } else { no })
}

fn usize_arg(args: &Args, name: &str) -> RunResult<usize> {
    usize::try_from(args.int(name)?).map_err(|_| format!("argument `{name}` is too large"))
}

fn audit_outcome(rows: &[AuditRow]) -> Outcome {
    let first = rows.iter().find(|r| !r.matches()).map(|r| r.k);
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"k": r.k, "lhs": r.lhs, "rhs": r.rhs, "matches": r.matches()}))
        .collect();
    Outcome::new(verdict(first.is_none(), "match", "mismatch"))
        .with("rows", rows)
        .with("first_failure", first)
}

fn graded_model<'a, F: Field>(
    scope: &'a Scope<F>,
    env: &Env,
    name: &str,
    holder: &'a mut Option<GradedAlgebra<F>>,
    filtration_holder: &'a mut Option<FiltrationModel<'a, F>>,
) -> RunResult<&'a dyn GradedModel<F>> {
    if let Binding::Filtration { .. } = env.binding(name)? {
        let f = &scope.filtrations[name];
        *filtration_holder = Some(FiltrationModel::new(f, env.opts.degree_bound).map_err(alg)?);
        return Ok(filtration_holder.as_ref().unwrap());
    }
    *holder = Some(scope.algebra(env, name)?);
    Ok(holder.as_ref().unwrap())
}

fn run_graded<F: Field>(
    scope: &Scope<F>,
    env: &Env,
    command: &str,
    args: &Args,
) -> RunResult<Outcome> {
    let g_name = args.name("G")?;
    let mut holder = None;
    let mut fholder = None;
    let model = graded_model(scope, env, g_name, &mut holder, &mut fholder)?;
    let ring = model.ring().clone();
    let forms = eval_polys(&ring, args.forms("forms")?)?;
    let fmt = |p: &Polynomial<F>| p.to_string();
    Ok(match command {
        "koszul" => {
            let i = usize_arg(args, "i")?;
            let j = args.int("j")? as i64;
            let dim = homology_dimension(model, &forms, i, j).map_err(alg)?;
            Outcome::new(verdict(dim == 0, "zero", "nonzero"))
                .with("dimension", dim)
                .with("i", i)
                .with("j", j)
        }
        "cycle" => {
            let vector = eval_polys(&ring, args.forms("vector")?)?;
            match classify_cycle(model, &forms, &vector).map_err(alg)? {
                CycleVerdict::NotACycle => Outcome::new(Some("not_cycle")),
                CycleVerdict::NonzeroClass => Outcome::new(Some("nonzero")),
                CycleVerdict::Boundary(cert) => {
                    let degree = vector
                        .iter()
                        .find(|v| !v.is_zero())
                        .map(|v| model.degree_of(v))
                        .transpose()
                        .map_err(alg)?
                        .unwrap_or(0);
                    let verified = cert.verify(model, &forms, &vector, degree).map_err(alg)?;
                    let rows: Vec<Value> = cert
                        .entries
                        .iter()
                        .map(|row| Value::from(row.iter().map(fmt).collect::<Vec<_>>()))
                        .collect();
                    Outcome::new(Some("boundary"))
                        .with("certificate", rows)
                        .with("certificate_verified", verified)
                }
            }
        }
        "colon" => {
            let n = u32::try_from(args.int("n")?).map_err(|_| "n is too large".to_string())?;
            let report = colon_condition(model, &forms, n).map_err(alg)?;
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "k": e.k,
                        "holds": e.holds,
                        "failing_degree": e.failing_degree,
                        "witness": e.witness.as_ref().map(fmt),
                    })
                })
                .collect();
            let first = report.entries.iter().find(|e| !e.holds).map(|e| e.k);
            Outcome::new(verdict(report.all_hold(), "pass", "fail"))
                .with("entries", entries)
                .with("first_failure", first)
        }
        "propagation" => {
            let holds = vanishing_propagation_check(
                model,
                &forms,
                usize_arg(args, "i")?,
                args.int("j")? as i64,
                usize_arg(args, "n")?,
            )
            .map_err(alg)?;
            Outcome::new(verdict(holds, "holds", "violated")).with("holds", holds)
        }
        "strand" => {
            let s = truncated_strand_length(model, &forms, usize_arg(args, "k")?).map_err(alg)?;
            let ok = s.h0_length as i64 == s.alternating_sum;
            Outcome::new(verdict(ok, "match", "mismatch"))
                .with("h0_length", s.h0_length)
                .with("alternating_sum", s.alternating_sum)
                .with("homology_above_vanishes", s.homology_above_vanishes)
        }
        _ => unreachable!("dispatched on graded commands"),
    })
}

fn run_ring<F: Field>(
    scope: &Scope<F>,
    env: &mut Env,
    ring_name: &str,
    command: &str,
    args: &Args,
) -> RunResult<Outcome> {
    let local = scope.ring(ring_name)?.clone();
    let fmt = |p: &Polynomial<F>| p.to_string();
    let std_opts = |force: bool, env: &Env| StandardnessOptions {
        reduction_bound: env.opts.reduction_bound,
        force,
    };
    Ok(match command {
        "reduction" => {
            let f = scope.filtration(env, ring_name, args.expr("I")?)?;
            let j = scope.ideal(env, ring_name, args.expr("J")?)?;
            let bound = match args.get("bound") {
                Some(_) => usize_arg(args, "bound")?,
                None => env.opts.reduction_bound,
            };
            match verify_minimal_reduction(&f, &j, bound) {
                Ok(v) => {
                    let word = if v.is_minimal() {
                        "minimal"
                    } else if v.is_reduction() {
                        "reduction"
                    } else {
                        "not_reduction"
                    };
                    Outcome::new(Some(word))
                        .with("contained", v.contained)
                        .with("reduction_number", v.reduction_number)
                        .with("bound", v.bound)
                        .with("generators", v.generators)
                        .with("dimension", v.dimension)
                }
                Err(AlgebraError::NotContained { witness }) => Outcome::new(Some("not_reduction"))
                    .with("contained", false)
                    .with("witness", witness),
                Err(e) => return Err(alg(e)),
            }
        }
        "standardness" => {
            let f = scope.filtration(env, ring_name, args.expr("I")?)?;
            let j = scope.ideal(env, ring_name, args.expr("J")?)?;
            let n = usize_arg(args, "n")?;
            let opts = std_opts(args.flag("force"), env);
            let report = check_n_standard(&f, &j, n, &opts).map_err(alg)?;
            let levels: Vec<Value> = report
                .levels
                .iter()
                .map(
                    |l| json!({"k": l.k, "equal": l.equal, "witness": l.witness.as_ref().map(fmt)}),
                )
                .collect();
            Outcome::new(verdict(report.is_standard(), "pass", "fail"))
                .with("n", n)
                .with("levels", levels)
                .with("first_failure", report.first_failure())
                .with("witness", report.witness().map(fmt))
                .with("forced", report.forced)
        }
        "length" => {
            let a = scope.ideal(env, ring_name, args.expr("A")?)?;
            let b = scope.ideal(env, ring_name, args.expr("B")?)?;
            Outcome::new(None).with("length", local.length_quotient(&a, &b).map_err(alg)?)
        }
        "colength" => {
            let a = scope.ideal(env, ring_name, args.expr("A")?)?;
            Outcome::new(None).with("length", local.length(&a).map_err(alg)?)
        }
        "length_audit" | "jpowers_audit" => {
            let f = scope.filtration(env, ring_name, args.expr("I")?)?;
            let j = scope.ideal(env, ring_name, args.expr("J")?)?;
            let n = usize_arg(args, "n")?;
            let rows = if command == "length_audit" {
                length_formula_audit(&f, &j, n)
            } else {
                jpowers_length_audit(&f, &j, n)
            }
            .map_err(alg)?;
            audit_outcome(&rows)
        }
        "formula" => {
            let j = scope.ideal(env, ring_name, args.expr("J")?)?;
            let which = match args.word("which") {
                Some("puthenpurakal3") => NamedFormula::Puthenpurakal3,
                Some("invariance4") => NamedFormula::Invariance4,
                _ => {
                    let i = args
                        .opt_expr("I")
                        .ok_or("`integrally_closed3` needs the ideal `I`")?;
                    NamedFormula::IntegrallyClosed3(scope.ideal(env, ring_name, i)?)
                }
            };
            let row = named_formula(&local, &j, &which).map_err(alg)?;
            Outcome::new(verdict(row.matches(), "match", "mismatch"))
                .with("formula", which.name())
                .with("k", row.k)
                .with("lhs", row.lhs)
                .with("rhs", row.rhs)
        }
        "cross_validate" => {
            let f = scope.filtration(env, ring_name, args.expr("I")?)?;
            let j = scope.ideal(env, ring_name, args.expr("J")?)?;
            let n = usize_arg(args, "n")?;
            let mode = match args.word("mode").unwrap_or("filtration") {
                "filtration" => GrMode::Filtration,
                "lowest" => GrMode::LowestForm,
                _ => {
                    let g = args
                        .opt_expr("G")
                        .ok_or("presentation mode needs the graded ring `G`")?;
                    let IdealExpr::Name(g) = g else {
                        return Err("argument `G` must name a declared object".into());
                    };
                    let algebra = scope.algebra(env, g)?;
                    let forms = eval_polys(algebra.ring(), args.forms("forms")?)?;
                    GrMode::Presentation { algebra, forms }
                }
            };
            let opts = std_opts(args.flag("force"), env);
            let cv = cross_validate(&f, &j, n, &mode, &opts).map_err(alg)?;
            Outcome::new(verdict(cv.agree(), "agree", "disagree"))
                .with("n", cv.n)
                .with("ideal_standard", cv.ideal_standard)
                .with("first_failure", cv.ideal_failure)
                .with("koszul_vanishes", cv.koszul_vanishes)
                .with(
                    "koszul_failure",
                    cv.koszul_failure.map(|(k, j)| json!({"k": k, "j": j})),
                )
                .with("cohen_macaulay", cv.cohen_macaulay)
        }
        "primes" | "reduced" | "connectivity" => {
            let i = scope.ideal(env, ring_name, args.expr("I")?)?;
            let ideal = i.ideal();
            match command {
                "primes" => {
                    let primes = minimal_primes_squarefree(ideal).map_err(alg)?;
                    let list: Vec<String> = primes
                        .primes
                        .iter()
                        .map(|p| primes.format_prime(p))
                        .collect();
                    Outcome::new(None)
                        .with("count", list.len())
                        .with("primes", list)
                        .with("dimension", primes.dimension())
                        .with("equidimensional", primes.is_equidimensional())
                }
                "reduced" => {
                    let reduced = is_reduced_monomial(ideal).map_err(alg)?;
                    Outcome::new(verdict(reduced, "reduced", "not_reduced"))
                        .with("reduced", reduced)
                }
                _ => {
                    let c = if args.flag("domain") {
                        Connectivity::declared_domain(local.ring().var_names().to_vec())
                    } else {
                        connected_in_codim_one(ideal).map_err(alg)?
                    };
                    let primes: Vec<String> = c
                        .primes
                        .primes
                        .iter()
                        .map(|p| c.primes.format_prime(p))
                        .collect();
                    let edges: Vec<Value> = c
                        .edges
                        .iter()
                        .map(|&(a, b, h)| json!({"a": a, "b": b, "height": h}))
                        .collect();
                    Outcome::new(verdict(c.connected, "connected", "disconnected"))
                        .with("connected", c.connected)
                        .with("primes", primes)
                        .with("edges", edges)
                        .with("witness", c.witness_names().map(|(a, b)| vec![a, b]))
                        .with("equidimensional", c.equidimensional)
                        .with("declared_domain", c.declared_domain)
                }
            }
        }
        _ => unreachable!("dispatched on ring commands"),
    })
}

fn run_semigroup(s: &NumericalSemigroup, command: &str, args: &Args) -> RunResult<Outcome> {
    let j = args.int("J")?;
    Ok(match command {
        "standardness" => {
            let n = usize_arg(args, "n")?;
            let r = sg_standardness(s, j, n).map_err(alg)?;
            let levels: Vec<Value> = r
                .levels
                .iter()
                .map(|l| {
                    json!({"k": l.k, "equal": l.equal, "witness": l.witness.map(|w| format!("t^{w}"))})
                })
                .collect();
            let witness = r.levels.iter().find_map(|l| l.witness);
            Outcome::new(verdict(r.is_standard(), "pass", "fail"))
                .with("n", n)
                .with("levels", levels)
                .with("first_failure", r.first_failure())
                .with("witness", witness.map(|w| format!("t^{w}")))
                .with("witness_exponent", witness)
        }
        "marley" => {
            let Some(ArgValue::Range(a, b)) = args.get("k") else {
                return Err("argument `k` must be a range".into());
            };
            let rows = sg_marley_audit(s, j, *a as usize..=*b as usize).map_err(alg)?;
            audit_outcome(&rows)
        }
        _ => return Err(format!("`{command}` does not accept a semigroup")),
    })
}

fn declare_ring<F: Field + FromKind>(
    env: &Env,
    scope: &mut Scope<F>,
    name: &str,
    kind: FieldKind,
    r: &RingDecl,
) -> RunResult<()> {
    let field = F::from_kind(kind)?;
    let local = match r {
        RingDecl::Poly { vars, .. } => {
            LocalRing::polynomial(&PolyRing::new(field, vars.iter().map(String::as_str)))
        }
        RingDecl::Quotient {
            vars,
            relations,
            cm,
            ..
        } => {
            let ring = PolyRing::new(field, vars.iter().map(String::as_str));
            let rels = eval_polys(&ring, relations)?;
            LocalRing::quotient(&ring, rels, *cm).map_err(alg)?
        }
        RingDecl::Toric { semigroup, .. } => {
            let s = env
                .semigroups
                .get(semigroup)
                .ok_or_else(|| format!("`{semigroup}` is not a semigroup"))?;
            toric_presentation(s, field).map_err(alg)?.ring
        }
    };
    scope.rings.insert(name.to_string(), local);
    Ok(())
}

fn declare_filtration<F: Field>(
    env: &mut Env,
    scope: &mut Scope<F>,
    ring: &str,
    fd: &FiltrationDecl,
) -> RunResult<Filtration<F>> {
    match fd {
        FiltrationDecl::Adic(b) => scope.filtration(env, ring, b),
        FiltrationDecl::Ladder {
            base,
            levels,
            shift,
        } => {
            let local = scope.ring(ring)?.clone();
            let base = scope.ideal(env, ring, base)?;
            let levels = levels
                .iter()
                .map(|l| scope.ideal(env, ring, l))
                .collect::<RunResult<Vec<_>>>()?;
            let window = levels.len();
            let f = Filtration::new(&local, base, levels, window, shift.map(|s| s as usize))
                .map_err(alg)?;
            let verdict = f.validate_admissible().map_err(alg)?;
            if let Some(first) = verdict.violations.first() {
                return Err(format!("filtration is not admissible: {first:?}"));
            }
            Ok(f)
        }
    }
}

/// Declared-name expressions among the object-valued arguments.
fn object_args<'a>(spec: &CommandSpec, args: &Args<'a>) -> Vec<&'a IdealExpr> {
    spec.params
        .iter()
        .filter(|p| p.kind == ParamKind::Object)
        .filter_map(|p| args.opt_expr(p.name))
        .collect()
}

fn run_for_field<F: Field>(
    env: &mut Env,
    scope: &Scope<F>,
    ring: &str,
    spec: &CommandSpec,
    args: &Args,
) -> RunResult<Outcome> {
    match spec.name {
        "koszul" | "cycle" | "colon" | "propagation" | "strand" => {
            run_graded(scope, env, spec.name, args)
        }
        _ => run_ring(scope, env, ring, spec.name, args),
    }
}

impl Session {
    fn new(opts: RunOptions) -> Self {
        Session {
            env: Env {
                opts,
                bindings: HashMap::new(),
                semigroups: HashMap::new(),
                current_ring: None,
                generic_draws: 0,
            },
            prime: Scope::default(),
            rational: Scope::default(),
        }
    }

    fn declare(&mut self, name: &str, decl: &Decl) -> RunResult<Binding> {
        match decl {
            Decl::Field(spec) => Ok(Binding::Field(self.env.resolve_field(&Some(spec.clone()))?)),
            Decl::Semigroup(gens) => {
                let s = sg_construct(gens).map_err(alg)?;
                self.env.semigroups.insert(name.to_string(), s);
                Ok(Binding::Semigroup)
            }
            Decl::Ring(r) => {
                let (RingDecl::Poly { field, .. }
                | RingDecl::Quotient { field, .. }
                | RingDecl::Toric { field, .. }) = r;
                let kind = self.env.resolve_field(field)?;
                by_field!(self, kind, |env, scope| declare_ring(
                    env, scope, name, kind, r
                ))?;
                self.env.current_ring = Some(name.to_string());
                Ok(Binding::Ring(kind))
            }
            Decl::Ideal(e) => {
                let ring = self.env.context_ring(&[e])?;
                let kind = self.env.ring_kind(&ring)?;
                by_field!(self, kind, |env, scope| {
                    let i = scope.ideal(env, &ring, e)?;
                    scope.ideals.insert(name.to_string(), i);
                });
                Ok(Binding::Ideal { ring })
            }
            Decl::Filtration(fd) => {
                let (FiltrationDecl::Adic(base) | FiltrationDecl::Ladder { base, .. }) = fd;
                let ring = self.env.context_ring(&[base])?;
                let kind = self.env.ring_kind(&ring)?;
                by_field!(self, kind, |env, scope| {
                    let f = declare_filtration(env, scope, &ring, fd)?;
                    scope.filtrations.insert(name.to_string(), f);
                });
                Ok(Binding::Filtration { ring })
            }
            Decl::Algebra(a) => {
                let (AlgebraDecl::Graded(ring) | AlgebraDecl::Lowest(ring)) = a;
                let kind = self.env.ring_kind(ring)?;
                let bound = self.env.opts.degree_bound;
                by_field!(self, kind, |env, scope| {
                    let g = match a {
                        AlgebraDecl::Lowest(_) => {
                            lowest_form_ideal(scope.ring(ring)?.relations(), bound).map_err(alg)?
                        }
                        AlgebraDecl::Graded(_) => scope.algebra(env, ring)?,
                    };
                    scope.algebras.insert(name.to_string(), g);
                });
                Ok(Binding::Algebra { ring: ring.clone() })
            }
        }
    }

    fn check(&mut self, check: &Check) -> RunResult<Outcome> {
        let spec = commands::lookup(&check.command)
            .ok_or_else(|| format!("unknown command `{}`", check.command))?;
        let args = Args::new(spec, check);
        let objects = object_args(spec, &args);
        if let Some(IdealExpr::Name(first)) = objects.first() {
            if let Binding::Semigroup = self.env.binding(first)? {
                return run_semigroup(&self.env.semigroups[first.as_str()], spec.name, &args);
            }
        }
        if spec.name == "marley" {
            return Err("`marley` needs a semigroup".into());
        }
        let ring = self.env.context_ring(&objects)?;
        let kind = self.env.ring_kind(&ring)?;
        by_field!(self, kind, |env, scope| run_for_field(
            env, scope, &ring, spec, &args
        ))
    }
}

/// Integer view of a result field, for comparison clauses.
fn numeric(result: &Map<String, Value>, key: &str) -> RunResult<i64> {
    match result.get(key) {
        Some(Value::Number(n)) => n
            .as_i64()
            .ok_or_else(|| format!("result field `{key}` is not an integer")),
        Some(Value::Bool(b)) => Ok(*b as i64),
        Some(Value::Null) => Err(format!("result field `{key}` is empty")),
        Some(_) => Err(format!("result field `{key}` is not numeric")),
        None => Err(format!("result has no field `{key}`")),
    }
}

fn expectation_met(outcome: &Outcome, e: &Expectation) -> RunResult<bool> {
    match e {
        Expectation::Verdict { word, at_k } => {
            let mut met = outcome.verdict == Some(word.as_str());
            if let Some(k) = at_k {
                met &= outcome.result.get("first_failure").and_then(Value::as_u64) == Some(*k);
            }
            Ok(met)
        }
        Expectation::Compare { key, cmp, value } => {
            Ok(cmp.holds(numeric(&outcome.result, key)?, *value))
        }
    }
}

/// Executes `script` and assembles the report. Exit code 2 if any
/// declaration or command raised an error, else 1 if an expectation failed,
/// else 0.
pub fn run_session(script: &Script, opts: &RunOptions) -> Report {
    let mut session = Session::new(opts.clone());
    let mut declarations = Vec::new();
    let mut commands_out = Vec::new();
    let (mut met, mut failed, mut errors, mut skipped) = (0u64, 0u64, 0u64, 0u64);
    let mut stop = false;
    let started = Instant::now();
    for located in &script.statements {
        let line = located.pos.line;
        match &located.statement {
            Statement::Declare { name, decl } => {
                let clock = Instant::now();
                let outcome = if stop {
                    Err("skipped after an earlier failure".to_string())
                } else {
                    session.declare(name, decl)
                };
                let mut record = Map::new();
                record.insert("line".into(), line.into());
                record.insert("name".into(), name.as_str().into());
                record.insert("kind".into(), decl.keyword().into());
                match outcome {
                    Ok(binding) => {
                        if let Binding::Ring(k) = &binding {
                            record.insert("field".into(), k.label().into());
                        }
                        session.env.bindings.insert(name.clone(), binding);
                        record.insert("status".into(), "ok".into());
                    }
                    Err(e) => {
                        session
                            .env
                            .bindings
                            .insert(name.clone(), Binding::Failed(e.clone()));
                        if !stop {
                            errors += 1;
                            stop = opts.fail_fast;
                        }
                        record.insert("status".into(), "error".into());
                        record.insert("error".into(), e.into());
                    }
                }
                if opts.timing {
                    record.insert("elapsed_ms".into(), elapsed_ms(clock).into());
                }
                declarations.push(Value::Object(record));
            }
            Statement::Check(check) => {
                let clock = Instant::now();
                let mut record = Map::new();
                record.insert("line".into(), line.into());
                record.insert("command".into(), check.command.as_str().into());
                record.insert("source".into(), print_check(check).into());
                let status = if stop {
                    skipped += 1;
                    Status::Skipped
                } else {
                    let status = match session.check(check) {
                        Ok(outcome) => {
                            let mut clauses = Vec::new();
                            let mut all = true;
                            let mut error = None;
                            for e in &check.expect {
                                match expectation_met(&outcome, e) {
                                    Ok(m) => {
                                        all &= m;
                                        clauses.push(
                                            json!({"clause": print_expectation(e), "met": m}),
                                        );
                                    }
                                    Err(msg) => {
                                        error.get_or_insert(msg);
                                    }
                                }
                            }
                            record.insert("verdict".into(), outcome.verdict.into());
                            record.insert("result".into(), Value::Object(outcome.result));
                            record.insert("expectations".into(), clauses.into());
                            match error {
                                Some(msg) => {
                                    record.insert("error".into(), msg.into());
                                    Status::Error
                                }
                                None if all => Status::Met,
                                None => Status::Failed,
                            }
                        }
                        Err(e) => {
                            record.insert("error".into(), e.into());
                            Status::Error
                        }
                    };
                    match status {
                        Status::Met => met += 1,
                        Status::Failed => failed += 1,
                        _ => errors += 1,
                    }
                    stop = opts.fail_fast && status != Status::Met;
                    status
                };
                record.insert("status".into(), status.as_str().into());
                if opts.timing && status != Status::Skipped {
                    record.insert("elapsed_ms".into(), elapsed_ms(clock).into());
                }
                commands_out.push(Value::Object(record));
            }
        }
    }
    let exit_code = if errors > 0 {
        2
    } else if failed > 0 {
        1
    } else {
        0
    };
    let command_count = commands_out.len();
    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
        "seed": opts.seed,
        "settings": {
            "field": opts.field.to_string(),
            "degree_bound": opts.degree_bound,
            "reduction_bound": opts.reduction_bound,
            "fail_fast": opts.fail_fast,
        },
        "instance": print_script(script),
        "declarations": declarations,
        "commands": commands_out,
        "summary": {
            "commands": command_count,
            "met": met,
            "failed": failed,
            "errors": errors,
            "skipped": skipped,
        },
        "exit_code": exit_code,
    });
    if opts.timing {
        report["timing"] = json!({"total_ms": elapsed_ms(started)});
    }
    Report {
        json: report,
        exit_code,
    }
}

fn elapsed_ms(since: Instant) -> f64 {
    (since.elapsed().as_secs_f64() * 1e6).round() / 1e3
}
