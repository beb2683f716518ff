//! Canonical rendering of session scripts.

use std::collections::BTreeMap;

use crate::ast::*;
use crate::parser::{leading_comments, parse_session, ParseError};

pub fn print_poly(p: &PolyExpr) -> String {
    let mut out = String::new();
    poly_at(p, 1, &mut out);
    out
}

fn poly_level(p: &PolyExpr) -> u8 {
    match p {
        PolyExpr::Add(..) | PolyExpr::Sub(..) => 1,
        PolyExpr::Mul(..) => 2,
        PolyExpr::Neg(_) => 3,
        PolyExpr::Pow(..) => 4,
        PolyExpr::Num(..) | PolyExpr::Var(_) => 5,
    }
}

fn poly_at(p: &PolyExpr, min: u8, out: &mut String) {
    let paren = poly_level(p) < min;
    if paren {
        out.push('(');
    }
    match p {
        PolyExpr::Num(n, None) => out.push_str(n),
        PolyExpr::Num(n, Some(d)) => {
            out.push_str(n);
            out.push('/');
            out.push_str(d);
        }
        PolyExpr::Var(v) => out.push_str(v),
        PolyExpr::Neg(a) => {
            out.push('-');
            poly_at(a, 3, out);
        }
        PolyExpr::Add(a, b) | PolyExpr::Sub(a, b) => {
            poly_at(a, 1, out);
            out.push_str(if matches!(p, PolyExpr::Add(..)) {
                " + "
            } else {
                " - "
            });
            poly_at(b, 2, out);
        }
        PolyExpr::Mul(a, b) => {
            poly_at(a, 2, out);
            out.push('*');
            poly_at(b, 3, out);
        }
        PolyExpr::Pow(a, e) => {
            poly_at(a, 5, out);
            out.push_str(&format!("^{e}"));
        }
    }
    if paren {
        out.push(')');
    }
}

fn poly_list(ps: &[PolyExpr]) -> String {
    ps.iter().map(print_poly).collect::<Vec<_>>().join(", ")
}

pub fn print_ideal(e: &IdealExpr) -> String {
    let mut out = String::new();
    ideal_at(e, 1, &mut out);
    out
}

fn ideal_level(e: &IdealExpr) -> u8 {
    match e {
        IdealExpr::Quotient(..) => 1,
        IdealExpr::Sum(..) => 2,
        IdealExpr::Intersect(..) => 3,
        IdealExpr::Product(..) => 4,
        IdealExpr::Power(..) => 5,
        _ => 6,
    }
}

fn ideal_at(e: &IdealExpr, min: u8, out: &mut String) {
    let paren = ideal_level(e) < min;
    if paren {
        out.push('[');
    }
    let binary = |a: &IdealExpr, b: &IdealExpr, op: &str, level: u8, out: &mut String| {
        ideal_at(a, level, out);
        out.push_str(op);
        ideal_at(b, level + 1, out);
    };
    match e {
        IdealExpr::Gens(ps) => {
            out.push('(');
            out.push_str(&poly_list(ps));
            out.push(')');
        }
        IdealExpr::Name(n) => out.push_str(n),
        IdealExpr::Maximal => out.push_str("maximal"),
        IdealExpr::Generic(inner, seed) => {
            out.push_str("generic(");
            ideal_at(inner, 1, out);
            if let Some(s) = seed {
                out.push_str(&format!(", seed={s}"));
            }
            out.push(')');
        }
        IdealExpr::Quotient(a, b) => binary(a, b, " : ", 1, out),
        IdealExpr::Sum(a, b) => binary(a, b, " + ", 2, out),
        IdealExpr::Intersect(a, b) => binary(a, b, " & ", 3, out),
        IdealExpr::Product(a, b) => binary(a, b, "*", 4, out),
        IdealExpr::Power(a, k) => {
            ideal_at(a, 6, out);
            out.push_str(&format!("^{k}"));
        }
    }
    if paren {
        out.push(']');
    }
}

fn field_prefix(field: &Option<FieldSpec>) -> String {
    field.as_ref().map(|f| format!("{f}, ")).unwrap_or_default()
}

fn print_decl(decl: &Decl) -> String {
    match decl {
        Decl::Field(f) => f.to_string(),
        Decl::Ring(RingDecl::Poly { field, vars }) => {
            format!("poly({}[{}])", field_prefix(field), vars.join(", "))
        }
        Decl::Ring(RingDecl::Quotient {
            field,
            vars,
            relations,
            cm,
        }) => format!(
            "quotient({}[{}], [{}]{})",
            field_prefix(field),
            vars.join(", "),
            poly_list(relations),
            if *cm { ", cm=true" } else { "" }
        ),
        Decl::Ring(RingDecl::Toric { field, semigroup }) => {
            format!("toric({}{semigroup})", field_prefix(field))
        }
        Decl::Ideal(e) => print_ideal(e),
        Decl::Filtration(FiltrationDecl::Adic(e)) => format!("adic({})", print_ideal(e)),
        Decl::Filtration(FiltrationDecl::Ladder {
            base,
            levels,
            shift,
        }) => format!(
            "ladder({}, [{}]{})",
            print_ideal(base),
            levels
                .iter()
                .map(print_ideal)
                .collect::<Vec<_>>()
                .join(", "),
            shift.map(|s| format!(", shift={s}")).unwrap_or_default()
        ),
        Decl::Semigroup(gens) => format!(
            "<{}>",
            gens.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Decl::Algebra(AlgebraDecl::Graded(r)) => format!("graded({r})"),
        Decl::Algebra(AlgebraDecl::Lowest(r)) => format!("lowest({r})"),
    }
}

fn print_arg_value(v: &ArgValue) -> String {
    match v {
        ArgValue::Int(n) => n.to_string(),
        ArgValue::Range(a, b) => format!("{a}..{b}"),
        ArgValue::Expr(e) => print_ideal(e),
    }
}

pub fn print_expectation(e: &Expectation) -> String {
    match e {
        Expectation::Verdict { word, at_k: None } => word.clone(),
        Expectation::Verdict {
            word,
            at_k: Some(k),
        } => format!("{word} at k={k}"),
        Expectation::Compare { key, cmp, value } => format!("{key} {} {value}", cmp.symbol()),
    }
}

pub fn print_check(c: &Check) -> String {
    let args: Vec<String> = c
        .args
        .iter()
        .map(|a| match &a.name {
            Some(n) => format!("{n}={}", print_arg_value(&a.value)),
            None => print_arg_value(&a.value),
        })
        .collect();
    let mut s = format!("check {}({})", c.command, args.join(", "));
    if !c.expect.is_empty() {
        let clauses: Vec<String> = c.expect.iter().map(print_expectation).collect();
        s.push_str(" expect ");
        s.push_str(&clauses.join(", "));
    }
    s
}

pub fn print_statement(s: &Statement) -> String {
    match s {
        Statement::Declare { name, decl } => {
            format!("{} {name} = {};", decl.keyword(), print_decl(decl))
        }
        Statement::Check(c) => format!("{};", print_check(c)),
    }
}

/// One statement per line.
pub fn print_script(script: &Script) -> String {
    script
        .statements
        .iter()
        .map(|l| print_statement(&l.statement) + "\n")
        .collect()
}

/// Canonical form of `src`, keeping comment lines that precede a statement
/// and those at the end of the file.
pub fn format_source(src: &str) -> Result<String, ParseError> {
    let script = parse_session(src)?;
    let comments: BTreeMap<Pos, Vec<String>> = leading_comments(src).into_iter().collect();
    let mut out = String::new();
    for l in &script.statements {
        for c in comments.get(&l.pos).into_iter().flatten() {
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&print_statement(&l.statement));
        out.push('\n');
    }
    let tail = comments
        .iter()
        .filter(|(p, _)| script.statements.iter().all(|l| l.pos != **p))
        .flat_map(|(_, c)| c);
    for c in tail {
        out.push_str(c);
        out.push('\n');
    }
    Ok(out)
}
