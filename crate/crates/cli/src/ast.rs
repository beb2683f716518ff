//! Syntax tree of session scripts.

use std::fmt;

/// 1-based source position.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
    /// A previously declared `field`.
    Named(String),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Named(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    /// Decimal numerator and optional denominator.
    Num(String, Option<String>),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    Gens(Vec<PolyExpr>),
    Name(String),
    Maximal,
    /// Generic linear combinations of the generators (a candidate minimal
    /// reduction), optionally with an explicit seed.
    Generic(Box<IdealExpr>, Option<u64>),
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Product(Box<IdealExpr>, Box<IdealExpr>),
    Intersect(Box<IdealExpr>, Box<IdealExpr>),
    Quotient(Box<IdealExpr>, Box<IdealExpr>),
    Power(Box<IdealExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDecl {
    Poly {
        field: Option<FieldSpec>,
        vars: Vec<String>,
    },
    Quotient {
        field: Option<FieldSpec>,
        vars: Vec<String>,
        relations: Vec<PolyExpr>,
        cm: bool,
    },
    /// Presentation of a numerical semigroup ring.
    Toric {
        field: Option<FieldSpec>,
        semigroup: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationDecl {
    Adic(IdealExpr),
    Ladder {
        base: IdealExpr,
        levels: Vec<IdealExpr>,
        shift: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDecl {
    /// `k[x]/P` for a ring with homogeneous relations.
    Graded(String),
    /// Tangent cone of a ring.
    Lowest(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Field(FieldSpec),
    Ring(RingDecl),
    Ideal(IdealExpr),
    Filtration(FiltrationDecl),
    Semigroup(Vec<u64>),
    Algebra(AlgebraDecl),
}

impl Decl {
    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Field(_) => "field",
            Decl::Ring(_) => "ring",
            Decl::Ideal(_) => "ideal",
            Decl::Filtration(_) => "filtration",
            Decl::Semigroup(_) => "semigroup",
            Decl::Algebra(_) => "algebra",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgValue {
    Int(u64),
    Range(u64, u64),
    Expr(IdealExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: ArgValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ge,
    Le,
    Gt,
    Lt,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Lt => "<",
        }
    }

    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Cmp::Eq => lhs == rhs,
            Cmp::Ge => lhs >= rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Lt => lhs < rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// The command's verdict word, optionally with the first failing level.
    Verdict { word: String, at_k: Option<u64> },
    /// A numeric fact of the result.
    Compare { key: String, cmp: Cmp, value: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub command: String,
    pub args: Vec<Arg>,
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Declare { name: String, decl: Decl },
    Check(Check),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub pos: Pos,
    pub statement: Statement,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Located>,
}

impl Script {
    /// Statements without positions, for structural comparison.
    pub fn nodes(&self) -> Vec<&Statement> {
        self.statements.iter().map(|l| &l.statement).collect()
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }
}
