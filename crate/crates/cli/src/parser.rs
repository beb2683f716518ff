//! Lexer and recursive-descent parser for session scripts.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::ast::*;
use crate::commands::{self, ParamKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// Tokens that would have been accepted at `pos`.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(s) => write!(f, "integer `{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: Pos,
    /// Comment lines between the previous token and this one.
    comments: Vec<String>,
}

const SYMBOLS: [&str; 19] = [
    "..", ">=", "<=", "(", ")", "[", "]", "<", ">", ",", ";", "=", "+", "-", "*", "^", "&", ":",
    "/",
];

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut comments = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            let start = i;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            comments.push(text.trim_end().to_string());
            col += i - start;
            continue;
        }
        let (tok, len) = if c.is_ascii_digit() {
            let len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
            (Tok::Int(chars[i..i + len].iter().collect()), len)
        } else if c.is_alphabetic() || c == '_' {
            let len = chars[i..]
                .iter()
                .take_while(|c| c.is_alphanumeric() || **c == '_')
                .count();
            (Tok::Ident(chars[i..i + len].iter().collect()), len)
        } else {
            let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => (Tok::Sym(s), s.len()),
                None => {
                    return Err(ParseError {
                        pos,
                        message: format!("unexpected character `{c}`"),
                        expected: Vec::new(),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            pos,
            comments: std::mem::take(&mut comments),
        });
        i += len;
        col += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column: col },
        comments,
    });
    Ok(out)
}

/// Kinds of declared names, used for use-before-declare checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Field,
    Ring,
    Ideal,
    Filtration,
    Semigroup,
    Algebra,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    /// Expected-token set accumulated at the current position.
    expected: BTreeSet<String>,
    names: HashMap<String, Kind>,
    has_ring: bool,
}

type PResult<T> = Result<T, ParseError>;

const DECL_KEYWORDS: [&str; 6] = [
    "field",
    "ring",
    "ideal",
    "filtration",
    "semigroup",
    "algebra",
];
const RESERVED: [&str; 3] = ["check", "maximal", "generic"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        self.expected.clear();
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: message.into(),
            expected: self.expected.iter().cloned().collect(),
        }
    }

    fn unexpected(&self) -> ParseError {
        self.error_here(format!("unexpected {}", self.peek()))
    }

    fn is_sym(&mut self, s: &'static str) -> bool {
        self.expected.insert(format!("`{s}`"));
        self.peek() == &Tok::Sym(s)
    }

    fn eat_sym(&mut self, s: &'static str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &'static str) -> PResult<Pos> {
        let pos = self.pos();
        if self.eat_sym(s) {
            Ok(pos)
        } else {
            Err(self.unexpected())
        }
    }

    fn is_word(&mut self, w: &str) -> bool {
        self.expected.insert(format!("`{w}`"));
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn ident(&mut self) -> PResult<String> {
        self.expected.insert("identifier".into());
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        self.expected.insert("integer".into());
        match self.peek().clone() {
            Tok::Int(s) => {
                let pos = self.pos();
                self.bump();
                s.parse().map_err(|_| ParseError {
                    pos,
                    message: format!("integer `{s}` is too large"),
                    expected: Vec::new(),
                })
            }
            _ => Err(self.unexpected()),
        }
    }

    fn small_int(&mut self) -> PResult<u32> {
        let pos = self.pos();
        let v = self.int()?;
        u32::try_from(v).map_err(|_| ParseError {
            pos,
            message: format!("exponent {v} is too large"),
            expected: Vec::new(),
        })
    }

    fn reference(&mut self, allowed: &[Kind]) -> PResult<String> {
        let pos = self.pos();
        let name = self.ident()?;
        self.check_declared(&name, pos, allowed)?;
        Ok(name)
    }

    fn check_declared(&self, name: &str, pos: Pos, allowed: &[Kind]) -> PResult<()> {
        match self.names.get(name) {
            None => Err(ParseError {
                pos,
                message: format!("`{name}` is used before it is declared"),
                expected: Vec::new(),
            }),
            Some(k) if !allowed.is_empty() && !allowed.contains(k) => Err(ParseError {
                pos,
                message: format!("`{name}` is a {k:?} declaration, not a {:?}", allowed[0])
                    .to_lowercase(),
                expected: Vec::new(),
            }),
            Some(_) => Ok(()),
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        loop {
            if self.peek() == &Tok::Eof {
                return Ok(Script { statements });
            }
            let pos = self.pos();
            let statement = self.statement()?;
            statements.push(Located { pos, statement });
        }
    }

    fn statement(&mut self) -> PResult<Statement> {
        if self.eat_word("check") {
            let check = self.check()?;
            self.expect_sym(";")?;
            return Ok(Statement::Check(check));
        }
        for kw in DECL_KEYWORDS {
            if self.eat_word(kw) {
                let name_pos = self.pos();
                let name = self.ident()?;
                if RESERVED.contains(&name.as_str()) || DECL_KEYWORDS.contains(&name.as_str()) {
                    return Err(ParseError {
                        pos: name_pos,
                        message: format!("`{name}` is reserved"),
                        expected: vec!["identifier".into()],
                    });
                }
                self.expect_sym("=")?;
                let decl = self.declaration(kw, name_pos)?;
                self.expect_sym(";")?;
                let kind = match decl {
                    Decl::Field(_) => Kind::Field,
                    Decl::Ring(_) => {
                        self.has_ring = true;
                        Kind::Ring
                    }
                    Decl::Ideal(_) => Kind::Ideal,
                    Decl::Filtration(_) => Kind::Filtration,
                    Decl::Semigroup(_) => Kind::Semigroup,
                    Decl::Algebra(_) => Kind::Algebra,
                };
                self.names.insert(name.clone(), kind);
                return Ok(Statement::Declare { name, decl });
            }
        }
        Err(self.unexpected())
    }

    fn declaration(&mut self, kw: &str, pos: Pos) -> PResult<Decl> {
        match kw {
            "field" => Ok(Decl::Field(self.field_spec()?)),
            "ring" => Ok(Decl::Ring(self.ring()?)),
            "ideal" => {
                if !self.has_ring {
                    return Err(ParseError {
                        pos,
                        message: "an ideal needs a ring declared before it".into(),
                        expected: Vec::new(),
                    });
                }
                Ok(Decl::Ideal(self.ideal_expr()?))
            }
            "filtration" => Ok(Decl::Filtration(self.filtration()?)),
            "semigroup" => {
                self.expect_sym("<")?;
                let mut gens = vec![self.int()?];
                while self.eat_sym(",") {
                    gens.push(self.int()?);
                }
                self.expect_sym(">")?;
                Ok(Decl::Semigroup(gens))
            }
            "algebra" => {
                let graded = if self.eat_word("graded") {
                    true
                } else if self.eat_word("lowest") {
                    false
                } else {
                    return Err(self.unexpected());
                };
                self.expect_sym("(")?;
                let ring = self.reference(&[Kind::Ring])?;
                self.expect_sym(")")?;
                Ok(Decl::Algebra(if graded {
                    AlgebraDecl::Graded(ring)
                } else {
                    AlgebraDecl::Lowest(ring)
                }))
            }
            _ => unreachable!("keyword list is fixed"),
        }
    }

    fn field_spec(&mut self) -> PResult<FieldSpec> {
        let pos = self.pos();
        self.expected.insert("field (`F<p>` or `QQ`)".into());
        let name = self.ident()?;
        Ok(parse_field_literal(&name).unwrap_or_else(|| FieldSpec::Named(name.clone()))).and_then(
            |f| match &f {
                FieldSpec::Named(n) => self.check_declared(n, pos, &[Kind::Field]).map(|_| f),
                _ => Ok(f),
            },
        )
    }

    fn optional_field(&mut self) -> PResult<Option<FieldSpec>> {
        if let Tok::Ident(_) = self.peek() {
            let f = self.field_spec()?;
            self.expect_sym(",")?;
            return Ok(Some(f));
        }
        Ok(None)
    }

    fn var_list(&mut self) -> PResult<Vec<String>> {
        self.expect_sym("[")?;
        let mut vars = Vec::new();
        if !self.is_sym("]") {
            vars.push(self.ident()?);
            while self.eat_sym(",") {
                vars.push(self.ident()?);
            }
        }
        self.expect_sym("]")?;
        Ok(vars)
    }

    fn ring(&mut self) -> PResult<RingDecl> {
        if self.eat_word("poly") {
            self.expect_sym("(")?;
            let field = self.optional_field()?;
            let vars = self.var_list()?;
            self.expect_sym(")")?;
            return Ok(RingDecl::Poly { field, vars });
        }
        if self.eat_word("quotient") {
            self.expect_sym("(")?;
            let field = self.optional_field()?;
            let vars = self.var_list()?;
            self.expect_sym(",")?;
            self.expect_sym("[")?;
            let mut relations = Vec::new();
            if !self.is_sym("]") {
                relations.push(self.poly()?);
                while self.eat_sym(",") {
                    relations.push(self.poly()?);
                }
            }
            self.expect_sym("]")?;
            let mut cm = false;
            if self.eat_sym(",") {
                self.expect_word("cm")?;
                self.expect_sym("=")?;
                cm = self.boolean()?;
            }
            self.expect_sym(")")?;
            return Ok(RingDecl::Quotient {
                field,
                vars,
                relations,
                cm,
            });
        }
        if self.eat_word("toric") {
            self.expect_sym("(")?;
            let pos = self.pos();
            let first = self.ident()?;
            let (field, semigroup) = if self.eat_sym(",") {
                let f = parse_field_literal(&first).unwrap_or(FieldSpec::Named(first.clone()));
                if let FieldSpec::Named(n) = &f {
                    self.check_declared(n, pos, &[Kind::Field])?;
                }
                (Some(f), self.reference(&[Kind::Semigroup])?)
            } else {
                self.check_declared(&first, pos, &[Kind::Semigroup])?;
                (None, first)
            };
            self.expect_sym(")")?;
            return Ok(RingDecl::Toric { field, semigroup });
        }
        Err(self.unexpected())
    }

    fn boolean(&mut self) -> PResult<bool> {
        if self.eat_word("true") {
            Ok(true)
        } else if self.eat_word("false") {
            Ok(false)
        } else {
            Err(self.unexpected())
        }
    }

    fn filtration(&mut self) -> PResult<FiltrationDecl> {
        if self.eat_word("adic") {
            self.expect_sym("(")?;
            let base = self.ideal_expr()?;
            self.expect_sym(")")?;
            return Ok(FiltrationDecl::Adic(base));
        }
        if self.eat_word("ladder") {
            self.expect_sym("(")?;
            let base = self.ideal_expr()?;
            self.expect_sym(",")?;
            self.expect_sym("[")?;
            let mut levels = vec![self.ideal_expr()?];
            while self.eat_sym(",") {
                levels.push(self.ideal_expr()?);
            }
            self.expect_sym("]")?;
            let mut shift = None;
            if self.eat_sym(",") {
                self.expect_word("shift")?;
                self.expect_sym("=")?;
                shift = Some(self.int()?);
            }
            self.expect_sym(")")?;
            return Ok(FiltrationDecl::Ladder {
                base,
                levels,
                shift,
            });
        }
        Err(self.unexpected())
    }

    fn ideal_expr(&mut self) -> PResult<IdealExpr> {
        let mut lhs = self.ideal_sum()?;
        while self.eat_sym(":") {
            lhs = IdealExpr::Quotient(Box::new(lhs), Box::new(self.ideal_sum()?));
        }
        Ok(lhs)
    }

    fn ideal_sum(&mut self) -> PResult<IdealExpr> {
        let mut lhs = self.ideal_meet()?;
        while self.eat_sym("+") {
            lhs = IdealExpr::Sum(Box::new(lhs), Box::new(self.ideal_meet()?));
        }
        Ok(lhs)
    }

    fn ideal_meet(&mut self) -> PResult<IdealExpr> {
        let mut lhs = self.ideal_product()?;
        while self.eat_sym("&") {
            lhs = IdealExpr::Intersect(Box::new(lhs), Box::new(self.ideal_product()?));
        }
        Ok(lhs)
    }

    fn ideal_product(&mut self) -> PResult<IdealExpr> {
        let mut lhs = self.ideal_power()?;
        while self.eat_sym("*") {
            lhs = IdealExpr::Product(Box::new(lhs), Box::new(self.ideal_power()?));
        }
        Ok(lhs)
    }

    fn ideal_power(&mut self) -> PResult<IdealExpr> {
        let base = self.ideal_atom()?;
        if self.eat_sym("^") {
            return Ok(IdealExpr::Power(Box::new(base), self.small_int()?));
        }
        Ok(base)
    }

    fn ideal_atom(&mut self) -> PResult<IdealExpr> {
        if self.eat_sym("(") {
            let gens = self.poly_list_tail()?;
            return Ok(IdealExpr::Gens(gens));
        }
        if self.eat_sym("[") {
            let inner = self.ideal_expr()?;
            self.expect_sym("]")?;
            return Ok(inner);
        }
        if self.eat_word("maximal") {
            return Ok(IdealExpr::Maximal);
        }
        if self.eat_word("generic") {
            self.expect_sym("(")?;
            let inner = self.ideal_expr()?;
            let mut seed = None;
            if self.eat_sym(",") {
                self.expect_word("seed")?;
                self.expect_sym("=")?;
                seed = Some(self.int()?);
            }
            self.expect_sym(")")?;
            return Ok(IdealExpr::Generic(Box::new(inner), seed));
        }
        let name = self.reference(&[Kind::Ideal])?;
        Ok(IdealExpr::Name(name))
    }

    /// Polynomials after an opening parenthesis, through the closing one.
    fn poly_list_tail(&mut self) -> PResult<Vec<PolyExpr>> {
        let mut out = Vec::new();
        if self.eat_sym(")") {
            return Ok(out);
        }
        out.push(self.poly()?);
        while self.eat_sym(",") {
            out.push(self.poly()?);
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    fn poly(&mut self) -> PResult<PolyExpr> {
        let mut lhs = self.poly_term()?;
        loop {
            if self.eat_sym("+") {
                lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.poly_term()?));
            } else if self.eat_sym("-") {
                lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.poly_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn poly_term(&mut self) -> PResult<PolyExpr> {
        let mut lhs = self.poly_unary()?;
        while self.eat_sym("*") {
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.poly_unary()?));
        }
        Ok(lhs)
    }

    fn poly_unary(&mut self) -> PResult<PolyExpr> {
        if self.eat_sym("-") {
            return Ok(PolyExpr::Neg(Box::new(self.poly_unary()?)));
        }
        let base = self.poly_atom()?;
        if self.eat_sym("^") {
            return Ok(PolyExpr::Pow(Box::new(base), self.small_int()?));
        }
        Ok(base)
    }

    fn poly_atom(&mut self) -> PResult<PolyExpr> {
        if self.eat_sym("(") {
            let inner = self.poly()?;
            self.expect_sym(")")?;
            return Ok(inner);
        }
        self.expected.insert("integer".into());
        self.expected.insert("identifier".into());
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.eat_sym("/") {
                    self.expected.insert("integer".into());
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.unexpected());
                    };
                    self.bump();
                    return Ok(PolyExpr::Num(n, Some(d)));
                }
                Ok(PolyExpr::Num(n, None))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(PolyExpr::Var(v))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn check(&mut self) -> PResult<Check> {
        let pos = self.pos();
        self.expected.insert("command name".into());
        let command = self.ident()?;
        let Some(spec) = commands::lookup(&command) else {
            let mut known: Vec<String> = commands::COMMANDS
                .iter()
                .map(|c| format!("`{}`", c.name))
                .collect();
            known.sort();
            return Err(ParseError {
                pos,
                message: format!("unknown command `{command}`"),
                expected: known,
            });
        };
        self.expect_sym("(")?;
        let mut args: Vec<Arg> = Vec::new();
        let mut filled = vec![false; spec.params.len()];
        let mut positional = 0usize;
        if !self.is_sym(")") {
            loop {
                let arg_pos = self.pos();
                let named = matches!(self.peek(), Tok::Ident(_)) && self.peek2() == &Tok::Sym("=");
                let slot = if named {
                    let name = self.ident()?;
                    self.bump();
                    let Some(slot) = spec.params.iter().position(|p| p.name == name) else {
                        return Err(ParseError {
                            pos: arg_pos,
                            message: format!("`{command}` has no parameter `{name}`"),
                            expected: spec
                                .params
                                .iter()
                                .map(|p| format!("`{}`", p.name))
                                .collect(),
                        });
                    };
                    slot
                } else {
                    let message = if args.iter().any(|a| a.name.is_some()) {
                        Some("positional argument after a named one".to_string())
                    } else if positional >= spec.params.len() {
                        Some(format!(
                            "too many arguments: `{command}` takes {}",
                            spec.params.len()
                        ))
                    } else {
                        None
                    };
                    if let Some(message) = message {
                        return Err(ParseError {
                            pos: arg_pos,
                            message,
                            expected: Vec::new(),
                        });
                    }
                    positional += 1;
                    positional - 1
                };
                if filled[slot] {
                    return Err(ParseError {
                        pos: arg_pos,
                        message: format!("parameter `{}` given twice", spec.params[slot].name),
                        expected: Vec::new(),
                    });
                }
                filled[slot] = true;
                let value = self.arg_value(spec.params[slot].kind)?;
                args.push(Arg {
                    name: named.then(|| spec.params[slot].name.to_string()),
                    value,
                });
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        let close = self.pos();
        self.expect_sym(")")?;
        if let Some(missing) = spec
            .params
            .iter()
            .zip(&filled)
            .find(|(p, f)| p.required && !**f)
        {
            return Err(ParseError {
                pos: close,
                message: format!(
                    "`{command}` is missing required parameter `{}`",
                    missing.0.name
                ),
                expected: Vec::new(),
            });
        }
        let mut expect = Vec::new();
        if self.eat_word("expect") {
            expect.push(self.expectation(spec)?);
            while self.eat_sym(",") {
                expect.push(self.expectation(spec)?);
            }
        }
        Ok(Check {
            command,
            args,
            expect,
        })
    }

    fn arg_value(&mut self, kind: ParamKind) -> PResult<ArgValue> {
        match kind {
            ParamKind::Int => Ok(ArgValue::Int(self.int()?)),
            ParamKind::Range => {
                let a = self.int()?;
                self.expect_sym("..")?;
                Ok(ArgValue::Range(a, self.int()?))
            }
            ParamKind::Forms => {
                self.expect_sym("(")?;
                Ok(ArgValue::Expr(IdealExpr::Gens(self.poly_list_tail()?)))
            }
            ParamKind::Word(words) => {
                for w in words {
                    self.expected.insert(format!("`{w}`"));
                }
                let pos = self.pos();
                let w = self.ident()?;
                if !words.contains(&w.as_str()) {
                    return Err(ParseError {
                        pos,
                        message: format!("`{w}` is not an accepted value"),
                        expected: words.iter().map(|w| format!("`{w}`")).collect(),
                    });
                }
                Ok(ArgValue::Expr(IdealExpr::Name(w)))
            }
            ParamKind::Object => {
                if let Tok::Int(_) = self.peek() {
                    return Ok(ArgValue::Int(self.int()?));
                }
                // a bare name may refer to any declared object
                if let (Tok::Ident(name), next) = (self.peek().clone(), self.peek2().clone()) {
                    let is_operand = matches!(next, Tok::Sym("*" | "^" | "+" | "&" | ":"));
                    if !is_operand && !RESERVED.contains(&name.as_str()) {
                        let pos = self.pos();
                        self.bump();
                        self.check_declared(&name, pos, &[])?;
                        return Ok(ArgValue::Expr(IdealExpr::Name(name)));
                    }
                }
                Ok(ArgValue::Expr(self.ideal_expr()?))
            }
        }
    }

    fn expectation(&mut self, spec: &commands::CommandSpec) -> PResult<Expectation> {
        let pos = self.pos();
        let word = self.ident()?;
        for (sym, cmp) in [
            (">=", Cmp::Ge),
            ("<=", Cmp::Le),
            ("=", Cmp::Eq),
            (">", Cmp::Gt),
            ("<", Cmp::Lt),
        ] {
            if self.eat_sym(sym) {
                let negative = self.eat_sym("-");
                let v = self.int()? as i64;
                return Ok(Expectation::Compare {
                    key: word,
                    cmp,
                    value: if negative { -v } else { v },
                });
            }
        }
        if !spec.verdicts.contains(&word.as_str()) {
            return Err(ParseError {
                pos,
                message: format!("`{word}` is not a verdict of `{}`", spec.name),
                expected: spec.verdicts.iter().map(|v| format!("`{v}`")).collect(),
            });
        }
        let mut at_k = None;
        if self.eat_word("at") {
            self.expect_word("k")?;
            self.expect_sym("=")?;
            at_k = Some(self.int()?);
        }
        Ok(Expectation::Verdict { word, at_k })
    }
}

/// `F<p>` or `QQ`.
pub fn parse_field_literal(s: &str) -> Option<FieldSpec> {
    if s == "QQ" {
        return Some(FieldSpec::Rationals);
    }
    let digits = s.strip_prefix('F')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().map(FieldSpec::Prime)
}

pub fn parse_session(src: &str) -> Result<Script, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        expected: BTreeSet::new(),
        names: HashMap::new(),
        has_ring: false,
    };
    p.script()
}

/// Comment lines preceding each statement, keyed by statement start.
pub fn leading_comments(src: &str) -> Vec<(Pos, Vec<String>)> {
    let Ok(toks) = lex(src) else {
        return Vec::new();
    };
    toks.into_iter()
        .filter(|t| !t.comments.is_empty())
        .map(|t| (t.pos, t.comments))
        .collect()
}
