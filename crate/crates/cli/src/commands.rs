//! Signatures of the `check` commands.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// A declared object or an ideal expression.
    Object,
    Int,
    Range,
    /// A parenthesized list of polynomials.
    Forms,
    /// A bare identifier from a fixed vocabulary.
    Word(&'static [&'static str]),
}

#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub name: &'static str,
    pub kind: ParamKind,
    pub required: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CommandSpec {
    pub name: &'static str,
    pub params: &'static [Param],
    /// Verdict words an `expect` clause may name.
    pub verdicts: &'static [&'static str],
    pub summary: &'static str,
}

const fn req(name: &'static str, kind: ParamKind) -> Param {
    Param {
        name,
        kind,
        required: true,
    }
}

const fn opt(name: &'static str, kind: ParamKind) -> Param {
    Param {
        name,
        kind,
        required: false,
    }
}

const OBJ: ParamKind = ParamKind::Object;
const INT: ParamKind = ParamKind::Int;
const BOOL: ParamKind = ParamKind::Word(&["true", "false"]);

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "reduction",
        params: &[req("I", OBJ), req("J", OBJ), opt("bound", INT)],
        verdicts: &["minimal", "reduction", "not_reduction"],
        summary: "reduction number of J with respect to an ideal or filtration",
    },
    CommandSpec {
        name: "standardness",
        params: &[
            req("I", OBJ),
            req("J", OBJ),
            req("n", INT),
            opt("force", BOOL),
        ],
        verdicts: &["pass", "fail"],
        summary: "compares J ∩ I_k with J·I_{k-1} for k ≤ n",
    },
    CommandSpec {
        name: "length",
        params: &[req("A", OBJ), req("B", OBJ)],
        verdicts: &[],
        summary: "λ(A/B) for B ⊆ A",
    },
    CommandSpec {
        name: "colength",
        params: &[req("A", OBJ)],
        verdicts: &[],
        summary: "λ(R/A)",
    },
    CommandSpec {
        name: "length_audit",
        params: &[req("I", OBJ), req("J", OBJ), req("n", INT)],
        verdicts: &["match", "mismatch"],
        summary: "λ(I_{k+1}/J·I_k) against its alternating-sum formula",
    },
    CommandSpec {
        name: "jpowers_audit",
        params: &[req("I", OBJ), req("J", OBJ), req("n", INT)],
        verdicts: &["match", "mismatch"],
        summary: "λ(J·I_{k-1}/J·I_k) against its alternating-sum formula",
    },
    CommandSpec {
        name: "formula",
        params: &[
            req("J", OBJ),
            req(
                "which",
                ParamKind::Word(&["puthenpurakal3", "invariance4", "integrally_closed3"]),
            ),
            opt("I", OBJ),
        ],
        verdicts: &["match", "mismatch"],
        summary: "closed-form length identities for the maximal ideal or an integrally closed I",
    },
    CommandSpec {
        name: "marley",
        params: &[req("S", OBJ), req("J", INT), req("k", ParamKind::Range)],
        verdicts: &["match", "mismatch"],
        summary: "dimension-one length formula in a numerical semigroup ring",
    },
    CommandSpec {
        name: "koszul",
        params: &[
            req("G", OBJ),
            req("forms", ParamKind::Forms),
            req("i", INT),
            req("j", INT),
        ],
        verdicts: &["zero", "nonzero"],
        summary: "dim H_i(forms; G)_j",
    },
    CommandSpec {
        name: "cycle",
        params: &[
            req("G", OBJ),
            req("forms", ParamKind::Forms),
            req("vector", ParamKind::Forms),
        ],
        verdicts: &["not_cycle", "boundary", "nonzero"],
        summary: "classifies a first Koszul cycle",
    },
    CommandSpec {
        name: "colon",
        params: &[req("G", OBJ), req("forms", ParamKind::Forms), req("n", INT)],
        verdicts: &["pass", "fail"],
        summary: "(x_1..x_{k-1}) : x_k inside (x_1..x_{k-1}) + G_{≥n} for every k",
    },
    CommandSpec {
        name: "propagation",
        params: &[
            req("G", OBJ),
            req("forms", ParamKind::Forms),
            req("i", INT),
            req("j", INT),
            req("n", INT),
        ],
        verdicts: &["holds", "violated"],
        summary: "vanishing of H_i in degree j propagates to H_{i+1} in degree j+1",
    },
    CommandSpec {
        name: "strand",
        params: &[req("G", OBJ), req("forms", ParamKind::Forms), req("k", INT)],
        verdicts: &["match", "mismatch"],
        summary: "length of H_0 of the truncated degree-k strand against its alternating sum",
    },
    CommandSpec {
        name: "cross_validate",
        params: &[
            req("I", OBJ),
            req("J", OBJ),
            req("n", INT),
            opt(
                "mode",
                ParamKind::Word(&["filtration", "lowest", "presentation"]),
            ),
            opt("G", OBJ),
            opt("forms", ParamKind::Forms),
            opt("force", BOOL),
        ],
        verdicts: &["agree", "disagree"],
        summary: "ideal-level standardness against vanishing of first Koszul homology",
    },
    CommandSpec {
        name: "primes",
        params: &[req("I", OBJ)],
        verdicts: &[],
        summary: "minimal primes of a squarefree monomial ideal",
    },
    CommandSpec {
        name: "reduced",
        params: &[req("I", OBJ)],
        verdicts: &["reduced", "not_reduced"],
        summary: "whether a monomial ideal is radical",
    },
    CommandSpec {
        name: "connectivity",
        params: &[req("I", OBJ), opt("domain", BOOL)],
        verdicts: &["connected", "disconnected"],
        summary: "connectedness in codimension one of a squarefree monomial quotient",
    },
];

pub fn lookup(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}
