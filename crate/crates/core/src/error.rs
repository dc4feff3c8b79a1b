//! Validation failures for tables and maps.
//!
//! Validation stops at the first violated law and reports it with concrete
//! witnesses, so a failing table always comes back with one actionable
//! counterexample rather than a list.

use thiserror::Error;

/// Which operation table an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OpLabel {
    /// The single monoid operation, or the multiplication of a semiring.
    Mul,
    /// The addition of a semiring.
    Add,
}

impl std::fmt::Display for OpLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OpLabel::Mul => write!(f, "multiplication"),
            OpLabel::Add => write!(f, "addition"),
        }
    }
}

/// Which side of a two-sided law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// First violated law of an operation table, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawViolation {
    #[error("neutral index {index} is outside the carrier 0..{size}")]
    NeutralOutOfRange { index: usize, size: usize },

    #[error("{op} table has {got} entries, expected {expected} for carrier size {size}")]
    BadTableShape {
        op: OpLabel,
        got: usize,
        expected: usize,
        size: usize,
    },

    #[error("{op} table entry at row {row}, column {col} is {value}, outside the carrier 0..{size}")]
    EntryOutOfRange {
        op: OpLabel,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },

    #[error("element {a} breaks the {side} identity law for {op}: got {got}")]
    IdentityFails {
        op: OpLabel,
        side: Side,
        a: usize,
        got: usize,
    },

    #[error("{op} is not associative at ({a}, {b}, {c}): ({a}{b}){c} = {left} but {a}({b}{c}) = {right}")]
    NotAssociative {
        op: OpLabel,
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },

    #[error("addition is not commutative at ({a}, {b}): {a}+{b} = {left} but {b}+{a} = {right}")]
    AddNotCommutative {
        a: usize,
        b: usize,
        left: usize,
        right: usize,
    },

    #[error("zero is not {side}-absorbing at {a}: product is {got}")]
    ZeroNotAbsorbing { side: Side, a: usize, got: usize },

    #[error("multiplication does not {side}-distribute over addition at ({a}, {b}, {c}): {left} != {right}")]
    NotDistributive {
        side: Side,
        a: usize,
        b: usize,
        c: usize,
        left: usize,
        right: usize,
    },
}

/// First failed homomorphism condition of a map, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("map has {got} entries, expected {expected} for the source carrier")]
    MapLengthMismatch { expected: usize, got: usize },

    #[error("image of {at} is {value}, outside the target carrier 0..{size}")]
    ImageOutOfRange {
        at: usize,
        value: usize,
        size: usize,
    },

    #[error("neutral element maps to {got}, expected {expected}")]
    NeutralNotPreserved { got: usize, expected: usize },

    #[error("{op} not preserved at ({a}, {b}): image of the product is {lhs} but the product of images is {rhs}")]
    OpNotPreserved {
        op: OpLabel,
        a: usize,
        b: usize,
        lhs: usize,
        rhs: usize,
    },
}

/// Why a pair of morphisms is not a point (split epimorphism with section).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PointError {
    #[error("section target does not match the epimorphism source")]
    EndpointMismatch,

    #[error("epi after section is not the identity at {at}: got {got}")]
    NotASection { at: usize, got: usize },
}
