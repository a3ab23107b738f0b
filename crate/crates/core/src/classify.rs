//! Structure classification and the per-table check that an associative
//! Latin square is a group table.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::axioms::{
    associativity_light, associativity_naive, find_identity, idempotents, inverse_map,
    is_commutative, is_identity, AssocWitness, InverseMap,
};
use crate::table::{latin_check, CayleyTable, LatinReport, Symbol};

/// Orders up to this size use the exhaustive triple scan under
/// [`AssocAlgorithm::Auto`]; larger ones use Light's test.
pub const NAIVE_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StructureClass {
    NotLatin,
    Quasigroup,
    Loop,
    Group,
    AbelianGroup,
}

impl StructureClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureClass::NotLatin => "NotLatin",
            StructureClass::Quasigroup => "Quasigroup",
            StructureClass::Loop => "Loop",
            StructureClass::Group => "Group",
            StructureClass::AbelianGroup => "AbelianGroup",
        }
    }

    pub fn is_group(self) -> bool {
        matches!(self, StructureClass::Group | StructureClass::AbelianGroup)
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum AssocAlgorithm {
    /// Naive up to [`NAIVE_MAX_ORDER`], Light's test above.
    #[default]
    Auto,
    Naive,
    Light,
}

impl AssocAlgorithm {
    /// The concrete algorithm used for a table of order `n`.
    pub fn resolve(self, n: usize) -> AssocAlgorithm {
        match self {
            AssocAlgorithm::Auto if n <= NAIVE_MAX_ORDER => AssocAlgorithm::Naive,
            AssocAlgorithm::Auto => AssocAlgorithm::Light,
            other => other,
        }
    }

    pub fn run(self, table: &CayleyTable) -> Option<AssocWitness> {
        match self.resolve(table.order()) {
            AssocAlgorithm::Light => associativity_light(table),
            _ => associativity_naive(table),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassificationReport {
    pub class: StructureClass,
    pub latin: LatinReport,
    pub identity: Option<Symbol>,
    pub associative: bool,
    pub assoc_witness: Option<AssocWitness>,
    /// Present when an identity exists and every element has a two-sided
    /// inverse, independently of `class`.
    pub inverses: Option<InverseMap>,
    pub commutative: bool,
    /// Ascending element orders; groups only.
    pub order_profile: Option<Vec<usize>>,
    /// The associativity algorithm actually run (never `Auto`).
    pub algorithm: AssocAlgorithm,
}

pub fn classify(table: &CayleyTable) -> ClassificationReport {
    classify_with(table, AssocAlgorithm::Auto)
}

/// Evaluates every axiom, even after the class is settled.
pub fn classify_with(table: &CayleyTable, algorithm: AssocAlgorithm) -> ClassificationReport {
    let algorithm = algorithm.resolve(table.order());
    let latin = latin_check(table);
    let identity = find_identity(table);
    let assoc_witness = algorithm.run(table);
    let associative = assoc_witness.is_none();
    let inverses = identity.and_then(|e| inverse_map(table, e).ok().flatten());
    let commutative = is_commutative(table).is_none();

    let class = match (latin.is_latin, identity, associative) {
        (false, _, _) => StructureClass::NotLatin,
        (true, None, _) => StructureClass::Quasigroup,
        (true, Some(_), false) => StructureClass::Loop,
        (true, Some(_), true) if commutative => StructureClass::AbelianGroup,
        (true, Some(_), true) => StructureClass::Group,
    };
    let order_profile = match identity {
        Some(e) if class.is_group() => element_orders(table, e).ok(),
        _ => None,
    };

    ClassificationReport {
        class,
        latin,
        identity,
        associative,
        assoc_witness,
        inverses,
        commutative,
        order_profile,
        algorithm,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("symbol {0} is not a two-sided identity")]
    NotAnIdentity(Symbol),
    #[error("powers of {0} do not return to the identity within the table order")]
    NoFiniteOrder(Symbol),
}

/// The order of each element (least `k ≥ 1` with `x^k = e`), ascending.
pub fn element_orders(table: &CayleyTable, e: Symbol) -> Result<Vec<usize>, OrderError> {
    if !is_identity(table, e) {
        return Err(OrderError::NotAnIdentity(e));
    }
    let n = table.order();
    let target = e.index();
    let mut orders = Vec::with_capacity(n);
    for x in 0..n {
        let mut power = x;
        let mut k = 1;
        while power != target {
            k += 1;
            if k > n {
                return Err(OrderError::NoFiniteOrder(Symbol::new(x)));
            }
            power = table.op(power, x);
        }
        orders.push(k);
    }
    orders.sort_unstable();
    Ok(orders)
}

/// The three stages of the argument that an associative Latin square is a
/// group: it has an idempotent, that idempotent is an identity, and
/// inverses are two-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum ProofStep {
    Idempotent,
    Identity,
    Inverse,
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofStep::Idempotent => "idempotent",
            ProofStep::Identity => "identity",
            ProofStep::Inverse => "inverse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum TheoremDetails {
    NotLatin {
        violations: usize,
    },
    NotAssociative {
        witness: AssocWitness,
    },
    Checked {
        idempotent: Option<Symbol>,
        identity: Option<Symbol>,
        inverses: Option<InverseMap>,
        failed_step: Option<ProofStep>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TheoremVerdict {
    pub applicable: bool,
    pub holds: bool,
    pub details: TheoremDetails,
}

impl TheoremVerdict {
    pub fn failed_step(&self) -> Option<ProofStep> {
        match self.details {
            TheoremDetails::Checked { failed_step, .. } => failed_step,
            _ => None,
        }
    }
}

pub fn theorem_check(table: &CayleyTable) -> TheoremVerdict {
    let latin = latin_check(table);
    if !latin.is_latin {
        return TheoremVerdict {
            applicable: false,
            holds: true,
            details: TheoremDetails::NotLatin {
                violations: latin.violations.len(),
            },
        };
    }
    if let Some(witness) = associativity_naive(table) {
        return TheoremVerdict {
            applicable: false,
            holds: true,
            details: TheoremDetails::NotAssociative { witness },
        };
    }
    let details = proof_pipeline(table);
    TheoremVerdict {
        applicable: true,
        holds: matches!(
            details,
            TheoremDetails::Checked {
                failed_step: None,
                ..
            }
        ),
        details,
    }
}

/// Runs the three stages in order on a table already known to be Latin and
/// associative, stopping at the first one that fails.
pub(crate) fn proof_pipeline(table: &CayleyTable) -> TheoremDetails {
    let fail = |idempotent, identity, inverses, step| TheoremDetails::Checked {
        idempotent,
        identity,
        inverses,
        failed_step: Some(step),
    };

    let Some(&idempotent) = idempotents(table).first() else {
        return fail(None, None, None, ProofStep::Idempotent);
    };
    if !is_identity(table, idempotent) {
        return fail(Some(idempotent), None, None, ProofStep::Identity);
    }
    match inverse_map(table, idempotent) {
        Ok(Some(inverses)) => TheoremDetails::Checked {
            idempotent: Some(idempotent),
            identity: Some(idempotent),
            inverses: Some(inverses),
            failed_step: None,
        },
        _ => fail(Some(idempotent), Some(idempotent), None, ProofStep::Inverse),
    }
}
