//! Total monomial orderings.

use super::{Monomial, PolyError};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    /// Pure lexicographic, first variable most significant.
    Lex,
    /// Total degree, ties broken lexicographically.
    GradedLex,
    /// Weighted degree with positive integer weights.
    Weighted(Vec<u64>),
}

/// A monomial order. For graded kinds, ties are broken by comparing the
/// exponents of the variables listed in `tie_break` (smaller exponent
/// first), then the remaining variables from last to first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    tie_break: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex() -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Lex,
            tie_break: Vec::new(),
        }
    }

    pub fn graded_lex() -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::GradedLex,
            tie_break: Vec::new(),
        }
    }

    /// Weighted graded order. All weights must be positive so that 1 stays
    /// the unique minimal monomial.
    pub fn weighted(weights: Vec<u64>, tie_break: Vec<usize>) -> MonomialOrder {
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        MonomialOrder {
            kind: OrderKind::Weighted(weights),
            tie_break,
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn tie_break(&self) -> &[usize] {
        &self.tie_break
    }

    /// Total-order comparison; errors when the exponent vectors disagree in
    /// length (or do not match a weighted order's variable count).
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != b.nvars() {
            return Err(PolyError::DimensionMismatch);
        }
        if let OrderKind::Weighted(w) = &self.kind {
            if w.len() != a.nvars() {
                return Err(PolyError::DimensionMismatch);
            }
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match &self.kind {
            OrderKind::Lex => lex_cmp(a.exps(), b.exps()),
            OrderKind::GradedLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex_cmp(a.exps(), b.exps())),
            OrderKind::Weighted(w) => {
                let cmp = a.weight(w).cmp(&b.weight(w));
                if cmp != Ordering::Equal {
                    return cmp;
                }
                for &i in &self.tie_break {
                    let cmp = a.exps()[i].cmp(&b.exps()[i]);
                    if cmp != Ordering::Equal {
                        return cmp;
                    }
                }
                for i in (0..a.nvars()).rev() {
                    if self.tie_break.contains(&i) {
                        continue;
                    }
                    let cmp = a.exps()[i].cmp(&b.exps()[i]);
                    if cmp != Ordering::Equal {
                        return cmp;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Maximum of a non-empty monomial iterator.
    pub fn max<'a, I: IntoIterator<Item = &'a Monomial>>(&self, iter: I) -> Option<&'a Monomial> {
        iter.into_iter()
            .reduce(|a, b| match self.cmp_unchecked(a, b) {
                Ordering::Less => b,
                _ => a,
            })
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let cmp = x.cmp(y);
        if cmp != Ordering::Equal {
            return cmp;
        }
    }
    Ordering::Equal
}
