//! The associative operad: one monomial per arity, all in degree zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::operad::{MultiplicativeOperad, OperadKey};

/// `x1·x2·…·xp`, identified by its arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AssocMonomial(pub usize);

impl fmt::Display for AssocMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("e");
        }
        let parts: Vec<String> = (1..=self.0).map(|i| format!("x{}", i)).collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AssocOperad;

impl MultiplicativeOperad for AssocOperad {
    type Monomial = AssocMonomial;

    fn key(&self) -> OperadKey {
        OperadKey(1)
    }

    fn name(&self) -> String {
        "assoc".to_string()
    }

    fn degree_step(&self) -> usize {
        1
    }

    fn basis(&self, arity: usize) -> Vec<AssocMonomial> {
        vec![AssocMonomial(arity)]
    }

    fn arity(&self, m: &AssocMonomial) -> usize {
        m.0
    }

    fn degree(&self, _m: &AssocMonomial) -> usize {
        0
    }

    fn compose_basis(
        &self,
        x: &AssocMonomial,
        _i: usize,
        y: &AssocMonomial,
    ) -> Vec<(AssocMonomial, i64)> {
        vec![(AssocMonomial(x.0 + y.0 - 1), 1)]
    }

    fn identity(&self) -> AssocMonomial {
        AssocMonomial(1)
    }

    fn mu(&self, k: usize) -> AssocMonomial {
        AssocMonomial(k)
    }

    fn parse_monomial(&self, s: &str) -> Result<AssocMonomial> {
        let s = s.trim();
        if s == "e" || s == "1" {
            return Ok(AssocMonomial(0));
        }
        for (k, part) in s.split('*').enumerate() {
            if part.trim() != format!("x{}", k + 1) {
                return Err(Error::Parse(format!(
                    "expected x1*x2*…*xp in order, got {:?}",
                    s
                )));
            }
        }
        Ok(AssocMonomial(s.split('*').count()))
    }

    fn normalized_is_empty(&self, arity: usize, degree: usize) -> bool {
        arity > 0 || degree > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let op = AssocOperad;
        assert_eq!(op.parse_monomial("x1*x2*x3").unwrap(), AssocMonomial(3));
        assert_eq!(AssocMonomial(0).to_string(), "e");
        assert!(op.parse_monomial("x2*x1").is_err());
    }

    #[test]
    fn normalized_complex_is_the_unit() {
        let op = AssocOperad;
        assert_eq!(op.normalized_basis(0, 0), vec![AssocMonomial(0)]);
        assert!(op.normalized_basis(3, 0).is_empty());
        // the default filter agrees
        assert!(op
            .basis(2)
            .iter()
            .all(|m| !op.compose_basis(m, 1, &op.mu(0)).is_empty()));
    }
}
