//! Monomial ideal specifications and their text grammar.
//!
//! ```text
//! spec  := "mono:" ints | "diag:" ints | "dsum(" spec ";" spec ")" | "ssum(" spec ";" spec ")"
//! ints  := uint ("," uint)*
//! ```
//!
//! `mono:3,2` is the principal ideal `(z1^3 z2^2)`, `diag:2,3` the ideal
//! `(z1^2, z2^3)`. `dsum` is the direct sum `I ⊕ J` of ideals on disjoint
//! variable blocks and `ssum` the function `f(x) + g(y)` in separated variables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialIdealSpec {
    PrincipalMonomial(Vec<u32>),
    Diagonal(Vec<u32>),
    DirectSum(Box<MonomialIdealSpec>, Box<MonomialIdealSpec>),
    SeparatedSum(Box<MonomialIdealSpec>, Box<MonomialIdealSpec>),
}

impl MonomialIdealSpec {
    pub fn direct_sum(left: MonomialIdealSpec, right: MonomialIdealSpec) -> Self {
        MonomialIdealSpec::DirectSum(Box::new(left), Box::new(right))
    }

    pub fn separated_sum(left: MonomialIdealSpec, right: MonomialIdealSpec) -> Self {
        MonomialIdealSpec::SeparatedSum(Box::new(left), Box::new(right))
    }

    /// Number of variables; operands of sums live on disjoint blocks, so counts add.
    pub fn num_vars(&self) -> usize {
        match self {
            MonomialIdealSpec::PrincipalMonomial(e) | MonomialIdealSpec::Diagonal(e) => e.len(),
            MonomialIdealSpec::DirectSum(l, r) | MonomialIdealSpec::SeparatedSum(l, r) => {
                l.num_vars() + r.num_vars()
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MonomialIdealSpec::PrincipalMonomial(e) => {
                if e.is_empty() || e.iter().all(|&x| x == 0) {
                    return Err(Error::invalid(
                        "principal monomial needs at least one strictly positive exponent",
                    ));
                }
                Ok(())
            }
            MonomialIdealSpec::Diagonal(m) => {
                if m.is_empty() {
                    return Err(Error::invalid("diagonal ideal needs at least one order"));
                }
                if let Some(i) = m.iter().position(|&x| x == 0) {
                    return Err(Error::invalid(format!(
                        "diagonal orders must all be >= 1 (order {} is 0)",
                        i + 1
                    )));
                }
                Ok(())
            }
            MonomialIdealSpec::DirectSum(l, r) | MonomialIdealSpec::SeparatedSum(l, r) => {
                l.validate()?;
                r.validate()
            }
        }
    }

    /// Lelong number at the origin: the order of vanishing of the generic
    /// element (minimal order of a generator).
    pub fn lelong_number(&self) -> u64 {
        match self {
            MonomialIdealSpec::PrincipalMonomial(e) => e.iter().map(|&x| u64::from(x)).sum(),
            MonomialIdealSpec::Diagonal(m) => m.iter().copied().min().map_or(0, u64::from),
            MonomialIdealSpec::DirectSum(l, r) | MonomialIdealSpec::SeparatedSum(l, r) => {
                l.lelong_number().min(r.lelong_number())
            }
        }
    }
}

impl fmt::Display for MonomialIdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            MonomialIdealSpec::PrincipalMonomial(e) => write!(f, "mono:{}", join(e)),
            MonomialIdealSpec::Diagonal(m) => write!(f, "diag:{}", join(m)),
            MonomialIdealSpec::DirectSum(l, r) => write!(f, "dsum({l};{r})"),
            MonomialIdealSpec::SeparatedSum(l, r) => write!(f, "ssum({l};{r})"),
        }
    }
}

impl FromStr for MonomialIdealSpec {
    type Err = Error;

    /// Parses and validates a spec.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s, pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error("trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, what: &str) -> Error {
        Error::invalid(format!(
            "cannot parse ideal spec {:?}: {what} at offset {}",
            self.src, self.pos
        ))
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn spec(&mut self) -> Result<MonomialIdealSpec> {
        if self.eat("mono:") {
            return Ok(MonomialIdealSpec::PrincipalMonomial(self.ints()?));
        }
        if self.eat("diag:") {
            return Ok(MonomialIdealSpec::Diagonal(self.ints()?));
        }
        let separated = if self.eat("dsum(") {
            false
        } else if self.eat("ssum(") {
            true
        } else {
            return Err(self.error("expected mono:, diag:, dsum( or ssum("));
        };
        let left = self.spec()?;
        self.expect(";")?;
        let right = self.spec()?;
        self.expect(")")?;
        Ok(if separated {
            MonomialIdealSpec::separated_sum(left, right)
        } else {
            MonomialIdealSpec::direct_sum(left, right)
        })
    }

    fn ints(&mut self) -> Result<Vec<u32>> {
        let mut out = vec![self.uint()?];
        while self.eat(",") {
            out.push(self.uint()?);
        }
        Ok(out)
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected a nonnegative integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_form() {
        assert_eq!(
            "mono:3,2".parse::<MonomialIdealSpec>().unwrap(),
            MonomialIdealSpec::PrincipalMonomial(vec![3, 2])
        );
        let nested: MonomialIdealSpec = "dsum(diag:2; ssum(mono:2;mono:3))".parse().unwrap();
        assert_eq!(nested.num_vars(), 3);
        assert_eq!(nested.to_string(), "dsum(diag:2;ssum(mono:2;mono:3))");
    }

    #[test]
    fn rejects_malformed_and_invalid() {
        for bad in [
            "",
            "mono:",
            "diag:2,",
            "dsum(mono:1)",
            "ssum(mono:1;mono:2",
            "poly:1",
            "mono:1 x",
        ] {
            assert!(bad.parse::<MonomialIdealSpec>().is_err(), "{bad}");
        }
        let err = "diag:0,3".parse::<MonomialIdealSpec>().unwrap_err();
        assert!(err.to_string().contains(">= 1"), "{err}");
        assert!("mono:0,0".parse::<MonomialIdealSpec>().is_err());
    }

    fn arb_spec() -> impl Strategy<Value = MonomialIdealSpec> {
        let leaf = prop_oneof![
            proptest::collection::vec(1u32..9, 1..4).prop_map(MonomialIdealSpec::PrincipalMonomial),
            proptest::collection::vec(1u32..9, 1..4).prop_map(MonomialIdealSpec::Diagonal),
        ];
        leaf.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| MonomialIdealSpec::direct_sum(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| MonomialIdealSpec::separated_sum(l, r)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(text.parse::<MonomialIdealSpec>().unwrap(), spec);
        }
    }
}
