//! Text forms shared by the library and the command line.
//!
//! * Cartan types: `"A2"`, `"B3"`, `"A1xA1"`.
//! * Weights: fundamental-weight coordinates, `"(-1,-1)"` or `"(1/2,1/2)"`.
//! * Words: `"s1 s2 s1"`, `"121"`, or `"e"` for the identity.

use crate::error::Result;
use crate::rootsystem::{RootSystem, RootSystemSpec};
use crate::weight::Weight;
use crate::weyl::{WeylElem, Word};

pub fn parse_type(s: &str) -> Result<RootSystemSpec> {
    s.parse()
}

/// Parses a weight and checks it against the rank of `rs`.
pub fn parse_weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let w: Weight = s.parse()?;
    w.check_rank(rs.rank())?;
    Ok(w)
}

pub fn parse_word(s: &str) -> Result<Word> {
    s.parse()
}

pub fn parse_elem(rs: &RootSystem, s: &str) -> Result<WeylElem> {
    rs.from_word(&parse_word(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn shared_parsers() {
        let a2 = RootSystem::new(&parse_type("A2").unwrap());
        assert_eq!(
            parse_weight(&a2, "(1/2,1/2)").unwrap().to_string(),
            "(1/2,1/2)"
        );
        assert!(matches!(
            parse_weight(&a2, "(1,2,3)"),
            Err(Error::RankMismatch {
                expected: 2,
                got: 3
            })
        ));
        assert_eq!(
            parse_elem(&a2, "s1 s2 s1").unwrap(),
            parse_elem(&a2, "212").unwrap()
        );
        assert!(parse_elem(&a2, "s3").is_err());
        assert!(parse_type("A1xA1").is_ok());
    }
}
