//! JSON documents. Every rational is written as a string, `"n"` or `"n/d"`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use proxyrep_core::{Instance, Rational, Violation};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("decimal literal `{0}` is not allowed, write rationals as n/d")]
    Decimal(String),
    #[error("`{0}` is not a rational number (expected n or n/d)")]
    MalformedRational(String),
    #[error("`{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Instance(#[from] proxyrep_core::Error),
}

pub fn parse_rational(text: &str) -> Result<Rational, DocError> {
    if text.contains(['.', 'e', 'E']) {
        return Err(DocError::Decimal(text.to_string()));
    }
    let malformed = || DocError::MalformedRational(text.to_string());
    let integer = |s: &str| -> Result<BigInt, DocError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        BigInt::from_str(s).map_err(|_| malformed())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(integer(text)?)),
        Some((n, d)) => {
            let (n, d) = (integer(n)?, integer(d)?);
            if d.is_zero() {
                return Err(DocError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical text of a rational: lowest terms, positive denominator, no
/// denominator for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Either a comma-separated list or a JSON array of rational strings.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, DocError> {
    let text = text.trim();
    if text.starts_with('[') {
        let raw: Vec<String> = serde_json::from_str(text)?;
        return raw.iter().map(|s| parse_rational(s)).collect();
    }
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}

mod rational_string {
    use super::*;
    use serde::de::Error;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

mod rational_strings {
    use super::*;
    use serde::de::Error;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_rational(t).map_err(D::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(with = "rational_strings")]
    pub candidates: Vec<Rational>,
    #[serde(with = "rational_string")]
    pub theta: Rational,
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance, name: Option<String>) -> InstanceDocument {
        InstanceDocument {
            name,
            candidates: inst.candidates().to_vec(),
            theta: inst.theta().clone(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, DocError> {
        Ok(Instance::new(self.candidates.clone(), self.theta.clone())?)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, DocError> {
    serde_json::from_str::<InstanceDocument>(text)?.to_instance()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Restricted,
    Unrestricted,
    BoundRestricted,
    BoundUnrestricted,
    Dual,
    Verify,
    Elect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Violation,
}

/// A voter whose proxy's favourite is more than `theta` from its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDocument {
    #[serde(with = "rational_string")]
    pub voter: Rational,
    #[serde(with = "rational_string")]
    pub voter_top: Rational,
    #[serde(with = "rational_string")]
    pub proxy: Rational,
    #[serde(with = "rational_string")]
    pub proxy_top: Rational,
}

impl ViolationDocument {
    pub fn new(inst: &Instance, v: &Violation) -> ViolationDocument {
        ViolationDocument {
            voter: v.voter.clone(),
            voter_top: inst.candidate(v.voter_top).clone(),
            proxy: v.proxy.clone(),
            proxy_top: inst.candidate(v.proxy_top).clone(),
        }
    }
}

/// Size guarantee of the relevant upper-bound construction, and the sweep
/// lower bound on the unrestricted optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub upper: usize,
    pub lower: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    #[serde(with = "rational_string")]
    pub direct: Rational,
    #[serde(with = "rational_string")]
    pub proxy: Rational,
    #[serde(with = "rational_string")]
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub mode: Mode,
    #[serde(with = "rational_string")]
    pub theta: Rational,
    pub count: usize,
    #[serde(with = "rational_strings")]
    pub proxies: Vec<Rational>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
}

pub fn parse_result(text: &str) -> Result<ResultDocument, DocError> {
    let doc: ResultDocument = serde_json::from_str(text)?;
    proxyrep_core::Arrangement::new(doc.proxies.clone())?;
    Ok(doc)
}

pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents always serialize");
    text.push('\n');
    text
}

/// Proxy positions from a JSON array, an object with a `proxies` field, or a
/// comma-separated list.
pub fn parse_positions(text: &str) -> Result<Vec<Rational>, DocError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        #[derive(Deserialize)]
        struct WithProxies {
            #[serde(with = "rational_strings")]
            proxies: Vec<Rational>,
        }
        let doc: WithProxies = serde_json::from_str(trimmed)?;
        return Ok(doc.proxies);
    }
    parse_rational_list(trimmed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proxyrep_core::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("11/30").unwrap(), rat(11, 30));
        assert_eq!(parse_rational("-2/15").unwrap(), rat(-2, 15));
        assert_eq!(parse_rational("4/8").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert!(matches!(parse_rational("0.5"), Err(DocError::Decimal(_))));
        assert!(matches!(parse_rational("1e3"), Err(DocError::Decimal(_))));
        assert!(matches!(
            parse_rational("1/0"),
            Err(DocError::ZeroDenominator(_))
        ));
        for bad in ["", "/3", "1/", "a", "1/2/3", "+1", " 1", "1/-"] {
            assert!(
                matches!(parse_rational(bad), Err(DocError::MalformedRational(_))),
                "{bad}"
            );
        }
        assert_eq!(format_rational(&rat(-4, 8)), "-1/2");
        assert_eq!(format_rational(&rat(3, 1)), "3");
    }

    #[test]
    fn instances() {
        let inst =
            parse_instance(r#"{"candidates":["0","11/30","19/30","1"],"theta":"1/3"}"#).unwrap();
        assert_eq!(
            inst.candidates(),
            &[rat(0, 1), rat(11, 30), rat(19, 30), rat(1, 1)]
        );
        assert_eq!(inst.theta(), &rat(1, 3));
        let two =
            parse_instance(r#"{"candidates":["0","1"],"theta":"1/2","name":"ends"}"#).unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn instance_diagnostics_are_distinct() {
        let cases = [
            r#"{"candidates":["0","0.5","1"],"theta":"1/3"}"#,
            r#"{"candidates":["0","x","1"],"theta":"1/3"}"#,
            r#"{"candidates":["0","2/3","1/3","1"],"theta":"1/3"}"#,
            r#"{"candidates":["0","1/3","1/3","1"],"theta":"1/3"}"#,
            r#"{"candidates":["1/9","1"],"theta":"1/3"}"#,
            r#"{"candidates":["0","8/9"],"theta":"1/3"}"#,
            r#"{"candidates":["0","1"],"theta":"1"}"#,
            r#"{"candidates":["0","1"],"theta":"1/0"}"#,
            r#"{"candidates":["0","1"]}"#,
        ];
        let messages: Vec<String> = cases
            .iter()
            .map(|c| parse_instance(c).unwrap_err().to_string())
            .collect();
        assert!(
            messages[0].contains("decimal literal `0.5`"),
            "{}",
            messages[0]
        );
        assert!(messages[1].contains("not a rational"));
        assert!(messages[2].contains("strictly increasing"));
        assert!(messages[3].contains("strictly increasing"));
        assert!(messages[4].contains("leftmost"));
        assert!(messages[5].contains("rightmost"));
        assert!(messages[6].contains("theta"));
        assert!(messages[7].contains("zero denominator"));
        assert!(messages[8].contains("missing field `theta`"));
    }

    #[test]
    fn position_lists() {
        let want = vec![rat(-2, 15), rat(1, 2), rat(17, 15)];
        assert_eq!(parse_positions("-2/15, 1/2,17/15").unwrap(), want);
        assert_eq!(parse_positions(r#"["-2/15","1/2","17/15"]"#).unwrap(), want);
        assert_eq!(
            parse_positions(r#"{"proxies":["-2/15","1/2","17/15"],"count":3}"#).unwrap(),
            want
        );
        assert!(parse_positions("0.1,1").is_err());
    }
}
