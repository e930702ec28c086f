//! Structured pass/fail records. Big integers are written as plain JSON
//! numbers of any length; polynomials as coefficient arrays, low degree first.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::qseries::IntPolynomial;

/// JSON number holding an integer of any size.
pub fn bigint_number(x: &BigInt) -> serde_json::Number {
    x.to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers")
}

/// An exact value on one side of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Integer(BigInt),
    Polynomial(IntPolynomial),
}

impl From<BigInt> for Value {
    fn from(x: BigInt) -> Value {
        Value::Integer(x)
    }
}

impl From<num_bigint::BigUint> for Value {
    fn from(x: num_bigint::BigUint) -> Value {
        Value::Integer(x.into())
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Value {
        Value::Integer(x.into())
    }
}

impl From<IntPolynomial> for Value {
    fn from(p: IntPolynomial) -> Value {
        Value::Polynomial(p)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Integer(x) => bigint_number(x).serialize(s),
            Value::Polynomial(p) => p.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .to_string()
                .parse::<BigInt>()
                .map(Value::Integer)
                .map_err(|_| D::Error::custom("expected an integer")),
            v @ serde_json::Value::Array(_) => serde_json::from_value::<IntPolynomial>(v)
                .map(Value::Polynomial)
                .map_err(D::Error::custom),
            _ => Err(D::Error::custom("expected an integer or a coefficient array")),
        }
    }
}

/// The case a report refers to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub field: Option<FieldDescriptor>,
}

/// One checked identity: both sides, and whether they agree exactly.
/// `passed` is `None` when no closed form applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Parameters,
    pub predicted: Option<Value>,
    pub observed: Option<Value>,
    pub passed: Option<bool>,
    /// Wall-clock time; only recorded on request so output stays reproducible.
    pub elapsed_ms: Option<u64>,
    /// The identity being checked, in words.
    pub claim: String,
    /// First offending object, e.g. a canonical basis matrix.
    pub counterexample: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn new(suite: &str, parameters: Parameters, claim: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            parameters,
            predicted: None,
            observed: None,
            passed: None,
            elapsed_ms: None,
            claim: claim.into(),
            counterexample: None,
        }
    }

    /// Records both sides and sets `passed` to their exact equality.
    pub fn compare(mut self, predicted: impl Into<Value>, observed: impl Into<Value>) -> Self {
        let (p, o) = (predicted.into(), observed.into());
        self.passed = Some(p == o);
        self.predicted = Some(p);
        self.observed = Some(o);
        self
    }

    pub fn observed_only(mut self, observed: impl Into<Value>) -> Self {
        self.observed = Some(observed.into());
        self
    }

    pub fn failed_with(mut self, reason: &Error) -> Self {
        self.passed = Some(false);
        self.counterexample = Some(serde_json::Value::String(reason.to_string()));
        self
    }

    pub fn with_counterexample(mut self, c: serde_json::Value) -> Self {
        self.counterexample = Some(c);
        self
    }

    /// `true` unless the report recorded a failure.
    pub fn ok(&self) -> bool {
        self.passed != Some(false)
    }
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

pub fn from_json(s: &str) -> Result<Vec<VerificationReport>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
