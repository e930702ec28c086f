//! Exact integer polynomials in `q`: q-integers, Gaussian binomials by the
//! q-Pascal recurrence, rational q-Catalan polynomials by certified exact
//! division, and evaluation at big integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, degree: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `q^d`.
    pub fn shift(&self, d: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Horner evaluation.
    pub fn eval_at(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Long division by a divisor with leading coefficient `±1`, so the
    /// quotient stays integral.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::BadRange("division by the zero polynomial".into()))?;
        let lead = &divisor.coeffs[dd];
        if !lead.abs().is_one() {
            return Err(Error::BadRange(
                "divisor must have leading coefficient 1 or -1".into(),
            ));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for d in (dd..rem.len()).rev() {
            let c = &rem[d] * lead; // lead = ±1, so c / lead = c * lead
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[d - dd + i] -= &c * b;
            }
            quot[d - dd] = c;
        }
        rem.truncate(dd);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            if d == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Largest exponent accepted by the parser.
pub const MAX_PARSED_DEGREE: usize = 100_000;

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the output of `Display`, e.g. `1+q+2q^2-q^5`. Whitespace and an
    /// optional `*` between coefficient and `q` are accepted; repeated
    /// degrees are summed.
    fn from_str(s: &str) -> Result<IntPolynomial> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at byte {at} of {s:?}"));
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            let negative = match bytes[i] {
                b'+' => {
                    i += 1;
                    false
                }
                b'-' => {
                    i += 1;
                    true
                }
                _ if first => false,
                _ => return Err(err("expected '+' or '-'", i)),
            };
            first = false;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff_digits = &s[start..i];
            let mut has_q = false;
            if i < bytes.len() && bytes[i] == b'*' {
                if coeff_digits.is_empty() {
                    return Err(err("'*' without coefficient", i));
                }
                i += 1;
                if i >= bytes.len() || bytes[i] != b'q' {
                    return Err(err("expected 'q' after '*'", i));
                }
            }
            let mut degree = 0usize;
            if i < bytes.len() && bytes[i] == b'q' {
                has_q = true;
                degree = 1;
                i += 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let exp = &s[es..i];
                    if exp.is_empty() || exp.len() > 6 {
                        return Err(err("bad exponent", es));
                    }
                    degree = exp.parse().map_err(|_| err("bad exponent", es))?;
                    if degree > MAX_PARSED_DEGREE {
                        return Err(err("exponent too large", es));
                    }
                }
            }
            if coeff_digits.is_empty() && !has_q {
                return Err(err("empty term", start));
            }
            let mut c = if coeff_digits.is_empty() {
                BigInt::one()
            } else {
                coeff_digits
                    .parse::<BigInt>()
                    .map_err(|_| err("bad coefficient", start))?
            };
            if negative {
                c = -c;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += c;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> =
            self.coeffs.iter().map(crate::report::bigint_number).collect();
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs = nums
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom("coefficient is not an integer"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

/// `[n]_q = 1 + q + … + q^{n-1}`; `[0]_q = 0`.
pub fn q_int(n: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); n])
}

fn pascal_table() -> &'static Mutex<Vec<Vec<IntPolynomial>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<IntPolynomial>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![IntPolynomial::one()]]))
}

/// Gaussian binomial `(n choose k)_q` from the q-Pascal recurrence
/// `C(n,k) = C(n-1,k-1) + q^k C(n-1,k)`. Rows are memoized.
pub fn q_binomial(n: usize, k: usize) -> Result<IntPolynomial> {
    if k > n {
        return Err(Error::BadRange(format!("q_binomial({n}, {k}) needs k <= n")));
    }
    let mut table = pascal_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let prev = table.last().expect("row 0 present");
        let m = prev.len(); // new row index
        let row: Vec<IntPolynomial> = (0..=m)
            .map(|j| {
                if j == 0 || j == m {
                    IntPolynomial::one()
                } else {
                    &prev[j - 1] + &prev[j].shift(j)
                }
            })
            .collect();
        table.push(row);
    }
    Ok(table[n][k].clone())
}

/// `(n choose k)_q ÷ [n]_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QCatalan {
    Polynomial(IntPolynomial),
    /// The division leaves a nonzero remainder.
    NotDivisible {
        quotient: IntPolynomial,
        remainder: IntPolynomial,
    },
}

impl QCatalan {
    pub fn polynomial(&self) -> Option<&IntPolynomial> {
        match self {
            QCatalan::Polynomial(p) => Some(p),
            QCatalan::NotDivisible { .. } => None,
        }
    }
}

impl fmt::Display for QCatalan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QCatalan::Polynomial(p) => write!(f, "{p}"),
            QCatalan::NotDivisible { remainder, .. } => {
                write!(f, "not divisible; remainder {remainder}")
            }
        }
    }
}

/// Rational q-Catalan polynomial `(1/[n]_q) (n choose k)_q`.
pub fn rational_q_catalan(k: usize, n: usize) -> Result<QCatalan> {
    if k == 0 || k > n {
        return Err(Error::BadRange(format!(
            "rational q-Catalan needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let (quotient, remainder) = q_binomial(n, k)?.div_rem(&q_int(n))?;
    Ok(if remainder.is_zero() {
        QCatalan::Polynomial(quotient)
    } else {
        QCatalan::NotDivisible {
            quotient,
            remainder,
        }
    })
}

fn require_coprime(k: usize, n: usize) -> Result<()> {
    if k.gcd(&n) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    Ok(())
}

fn catalan_polynomial(k: usize, n: usize) -> Result<IntPolynomial> {
    require_coprime(k, n)?;
    match rational_q_catalan(k, n)? {
        QCatalan::Polynomial(p) => Ok(p),
        QCatalan::NotDivisible { remainder, .. } => Err(Error::VerificationFailed(format!(
            "(n choose k)_q not divisible by [n]_q for coprime k={k}, n={n}; remainder {remainder}"
        ))),
    }
}

/// `(q-1)^{n-1} · Cat_q(k,n)(q)` for coprime `k, n`.
pub fn predicted_positroid_count(k: usize, n: usize, q: u64) -> Result<BigInt> {
    let cat = catalan_polynomial(k, n)?;
    let q = BigInt::from(q);
    let torus = num_traits::pow(&q - 1, n - 1);
    Ok(torus * cat.eval_at(&q))
}

/// Ordinary binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `Cat_q(k,n)(1)`, checked against `C(n,k)/n`.
pub fn catalan_at_one(k: usize, n: usize) -> Result<BigInt> {
    let at_one = catalan_polynomial(k, n)?.eval_at(&BigInt::one());
    let (expected, rem) = binomial(n, k).div_rem(&BigUint::from(n));
    if !rem.is_zero() || BigInt::from(expected.clone()) != at_one {
        return Err(Error::VerificationFailed(format!(
            "Cat_q({k},{n})(1) = {at_one} but C(n,k)/n = {expected} rem {rem}"
        )));
    }
    Ok(at_one)
}
