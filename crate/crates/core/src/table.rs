//! Count tables: one row per `(k, n, q)` with Grassmannian, positroid and
//! twisted counts, both torus orders, the quotient and the q-Catalan
//! polynomial. CSV and JSON output are byte-deterministic.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldSpec};
use crate::limits::Limits;
use crate::positroid::count_positroid;
use crate::qseries::{rational_q_catalan, QCatalan};
use crate::report::bigint_number;
use crate::twisted::{anisotropic_torus_order, enumerate_twisted_positroid, TowerField};

pub const CSV_HEADER: &str =
    "k,n,q,gr_count,positroid_count,twisted_count,split_torus,aniso_torus,quotient,catalan_poly";

fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    bigint_number(&BigInt::from(x.clone())).serialize(s)
}

/// Integers as JSON numbers, other rationals as `"a/b"` strings.
fn ser_ratio<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_integer() {
        bigint_number(&x.to_integer()).serialize(s)
    } else {
        x.to_string().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub n: usize,
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub gr_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub positroid_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub twisted_count: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub split_torus: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub aniso_torus: BigUint,
    /// `positroid_count / split_torus`.
    #[serde(serialize_with = "ser_ratio")]
    pub quotient: BigRational,
    /// `Cat_q(k,n)` if `[n]_q` divides `(n choose k)_q`, else empty.
    pub catalan_poly: String,
}

impl TableRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},\"{}\"",
            self.k,
            self.n,
            self.q,
            self.gr_count,
            self.positroid_count,
            self.twisted_count,
            self.split_torus,
            self.aniso_torus,
            self.quotient,
            self.catalan_poly
        )
    }
}

/// Computes one row by enumeration.
pub fn table_row(k: usize, n: usize, q: u64, limits: &Limits) -> Result<TableRow> {
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::BadFieldParameters(format!("{q} is not a prime power")))?;
    let field = FieldSpec::build_with_guard(p, e, 1, limits.max_field_order)?;
    let counts = count_positroid(k, n, &field, limits)?;
    let tower = TowerField::new(q, n, limits)?;
    let twisted = enumerate_twisted_positroid(k, &tower, limits)?;
    let catalan_poly = match rational_q_catalan(k, n)? {
        QCatalan::Polynomial(p) => p.to_string(),
        QCatalan::NotDivisible { .. } => String::new(),
    };
    Ok(TableRow {
        k,
        n,
        q,
        gr_count: counts.grassmannian_count,
        positroid_count: counts.positroid_count,
        twisted_count: twisted.twisted_count,
        split_torus: counts.torus_order,
        aniso_torus: anisotropic_torus_order(q, n),
        quotient: counts.quotient_count,
        catalan_poly,
    })
}

/// Rows for every `k <= n` from the given ranges, ordered by `(n, k, q)`.
pub fn build_table(ks: &[u64], ns: &[u64], qs: &[u64], limits: &Limits) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for &k in ks {
            if k == 0 || k > n {
                continue;
            }
            for &q in qs {
                rows.push(table_row(k as usize, n as usize, q, limits)?);
            }
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[TableRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv_line())?;
    }
    Ok(())
}

pub fn write_json(rows: &[TableRow], out: &mut impl Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, rows)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_rows() {
        let l = Limits::default();
        assert_eq!(
            table_row(1, 2, 3, &l).unwrap().csv_line(),
            "1,2,3,4,2,4,2,4,1,\"1\""
        );
        assert_eq!(
            table_row(2, 5, 2, &l).unwrap().csv_line(),
            "2,5,2,155,5,155,1,31,5,\"1+q^2\""
        );
    }

    #[test]
    fn non_coprime_row_has_rational_quotient_and_no_polynomial() {
        let r = table_row(2, 4, 3, &Limits::default()).unwrap();
        assert!(r.catalan_poly.is_empty());
        assert_eq!(r.split_torus, 8u32.into());
        let line = r.csv_line();
        assert!(line.ends_with(",\"\""));
    }

    #[test]
    fn csv_layout() {
        let rows = build_table(&[1, 2], &[2, 3], &[2], &Limits::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 1 + 4);
        assert!(!s.contains('\r'));
        assert!(lines[1].starts_with("1,2,2,"));
    }

    #[test]
    fn json_numbers() {
        let rows = build_table(&[2], &[5], &[2], &Limits::default()).unwrap();
        let mut buf = Vec::new();
        write_json(&rows, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["gr_count"].to_string(), "155");
        assert_eq!(v[0]["quotient"].to_string(), "5");
        assert_eq!(v[0]["catalan_poly"], "1+q^2");
    }
}
