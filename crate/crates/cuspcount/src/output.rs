//! Row-oriented output: CSV and JSON emission with exact values.
//!
//! Integer columns are emitted verbatim at full precision. A rational column
//! renders as a fixed-precision decimal plus a separate exact `num/den`
//! column (CSV) or a `{"num": ..., "den": ...}` object (JSON), so nothing is
//! lost to rounding. Column order is fixed by construction, and identical
//! inputs produce identical bytes.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;

/// Digits after the decimal point in rendered rationals.
pub const RATIO_DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    UInt(u128),
    Big(BigUint),
    Text(String),
    Bool(bool),
    /// Rendered as decimal + exact num/den.
    Ratio(BigRational),
}

impl Value {
    fn csv_cells(&self) -> Vec<String> {
        match self {
            Value::Int(v) => vec![v.to_string()],
            Value::UInt(v) => vec![v.to_string()],
            Value::Big(v) => vec![v.to_string()],
            Value::Text(s) => vec![s.clone()],
            Value::Bool(b) => vec![b.to_string()],
            Value::Ratio(r) => vec![
                decimal_string(r, RATIO_DECIMAL_DIGITS),
                format!("{}/{}", r.numer(), r.denom()),
            ],
        }
    }

    fn json_value(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::UInt(v) => v.to_string(),
            Value::Big(v) => v.to_string(),
            Value::Text(s) => json_escape(s),
            Value::Bool(b) => b.to_string(),
            Value::Ratio(r) => format!("{{\"num\": {}, \"den\": {}}}", r.numer(), r.denom()),
        }
    }
}

/// An ordered flat map of column name to value.
#[derive(Debug, Clone, Default)]
pub struct OutputRow {
    columns: Vec<(&'static str, Value)>,
}

impl OutputRow {
    pub fn new() -> Self {
        OutputRow { columns: Vec::new() }
    }

    pub fn push(mut self, name: &'static str, value: Value) -> Self {
        self.columns.push((name, value));
        self
    }

    pub fn columns(&self) -> &[(&'static str, Value)] {
        &self.columns
    }
}

/// CSV header line; rational columns expand to `name,nameExact`.
pub fn csv_header(row: &OutputRow) -> String {
    let mut cells = Vec::new();
    for (name, value) in row.columns() {
        cells.push((*name).to_string());
        if matches!(value, Value::Ratio(_)) {
            cells.push(format!("{name}Exact"));
        }
    }
    cells.join(",")
}

/// CSV record line for one row.
pub fn csv_record(row: &OutputRow) -> String {
    let mut cells = Vec::new();
    for (_, value) in row.columns() {
        cells.extend(value.csv_cells());
    }
    cells.join(",")
}

/// JSON array of flat objects. Big integers are emitted as bare numerals
/// (standard JSON, may exceed 64 bits).
pub fn json_rows(rows: &[OutputRow]) -> String {
    let mut out = String::from("[");
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n  {");
        for (j, (name, value)) in row.columns().iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("{}: {}", json_escape(name), value.json_value()));
        }
        out.push('}');
    }
    out.push_str("\n]");
    out
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Exact decimal rendering with `digits` places, truncated toward zero.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let negative = r.is_negative();
    let num_abs = r.numer().abs();
    let den_abs = r.denom().abs();
    let int_part = &num_abs / &den_abs;
    let mut rem = &num_abs % &den_abs;
    let mut frac = String::with_capacity(digits);
    let ten = num_bigint::BigInt::from(10u32);
    for _ in 0..digits {
        rem *= &ten;
        let d = &rem / &den_abs;
        rem %= &den_abs;
        frac.push_str(&d.to_string());
    }
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}
