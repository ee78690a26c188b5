use serde::ser::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::ball::{Exponent, Point};
use crate::lattice::Lattice2;

/// Significant digits in csv/json output; enough for every f64 to round-trip.
pub const MACHINE_DIGITS: usize = 17;

/// Significant digits in human-readable tables.
pub const HUMAN_DIGITS: usize = 6;

/// `%g`-style formatting with `digits` significant digits and trailing zeros removed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn machine(x: f64) -> String {
    fmt_sig(x, MACHINE_DIGITS)
}

pub fn human(x: f64) -> String {
    fmt_sig(x, HUMAN_DIGITS)
}

pub fn human_point(v: Point) -> String {
    format!("({}, {})", human(v[0]), human(v[1]))
}

pub fn human_lattice(l: &Lattice2) -> String {
    format!("{}, {}", human_point(l.a()), human_point(l.b()))
}

/// A float serialized as a JSON number with 17 significant digits (`null` if not finite).
#[derive(Debug, Clone, Copy)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(machine(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

/// An exponent in JSON: a number, or the string `"inf"`.
#[derive(Debug, Clone, Copy)]
pub struct JsonExponent(pub Exponent);

impl Serialize for JsonExponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Exponent::Finite(p) => Num(p).serialize(s),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct JsonLattice {
    pub a: [Num; 2],
    pub b: [Num; 2],
}

impl From<&Lattice2> for JsonLattice {
    fn from(l: &Lattice2) -> Self {
        let (a, b) = (l.a(), l.b());
        Self { a: [Num(a[0]), Num(a[1])], b: [Num(b[0]), Num(b[1])] }
    }
}

/// Simple CSV writer: comma separated, LF line endings.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut c = Self::default();
        c.row(header.iter().map(|s| s.to_string()));
        c
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        let line: Vec<String> = fields.into_iter().collect();
        self.out.push_str(&line.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// Left-aligned key/value block for human output.
pub fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

/// Column-aligned table for human output.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.866_025_403_784_438_6, 6), "0.866025");
        assert_eq!(fmt_sig(1.0, 17), "1");
        assert_eq!(fmt_sig(2.5, 6), "2.5");
        assert_eq!(fmt_sig(-0.5, 17), "-0.5");
        assert_eq!(fmt_sig(1.234e-9, 6), "1.234e-9");
        assert_eq!(fmt_sig(9.999_999_9, 3), "10");
        assert_eq!(fmt_sig(123_456_789.0, 6), "1.23457e8");
        assert_eq!(fmt_sig(0.0, 17), "0");
        assert_eq!(fmt_sig(f64::INFINITY, 17), "inf");
    }

    #[test]
    fn machine_output_round_trips() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 2.572_495_154_330_201, 1e-300, 6.02e23, -7.5e-7] {
            assert_eq!(machine(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_numbers() {
        let v = serde_json::to_string(&[Num(0.5), Num(f64::NAN)]).unwrap();
        assert_eq!(v, "[0.5,null]");
        let v = serde_json::to_string(&JsonExponent(Exponent::Infinity)).unwrap();
        assert_eq!(v, "\"inf\"");
    }
}
