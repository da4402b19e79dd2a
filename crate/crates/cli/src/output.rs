use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::BigUint;
use serde_json::{Map, Number, Value};

/// One command's result: `{"command": ..., "params": {...}, "rows": [...]}`.
///
/// Keys serialize in sorted order and floats are written with 15
/// significant digits, so identical invocations give identical bytes.
#[derive(Debug, Clone, Default)]
pub struct OutputRecord {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub rows: Vec<BTreeMap<String, Value>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            ..Self::default()
        }
    }

    pub fn param(&mut self, key: &str, value: Value) -> &mut Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row.0);
    }

    pub fn to_json_line(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert(
            "params".into(),
            Value::Object(self.params.clone().into_iter().collect()),
        );
        top.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Object(r.clone().into_iter().collect()))
                    .collect(),
            ),
        );
        serde_json::to_string(&Value::Object(top)).expect("values are serializable")
    }

    /// Rows as CSV; the header is the sorted union of the row keys.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&String> = self.rows.iter().flat_map(|r| r.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&keys).expect("writing to memory");
        for row in &self.rows {
            let cells: Vec<String> = keys
                .iter()
                .map(|k| row.get(*k).map(cell).unwrap_or_default())
                .collect();
            w.write_record(&cells).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json_line()),
            Format::Csv => out.write_all(self.to_csv().as_bytes()),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

#[derive(Debug, Default)]
pub struct Row(BTreeMap<String, Value>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }
}

/// `x` with 15 significant digits, in fixed notation for moderate
/// exponents and scientific notation otherwise.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000000000".to_string();
    }
    let sci = format!("{x:.14e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific notation has an exponent");
    if (-5..15).contains(&exp) {
        format!("{x:.prec$}", prec = (14 - exp) as usize)
    } else {
        sci
    }
}

pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let n: Number =
        serde_json::from_str(&format_float(x)).expect("formatted float is a JSON number");
    Value::Number(n)
}

pub fn int(x: impl Into<u64>) -> Value {
    Value::from(x.into())
}

/// Big integers are strings so consumers never round them through `f64`.
pub fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

pub fn text(s: impl Into<String>) -> Value {
    Value::String(s.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(1.0), "1.00000000000000");
        assert_eq!(format_float(0.21875), "0.218750000000000");
        assert_eq!(format_float(-2.5), "-2.50000000000000");
        assert_eq!(format_float(1e-7), "1.00000000000000e-7");
        assert_eq!(format_float(33.41841854209775), "33.4184185420977");
        assert_eq!(format_float(1e20), "1.00000000000000e20");
        assert_eq!(format_float(0.0), "0.00000000000000");
        // rounding across a power of ten
        assert_eq!(format_float(9.9999999999999999), "10.0000000000000");
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let mut r = OutputRecord::new("demo");
        r.param("z", int(1u64)).param("a", float(0.5));
        r.push(
            Row::new()
                .with("y", text("e"))
                .with("b", big(&BigUint::from(7u32))),
        );
        let line = r.to_json_line();
        assert_eq!(
            line,
            r#"{"command":"demo","params":{"a":0.500000000000000,"z":1},"rows":[{"b":"7","y":"e"}]}"#
        );
        let back: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(back["rows"][0]["b"], "7");
    }

    #[test]
    fn csv_has_header() {
        let mut r = OutputRecord::new("demo");
        r.push(
            Row::new()
                .with("label", text("ab"))
                .with("dim", big(&BigUint::from(8u32))),
        );
        r.push(Row::new().with("label", text("e")));
        assert_eq!(r.to_csv(), "dim,label\n8,ab\n,e\n");
    }
}
