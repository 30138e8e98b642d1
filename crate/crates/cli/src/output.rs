//! JSON and CSV writers shared by the subcommands.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Compact JSON whose floats carry 17 significant digits.
///
/// serde_json already writes non-finite floats as `null` before reaching
/// the formatter.
struct FixedFloats;

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_float(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn write_null<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        CompactFormatter.write_null(writer)
    }
}

/// `{:.16e}`, or `null` for NaN and infinities.
pub fn format_float(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        "null".to_string()
    }
}

/// CSV cell for a float; empty when not finite.
pub fn csv_float(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        String::new()
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> io::Result<()> {
    let text = to_json_string(value).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

/// Provenance fields present in every document.
pub struct Provenance<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub n: Option<usize>,
    pub method: &'a str,
}

/// `body` with the provenance fields added at the top level.
pub fn envelope<T: Serialize>(prov: &Provenance<'_>, body: &T) -> serde_json::Result<Value> {
    let mut map = Map::new();
    map.insert("command".into(), prov.command.into());
    map.insert("version".into(), VERSION.into());
    map.insert("seed".into(), prov.seed.into());
    map.insert("n".into(), prov.n.map_or(Value::Null, Value::from));
    map.insert("method".into(), prov.method.into());
    match serde_json::to_value(body)? {
        Value::Object(fields) => {
            for (k, v) in fields {
                map.entry(k).or_insert(v);
            }
        }
        other => {
            map.insert("result".into(), other);
        }
    }
    Ok(Value::Object(map))
}
