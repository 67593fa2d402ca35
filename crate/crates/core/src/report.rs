//! Machine-readable report rendering.
//!
//! Reports are emitted as JSON with every float printed with 17 significant
//! decimal digits, which round-trips f64 exactly and makes byte-level
//! reproducibility checks meaningful. Object keys keep insertion order.

use crate::hilbert::ComplexMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object() -> Json {
        Json::Object(Vec::new())
    }

    pub fn push(&mut self, key: &str, value: impl Into<Json>) -> &mut Self {
        match self {
            Json::Object(fields) => fields.push((key.to_string(), value.into())),
            _ => panic!("push on non-object"),
        }
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.push(key, value);
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::UInt(u) => out.push_str(&u.to_string()),
            Json::Float(x) => {
                if x.is_finite() {
                    out.push_str(&format!("{x:.16e}"));
                } else {
                    out.push_str("null");
                }
            }
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        '\t' => out.push_str("\\t"),
                        c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    pad(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                pad(out, indent);
                out.push(']');
            }
            Json::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (k, (key, value)) in fields.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    pad(out, indent + 1);
                    out.push('"');
                    out.push_str(key);
                    out.push_str("\": ");
                    value.write(out, indent + 1);
                }
                out.push('\n');
                pad(out, indent);
                out.push('}');
            }
        }
    }
}

fn pad(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

impl From<bool> for Json {
    fn from(b: bool) -> Json {
        Json::Bool(b)
    }
}
impl From<i64> for Json {
    fn from(i: i64) -> Json {
        Json::Int(i)
    }
}
impl From<u64> for Json {
    fn from(u: u64) -> Json {
        Json::UInt(u)
    }
}
impl From<usize> for Json {
    fn from(u: usize) -> Json {
        Json::UInt(u as u64)
    }
}
impl From<i32> for Json {
    fn from(i: i32) -> Json {
        Json::Int(i as i64)
    }
}
impl From<f64> for Json {
    fn from(x: f64) -> Json {
        Json::Float(x)
    }
}
impl From<&str> for Json {
    fn from(s: &str) -> Json {
        Json::Str(s.to_string())
    }
}
impl From<String> for Json {
    fn from(s: String) -> Json {
        Json::Str(s)
    }
}
impl<T: Into<Json>> From<Vec<T>> for Json {
    fn from(v: Vec<T>) -> Json {
        Json::Array(v.into_iter().map(Into::into).collect())
    }
}

/// Matrix as {"dim", "re", "im"} with row-major entry order, matching the
/// serde form of [`ComplexMatrix`].
pub fn matrix_json(m: &ComplexMatrix) -> Json {
    Json::object()
        .with("dim", m.dim())
        .with(
            "re",
            Json::Array(m.entries().iter().map(|z| Json::Float(z.re)).collect()),
        )
        .with(
            "im",
            Json::Array(m.entries().iter().map(|z| Json::Float(z.im)).collect()),
        )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_parseable_json_with_full_precision() {
        let report = Json::object()
            .with("name", "demo")
            .with("value", 0.1 + 0.2)
            .with("count", 3u64)
            .with("flags", vec![true, false]);
        let text = report.render();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        // 17 significant digits round-trip the f64 exactly
        assert_eq!(parsed["value"].as_f64().unwrap(), 0.1 + 0.2);
        assert_eq!(parsed["count"].as_u64().unwrap(), 3);
    }

    #[test]
    fn rendering_is_deterministic() {
        let build = || {
            Json::object()
                .with("b", 2u64)
                .with("a", vec![1.5f64, -0.25])
                .render()
        };
        assert_eq!(build(), build());
    }
}
