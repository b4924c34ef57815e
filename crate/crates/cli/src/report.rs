use serde_json::{Map, Value};

/// Command output. Keys are kept sorted, so identical input gives
/// byte-identical output in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub results: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), results: Map::new() }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        serde_json::to_string_pretty(&Value::Object(root)).expect("a JSON value always serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        flatten("", &Value::Object(self.results.clone()), &mut out);
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_string) => {
            for item in items {
                out.push_str(&format!("{prefix}: {}\n", item.as_str().unwrap_or_default()));
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
