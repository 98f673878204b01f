use serde_json::{Map, Value};

pub const SCHEMA: &str = "schubert-cli/1";

/// What a command produced: a text rendering, a JSON document and whether
/// every verification it ran passed.
pub struct Output {
    pub command: String,
    pub text: String,
    pub json: Map<String, Value>,
    pub ok: bool,
}

impl Output {
    pub fn new(command: &str, text: String, json: Value) -> Self {
        let json = match json {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Output {
            command: command.into(),
            text,
            json,
            ok: true,
        }
    }

    pub fn with_status(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("command".into(), self.command.clone().into());
        doc.insert("ok".into(), self.ok.into());
        for (k, v) in &self.json {
            doc.insert(k.clone(), v.clone());
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize")
    }
}
