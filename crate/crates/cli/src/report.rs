use serde::Serialize;
use serde_json::Value;

/// Outcome of one unit of work. Ordered by exit-code precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Unknown,
    Fail,
    GenerationFailed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
            Status::Error => 3,
            Status::GenerationFailed => 4,
        }
    }
}

/// Result for one input file, or for the file written by `gen`.
#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(skip)]
    pub text: String,
}

impl Item {
    pub fn error(path: &str, sha256: Option<String>, message: String) -> Self {
        Item {
            path: path.to_string(),
            sha256,
            status: Status::Error,
            error: Some(message),
            result: Value::Null,
            text: String::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub items: Vec<Item>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: Vec<String>, items: Vec<Item>, timestamp: Option<u64>) -> Self {
        let worst = items.iter().map(|i| i.status).max().unwrap_or(Status::Pass);
        // a FAIL outranks an UNKNOWN even though its code is smaller
        let exit_status = worst.exit_code();
        RunReport {
            command,
            timestamp,
            items,
            exit_status,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let many = self.items.len() > 1;
        for item in &self.items {
            if many {
                out.push_str(&format!("== {}\n", item.path));
            }
            out.push_str(&item.text);
        }
        out
    }

    /// `path: message` for every failed item, for standard error.
    pub fn errors(&self) -> Vec<String> {
        self.items
            .iter()
            .filter_map(|i| i.error.as_ref().map(|e| format!("{}: {e}", i.path)))
            .collect()
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(status: Status) -> Item {
        Item {
            path: "x".into(),
            sha256: None,
            status,
            error: None,
            result: Value::Null,
            text: String::new(),
        }
    }

    #[test]
    fn exit_precedence() {
        let code = |s: &[Status]| RunReport::new(vec![], s.iter().map(|&x| item(x)).collect(), None).exit_status;
        assert_eq!(code(&[]), 0);
        assert_eq!(code(&[Status::Pass, Status::Unknown]), 2);
        assert_eq!(code(&[Status::Unknown, Status::Fail]), 1);
        assert_eq!(code(&[Status::Fail, Status::Error, Status::Unknown]), 3);
    }
}
