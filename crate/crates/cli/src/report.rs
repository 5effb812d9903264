//! Machine-readable run reports: stable text and JSON renderings.
//!
//! Identical inputs yield byte-identical reports except for the elapsed-time
//! fields, which are excluded from the stability guarantee.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum TaskStatus {
    Pass,
    Fail,
    Unverified,
}

impl TaskStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            TaskStatus::Pass => "pass",
            TaskStatus::Fail => "fail",
            TaskStatus::Unverified => "unverified",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub task: String,
    pub status: TaskStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Ordered key/value payload: group tables, correspondence tables,
    /// witnesses, dimensions.
    pub details: Vec<(String, String)>,
    pub budget_used: u64,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unverified: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: u32,
    pub tool: String,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(tasks: Vec<TaskReport>, budget_exceeded: bool) -> Report {
        let pass = tasks.iter().filter(|t| t.status == TaskStatus::Pass).count();
        let fail = tasks.iter().filter(|t| t.status == TaskStatus::Fail).count();
        let unverified = tasks
            .iter()
            .filter(|t| t.status == TaskStatus::Unverified)
            .count();
        let exit_code = if budget_exceeded {
            3
        } else if fail > 0 {
            1
        } else {
            0
        };
        Report {
            format: 1,
            tool: "corings".into(),
            tasks,
            summary: Summary {
                pass,
                fail,
                unverified,
                exit_code,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("corings report format {}\n", self.format));
        for t in &self.tasks {
            out.push_str(&format!("task {}: {}\n", t.task, t.status.as_str()));
            if let Some(w) = &t.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
            for (k, v) in &t.details {
                out.push_str(&format!("  {k}: {v}\n"));
            }
            out.push_str(&format!("  budget_used: {}\n", t.budget_used));
            out.push_str(&format!("  elapsed_ms: {}\n", t.elapsed_ms));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} unverified\n",
            self.summary.pass, self.summary.fail, self.summary.unverified
        ));
        out.push_str(&format!("exit: {}\n", self.summary.exit_code));
        out
    }

    /// The rendering with timing lines removed, for stability comparisons.
    pub fn stable_text(&self) -> String {
        self.to_text()
            .lines()
            .filter(|l| !l.trim_start().starts_with("elapsed_ms:"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_status_priority() {
        let pass = TaskReport {
            task: "validate(S)".into(),
            status: TaskStatus::Pass,
            witness: None,
            details: vec![],
            budget_used: 0,
            elapsed_ms: 0,
        };
        let fail = TaskReport {
            status: TaskStatus::Fail,
            ..pass.clone()
        };
        assert_eq!(Report::new(vec![pass.clone()], false).summary.exit_code, 0);
        assert_eq!(Report::new(vec![fail.clone()], false).summary.exit_code, 1);
        assert_eq!(Report::new(vec![fail], true).summary.exit_code, 3);
    }

    #[test]
    fn stable_text_strips_timing() {
        let t = TaskReport {
            task: "coring(S)".into(),
            status: TaskStatus::Pass,
            witness: None,
            details: vec![("dim".into(), "8".into())],
            budget_used: 5,
            elapsed_ms: 1234,
        };
        let r = Report::new(vec![t], false);
        assert!(r.to_text().contains("elapsed_ms: 1234"));
        assert!(!r.stable_text().contains("elapsed_ms"));
        assert!(r.stable_text().contains("dim: 8"));
    }
}
