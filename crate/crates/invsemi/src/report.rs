//! Plain-text reports: one `CHECK <name>: PASS|FAIL` line per verified
//! clause, with optional witness text on failures and free-form info lines
//! in between. Rendering is byte-stable: no hashing, no timestamps, lines
//! appear in the order they were recorded.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Line {
    Info(String),
    Check {
        name: String,
        pass: bool,
        witness: Option<String>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<Line>,
}

impl Report {
    pub fn new() -> Self {
        Report { lines: Vec::new() }
    }

    pub fn info(&mut self, text: impl Into<String>) {
        self.lines.push(Line::Info(text.into()));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.lines.push(Line::Check {
            name: name.into(),
            pass,
            witness: None,
        });
    }

    /// Record a check with witness text that is only printed on failure.
    pub fn check_with(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.lines.push(Line::Check {
            name: name.into(),
            pass,
            witness: Some(witness.into()),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| match l {
            Line::Info(_) => true,
            Line::Check { pass, .. } => *pass,
        })
    }

    pub fn check_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l, Line::Check { .. }))
            .count()
    }

    /// 0 when every check passed, 1 otherwise. Input errors never reach a
    /// report; callers map them to exit code 2.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Info(text) => {
                    out.push_str(text);
                }
                Line::Check {
                    name,
                    pass,
                    witness,
                } => {
                    out.push_str("CHECK ");
                    out.push_str(name);
                    out.push_str(if *pass { ": PASS" } else { ": FAIL" });
                    if let (false, Some(w)) = (pass, witness) {
                        out.push(' ');
                        out.push_str(w);
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
