//! Structured command output: a machine-readable section of sorted
//! `key: value` lines plus a human-readable section. The process exit
//! code is a function of the machine section alone.

use crate::torsion::Verdict;
use std::collections::BTreeMap;
use std::fmt::Display;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Default)]
pub struct Report {
    machine: BTreeMap<String, String>,
    human: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn put(&mut self, key: &str, value: impl Display) {
        self.machine.insert(key.to_string(), value.to_string());
    }

    pub fn set_overall(&mut self, v: Verdict) {
        self.put("overall", v);
    }

    pub fn set_error(&mut self, e: impl Display) {
        self.put("overall", "error");
        self.put("error", e);
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine.get(key).map(String::as_str)
    }

    /// 0 verified, 1 refuted, 2 inconclusive, 3 error, read back from the
    /// machine section.
    pub fn exit_code(&self) -> i32 {
        match self.machine.get("overall").map(String::as_str) {
            Some("verified") => EXIT_VERIFIED,
            Some("refuted") => EXIT_REFUTED,
            Some("inconclusive") => EXIT_INCONCLUSIVE,
            _ => EXIT_ERROR,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("== machine ==\n");
        for (k, v) in &self.machine {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out.push_str("== human ==\n");
        for line in &self.human {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_machine_section() {
        let mut r = Report::new();
        r.set_overall(Verdict::Verified);
        assert_eq!(r.exit_code(), EXIT_VERIFIED);
        r.set_overall(Verdict::Refuted);
        assert_eq!(r.exit_code(), EXIT_REFUTED);
        r.set_overall(Verdict::Inconclusive);
        assert_eq!(r.exit_code(), EXIT_INCONCLUSIVE);
        r.set_error("boom");
        assert_eq!(r.exit_code(), EXIT_ERROR);
    }

    #[test]
    fn machine_section_is_sorted() {
        let mut r = Report::new();
        r.put("zebra", 1);
        r.put("alpha", 2);
        let text = r.render();
        let za = text.find("zebra").unwrap();
        let al = text.find("alpha").unwrap();
        assert!(al < za);
    }
}
