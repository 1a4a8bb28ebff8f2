//! Run reports: an ordered, flat key/value tree with a text rendering and a
//! machine rendering that round-trips losslessly.

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report { entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let key = key.into();
        let value = value.into();
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        debug_assert!(!value.contains('\n'));
        self.entries.push((key, value));
    }

    /// Machine format: `key: value` lines in insertion order, starting with
    /// the format header. Deterministic byte-for-byte for a fixed run.
    pub fn render_machine(&self) -> String {
        let mut out = String::from("format: 1\n");
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    /// Inverse of render_machine; None when the header or a line is
    /// malformed.
    #[cfg(test)]
    pub fn parse_machine(text: &str) -> Option<Report> {
        let mut lines = text.lines();
        if lines.next()? != "format: 1" {
            return None;
        }
        let mut report = Report::new();
        for line in lines {
            let (k, v) = line.split_once(": ")?;
            report.entries.push((k.to_string(), v.to_string()));
        }
        Some(report)
    }
}
