use std::fmt;

/// Ordered `key=value` lines describing one run.
///
/// Values are printed verbatim with newlines replaced by ` | `, so every
/// entry stays on one line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self::default();
        r.push("command", command);
        r
    }

    /// Sets `key`, replacing an earlier value for the same key.
    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        let value = value.to_string().replace('\n', " | ");
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((key.to_string(), value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Parses the rendered form back.
    pub fn parse(text: &str) -> Self {
        let entries =
            text.lines().filter_map(|l| l.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Self { entries }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
