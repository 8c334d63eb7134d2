//! CSV tables and number formatting shared by every command.

use std::io::Write;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(v: f64) -> String {
    // fold −0 into 0 so equal fields print equally
    format!("{:.16e}", v + 0.0)
}

/// Buffered CSV writer with `\n` line endings.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[&str]) -> csv::Result<Self> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Table { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> csv::Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)
    }

    pub fn numbers(&mut self, values: &[f64]) -> csv::Result<()> {
        self.row(values.iter().map(|&v| num(v)))
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("writes to a Vec do not fail")
    }
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&std::path::Path>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(bytes).and_then(|()| out.flush()) {
                // a reader such as `head` closing early is not a failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}
