use std::io;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

pub struct Output {
    pub format: Format,
    pub float: bool,
}

impl Output {
    pub fn json<T: Serialize>(&self, value: &T) -> io::Result<()> {
        use std::io::Write;
        let mut stdout = io::stdout().lock();
        serde_json::to_writer_pretty(&mut stdout, value)?;
        writeln!(stdout)
    }

    pub fn csv(&self, header: &[&str]) -> csv::Result<csv::Writer<io::StdoutLock<'static>>> {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record(header)?;
        Ok(w)
    }
}

/// A JSON scalar without the quotes a string would carry.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Floating value of an exact rational written as `p` or `p/q`.
pub fn float_of(text: &str) -> String {
    match vvgamma_core::exact_core::parse_rational(text) {
        Ok(q) => vvgamma_core::exact_core::rational_to_f64(&q).to_string(),
        Err(_) => text.to_string(),
    }
}
