use std::io::Write;

use bernmat_core::exact::rational_bits;
use bernmat_core::BigRational;

use crate::Failure;

/// Total bits across `values`, checked against `BERNMAT_MAX_BITS` when set.
pub fn check_bits<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> Result<(), Failure> {
    let Some(cap) = std::env::var("BERNMAT_MAX_BITS")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
    else {
        return Ok(());
    };
    let bits: u64 = values.into_iter().map(rational_bits).sum();
    if bits > cap {
        return Err(Failure::TooLarge { bits, cap });
    }
    Ok(())
}

pub fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

pub fn csv_err(e: csv::Error) -> Failure {
    Failure::Io(e.to_string())
}

pub fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Io(e.to_string()))
}

/// Writes to standard output; a closed pipe counts as an I/O error.
pub fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| Failure::Io(e.to_string()))
}
