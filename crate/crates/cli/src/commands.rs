use std::path::Path;
use std::time::Instant;

use bernmat_core::export::{build_triangle, TriangleKind};
use bernmat_core::matrix::{decomposition_row, row_report};
use bernmat_core::verify::{run_suite, Suite, VerifyOutcome};
use bernmat_core::{bernoulli_table, to_f64, BigRational, MInverse, Method, RowReport};
use serde::Serialize;

use crate::output::{check_bits, csv_err, csv_writer, emit, finish_csv, json};
use crate::{ExportFormat, Failure, Format};

#[derive(Serialize)]
struct BernoulliValue {
    n: usize,
    index: usize,
    method: String,
    value: String,
    approx: f64,
}

pub fn bernoulli(n: usize, method: Method, format: Format) -> Result<(), Failure> {
    let table = bernoulli_table(method, n);
    let value = table.b2n(n).expect("table covers 2n");
    check_bits([&value])?;
    let record = BernoulliValue {
        n,
        index: 2 * n,
        method: method.name().into(),
        value: value.to_string(),
        approx: to_f64(&value),
    };
    let text = match format {
        Format::Plain => format!(
            "B_{} = {} ({:e})\n",
            record.index, record.value, record.approx
        ),
        Format::Json => json(&record)?,
        Format::Csv => {
            let mut w = csv_writer();
            w.serialize(&record).map_err(csv_err)?;
            finish_csv(w)?
        }
    };
    emit(&text)
}

#[derive(Serialize)]
struct TermLine {
    column: usize,
    term: String,
    subtotal: String,
}

#[derive(Serialize)]
struct Decomposition<'a> {
    n: usize,
    sign: i8,
    total: String,
    terms: Vec<TermLine>,
    checks: &'a RowReport,
    passed: bool,
}

pub fn decompose(n: usize, format: Format) -> Result<(), Failure> {
    let minv = MInverse::new(n);
    let row = match decomposition_row(n, minv.inverse()) {
        Ok(row) => row,
        Err(e) => {
            eprintln!("row {n}: {e}");
            return Err(Failure::Check);
        }
    };
    let report = row_report(n, minv.inverse()).expect("row exists");
    check_bits(&row.terms)?;

    let subtotals = row.subtotals();
    let lines: Vec<TermLine> = row
        .columns
        .iter()
        .zip(&row.terms)
        .zip(&subtotals)
        .map(|((&column, t), s)| TermLine {
            column,
            term: t.to_string(),
            subtotal: s.to_string(),
        })
        .collect();
    let doc = Decomposition {
        n,
        sign: row.sign,
        total: row.total().to_string(),
        terms: lines,
        checks: &report,
        passed: report.passed(),
    };

    let text = match format {
        Format::Plain => plain_decomposition(&doc),
        Format::Json => json(&doc)?,
        Format::Csv => {
            let mut w = csv_writer();
            for line in &doc.terms {
                w.serialize(line).map_err(csv_err)?;
            }
            eprint!("{}", check_summary(&report));
            finish_csv(w)?
        }
    };
    emit(&text)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn plain_decomposition(doc: &Decomposition) -> String {
    let mut s = format!(
        "|B_{}| = {} as {} term(s), row sign {}\n",
        2 * doc.n,
        doc.total,
        doc.terms.len(),
        if doc.sign > 0 { '+' } else { '-' }
    );
    let width = doc
        .terms
        .iter()
        .map(|t| t.term.len())
        .max()
        .unwrap_or(4)
        .max(4);
    s += &format!("  {:>6}  {:<width$}  subtotal\n", "column", "term");
    for t in &doc.terms {
        s += &format!("  {:>6}  {:<width$}  {}\n", t.column, t.term, t.subtotal);
    }
    s + &check_summary(doc.checks)
}

fn check_summary(r: &RowReport) -> String {
    let word = |b: bool| if b { "pass" } else { "FAIL" };
    let opt = |b: Option<bool>| b.map_or("n/a", word);
    format!(
        "checks: sign_uniform {}, column1_vanishes {}, term_count {}, \
         strictly_decreasing {}, dominance {}, ratio_3_7 {}\n",
        word(r.sign_uniform),
        opt(r.column1_vanishes),
        word(r.term_count),
        word(r.strictly_decreasing),
        word(r.dominance),
        opt(r.ratio_3_7),
    )
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    suite: Suite,
    max_n: usize,
    terms: usize,
    passed: bool,
    outcomes: &'a [VerifyOutcome],
}

#[derive(Serialize)]
struct CaseLine<'a> {
    check_name: &'a str,
    range: String,
    case: &'a str,
    passed: bool,
    detail: &'a str,
}

pub fn verify(suite: Suite, max_n: usize, terms: usize, format: Format) -> Result<(), Failure> {
    let outcomes = run_suite(suite, max_n, terms);
    let passed = outcomes.iter().all(|o| o.passed);
    let text = match format {
        Format::Plain => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                s += &format!("{status} {} [{}]\n", o.check_name, o.range);
                if let Some(f) = &o.first_failure {
                    s += &format!("  first failure {}: {}\n", f.case, f.detail);
                }
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            s + &format!("{} checks, {failed} failed\n", outcomes.len())
        }
        Format::Json => json(&VerifyReport {
            suite,
            max_n,
            terms,
            passed,
            outcomes: &outcomes,
        })?,
        Format::Csv => {
            let mut w = csv_writer();
            for o in &outcomes {
                let range = o.range.to_string();
                for c in &o.cases {
                    w.serialize(CaseLine {
                        check_name: &o.check_name,
                        range: range.clone(),
                        case: &c.case,
                        passed: c.passed,
                        detail: &c.detail,
                    })
                    .map_err(csv_err)?;
                }
            }
            finish_csv(w)?
        }
    };
    emit(&text)?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub fn export(
    what: TriangleKind,
    rows: usize,
    format: ExportFormat,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let triangle = match build_triangle(what, rows) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{what}: {e}");
            return Err(Failure::Check);
        }
    };
    check_bits(triangle.rows.iter().flatten())?;
    let text = match format {
        ExportFormat::Csv => triangle.to_csv(),
        ExportFormat::Json => triangle.to_json() + "\n",
    };
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => emit(&text),
    }
}

#[derive(Serialize)]
struct Timing {
    method: &'static str,
    max_n: usize,
    seconds: f64,
}

pub fn bench(max_n: usize, methods: &[Method], format: Format) -> Result<(), Failure> {
    let requested = if methods.is_empty() {
        &Method::ALL[..]
    } else {
        methods
    };
    let mut selected: Vec<Method> = Vec::new();
    for &m in requested {
        if !selected.contains(&m) {
            selected.push(m);
        }
    }

    let mut timings = Vec::new();
    let mut reference: Option<(Method, Vec<BigRational>)> = None;
    for &method in &selected {
        let start = Instant::now();
        let table = bernoulli_table(method, max_n);
        let seconds = start.elapsed().as_secs_f64();
        let values: Vec<BigRational> = (1..=max_n)
            .map(|n| table.b2n(n).expect("table covers 2 max_n"))
            .collect();
        match &reference {
            None => reference = Some((method, values)),
            Some((first, expected)) => {
                if let Some(n) = (1..=max_n).find(|&n| values[n - 1] != expected[n - 1]) {
                    eprintln!("{method} disagrees with {first} at n={n}");
                    return Err(Failure::Check);
                }
            }
        }
        timings.push(Timing {
            method: method.name(),
            max_n,
            seconds,
        });
    }

    let text = match format {
        Format::Plain => {
            let mut s = format!("B_2..B_{}: {} method(s) agree\n", 2 * max_n, timings.len());
            for t in &timings {
                s += &format!("  {:<10} {:>10.4} s\n", t.method, t.seconds);
            }
            s
        }
        Format::Json => json(&timings)?,
        Format::Csv => {
            let mut w = csv_writer();
            for t in &timings {
                w.serialize(t).map_err(csv_err)?;
            }
            finish_csv(w)?
        }
    };
    emit(&text)
}
