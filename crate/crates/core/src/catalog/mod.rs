//! Class representatives, batch sweeps over them, and histogram tables.

mod builtin;

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfun::{format_anf, Anf, Degree};
use crate::degtest::{dt_from_add, exact_add_auto};
use crate::error::{Error, Result};
use crate::prob::ExactProb;

/// Digits used when comparing against stored expected values.
pub const CHECK_DIGITS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepEntry {
    pub id: String,
    pub n: usize,
    pub anf_text: String,
    pub anf: Anf,
    pub degree: usize,
    pub expected_add: Option<String>,
    pub expected_dt: Option<String>,
}

impl RepEntry {
    /// Parses `anf_text` and checks that it has exactly the given degree.
    pub fn new(id: &str, anf_text: &str, n: usize, degree: usize) -> Result<Self> {
        let anf = Anf::parse(anf_text, n)?;
        if anf.degree() != Degree::Exactly(degree) {
            return Err(Error::domain(format!(
                "{id}: expected degree {degree}, found {}",
                anf.degree()
            )));
        }
        Ok(RepEntry {
            id: id.to_string(),
            n,
            anf_text: anf_text.to_string(),
            anf,
            degree,
            expected_add: None,
            expected_dt: None,
        })
    }

    pub fn monomial_count(&self) -> usize {
        self.anf.len()
    }
}

fn normalise(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The embedded lists in 8 variables for degrees 1, 2 and 3. Other
/// degrees give an empty list.
pub fn builtin_reps(degree: usize) -> Vec<RepEntry> {
    const N: usize = 8;
    let build = |id: &str, anf: &str, add: Option<&str>, dt: &str| {
        let mut e = RepEntry::new(id, &normalise(anf), N, degree).expect("embedded entry is valid");
        e.expected_add = add.map(str::to_string);
        e.expected_dt = Some(dt.to_string());
        e
    };
    match degree {
        1 => builtin::DEGREE1
            .iter()
            .map(|&(id, anf, dt)| build(id, anf, None, dt))
            .collect(),
        2 => builtin::DEGREE2
            .iter()
            .map(|&(id, anf, dt)| build(id, anf, None, dt))
            .collect(),
        3 => builtin::DEGREE3
            .iter()
            .map(|&(id, anf, add, dt)| build(id, anf, Some(add), dt))
            .collect(),
        _ => Vec::new(),
    }
}

/// Reads `id: ANF` lines. `#` starts a comment; blank lines are skipped.
/// Every entry must have degree `degree`, and no two entries may share a
/// monomial set.
pub fn parse_reps(text: &str, n: usize, degree: usize) -> Result<Vec<RepEntry>> {
    let mut out: Vec<RepEntry> = Vec::new();
    let mut seen: HashMap<Anf, (usize, String)> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::parse(format!("line {line_no}"), msg);
        let (id, anf_text) = line
            .split_once(':')
            .ok_or_else(|| at("expected `id: ANF`".to_string()))?;
        let id = id.trim();
        let anf_text = anf_text.trim();
        if id.is_empty() {
            return Err(at("empty id".to_string()));
        }
        let entry = RepEntry::new(id, anf_text, n, degree).map_err(|e| match e {
            Error::Parse { location, message } => at(format!("{location}: {message}")),
            other => at(other.to_string()),
        })?;
        if let Some((prev_line, prev_id)) = seen.get(&entry.anf) {
            return Err(at(format!(
                "{id} has the same monomials as {prev_id} on line {prev_line}"
            )));
        }
        seen.insert(entry.anf.clone(), (line_no, id.to_string()));
        out.push(entry);
    }
    Ok(out)
}

pub fn load_reps(path: impl AsRef<Path>, n: usize, degree: usize) -> Result<Vec<RepEntry>> {
    let text = std::fs::read_to_string(path)?;
    parse_reps(&text, n, degree)
}

/// Monomial-wise complement of each entry inside `x_1⋯x_n`. Ids get a `^c`
/// suffix, or lose it when already present; expected values are dropped.
pub fn derive_complement_reps(reps: &[RepEntry], n: usize) -> Result<Vec<RepEntry>> {
    reps.iter()
        .map(|e| {
            if e.n != n {
                return Err(Error::domain(format!(
                    "{}: has {} variables, not {n}",
                    e.id, e.n
                )));
            }
            if e.anf.homogeneous_degree().is_none() {
                return Err(Error::domain(format!("{}: not homogeneous", e.id)));
            }
            let anf = e.anf.complement()?;
            let id = match e.id.strip_suffix("^c") {
                Some(base) => base.to_string(),
                None => format!("{}^c", e.id),
            };
            Ok(RepEntry {
                id,
                n,
                anf_text: format_anf(&anf),
                degree: n - e.degree,
                anf,
                expected_add: None,
                expected_dt: None,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub monomial_count: usize,
    pub dd_k: ExactProb,
    pub add_k: ExactProb,
    pub dt_k: ExactProb,
    pub elapsed: Duration,
}

/// Computes `add_k` and `dt_k` for every entry and sorts the rows by
/// `dt_k` (stable, so equal values keep input order). `workers == 0` uses
/// the ambient thread pool.
pub fn sweep(reps: &[RepEntry], k: usize, workers: usize) -> Result<Vec<SweepRow>> {
    let Some(first) = reps.first() else {
        return Ok(Vec::new());
    };
    let n = first.n;
    if let Some(e) = reps.iter().find(|e| e.n != n) {
        return Err(Error::domain(format!(
            "mixed variable counts: {} has {}, {} has {n}",
            e.id, e.n, first.id
        )));
    }
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "need 1 <= k <= n (n = {n}, k = {k})"
        )));
    }
    let run = || -> Result<Vec<SweepRow>> {
        reps.par_iter()
            .map(|e| {
                let start = Instant::now();
                let tt = e.anf.to_truth_table();
                let add_k = exact_add_auto(&tt, k)?;
                let dt_k = dt_from_add(&add_k, n, k);
                Ok(SweepRow {
                    id: e.id.clone(),
                    n,
                    k,
                    monomial_count: e.monomial_count(),
                    dd_k: e.anf.dd_k(k)?,
                    add_k,
                    dt_k,
                    elapsed: start.elapsed(),
                })
            })
            .collect()
    };
    let mut rows = if workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::domain(e.to_string()))?
            .install(run)?
    };
    rows.sort_by(|a, b| a.dt_k.cmp(&b.dt_k));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub id: String,
    pub column: &'static str,
    pub expected: String,
    pub computed: String,
}

/// Compares rows against the expected values of the entries with the same
/// id, at [`CHECK_DIGITS`] rounded decimals.
pub fn check_expected(rows: &[SweepRow], reps: &[RepEntry]) -> Vec<Mismatch> {
    let by_id: HashMap<&str, &RepEntry> = reps.iter().map(|e| (e.id.as_str(), e)).collect();
    let mut out = Vec::new();
    for row in rows {
        let Some(e) = by_id.get(row.id.as_str()) else {
            continue;
        };
        for (column, expected, value) in [
            ("add_k", &e.expected_add, &row.add_k),
            ("dt_k", &e.expected_dt, &row.dt_k),
        ] {
            if let Some(expected) = expected {
                let computed = value.to_decimal(CHECK_DIGITS);
                if &computed != expected {
                    out.push(Mismatch {
                        id: row.id.clone(),
                        column,
                        expected: expected.clone(),
                        computed,
                    });
                }
            }
        }
    }
    out
}

/// One line of the sweep CSV or JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub id: String,
    pub n: usize,
    pub k: usize,
    pub monomials: usize,
    pub dd_k: String,
    pub add_k_rational: String,
    pub add_k: String,
    pub dt_k_rational: String,
    pub dt_k: String,
}

impl SweepRow {
    pub fn record(&self, precision: usize) -> SweepRecord {
        SweepRecord {
            id: self.id.clone(),
            n: self.n,
            k: self.k,
            monomials: self.monomial_count,
            dd_k: self.dd_k.rational_string(),
            add_k_rational: self.add_k.rational_string(),
            add_k: self.add_k.to_decimal(precision),
            dt_k_rational: self.dt_k.rational_string(),
            dt_k: self.dt_k.to_decimal(precision),
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::parse("csv", format!("{other:?}")),
    }
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], precision: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "id",
            "n",
            "k",
            "monomials",
            "dd_k",
            "add_k_rational",
            "add_k",
            "dt_k_rational",
            "dt_k",
        ])
        .map_err(csv_error)?;
    }
    for row in rows {
        w.serialize(row.record(precision)).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_json<W: Write>(rows: &[SweepRow], precision: usize, mut out: W) -> Result<()> {
    let records: Vec<SweepRecord> = rows.iter().map(|r| r.record(precision)).collect();
    serde_json::to_writer_pretty(&mut out, &records).map_err(|e| Error::domain(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Reads the `dt_k_rational` column of a sweep CSV.
pub fn read_sweep_dt<R: Read>(input: R) -> Result<Vec<ExactProb>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize::<SweepRecord>()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(csv_error)?;
            ExactProb::parse_rational(&rec.dt_k_rational).ok_or_else(|| {
                Error::parse(
                    format!("record {}", i + 1),
                    format!("bad rational {:?}", rec.dt_k_rational),
                )
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HistogramMode {
    EqualWidthBins(usize),
    PerDistinctValue,
}

impl Default for HistogramMode {
    fn default() -> Self {
        HistogramMode::EqualWidthBins(20)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HistogramSpec {
    pub mode: HistogramMode,
    /// `[min, max]`; taken from the data when absent.
    pub range: Option<(ExactProb, ExactProb)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bin {
    pub low: ExactProb,
    pub high: ExactProb,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Histogram {
    Bins(Vec<Bin>),
    Distinct(Vec<(ExactProb, usize)>),
}

impl Histogram {
    pub fn total(&self) -> usize {
        match self {
            Histogram::Bins(b) => b.iter().map(|b| b.count).sum(),
            Histogram::Distinct(d) => d.iter().map(|(_, c)| c).sum(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Histogram::Bins(b) => b.len(),
            Histogram::Distinct(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn write_csv<W: Write>(&self, precision: usize, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match self {
            Histogram::Bins(bins) => {
                w.write_record(["bin_low", "bin_high", "count"])
                    .map_err(csv_error)?;
                for b in bins {
                    w.write_record([
                        b.low.to_decimal(precision),
                        b.high.to_decimal(precision),
                        b.count.to_string(),
                    ])
                    .map_err(csv_error)?;
                }
            }
            Histogram::Distinct(values) => {
                w.write_record(["value", "count"]).map_err(csv_error)?;
                for (v, c) in values {
                    w.write_record([v.to_decimal(precision), c.to_string()])
                        .map_err(csv_error)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

pub fn histogram(rows: &[SweepRow], spec: &HistogramSpec) -> Result<Histogram> {
    let values: Vec<ExactProb> = rows.iter().map(|r| r.dt_k.clone()).collect();
    histogram_values(&values, spec)
}

/// Bins exact values. Equal-width bins are half-open except the last;
/// values outside an explicit range fall into the nearest edge bin.
pub fn histogram_values(values: &[ExactProb], spec: &HistogramSpec) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::domain("histogram of no values"));
    }
    match spec.mode {
        HistogramMode::PerDistinctValue => {
            let mut counts: BTreeMap<&ExactProb, usize> = BTreeMap::new();
            for v in values {
                *counts.entry(v).or_default() += 1;
            }
            Ok(Histogram::Distinct(
                counts.into_iter().map(|(v, c)| (v.clone(), c)).collect(),
            ))
        }
        HistogramMode::EqualWidthBins(count) => {
            if count == 0 {
                return Err(Error::domain("need at least one bin"));
            }
            let (lo, hi) = match &spec.range {
                Some((lo, hi)) if lo > hi => {
                    return Err(Error::domain("histogram range has min > max"));
                }
                Some(r) => r.clone(),
                None => (
                    values.iter().min().cloned().unwrap_or_default(),
                    values.iter().max().cloned().unwrap_or_default(),
                ),
            };
            let span = hi.as_rational() - lo.as_rational();
            let edge = |i: usize| {
                let step = &span * BigRational::from_integer(i.into())
                    / BigRational::from_integer(count.into());
                ExactProb::from_rational(lo.as_rational() + step)
            };
            let mut bins: Vec<Bin> = (0..count)
                .map(|i| Bin {
                    low: edge(i),
                    high: edge(i + 1),
                    count: 0,
                })
                .collect();
            for v in values {
                let idx = if span == BigRational::from_integer(0.into()) || v <= &lo {
                    0
                } else {
                    let scaled = (v.as_rational() - lo.as_rational())
                        * BigRational::from_integer(count.into())
                        / &span;
                    let q = scaled.numer().div_floor(scaled.denom());
                    q.to_usize().unwrap_or(count).min(count - 1)
                };
                bins[idx].count += 1;
            }
            Ok(Histogram::Bins(bins))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degtest::ClosedForm;
    use crate::gf2::lin_indep_probability;

    #[test]
    fn builtin_lists() {
        let d1 = builtin_reps(1);
        assert_eq!(d1.len(), 1);
        assert_eq!((d1[0].id.as_str(), d1[0].anf_text.as_str()), ("f", "x1"));
        assert_eq!(d1[0].expected_dt.as_deref(), Some("0.500000"));
        let d2 = builtin_reps(2);
        let dts: Vec<_> = d2.iter().map(|e| e.expected_dt.clone().unwrap()).collect();
        assert_eq!(dts, ["0.375000", "0.468750", "0.492188", "0.498047"]);
        let d3 = builtin_reps(3);
        assert_eq!(d3.len(), 31);
        assert_eq!(d3[0].id, "f_2");
        assert_eq!(d3[0].expected_add.as_deref(), Some("0.337275"));
        assert_eq!(d3[0].expected_dt.as_deref(), Some("0.328125"));
        assert!(d3.iter().all(|e| e.degree == 3 && e.n == 8));
        let f22 = d3.iter().find(|e| e.id == "f_22").unwrap();
        assert_eq!(f22.monomial_count(), 12);
        assert!(builtin_reps(4).is_empty());
        assert!(builtin_reps(0).is_empty());
    }

    #[test]
    fn builtin_ids_and_classes_are_distinct() {
        let d3 = builtin_reps(3);
        let text: String = d3
            .iter()
            .map(|e| format!("{}: {}\n", e.id, e.anf_text))
            .collect();
        assert_eq!(parse_reps(&text, 8, 3).unwrap(), {
            let mut v = d3.clone();
            for e in &mut v {
                e.expected_add = None;
                e.expected_dt = None;
            }
            v
        });
    }

    #[test]
    fn file_parsing() {
        let reps = parse_reps("f_4: x1x2x3 + x4x5x6\n", 8, 3).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].degree, 3);
        assert_eq!(reps[0].monomial_count(), 2);
        assert!(parse_reps("", 8, 3).unwrap().is_empty());
        let text = "# header\n\n  a: x1x2 # trailing\nb: x1x2 + x3x4\n";
        let reps = parse_reps(text, 4, 2).unwrap();
        assert_eq!(
            reps.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
            ["a", "b"]
        );
    }

    #[test]
    fn file_errors_carry_line_numbers() {
        let err = parse_reps("a: x1x2\nno colon here\n", 4, 2).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_reps("a: x1x2\n\nb: x1x2x3\n", 4, 2).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_reps("a: x1x2 + x3x4\nb: x3x4 + x1x2\n", 4, 2).unwrap_err();
        assert!(
            err.to_string().contains("line 2") && err.to_string().contains("a"),
            "{err}"
        );
        let err = parse_reps("a: x1x9\n", 8, 2).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = parse_reps(": x1x2\n", 8, 2).unwrap_err();
        assert!(err.to_string().contains("empty id"), "{err}");
    }

    #[test]
    fn complement_lists() {
        let d3 = builtin_reps(3);
        let c = derive_complement_reps(&d3, 8).unwrap();
        assert_eq!(c.len(), 31);
        assert!(c
            .iter()
            .all(|e| e.degree == 5 && e.anf.homogeneous_degree() == Some(5)));
        assert_eq!(c[0].id, "f_2^c");
        assert_eq!(c[0].anf_text, "x4x5x6x7x8");
        let back = derive_complement_reps(&c, 8).unwrap();
        for (a, b) in back.iter().zip(&d3) {
            assert_eq!((&a.id, &a.anf, a.degree), (&b.id, &b.anf, b.degree));
        }
        assert_eq!(
            derive_complement_reps(&builtin_reps(2), 8).unwrap().len(),
            4
        );
        let mixed = parse_reps("g: x1x2x3 + x1x2\n", 8, 3).unwrap();
        assert!(derive_complement_reps(&mixed, 8).is_err());
        assert!(derive_complement_reps(&d3, 9).is_err());
    }

    #[test]
    fn small_sweep() {
        let reps = parse_reps("b: x1x2 + x3x4\na: x1x2\nc: x1x2 + x3x4 + x1x3\n", 4, 2).unwrap();
        let rows = sweep(&reps, 2, 2).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(),
            ["a", "b", "c"]
        );
        assert_eq!(rows[0].dt_k, ExactProb::from_ratio(3, 8));
        assert_eq!(rows[1].dt_k, ExactProb::from_ratio(15, 32));
        for r in &rows {
            assert_eq!(r.dt_k, &r.add_k * &lin_indep_probability(4, 2));
        }
        assert_eq!(rows[2].dd_k, ExactProb::from_ratio(3, 6));
        let strip = |rows: Vec<SweepRow>| -> Vec<SweepRow> {
            rows.into_iter()
                .map(|r| SweepRow {
                    elapsed: Duration::ZERO,
                    ..r
                })
                .collect()
        };
        assert_eq!(strip(sweep(&reps, 2, 0).unwrap()), strip(rows.clone()));
        assert!(sweep(&reps, 5, 1).is_err());
        let mut mixed = reps.clone();
        mixed.push(RepEntry::new("d", "x1x2", 5, 2).unwrap());
        assert!(sweep(&mixed, 2, 1).is_err());
        assert!(sweep(&[], 2, 1).unwrap().is_empty());
    }

    #[test]
    fn top_monomial_in_eight_variables() {
        let reps = parse_reps("m: x1x2x3x4x5x6x7x8\n", 8, 8).unwrap();
        let rows = sweep(&reps, 8, 1).unwrap();
        assert_eq!(rows[0].dt_k.to_decimal(6), "0.289919");
        assert_eq!(
            rows[0].dt_k,
            crate::degtest::closed_form_dt(ClosedForm::Monomial(8)).unwrap()
        );
    }

    #[test]
    fn checking() {
        let reps = builtin_reps(2);
        let rows = sweep(&reps, 2, 0).unwrap();
        assert!(check_expected(&rows, &reps).is_empty());
        let mut wrong = reps.clone();
        wrong[1].expected_dt = Some("0.468751".into());
        let m = check_expected(&rows, &wrong);
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].id.as_str(), m[0].column), ("q_2", "dt_k"));
        assert_eq!(m[0].computed, "0.468750");
    }

    #[test]
    fn csv_and_json_output() {
        let reps = parse_reps("a: x1x2\n", 3, 2).unwrap();
        let rows = sweep(&reps, 2, 1).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, 6, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("id,n,k,monomials,dd_k,add_k_rational,add_k,dt_k_rational,dt_k")
        );
        let dt = &rows[0].dt_k;
        let add = &rows[0].add_k;
        assert_eq!(
            lines.next().unwrap(),
            format!(
                "a,3,2,1,1/3,{},{},{},{}",
                add.rational_string(),
                add.to_decimal(6),
                dt.rational_string(),
                dt.to_decimal(6)
            )
        );
        assert_eq!(read_sweep_dt(buf.as_slice()).unwrap(), vec![dt.clone()]);

        let mut empty = Vec::new();
        write_sweep_csv(&[], 6, &mut empty).unwrap();
        assert!(read_sweep_dt(empty.as_slice()).unwrap().is_empty());

        let mut json = Vec::new();
        write_sweep_json(&rows, 6, &mut json).unwrap();
        let back: Vec<SweepRecord> = serde_json::from_slice(&json).unwrap();
        assert_eq!(back, vec![rows[0].record(6)]);
    }

    fn probs(v: &[(i64, i64)]) -> Vec<ExactProb> {
        v.iter()
            .map(|&(p, q)| ExactProb::from_ratio(p, q))
            .collect()
    }

    #[test]
    fn histograms() {
        let one = probs(&[(1, 3)]);
        for mode in [
            HistogramMode::PerDistinctValue,
            HistogramMode::EqualWidthBins(20),
        ] {
            let h = histogram_values(&one, &HistogramSpec { mode, range: None }).unwrap();
            assert_eq!(h.total(), 1);
        }
        let h = histogram_values(
            &one,
            &HistogramSpec {
                mode: HistogramMode::PerDistinctValue,
                range: None,
            },
        )
        .unwrap();
        assert_eq!(
            h,
            Histogram::Distinct(vec![(ExactProb::from_ratio(1, 3), 1)])
        );

        let v = probs(&[(0, 1), (1, 4), (1, 2), (1, 2), (3, 4), (1, 1)]);
        let h = histogram_values(
            &v,
            &HistogramSpec {
                mode: HistogramMode::EqualWidthBins(4),
                range: None,
            },
        )
        .unwrap();
        let Histogram::Bins(bins) = &h else { panic!() };
        assert_eq!(
            bins.iter().map(|b| b.count).collect::<Vec<_>>(),
            [1, 1, 2, 2]
        );
        assert_eq!(bins[1].low, ExactProb::from_ratio(1, 4));

        let spec = HistogramSpec {
            mode: HistogramMode::EqualWidthBins(2),
            range: Some((ExactProb::from_ratio(1, 4), ExactProb::from_ratio(1, 2))),
        };
        let h = histogram_values(&v, &spec).unwrap();
        assert_eq!(h.total(), v.len());

        let d = histogram_values(
            &v,
            &HistogramSpec {
                mode: HistogramMode::PerDistinctValue,
                range: None,
            },
        )
        .unwrap();
        assert_eq!(d.len(), 5);
        let mut out = Vec::new();
        d.write_csv(3, &mut out).unwrap();
        assert!(String::from_utf8(out)
            .unwrap()
            .starts_with("value,count\n0.000,1\n0.250,1\n0.500,2\n"));
        let mut out = Vec::new();
        h.write_csv(2, &mut out).unwrap();
        assert!(String::from_utf8(out)
            .unwrap()
            .starts_with("bin_low,bin_high,count\n"));

        assert!(histogram_values(&[], &HistogramSpec::default()).is_err());
        assert_eq!(
            HistogramSpec::default().mode,
            HistogramMode::EqualWidthBins(20)
        );
    }

    #[test]
    fn table_distinct_values() {
        let rows = sweep(&builtin_reps(3), 3, 0).unwrap();
        let h = histogram(
            &rows,
            &HistogramSpec {
                mode: HistogramMode::PerDistinctValue,
                range: None,
            },
        )
        .unwrap();
        assert_eq!(h.len(), 16);
        assert_eq!(h.total(), 31);
    }
}
