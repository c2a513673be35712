use std::path::PathBuf;

use clap::Args;
use degprobe::boolfun::{Anf, TruthTable};
use degprobe::catalog::{builtin_reps, load_reps, RepEntry};
use degprobe::{Error, Result};

/// A Boolean function given as ANF text or as a truth-table file.
#[derive(Args, Debug, Clone)]
pub struct FunctionArgs {
    /// ANF text such as "x1x2x3 + x4x5x6"
    #[arg(long, conflicts_with = "tt")]
    pub expr: Option<String>,
    /// Truth-table file: "n=<int>" header, then the table
    #[arg(long)]
    pub tt: Option<PathBuf>,
    /// The table line is lowercase hex rather than bits
    #[arg(long, requires = "tt")]
    pub hex: bool,
    /// Number of variables; inferred from the highest variable when omitted
    #[arg(long)]
    pub n: Option<usize>,
}

pub struct Function {
    pub anf: Anf,
    pub table: TruthTable,
    pub from_table: bool,
}

impl FunctionArgs {
    pub fn load(&self) -> Result<Function> {
        match (&self.expr, &self.tt) {
            (Some(text), _) => {
                let anf = match self.n {
                    Some(n) => Anf::parse(text, n)?,
                    None => Anf::parse_infer_vars(text)?,
                };
                let table = anf.to_truth_table();
                Ok(Function {
                    anf,
                    table,
                    from_table: false,
                })
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                let table = TruthTable::parse_file(&text, self.hex)?;
                if let Some(n) = self.n {
                    if n != table.n() {
                        return Err(Error::Domain(format!(
                            "--n {n} disagrees with the file header n={}",
                            table.n()
                        )));
                    }
                }
                let anf = Anf::from_truth_table(&table);
                Ok(Function {
                    anf,
                    table,
                    from_table: true,
                })
            }
            (None, None) => Err(Error::Domain("give --expr or --tt".into())),
        }
    }
}

/// `builtin:<degree>` or a path to an `id: ANF` file.
pub fn load_source(source: &str, n: usize, degree: Option<usize>) -> Result<Vec<RepEntry>> {
    if let Some(d) = source.strip_prefix("builtin:") {
        let d: usize = d.parse().map_err(|_| Error::Parse {
            location: "--reps".into(),
            message: format!("bad degree {d:?}"),
        })?;
        let reps = builtin_reps(d);
        if reps.is_empty() {
            eprintln!("note: no built-in list for degree {d}; supply a file instead");
        }
        if n != 8 && !reps.is_empty() {
            return Err(Error::Domain(format!(
                "built-in lists have 8 variables, not {n}"
            )));
        }
        return Ok(reps);
    }
    let degree =
        degree.ok_or_else(|| Error::Domain("--degree is required for a file source".into()))?;
    load_reps(source, n, degree)
}
