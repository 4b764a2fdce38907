//! CSV tables emitted by the CLI.
//!
//! Every file starts with a `# altergraph <schema> v1` line followed by a
//! fixed column header. Reals carry 12 significant digits; an empty field
//! means undefined or not applicable.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::gain::{CurveBin, Histogram, NodeGains};
use crate::graph::Graph;
use crate::netstats::NetworkStats;
use crate::survey::TrialRow;

pub const STATS_COLUMNS: &[&str] = &[
    "name", "directed", "N", "E", "mean", "median", "std", "assortativity", "avg_clustering",
];
pub const GAIN_COLUMNS: &[&str] = &["node", "degree", "percentile_rank", "gain_mean", "gain_median"];
pub const CURVE_COLUMNS: &[&str] = &["bin_low", "bin_high", "value", "count"];
pub const HISTOGRAM_COLUMNS: &[&str] = &["bin_low", "bin_high", "count"];
/// The trailing `g_empirical` column is the mean per-node gain of the graph,
/// the alternative denominator for the ratio.
pub const TRIAL_COLUMNS: &[&str] = &[
    "trial", "size", "fraction", "r_used", "g_hat", "g_true", "ratio", "g_empirical",
];
pub const CONFIG_COLUMNS: &[&str] = &[
    "trial", "size", "model", "n", "b", "p", "m", "p_t", "mu", "seed", "mean_degree",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schema {
    Stats,
    Gain,
    Curve,
    Histogram,
    Trials,
    Configs,
}

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::Stats => "stats",
            Schema::Gain => "gain",
            Schema::Curve => "curve",
            Schema::Histogram => "histogram",
            Schema::Trials => "trials",
            Schema::Configs => "configs",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Schema::Stats => STATS_COLUMNS,
            Schema::Gain => GAIN_COLUMNS,
            Schema::Curve => CURVE_COLUMNS,
            Schema::Histogram => HISTOGRAM_COLUMNS,
            Schema::Trials => TRIAL_COLUMNS,
            Schema::Configs => CONFIG_COLUMNS,
        }
    }

    fn header_line(self) -> String {
        format!("# altergraph {} v1", self.name())
    }
}

/// Formats a real with 12 significant digits, shortest representation.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

/// A schema-tagged table of string cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub schema: Schema,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(schema: Schema) -> Self {
        Table {
            schema,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.schema.columns().len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e| Error::io("<output>", e);
        writeln!(out, "{}", self.schema.header_line()).map_err(io)?;
        let mut csv = csv::Writer::from_writer(out);
        csv.write_record(self.schema.columns())?;
        for row in &self.rows {
            csv.write_record(row)?;
        }
        csv.flush().map_err(io)?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        Ok(buf)
    }

    /// Reads a table and checks its schema line and column header.
    pub fn read<R: BufRead>(mut input: R, schema: Schema) -> Result<Table> {
        let mut first = String::new();
        input
            .read_line(&mut first)
            .map_err(|e| Error::io("<input>", e))?;
        if first.trim_end() != schema.header_line() {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected `{}`, found `{}`",
                    schema.header_line(),
                    first.trim_end()
                ),
            });
        }
        let mut rest = Vec::new();
        input
            .read_to_end(&mut rest)
            .map_err(|e| Error::io("<input>", e))?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(rest.as_slice());
        let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        if header != schema.columns() {
            return Err(Error::Parse {
                line: 2,
                message: format!("unexpected columns {header:?}"),
            });
        }
        let mut table = Table::new(schema);
        for record in reader.records() {
            table.rows.push(record?.iter().map(str::to_owned).collect());
        }
        Ok(table)
    }

    /// Cell `column` of every row, parsed as an optional real.
    pub fn real_column(&self, column: &str) -> Result<Vec<Option<f64>>> {
        let idx = self
            .schema
            .columns()
            .iter()
            .position(|c| *c == column)
            .ok_or_else(|| Error::usage(format!("no column `{column}`")))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| parse_opt_real(&row[idx], i + 3))
            .collect()
    }
}

fn parse_opt_real(cell: &str, line: usize) -> Result<Option<f64>> {
    if cell.is_empty() {
        return Ok(None);
    }
    cell.parse::<f64>().map(Some).map_err(|_| Error::Parse {
        line,
        message: format!("`{cell}` is not a number"),
    })
}

pub fn stats_row(name: &str, s: &NetworkStats) -> Vec<String> {
    vec![
        name.to_owned(),
        s.directed.to_string(),
        s.nodes.to_string(),
        s.edges.to_string(),
        fmt_real(s.mean),
        fmt_real(s.median),
        fmt_real(s.std),
        fmt_opt(s.assortativity),
        fmt_opt(s.avg_clustering),
    ]
}

pub fn gain_table(g: &Graph, rows: &[NodeGains]) -> Table {
    let mut t = Table::new(Schema::Gain);
    for r in rows {
        t.push(vec![
            g.label(r.node).into_owned(),
            r.degree.to_string(),
            fmt_real(r.percentile_rank),
            fmt_opt(r.gain_mean),
            fmt_opt(r.gain_median),
        ]);
    }
    t
}

pub fn curve_table(curve: &[CurveBin]) -> Table {
    let mut t = Table::new(Schema::Curve);
    for b in curve {
        t.push(vec![
            fmt_real(b.low),
            fmt_real(b.high),
            fmt_opt(b.value),
            b.count.to_string(),
        ]);
    }
    t
}

pub fn read_curve<R: BufRead>(input: R) -> Result<Vec<CurveBin>> {
    let t = Table::read(input, Schema::Curve)?;
    t.rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let line = i + 3;
            let req = |cell: &str| {
                parse_opt_real(cell, line)?.ok_or_else(|| Error::Parse {
                    line,
                    message: "missing bin bound".into(),
                })
            };
            Ok(CurveBin {
                low: req(&row[0])?,
                high: req(&row[1])?,
                value: parse_opt_real(&row[2], line)?,
                count: row[3].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad count `{}`", row[3]),
                })?,
            })
        })
        .collect()
}

/// Histogram rows, with an underflow row `(-inf, e0)` first and an overflow
/// row `(e_last, inf)` last.
pub fn histogram_table(h: &Histogram) -> Table {
    let mut t = Table::new(Schema::Histogram);
    let last = h.edges[h.edges.len() - 1];
    t.push(vec![fmt_real(f64::NEG_INFINITY), fmt_real(h.edges[0]), h.underflow.to_string()]);
    for (w, count) in h.edges.windows(2).zip(&h.counts) {
        t.push(vec![fmt_real(w[0]), fmt_real(w[1]), count.to_string()]);
    }
    t.push(vec![fmt_real(last), fmt_real(f64::INFINITY), h.overflow.to_string()]);
    t
}

pub fn read_histogram<R: BufRead>(input: R) -> Result<Histogram> {
    let t = Table::read(input, Schema::Histogram)?;
    if t.rows.len() < 3 {
        return Err(Error::Parse {
            line: 3,
            message: "a histogram needs underflow, overflow and at least one bin".into(),
        });
    }
    let count = |i: usize| -> Result<usize> {
        t.rows[i][2].parse().map_err(|_| Error::Parse {
            line: i + 3,
            message: format!("bad count `{}`", t.rows[i][2]),
        })
    };
    let lows = t.real_column("bin_low")?;
    let highs = t.real_column("bin_high")?;
    let k = t.rows.len();
    let mut edges: Vec<f64> = lows[1..k - 1].iter().map(|x| x.unwrap_or(f64::NAN)).collect();
    edges.push(highs[k - 2].unwrap_or(f64::NAN));
    Ok(Histogram {
        edges,
        counts: (1..k - 1).map(count).collect::<Result<_>>()?,
        underflow: count(0)?,
        overflow: count(k - 1)?,
    })
}

pub fn trials_table(rows: &[TrialRow]) -> Table {
    let mut t = Table::new(Schema::Trials);
    for r in rows {
        let e = &r.result;
        t.push(vec![
            r.trial.to_string(),
            r.size.to_string(),
            fmt_real(e.fraction),
            e.r_used.to_string(),
            fmt_real(e.g_hat),
            fmt_real(e.g_true),
            fmt_real(e.ratio),
            fmt_real(e.g_empirical),
        ]);
    }
    t
}

/// Generator configuration behind each synthetic trial.
pub fn configs_table(rows: &[TrialRow]) -> Table {
    let mut t = Table::new(Schema::Configs);
    for r in rows {
        if let Some(c) = &r.config {
            t.push(vec![
                r.trial.to_string(),
                r.size.to_string(),
                c.model.tag().to_owned(),
                c.n.to_string(),
                c.b.to_string(),
                fmt_real(c.p),
                c.m.to_string(),
                fmt_real(c.p_t),
                fmt_real(c.mu),
                c.seed.to_string(),
                fmt_real(c.expected_mean_degree()),
            ]);
        }
    }
    t
}
