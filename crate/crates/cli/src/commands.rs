//! The subcommands. Each writes its primary output to `out`; diagnostics go
//! through `log`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use khlap::analysis::{HeatmapTable, MirrorReport, SymmetryReport};
use khlap::pd::{parse_table, TableEntry};
use khlap::spectral::Spectrum;
use khlap::table::{bundled_knot, bundled_table, knot_name_cmp};
use khlap::{mirror_diagram, parse_pd, LinkDiagram};
use log::{error, info};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{to_json, write_atomic, Cache, CacheStatus};
use crate::error::CliError;
use crate::format::{format_eigenvalue, format_g, Precision};
use crate::record::{CellRecord, ResultRecord, VERSION};
use crate::{BatchArgs, HeatmapArgs, InputArgs, OutputFormat, ReportArgs, SpectraArgs};

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Resolves the input to a display name and a diagram.
pub fn load_diagram(input: &InputArgs) -> Result<(String, LinkDiagram), CliError> {
    if let Some(name) = &input.knot {
        let d = bundled_knot(name)
            .ok_or_else(|| CliError::Usage(format!("`{name}` is not in the bundled table")))?;
        return Ok((name.clone(), d));
    }
    let arg = input.input.as_deref().unwrap_or("-");
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(io_error(Path::new("<stdin>")))?;
        s
    } else if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(io_error(Path::new(arg)))?
    } else if arg.contains('[') || arg.trim().is_empty() {
        arg.to_string()
    } else {
        return Err(CliError::Io {
            path: arg.into(),
            source: io::Error::new(io::ErrorKind::NotFound, "no such file"),
        });
    };
    let d = parse_pd(&text)?;
    let name = if arg == "-" || !Path::new(arg).is_file() {
        "input".to_string()
    } else {
        Path::new(arg)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("input")
            .to_string()
    };
    Ok((name, d))
}

/// Rounds for output. Values below the spectrum's zero cutoff become 0.
fn rounded(v: f64, cutoff: f64, precision: Precision) -> f64 {
    match precision {
        Precision::Full => v,
        _ => format_eigenvalue(v, cutoff, precision)
            .parse()
            .expect("formatted float parses"),
    }
}

fn cell_json(c: &CellRecord, precision: Precision) -> Value {
    let cutoff = Spectrum::new(c.spectrum.clone()).cutoff();
    json!({
        "r": c.r,
        "q": c.q,
        "dim": c.dim,
        "betti": c.betti,
        "lambda": c.lambda.map(|l| rounded(l, cutoff, precision)),
        "spectrum": c.spectrum.iter().map(|&v| rounded(v, cutoff, precision)).collect::<Vec<_>>(),
    })
}

fn cell_csv_line(c: &CellRecord, precision: Precision) -> String {
    let cutoff = Spectrum::new(c.spectrum.clone()).cutoff();
    let spectrum: Vec<String> = c
        .spectrum
        .iter()
        .map(|&v| format_eigenvalue(v, cutoff, precision))
        .collect();
    let lambda = c.lambda.map(|l| format_g(l, precision)).unwrap_or_default();
    format!("{},{},{},{},{},{}", c.r, c.q, c.dim, c.betti, lambda, spectrum.join(" "))
}

fn empty_cell(r: i32, q: i32) -> CellRecord {
    CellRecord {
        r,
        q,
        dim: 0,
        betti: 0,
        lambda: None,
        spectrum: Vec::new(),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(io_error(Path::new("<stdout>")))
}

pub fn spectra(args: &SpectraArgs, cache: &Cache, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, d) = load_diagram(&args.input)?;
    let (record, _) = cache.get_or_compute(&d)?;
    let cells: Vec<CellRecord> = match (args.r, args.q) {
        (Some(r), Some(q)) => vec![record.cell(r, q).cloned().unwrap_or_else(|| empty_cell(r, q))],
        _ => record.cells.clone(),
    };
    let text = match args.format {
        OutputFormat::Json => {
            let value = json!({
                "hash": record.hash,
                "pd": record.pd,
                "crossings": record.crossings,
                "n_plus": record.n_plus,
                "n_minus": record.n_minus,
                "poincare": record.poincare,
                "jones": record.jones,
                "cells": cells.iter().map(|c| cell_json(c, args.precision)).collect::<Vec<_>>(),
            });
            to_json(&value)
        }
        OutputFormat::Csv => {
            let mut s = String::from("r,q,dim,betti,lambda,spectrum\n");
            for c in &cells {
                let _ = writeln!(s, "{}", cell_csv_line(c, args.precision));
            }
            s
        }
    };
    write_out(out, &text)
}

pub fn heatmap(args: &HeatmapArgs, cache: &Cache, out: &mut dyn Write) -> Result<(), CliError> {
    let (_, d) = load_diagram(&args.input)?;
    let (record, _) = cache.get_or_compute(&d)?;
    let heat = HeatmapTable::from_table(&record.table());
    let csv = heat.to_csv(|v| format_g(v, args.precision));
    if let Some(svg) = &args.svg {
        write_atomic(svg, &heat.to_svg())?;
    }
    match &args.output {
        Some(path) => write_atomic(path, &csv),
        None => write_out(out, &csv),
    }
}

fn report_name(args: &ReportArgs, loaded: String) -> String {
    args.name.clone().unwrap_or(loaded)
}

pub fn symmetry(args: &ReportArgs, cache: &Cache, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = load_diagram(&args.input)?;
    let (record, _) = cache.get_or_compute(&d)?;
    let report = SymmetryReport::from_table(&report_name(args, name), &record.table(), args.tol);
    write_out(out, &to_json(&report))
}

pub fn mirror(args: &ReportArgs, cache: &Cache, out: &mut dyn Write) -> Result<(), CliError> {
    let (name, d) = load_diagram(&args.input)?;
    let (record, _) = cache.get_or_compute(&d)?;
    let (mirrored, _) = cache.get_or_compute(&mirror_diagram(&d))?;
    let report = MirrorReport::from_tables(
        &report_name(args, name),
        &record.table(),
        &mirrored.table(),
        args.tol,
    );
    write_out(out, &to_json(&report))
}

/// "homology identical, spectra differ" and the like.
pub fn classify(homology_identical: bool, spectra_identical: bool) -> String {
    let word = |same| if same { "identical" } else { "differ" };
    format!("homology {}, spectra {}", word(homology_identical), word(spectra_identical))
}

#[derive(Debug, Clone, Serialize)]
pub struct KnotSummary {
    pub name: String,
    pub line: Option<usize>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossings: Option<usize>,
    /// Against the mirror: Betti table symmetric under (r, q) -> (-r, -q).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra_symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub knot: String,
    pub mirror: String,
    pub homology_identical: bool,
    pub spectra_identical: bool,
    pub class: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchSummary {
    pub version: String,
    pub entries: usize,
    pub failed: usize,
    pub symmetric: usize,
    pub asymmetric: usize,
    pub homology_asymmetric: usize,
    pub knots: Vec<KnotSummary>,
    pub mirror_pairs: Vec<PairSummary>,
}

struct Processed {
    summary: KnotSummary,
    record: Option<ResultRecord>,
    diagram: Option<LinkDiagram>,
}

fn file_stem_for(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "_-.".contains(c) { c } else { '_' })
        .collect()
}

fn process_entry(
    entry: &TableEntry,
    cache: &Cache,
    out_dir: &Path,
    tol: f64,
    hits: &AtomicUsize,
) -> Processed {
    let failed = |d: Option<LinkDiagram>, e: CliError| {
        error!("{} (line {}): {e}", entry.name, entry.line);
        Processed {
            summary: KnotSummary {
                name: entry.name.clone(),
                line: Some(entry.line),
                status: "error",
                error: Some(e.to_string()),
                hash: None,
                crossings: None,
                homology_symmetric: None,
                spectra_symmetric: None,
                class: None,
            },
            record: None,
            diagram: d,
        }
    };
    let d = match entry.diagram() {
        Ok(d) => d,
        Err(e) => return failed(None, e.into()),
    };
    let (record, status) = match cache.get_or_compute(&d) {
        Ok(x) => x,
        Err(e) => return failed(Some(d), e),
    };
    if status == CacheStatus::Hit {
        hits.fetch_add(1, AtomicOrdering::Relaxed);
    }
    info!("{}: {:?}", entry.name, status);
    let report = SymmetryReport::from_table(&entry.name, &record.table(), tol);
    let writes = write_atomic(
        &out_dir.join("records").join(format!("{}.json", record.hash)),
        &to_json(&record),
    )
    .and_then(|()| {
        write_atomic(
            &out_dir.join("reports").join(format!("{}.json", file_stem_for(&entry.name))),
            &to_json(&report),
        )
    });
    if let Err(e) = writes {
        return failed(Some(d), e);
    }
    Processed {
        summary: KnotSummary {
            name: entry.name.clone(),
            line: Some(entry.line),
            status: "ok",
            error: None,
            hash: Some(record.hash.clone()),
            crossings: Some(record.crossings),
            homology_symmetric: Some(report.homology_symmetric),
            spectra_symmetric: Some(report.all_symmetric),
            class: Some(classify(report.homology_symmetric, report.all_symmetric)),
        },
        record: Some(record),
        diagram: Some(d),
    }
}

/// Entries that are mirrors of each other, either by name (`mirror_<name>`)
/// or because one code is literally the mirror of the other.
fn mirror_pairs(done: &[Processed], tol: f64) -> Vec<PairSummary> {
    let by_pd: BTreeMap<String, usize> = done
        .iter()
        .enumerate()
        .filter_map(|(n, p)| p.diagram.as_ref().map(|d| (d.to_string(), n)))
        .collect();
    let by_name: BTreeMap<&str, usize> = done
        .iter()
        .enumerate()
        .map(|(n, p)| (p.summary.name.as_str(), n))
        .collect();
    let mut pairs = Vec::new();
    for (a, p) in done.iter().enumerate() {
        let partner = p
            .summary
            .name
            .strip_prefix("mirror_")
            .and_then(|base| by_name.get(base).copied())
            .map(|b| (b, a))
            .or_else(|| {
                let m = mirror_diagram(p.diagram.as_ref()?).to_string();
                by_pd.get(&m).copied().filter(|&b| b > a).map(|b| (a, b))
            });
        let Some((i, j)) = partner else { continue };
        let (Some(ri), Some(rj)) = (&done[i].record, &done[j].record) else {
            continue;
        };
        if pairs
            .iter()
            .any(|x: &PairSummary| x.knot == done[i].summary.name && x.mirror == done[j].summary.name)
        {
            continue;
        }
        let report = MirrorReport::from_tables(&done[i].summary.name, &ri.table(), &rj.table(), tol);
        pairs.push(PairSummary {
            knot: done[i].summary.name.clone(),
            mirror: done[j].summary.name.clone(),
            homology_identical: report.homology_identical,
            spectra_identical: report.spectra_identical,
            class: classify(report.homology_identical, report.spectra_identical),
        });
    }
    pairs.sort_by(|x, y| knot_name_cmp(&x.knot, &y.knot).then_with(|| knot_name_cmp(&x.mirror, &y.mirror)));
    pairs
}

pub fn batch(args: &BatchArgs, cache: &Cache, out: &mut dyn Write) -> Result<(), CliError> {
    let mut entries = match &args.table {
        Some(path) => parse_table(&fs::read_to_string(path).map_err(io_error(path))?)?,
        None => bundled_table(),
    };
    if let Some(max) = args.max_crossings {
        // unparsable entries are kept so they are reported as failures
        entries.retain(|e| e.diagram().map_or(true, |d| d.crossing_count() <= max));
    }
    entries.sort_by(|a, b| knot_name_cmp(&a.name, &b.name).then(a.line.cmp(&b.line)));
    fs::create_dir_all(&args.out).map_err(io_error(&args.out))?;

    let hits = AtomicUsize::new(0);
    let done: Vec<Processed> = entries
        .par_iter()
        .map(|e| process_entry(e, cache, &args.out, args.tol, &hits))
        .collect();

    let knots: Vec<KnotSummary> = done.iter().map(|p| p.summary.clone()).collect();
    let ok: Vec<&KnotSummary> = knots.iter().filter(|k| k.status == "ok").collect();
    let summary = BatchSummary {
        version: VERSION.to_string(),
        entries: knots.len(),
        failed: knots.len() - ok.len(),
        symmetric: ok.iter().filter(|k| k.spectra_symmetric == Some(true)).count(),
        asymmetric: ok.iter().filter(|k| k.spectra_symmetric == Some(false)).count(),
        homology_asymmetric: ok.iter().filter(|k| k.homology_symmetric == Some(false)).count(),
        mirror_pairs: mirror_pairs(&done, args.tol),
        knots,
    };
    write_atomic(&args.out.join("summary.json"), &to_json(&summary))?;

    let mut text = String::new();
    for k in &summary.knots {
        let detail = k.class.as_deref().or(k.error.as_deref()).unwrap_or("");
        let _ = writeln!(text, "{}\t{}\t{}", k.name, k.status, detail);
    }
    for p in &summary.mirror_pairs {
        let _ = writeln!(text, "{} vs {}\tpair\t{}", p.knot, p.mirror, p.class);
    }
    write_out(out, &text)?;
    eprintln!(
        "batch: {} entries, {} failed, {} cache hits",
        summary.entries,
        summary.failed,
        hits.load(AtomicOrdering::Relaxed)
    );
    match summary.failed {
        0 => Ok(()),
        failed => Err(CliError::Batch {
            failed,
            total: summary.entries,
        }),
    }
}
