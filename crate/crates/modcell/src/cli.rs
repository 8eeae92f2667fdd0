//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails or a computation
//! errors, 2 on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::critical::{annular_collapse_at, critical_graph, radial_collapse_zigzag_at, unfolded_graph};
use crate::graph::FatGraph;
use crate::homology::{build_complex, ChainComplex, FullType, HomologyError};
use crate::radial::{enumerate_types, genus, CombinatorialType, Filter, ParamError};
use crate::sullivan::{enumerate_diagrams, f_map, g_map, SullivanDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Radial,
    Unilevel,
    Sd,
    Fatgraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Canonical cells of the model, one per line.
    Enumerate,
    /// Betti numbers and torsion per degree.
    Homology,
    /// Bijection between unilevel types and Sullivan diagrams, with faces.
    VerifyBijection,
    /// Chamber-collapse coherence of critical graphs.
    VerifyZigzag,
    /// Fat graphs of the model's cells in DOT.
    Export,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "modcell", version, about = "Cell models for moduli of cobordisms")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "unilevel", global = true)]
    pub model: Model,
    /// Genus; excludes --h.
    #[arg(long, global = true, conflicts_with = "h")]
    pub g: Option<usize>,
    /// Number of slit pairs, 2g - 2 + n + m; excludes --g.
    #[arg(long, global = true)]
    pub h: Option<usize>,
    /// Incoming boundaries.
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Outgoing boundaries.
    #[arg(long, global = true, default_value_t = 1)]
    pub m: usize,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

/// Resolved `(g, h, n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub g: usize,
    pub h: usize,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Internal(String),
    /// The reader closed the output early.
    Closed,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Closed => 0,
            Failure::Usage(_) => 2,
            Failure::Verification(_) | Failure::Internal(_) => 1,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Internal(e.to_string())
    }
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Internal(e.to_string())
}

impl RunConfig {
    pub fn family(&self) -> Result<Family, Failure> {
        let (n, m) = (self.n, self.m);
        let usage = |e: ParamError| Failure::Usage(e.to_string());
        if n == 0 || m == 0 {
            return Err(usage(ParamError::Empty { n, m }));
        }
        match (self.g, self.h) {
            (Some(g), None) => Ok(Family { g, h: 2 * g + n + m - 2, n, m }),
            (None, Some(h)) => Ok(Family { g: genus(h, n, m).map_err(usage)?, h, n, m }),
            _ => Err(Failure::Usage("exactly one of --g and --h is required".into())),
        }
    }
}

/// Parses `args`, runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    run(&config)
}

pub fn run(config: &RunConfig) -> i32 {
    let result = match &config.out {
        Some(path) => File::create(path).map_err(Failure::from).and_then(|f| run_to(config, &mut BufWriter::new(f))),
        None => run_to(config, &mut BufWriter::new(io::stdout())),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("usage error: {msg}"),
                Failure::Verification(msg) => eprintln!("verification failed: {msg}"),
                Failure::Internal(msg) => eprintln!("error: {msg}"),
                Failure::Closed => {}
            }
            f.exit_code()
        }
    }
}

/// Runs `config`, writing its artifact to `out`.
pub fn run_to(config: &RunConfig, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let family = config.family()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers.unwrap_or(0)).build().map_err(internal)?;
    pool.install(|| match config.command {
        Command::Enumerate => enumerate(config, family, out),
        Command::Homology => homology(config, family, out),
        Command::VerifyBijection => verify_bijection(family, out),
        Command::VerifyZigzag => verify_zigzag(family, out),
        Command::Export => export(config, family, out),
    })?;
    out.flush()?;
    Ok(())
}

fn types(f: Family, filter: Filter) -> Result<Vec<CombinatorialType>, Failure> {
    enumerate_types(f.h, f.n, f.m, filter).map_err(|e| Failure::Usage(e.to_string()))
}

fn diagrams(f: Family) -> Result<Vec<SullivanDiagram>, Failure> {
    enumerate_diagrams(f.g, f.n, f.m).map_err(|e| Failure::Usage(e.to_string()))
}

/// Critical graphs of nondegenerate types, one per canonical label.
fn fat_graphs(f: Family) -> Result<Vec<FatGraph>, Failure> {
    let graphs: Vec<FatGraph> =
        types(f, Filter::Nondegenerate)?.par_iter().map(critical_graph).collect::<Result<_, _>>().map_err(internal)?;
    let mut keyed: Vec<(Vec<u8>, FatGraph)> = graphs.into_iter().map(|g| (g.canonical_label(), g)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

fn enumerate(config: &RunConfig, f: Family, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let format = config.format.unwrap_or(Format::Json);
    if format == Format::Dot {
        return export(config, f, out);
    }
    let rows: Vec<(usize, String, serde_json::Value)> = match config.model {
        Model::Radial | Model::Unilevel => {
            let filter = if config.model == Model::Radial { Filter::Nondegenerate } else { Filter::Unilevel };
            types(f, filter)?
                .into_iter()
                .map(|t| {
                    let md = t.multi_degree();
                    (md.radial_dimension() + md.annular, t.to_compact(), json!(t))
                })
                .collect()
        }
        Model::Sd => diagrams(f)?.into_iter().map(|d| (d.dimension(), d.to_compact(), d.to_json())).collect(),
        Model::Fatgraph => fat_graphs(f)?
            .into_iter()
            .enumerate()
            .map(|(k, g)| (g.edge_count(), format!("graph{k}"), json!(g)))
            .collect(),
    };
    for (degree, id, cell) in rows {
        match format {
            Format::Table => writeln!(out, "{degree}\t{id}")?,
            _ => writeln!(out, "{}", json!({"id": id, "degree": degree, "cell": cell}))?,
        }
    }
    Ok(())
}

fn complex(model: Model, f: Family) -> Result<ChainComplex, Failure> {
    let built: Result<ChainComplex, HomologyError> = match model {
        Model::Unilevel => build_complex(&types(f, Filter::Unilevel)?),
        Model::Sd => build_complex(&diagrams(f)?),
        Model::Radial => {
            let all: Vec<FullType> = types(f, Filter::All)?.into_iter().map(FullType).collect();
            build_complex(&all)
        }
        Model::Fatgraph => return Err(Failure::Usage("homology needs --model radial, unilevel or sd".into())),
    };
    built.map_err(internal)
}

fn homology(config: &RunConfig, f: Family, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let c = complex(config.model, f)?;
    if !c.boundary_check() {
        return Err(Failure::Verification("boundary of boundary is nonzero".into()));
    }
    let groups = c.homology().map_err(internal)?;
    match config.format.unwrap_or(Format::Table) {
        Format::Table => {
            writeln!(out, "degree\tcells\thomology")?;
            for (k, g) in groups.iter().enumerate() {
                writeln!(out, "{k}\t{}\t{g}", c.cells[k].len())?;
            }
            writeln!(out, "euler characteristic {}", c.euler_characteristic())?;
        }
        Format::Json => {
            for (k, g) in groups.iter().enumerate() {
                let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "{}",
                    json!({"degree": k, "cells": c.cells[k].len(), "betti": g.betti, "torsion": torsion})
                )?;
            }
        }
        Format::Dot => return Err(Failure::Usage("homology has no dot output".into())),
    }
    Ok(())
}

/// First failing check of the unilevel/Sullivan bijection, as a
/// description.
pub fn bijection_counterexample(f: Family) -> Result<Option<String>, Failure> {
    let ts = types(f, Filter::Unilevel)?;
    let ds = diagrams(f)?;
    if ts.len() != ds.len() {
        return Ok(Some(format!("{} unilevel types but {} diagrams", ts.len(), ds.len())));
    }
    let from_types = ts.par_iter().find_map_first(|t| -> Option<String> {
        let d = match f_map(t) {
            Ok(d) => d,
            Err(e) => return Some(format!("f_map({}) failed: {e}", t.to_compact())),
        };
        if ds.binary_search(&d).is_err() {
            return Some(format!("f_map({}) = {} is not an enumerated diagram", t.to_compact(), d.to_compact()));
        }
        match g_map(&d) {
            Ok(back) if &back == t => {}
            _ => return Some(format!("g_map(f_map({})) differs", t.to_compact())),
        }
        for (i, j, face) in t.faces() {
            let lhs = f_map(&face).ok();
            let rhs = d.face(i, j).ok().map(|x| x.canonical());
            if lhs.is_none() || lhs != rhs {
                return Some(format!("f_map does not commute with face ({i},{j}) of {}", t.to_compact()));
            }
        }
        None
    });
    if from_types.is_some() {
        return Ok(from_types);
    }
    Ok(ds.par_iter().find_map_first(|d| -> Option<String> {
        let t = match g_map(d) {
            Ok(t) => t,
            Err(e) => return Some(format!("g_map({}) failed: {e}", d.to_compact())),
        };
        if f_map(&t).ok().as_ref() != Some(d) {
            return Some(format!("f_map(g_map({})) differs", d.to_compact()));
        }
        for (i, j, face) in d.faces() {
            let lhs = g_map(&face).ok();
            let rhs = t.face(i, j).ok().map(|x| x.canonicalize());
            if lhs.is_none() || lhs != rhs {
                return Some(format!("g_map does not commute with face ({i},{j}) of {}", d.to_compact()));
            }
        }
        None
    }))
}

/// First failing chamber-collapse check over nondegenerate types and their
/// nondegenerate faces.
pub fn zigzag_counterexample(f: Family) -> Result<Option<String>, Failure> {
    let ts = types(f, Filter::Nondegenerate)?;
    Ok(ts.par_iter().find_map_first(|t| -> Option<String> {
        for (axis, j, face) in t.faces() {
            if face.is_degenerate() {
                continue;
            }
            let ok = if axis < t.n() {
                radial_collapse_zigzag_at(t, axis, j).map(|z| z.commutes())
            } else {
                annular_collapse_at(t, &[j]).map(|a| a.commutes())
            };
            match ok {
                Ok(true) => {}
                Ok(false) => return Some(format!("face ({axis},{j}) of {} does not commute", t.to_compact())),
                Err(e) => return Some(format!("face ({axis},{j}) of {}: {e}", t.to_compact())),
            }
        }
        None
    }))
}

fn report(check: &str, f: Family, found: Option<String>, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let pass = found.is_none();
    writeln!(
        out,
        "{}",
        json!({"check": check, "g": f.g, "h": f.h, "n": f.n, "m": f.m, "pass": pass, "counterexample": found})
    )?;
    match found {
        None => Ok(()),
        Some(msg) => Err(Failure::Verification(msg)),
    }
}

fn verify_bijection(f: Family, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let found = bijection_counterexample(f)?;
    report("bijection", f, found, out)
}

fn verify_zigzag(f: Family, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let found = zigzag_counterexample(f)?;
    report("zigzag", f, found, out)
}

fn export(config: &RunConfig, f: Family, out: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let graphs: Vec<(String, FatGraph)> = match config.model {
        Model::Radial => types(f, Filter::Nondegenerate)?
            .par_iter()
            .map(|t| critical_graph(t).map(|g| (t.to_compact(), g)))
            .collect::<Result<_, _>>()
            .map_err(internal)?,
        Model::Unilevel => types(f, Filter::Unilevel)?
            .par_iter()
            .map(|t| unfolded_graph(t).map(|g| (t.to_compact(), g)))
            .collect::<Result<_, _>>()
            .map_err(internal)?,
        Model::Sd => diagrams(f)?
            .par_iter()
            .map(|d| d.induced_graph().map(|g| (d.to_compact(), g)))
            .collect::<Result<_, _>>()
            .map_err(internal)?,
        Model::Fatgraph => fat_graphs(f)?.into_iter().enumerate().map(|(k, g)| (format!("graph{k}"), g)).collect(),
    };
    for (id, g) in graphs {
        match config.format.unwrap_or(Format::Dot) {
            Format::Json => writeln!(out, "{}", json!({"id": id, "graph": g}))?,
            _ => {
                writeln!(out, "// {id}")?;
                write!(out, "{}", g.to_dot())?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn output(args: &[&str]) -> (Result<(), i32>, String) {
        let config = RunConfig::try_parse_from(std::iter::once("modcell").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let res = run_to(&config, &mut buf).map_err(|f| f.exit_code());
        (res, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn enumerate_cylinder() {
        let (res, text) = output(&["enumerate", "--model", "unilevel", "--g", "0", "--n", "1", "--m", "1"]);
        assert_eq!(res, Ok(()));
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn homology_cylinder() {
        let (res, text) =
            output(&["homology", "--model", "sd", "--g", "0", "--n", "1", "--m", "1", "--format", "json"]);
        assert_eq!(res, Ok(()));
        let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| l["betti"] == 1 && l["torsion"] == json!([])));
    }

    #[test]
    fn verify_bijection_passes() {
        let (res, text) = output(&["verify-bijection", "--g", "0", "--n", "1", "--m", "2"]);
        assert_eq!(res, Ok(()));
        assert!(text.contains("\"pass\":true"));
    }

    #[test]
    fn closed_output_exits_zero() {
        let f = Failure::from(io::Error::from(io::ErrorKind::BrokenPipe));
        assert_eq!(f.exit_code(), 0);
        assert_eq!(Failure::from(io::Error::from(io::ErrorKind::NotFound)).exit_code(), 1);
    }

    #[test]
    fn usage_errors_exit_two() {
        let (res, _) = output(&["enumerate", "--h", "2", "--n", "2", "--m", "1"]);
        assert_eq!(res, Err(2));
        let (res, _) = output(&["enumerate", "--n", "1", "--m", "1"]);
        assert_eq!(res, Err(2));
        assert_eq!(main_with_args(["modcell", "enumerate", "--g", "0", "--h", "0"]), 2);
        assert_eq!(main_with_args(["modcell", "frobnicate"]), 2);
    }

    #[test]
    fn output_is_independent_of_workers() {
        let one = output(&["enumerate", "--model", "sd", "--g", "0", "--n", "1", "--m", "3", "--workers", "1"]);
        let four = output(&["enumerate", "--model", "sd", "--g", "0", "--n", "1", "--m", "3", "--workers", "4"]);
        assert_eq!(one, four);
        let dot = output(&["export", "--model", "radial", "--g", "0", "--n", "1", "--m", "2"]);
        assert!(dot.1.contains("graph"));
    }
}
