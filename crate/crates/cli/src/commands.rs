use std::path::Path;

use clap::Parser;
use serde::Serialize;

use quarter::admissibility::{find_admissible_subgraph, verify_witness, AdmissibilityWitness, Host};
use quarter::embedding::{run_batch, success_rate, EmbedConfig};
use quarter::geometry::{
    intersection_graph, measure_biclique_growth, random_curves, separator_biclique, CurveArrangement, RandomCurves,
};
use quarter::rational::{fmt_rational, parse_rational};
use quarter::subdivision::partial_subdivisions;
use quarter::turan::reduce::reduce;
use quarter::turan::simplex::check_certificate;
use quarter::turan::{
    k5_family, minimize_phi, quotient, verify_claim_s8, verify_clique_partition_bound, verify_observations,
    verify_prop_quarter, PhiMinimum, VerificationReport, WeightedCompleteGraph,
};
use quarter::{graph6, DenseGraph, Rational};

use crate::manifest::{read_input, sha256_hex, RunManifest, Sink};
use crate::{
    AdmissibleArgs, Cli, CliError, Command, EmbedArgs, ExtremalArgs, Format, Geometry, Passed, PatternArgs, PhiArgs,
    RandomArgs, ReduceArgs, ReplayArgs, Scope, VerifyArgs,
};

pub struct Ctx<'a> {
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub sink: &'a Sink,
}

impl Ctx<'_> {
    /// The requested format if the subcommand supports it, else `default`.
    fn format(&self, allowed: &[Format], default: Format) -> Result<Format, CliError> {
        match self.format {
            None => Ok(default),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => Err(CliError::Usage(
                format!("--format {f:?} is not available here").to_lowercase(),
            )),
        }
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serialises") + "\n"
}

fn csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|_| CliError::Usage(format!("{name}: expected p/q or a decimal, got {s:?}")))
}

fn graph_arg(s: &str) -> Result<DenseGraph, CliError> {
    graph6::decode(s).map_err(|e| CliError::Usage(format!("graph {s:?}: {e}")))
}

/// `a..b` inclusive, or a comma separated list.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("seeds: expected a..b or a list, got {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn report_line(r: &VerificationReport) -> String {
    let min = r.min_phi.map(|v| fmt_rational(&v)).unwrap_or_else(|| "-".into());
    format!(
        "{}: {} graphs, {} admissible-free, min phi {}, {} violations",
        r.scope,
        r.graph_count,
        r.admissible_free_count,
        min,
        r.violations.len()
    )
}

pub fn verify(ctx: &Ctx, a: &VerifyArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    ctx.format(&[Format::Json], Format::Json)?;
    let report = match a.scope {
        Scope::Prop14 => {
            let family = k5_family();
            let sizes: Vec<usize> = match a.s {
                Some(s) => vec![s],
                None => vec![5, 6, 7],
            };
            let mut merged: Option<VerificationReport> = None;
            for s in sizes {
                let r = verify_prop_quarter(s, &family)?;
                merged = Some(match merged {
                    None => r,
                    Some(acc) => acc.merge(r),
                });
            }
            merged.expect("at least one size")
        }
        Scope::S8 => verify_claim_s8(&k5_family())?,
        Scope::Observations => verify_observations(&k5_family())?,
        Scope::CliqueBound => verify_clique_partition_bound(a.t, a.s.unwrap_or(8))?,
    };
    eprintln!("{}", report_line(&report));
    let name = m.subcommand.clone();
    ctx.sink.emit(&format!("{name}.json"), &json(&report), m)?;
    let counterexamples: Vec<&str> = report.violations.iter().filter_map(|v| v.graph6.as_deref()).collect();
    if !counterexamples.is_empty() {
        let text: String = counterexamples.iter().map(|g| format!("{g}\n")).collect();
        if ctx.sink.is_stdout() {
            eprint!("counterexamples:\n{text}");
        } else {
            ctx.sink.emit(&format!("{name}.counterexamples.g6"), &text, m)?;
        }
    }
    Ok(report.passed())
}

#[derive(Serialize)]
struct PatternRow {
    pattern: quarter::subdivision::SubdivisionPattern,
    vertices: usize,
    graph6: String,
}

pub fn enumerate_patterns(ctx: &Ctx, a: &PatternArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    let format = ctx.format(&[Format::Json, Format::Graph6], Format::Json)?;
    let patterns = partial_subdivisions(a.t, a.max_vertices)?;
    eprintln!("{} patterns", patterns.len());
    let rows: Vec<PatternRow> = patterns
        .into_iter()
        .map(|p| PatternRow {
            vertices: p.vertex_count(),
            graph6: graph6::encode(&p.realize()),
            pattern: p,
        })
        .collect();
    match format {
        Format::Graph6 => {
            let text: String = rows.iter().map(|r| format!("{}\n", r.graph6)).collect();
            ctx.sink.emit("patterns.g6", &text, m)?;
        }
        _ => ctx.sink.emit("patterns.json", &json(&rows), m)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct AdmissibleReport {
    admissible: bool,
    host_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<AdmissibilityWitness>,
    /// The witness was re-checked independently of the search.
    verified: bool,
}

pub fn admissible(ctx: &Ctx, a: &AdmissibleArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    ctx.format(&[Format::Json], Format::Json)?;
    let family = if a.patterns.is_empty() {
        k5_family()
    } else {
        a.patterns.iter().map(|p| graph_arg(p)).collect::<Result<_, _>>()?
    };
    let graph;
    let weights;
    let eps = rational_arg("eps", &a.eps)?;
    let host = match (&a.graph, &a.weights) {
        (Some(g), _) => {
            graph = graph_arg(g)?;
            Host::Graph(&graph)
        }
        (None, Some(path)) => {
            let text = read_input(path, m)?;
            weights = serde_json::from_str::<WeightedCompleteGraph>(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Host::Weighted(&weights, eps)
        }
        (None, None) => return Err(CliError::Usage("a graph or --weights is required".into())),
    };
    let found = find_admissible_subgraph(&host, &family)?;
    let report = match found {
        None => AdmissibleReport {
            admissible: false,
            host_vertices: host.n(),
            subset: None,
            pattern: None,
            witness: None,
            verified: true,
        },
        Some(f) => {
            let h = &family[f.member];
            let verified = verify_witness(&host, h, &f.witness) && f.witness.map.iter().all(|q| f.subset.contains(q));
            AdmissibleReport {
                admissible: true,
                host_vertices: host.n(),
                pattern: Some(graph6::encode(h)),
                subset: Some(f.subset),
                witness: Some(f.witness),
                verified,
            }
        }
    };
    eprintln!("admissible: {}", report.admissible);
    ctx.sink.emit("admissible.json", &json(&report), m)?;
    Ok(report.verified)
}

#[derive(Serialize)]
struct PhiRow {
    graph6: String,
    #[serde(flatten)]
    minimum: PhiMinimum,
    certified: bool,
}

#[derive(Serialize)]
struct PhiCsvRow {
    graph6: String,
    value: String,
    support: String,
    certified: bool,
}

pub fn minimize_phi_cmd(ctx: &Ctx, a: &PhiArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    let format = ctx.format(&[Format::Json, Format::Csv], Format::Json)?;
    let mut graphs: Vec<(String, DenseGraph)> = Vec::new();
    for g in &a.graphs {
        graphs.push((g.clone(), graph_arg(g)?));
    }
    if let Some(path) = &a.input {
        let text = read_input(path, m)?;
        for g in graph6::decode_lines(&text)? {
            graphs.push((graph6::encode(&g), g));
        }
    }
    if graphs.is_empty() {
        return Err(CliError::Usage("no graphs given".into()));
    }
    let mut rows = Vec::new();
    for (g6, g) in graphs {
        let minimum = minimize_phi(&g)?;
        let certified = check_certificate(&g, &minimum);
        rows.push(PhiRow {
            graph6: g6,
            minimum,
            certified,
        });
    }
    let passed = rows.iter().all(|r| r.certified);
    match format {
        Format::Csv => {
            let flat: Vec<PhiCsvRow> = rows
                .iter()
                .map(|r| PhiCsvRow {
                    graph6: r.graph6.clone(),
                    value: fmt_rational(&r.minimum.value),
                    support: r
                        .minimum
                        .support
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    certified: r.certified,
                })
                .collect();
            ctx.sink.emit("minimize-phi.csv", &csv(&flat)?, m)?;
        }
        _ => ctx.sink.emit("minimize-phi.json", &json(&rows), m)?,
    }
    Ok(passed)
}

#[derive(Serialize)]
struct ReduceReport {
    normalized: quarter::turan::reduce::Normalized,
    quotient: quarter::turan::VertexWeightedGraph,
    #[serde(with = "rational_str")]
    phi: Rational,
    #[serde(with = "rational_str")]
    total_weight: Rational,
    issues: Vec<quarter::turan::reduce::TraceIssue>,
}

mod rational_str {
    use quarter::rational::fmt_rational;
    use quarter::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }
}

pub fn reduce_weights(ctx: &Ctx, a: &ReduceArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    ctx.format(&[Format::Json], Format::Json)?;
    let text = read_input(&a.input, m)?;
    let r: WeightedCompleteGraph =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
    let normalized = reduce(&r)?;
    let q = quotient(&normalized.partition, &normalized.weights)?;
    let issues = normalized.trace.check();
    let report = ReduceReport {
        phi: q.weight(),
        total_weight: normalized.weights.total(),
        quotient: q,
        issues,
        normalized,
    };
    eprintln!(
        "{} classes, {} moves, phi {}",
        report.normalized.partition.len(),
        report.normalized.trace.steps.len(),
        fmt_rational(&report.phi)
    );
    ctx.sink.emit("reduce-weights.json", &json(&report), m)?;
    Ok(report.issues.is_empty())
}

pub fn embed(ctx: &Ctx, a: &EmbedArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    let format = ctx.format(&[Format::Csv, Format::Json], Format::Csv)?;
    let text = read_input(&a.config, m)?;
    let mut config: EmbedConfig =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", a.config.display())))?;
    if let Some(seed) = ctx.seed {
        config.seed_start = seed;
    }
    let rows = run_batch(&config).map_err(|e| match e {
        quarter::Error::Capacity { .. } => CliError::Core(e),
        other => CliError::Usage(format!("config {}: {other}", a.config.display())),
    })?;
    m.seeds = rows.iter().map(|r| r.seed).collect();
    let successes = rows.iter().filter(|r| r.success).count();
    let verified = rows.iter().filter(|r| r.verified).count();
    eprintln!(
        "success rate {:.3} ({successes}/{}), verified {verified}/{successes}",
        success_rate(&rows),
        rows.len()
    );
    match format {
        Format::Json => ctx.sink.emit("embed.json", &json(&rows), m)?,
        _ => ctx.sink.emit("embed.csv", &csv(&rows)?, m)?,
    }
    Ok(verified == successes)
}

fn load_curves(path: &Path, m: &mut RunManifest) -> Result<CurveArrangement, CliError> {
    let text = read_input(path, m)?;
    Ok(CurveArrangement::from_json(&text)?)
}

#[derive(Serialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    graph6: String,
}

pub fn geometry(ctx: &Ctx, g: &Geometry, m: &mut RunManifest) -> Result<Passed, CliError> {
    match g {
        Geometry::Crossings { input } => {
            ctx.format(&[Format::Json], Format::Json)?;
            let a = load_curves(input, m)?;
            eprintln!("{} curves, {} crossings", a.len(), a.crossings().len());
            ctx.sink.emit("crossings.json", &json(a.crossings()), m)?;
            Ok(true)
        }
        Geometry::Graph { input } => {
            let format = ctx.format(&[Format::Graph6, Format::Json], Format::Graph6)?;
            let a = load_curves(input, m)?;
            let graph = intersection_graph(&a);
            let g6 = graph6::encode(&graph);
            match format {
                Format::Json => {
                    let out = GraphJson {
                        n: graph.n(),
                        edges: graph.edges(),
                        graph6: g6,
                    };
                    ctx.sink.emit("graph.json", &json(&out), m)?;
                }
                _ => ctx.sink.emit("graph.g6", &format!("{g6}\n"), m)?,
            }
            Ok(true)
        }
        Geometry::Separator { input } => {
            ctx.format(&[Format::Json], Format::Json)?;
            let a = load_curves(input, m)?;
            let out = separator_biclique(&a);
            eprintln!(
                "{} curves, {} crossings, separator {} of {} planar vertices, pair size {}",
                out.curves,
                out.crossings,
                out.planar_separator.vertices.len(),
                out.planar_vertices,
                out.pair.size()
            );
            ctx.sink.emit("separator.json", &json(&out), m)?;
            Ok(out.verified)
        }
        Geometry::Extremal(a) => extremal(ctx, a, m),
        Geometry::Random(a) => random(ctx, a, m),
    }
}

fn random(ctx: &Ctx, a: &RandomArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    ctx.format(&[Format::Json], Format::Json)?;
    let seed = ctx.seed.unwrap_or(0);
    m.seeds = vec![seed];
    let params = RandomCurves {
        n: a.n,
        segments: a.segments,
        bbox: a.bbox,
        step: a.step,
    };
    let arrangement = random_curves(&params, seed)?;
    eprintln!(
        "{} curves, {} crossings",
        arrangement.len(),
        arrangement.crossings().len()
    );
    ctx.sink.emit("curves.json", &(arrangement.to_json() + "\n"), m)?;
    Ok(true)
}

pub fn extremal(ctx: &Ctx, a: &ExtremalArgs, m: &mut RunManifest) -> Result<Passed, CliError> {
    let format = ctx.format(&[Format::Csv, Format::Json], Format::Csv)?;
    let eps = rational_arg("eps", &a.eps)?;
    let seeds = match &a.seeds {
        Some(s) => parse_seeds(s)?,
        None => vec![ctx.seed.unwrap_or(0)],
    };
    m.seeds = seeds.clone();
    let rows = measure_biclique_growth(&a.n, eps, &seeds)?;
    match format {
        Format::Json => ctx.sink.emit("extremal.json", &json(&rows), m)?,
        _ => ctx.sink.emit("extremal.csv", &csv(&rows)?, m)?,
    }
    Ok(true)
}

pub fn replay(cli: &Cli, a: &ReplayArgs) -> Result<Passed, CliError> {
    let Some(out_dir) = &cli.out_dir else {
        return Err(CliError::Usage("replay needs --out-dir".into()));
    };
    let text =
        std::fs::read_to_string(&a.manifest).map_err(|e| CliError::Usage(format!("{}: {e}", a.manifest.display())))?;
    let manifest = RunManifest::from_json(&text)?;
    for (path, hash) in &manifest.inputs {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        if &sha256_hex(&bytes) != hash {
            return Err(CliError::Input(format!("{path} changed since the recorded run")));
        }
    }
    let argv = std::iter::once("quarter".to_string()).chain(manifest.args.iter().cloned());
    let mut inner = Cli::try_parse_from(argv).map_err(|e| CliError::Input(format!("recorded arguments: {e}")))?;
    if matches!(inner.command, Command::Replay(_)) {
        return Err(CliError::Input("a replay manifest cannot be replayed".into()));
    }
    inner.out_dir = Some(out_dir.clone());
    let passed = crate::run(&inner, manifest.args.clone())?;
    let mut differing = 0;
    for (name, hash) in &manifest.outputs {
        let got = std::fs::read(out_dir.join(name)).map(|b| sha256_hex(&b)).ok();
        if got.as_deref() != Some(hash.as_str()) {
            eprintln!("replay: {name} differs");
            differing += 1;
        }
    }
    eprintln!(
        "replay: {} of {} outputs identical",
        manifest.outputs.len() - differing,
        manifest.outputs.len()
    );
    Ok(passed && differing == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("1..10").unwrap(), (1..=10).collect::<Vec<u64>>());
        assert_eq!(parse_seeds("3, 5,8").unwrap(), vec![3, 5, 8]);
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert!(parse_seeds("5..2").is_err());
        assert!(parse_seeds("a..b").is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        #[derive(Serialize)]
        struct R {
            a: u32,
            b: Option<u32>,
        }
        let text = csv(&[R { a: 1, b: None }, R { a: 2, b: Some(3) }]).unwrap();
        assert_eq!(text, "a,b\n1,\n2,3\n");
    }
}
