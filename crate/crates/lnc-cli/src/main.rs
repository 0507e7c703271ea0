mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use convex_lnc::bodies::spec::parse_body;
use convex_lnc::gallery::{self, GalleryEntry, GalleryParams, Verdict};
use convex_lnc::lnc::{
    diameter_estimate, lnc_search, lnc_search_in_box, lnc_verdict_crosscheck, openness_probe, Consistency,
    CrosscheckOptions, LncOutcome, OpennessVerdict,
};
use convex_lnc::sections::{probe_continuity, Method, Section};
use convex_lnc::solvers::fiber::FunctionalFamily;
use convex_lnc::{Body, Error, LinearMap, ToolConfig, Vector};
use serde::Serialize;

use output::Report;

/// Sections of linear maps restricted to convex bodies, and numerical tests
/// of the locally nonconical property.
#[derive(Parser)]
#[command(name = "lnc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Body description file (JSON)
    #[arg(long, global = true, conflicts_with = "gallery")]
    body: Option<PathBuf>,
    /// Gallery identifier instead of a body file
    #[arg(long, global = true)]
    gallery: Option<String>,
    /// Gallery size parameter (helix samples, polygon sides)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// proj-xy, x, y, x+y, or rows like "1,0,0;0,1,0"
    #[arg(long, global = true)]
    map: Option<String>,
    /// Comma-separated target point
    #[arg(long, global = true, allow_hyphen_values = true)]
    target: Option<String>,
    /// gv-lowest, gv-minabs, min-norm, min-dist or gamma
    #[arg(long, global = true)]
    method: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    pairs: Option<usize>,
    #[arg(long, global = true)]
    scales: Option<usize>,
    /// ToolConfig JSON, or an earlier report whose config is reused
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Leave out the timestamp so identical runs give identical bytes
    #[arg(long, global = true)]
    deterministic: bool,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a falsifying witness (exit 1 when one is found)
    CheckLnc {
        /// Search box "LO;HI" for unbounded bodies
        #[arg(long = "box", allow_hyphen_values = true)]
        search_box: Option<String>,
    },
    /// Evaluate one section at a target
    Section,
    /// Evaluate a section along a path and report jumps as CSV
    Probe {
        /// points:Y;Y;.. | segment:A;B;STEPS | circle:CX,CY,R,T0,T1,STEPS | gallery
        #[arg(long, default_value = "gallery", allow_hyphen_values = true)]
        path: String,
        /// Extra final path point
        #[arg(long, allow_hyphen_values = true)]
        end: Option<String>,
        #[arg(long, default_value_t = 0)]
        refine: usize,
    },
    /// Test openness of the restricted map at a base point
    Openness {
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        /// Fiber distance threshold; defaults to a quarter of the diameter
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 48)]
        targets: usize,
    },
    /// Compare the witness search with openness probes and the image search
    Crosscheck {
        #[arg(long, default_value_t = 48)]
        targets: usize,
        #[arg(long, default_value_t = 4)]
        bases: usize,
    },
    /// Built-in examples
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
}

#[derive(Subcommand)]
enum GalleryAction {
    List,
    Run { id: String },
}

/// Exit 1: a witness, an empty fiber, a failed openness test.
struct Found(String);

struct Source {
    label: String,
    body: Body,
    entry: Option<GalleryEntry>,
}

impl Common {
    fn config(&self) -> Result<ToolConfig> {
        let mut cfg = match &self.config {
            None => ToolConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                let v: serde_json::Value = serde_json::from_str(&text).context("config is not JSON")?;
                let inner = v.get("config").cloned().unwrap_or(v);
                serde_json::from_value(inner).context("config fields")?
            }
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(p) = self.pairs {
            cfg.pairs = p;
        }
        if let Some(s) = self.scales {
            cfg.scales = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn source(&self) -> Result<Source> {
        match (&self.body, &self.gallery) {
            (Some(p), None) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Ok(Source { label: p.display().to_string(), body: parse_body(&text)?, entry: None })
            }
            (None, Some(id)) => {
                let e = gallery::build(id, &GalleryParams { n: self.n })?;
                Ok(Source { label: format!("gallery:{id}"), body: e.body.clone(), entry: Some(e) })
            }
            _ => bail!("give --body FILE or --gallery ID"),
        }
    }

    fn map(&self, src: &Source) -> Result<LinearMap> {
        match (&self.map, &src.entry) {
            (Some(s), _) => parse::map(s, src.body.dim()),
            (None, Some(e)) => Ok(e.map.clone()),
            (None, None) => bail!("--map is required with --body"),
        }
    }

    fn method(&self, default: Method) -> Result<Method> {
        self.method.as_deref().map_or(Ok(default), |m| Ok(Method::parse(m)?))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn report<T: Serialize>(&self, command: &str, src: &str, cfg: &ToolConfig, result: T) -> Result<()> {
        let r = Report { command, body: src, config: cfg, seed: cfg.seed, timestamp: output::timestamp(self.deterministic), result };
        self.emit(&output::json(&r)?)
    }
}

fn section_for(src: &Source, map: LinearMap, method: Method, cfg: &ToolConfig, custom_map: bool) -> Result<Section> {
    let mut s = Section::new(src.body.clone(), map, method, cfg.clone())?;
    if let (Some(fam), false) = (src.entry.as_ref().and_then(|e| e.family.clone()), custom_map) {
        let fam = FunctionalFamily::new(fam, &s.map)?;
        s = s.with_family(fam);
    }
    Ok(s)
}

fn default_path(entry: Option<&GalleryEntry>, n: Option<usize>) -> Result<Vec<Vector>> {
    let id = entry.map(|e| e.id.as_str()).ok_or_else(|| anyhow!("--path is required with --body"))?;
    Ok(match id {
        "cone9" => gallery::cone_path(),
        "helix10" => gallery::helix_path(n.unwrap_or(gallery::HELIX_DEFAULT_N)),
        "epigraph19" => parse::path("segment:0.2;0;50")?,
        "square" => parse::path("segment:0.1;0.9;100")?,
        other => bail!("no default path for `{other}`; give --path"),
    })
}

fn default_method(id: &str) -> Method {
    if id == "epigraph19" {
        Method::Gamma
    } else {
        Method::MinNorm
    }
}

fn empty_fiber(e: &Error) -> bool {
    match e {
        Error::EmptyFiber => true,
        Error::AtPathIndex { source, .. } => empty_fiber(source),
        _ => false,
    }
}

fn check_lnc(c: &Common, search_box: Option<&str>) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let src = c.source()?;
    let search_body = src.entry.as_ref().and_then(|e| e.search_body.clone()).unwrap_or_else(|| src.body.clone());
    let outcome = match search_box {
        Some(b) => {
            let (lo, hi) = parse::search_box(b)?;
            lnc_search_in_box(&search_body, &lo, &hi, cfg.pairs, cfg.scales, cfg.seed, &cfg)?
        }
        None => lnc_search(&search_body, cfg.pairs, cfg.scales, cfg.seed, &cfg)?,
    };
    if let Some(w) = outcome.witness() {
        w.verify(&src.body).map_err(|m| anyhow!("witness failed re-verification: {m}"))?;
    }
    c.report("check-lnc", &src.label, &cfg, &outcome)?;
    Ok(match &outcome {
        LncOutcome::Witness(_) => Some(Found("NOT_LNC: falsifying witness found".into())),
        LncOutcome::NoWitnessFound { pairs_tested, .. } => {
            eprintln!("NO_WITNESS after {pairs_tested} pairs");
            None
        }
    })
}

#[derive(Serialize)]
struct SectionResult {
    method: &'static str,
    target: Vector,
    point: Vector,
    residual: f64,
    membership_margin: f64,
    warnings: Vec<&'static str>,
}

fn section(c: &Common) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let src = c.source()?;
    let map = c.map(&src)?;
    let target = parse::list(c.target.as_deref().ok_or_else(|| anyhow!("--target is required"))?)?;
    let method = c.method(Method::MinNorm)?;
    let s = section_for(&src, map, method, &cfg, c.map.is_some())?;
    let g = match s.evaluate(&target) {
        Ok(g) => g,
        Err(e) if empty_fiber(&e) => return Ok(Some(Found(e.to_string()))),
        Err(e) => return Err(e.into()),
    };
    let image = s.map.apply(&g.point)?;
    let residual = image.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    let res = SectionResult {
        method: method.name(),
        membership_margin: -src.body.violation(&g.point),
        target,
        point: g.point,
        residual,
        warnings: if g.clipped { vec!["CLIPPED"] } else { vec![] },
    };
    eprintln!("{} -> {:?}{}", method.name(), res.point, if g.clipped { " (CLIPPED)" } else { "" });
    c.report("section", &src.label, &cfg, &res)?;
    Ok(None)
}

fn probe(c: &Common, path: &str, end: Option<&str>, refine: usize) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let src = c.source()?;
    let map = c.map(&src)?;
    let method = c.method(src.entry.as_ref().map_or(Method::MinNorm, |e| default_method(&e.id)))?;
    let mut pts = if path == "gallery" { default_path(src.entry.as_ref(), c.n)? } else { parse::path(path)? };
    if let Some(e) = end {
        pts.push(parse::list(e)?);
    }
    let s = section_for(&src, map, method, &cfg, c.map.is_some())?;
    let p = match probe_continuity(&s, &pts, refine) {
        Ok(p) => p,
        Err(e) if empty_fiber(&e) => return Ok(Some(Found(e.to_string()))),
        Err(e) => return Err(e.into()),
    };
    eprintln!("{}: max_jump {} at interval {}", method.name(), output::num(p.max_jump), p.argmax);
    c.emit(&output::probe_csv(&p, &cfg)?)?;
    Ok(None)
}

fn openness(c: &Common, base: Option<&str>, radius: Option<f64>, targets: usize) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let src = c.source()?;
    let map = c.map(&src)?;
    let base = base.map_or_else(|| Ok(src.body.anchor()), parse::list)?;
    let r = radius.unwrap_or(0.25 * diameter_estimate(&src.body));
    let rep = openness_probe(&src.body, &map, &base, r, targets, cfg.seed, &cfg)?;
    c.report("openness", &src.label, &cfg, &rep)?;
    Ok(match rep.verdict {
        OpennessVerdict::NotOpenAt => Some(Found("NOT_OPEN_AT the base point".into())),
        OpennessVerdict::OpenAt => {
            eprintln!("OPEN_AT the base point");
            None
        }
    })
}

fn crosscheck(c: &Common, targets: usize, bases: usize) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let src = c.source()?;
    let map = c.map(&src)?;
    let opts = CrosscheckOptions { targets, bases, ..CrosscheckOptions::from_config(&cfg) };
    let sb = src.entry.as_ref().and_then(|e| e.search_body.as_ref());
    let rep = lnc_verdict_crosscheck(&src.body, &map, sb, &opts, &cfg)?;
    c.report("crosscheck", &src.label, &cfg, &rep)?;
    match rep.consistency {
        Consistency::Contradiction => bail!("contradictory verdicts: {}", rep.note),
        Consistency::Falsification => Ok(Some(Found(format!("FALSIFICATION: {}", rep.note)))),
        other => {
            eprintln!("{other:?}: {}", rep.note);
            Ok(None)
        }
    }
}

#[derive(Serialize)]
struct ListedEntry {
    id: &'static str,
    verdict: Verdict,
    description: String,
}

#[derive(Serialize)]
struct ProbeSummary {
    method: &'static str,
    max_jump: f64,
    argmax: usize,
}

#[derive(Serialize)]
struct GalleryRun {
    id: String,
    description: String,
    map: String,
    section_notes: String,
    expected: Verdict,
    template_verified: Option<bool>,
    search: Option<LncOutcome>,
    probe: Option<ProbeSummary>,
    agrees: bool,
}

fn gallery_run(c: &Common, id: &str) -> Result<Option<Found>> {
    let cfg = c.config()?;
    let e = gallery::build(id, &GalleryParams { n: c.n })?;
    let src = Source { label: format!("gallery:{id}"), body: e.body.clone(), entry: Some(e.clone()) };
    let template_verified = match gallery::expected_witness(id, &cfg) {
        Ok(w) => Some(w.verify(&e.body).is_ok()),
        Err(Error::NoExplicitWitness(_)) => None,
        Err(err) => return Err(err.into()),
    };
    let search = if e.body.is_bounded() && e.verdict != Verdict::LimitFamily {
        let b = e.search_body.as_ref().unwrap_or(&e.body);
        Some(lnc_search(b, cfg.pairs, cfg.scales, cfg.seed, &cfg)?)
    } else {
        None
    };
    let probe = match default_path(Some(&e), c.n) {
        Ok(path) => {
            let m = c.method(default_method(id))?;
            let p = probe_continuity(&section_for(&src, e.map.clone(), m, &cfg, false)?, &path, 0)?;
            Some(ProbeSummary { method: m.name(), max_jump: p.max_jump, argmax: p.argmax })
        }
        Err(_) => None,
    };
    let found = search.as_ref().is_some_and(|s| s.witness().is_some());
    let agrees = match e.verdict {
        Verdict::NotLncWitness => template_verified == Some(true) || found,
        Verdict::LncNoWitness => !found,
        Verdict::LimitFamily => true,
    };
    let run = GalleryRun {
        id: e.id.clone(),
        description: e.description.clone(),
        map: e.map_label.clone(),
        section_notes: e.section_notes.clone(),
        expected: e.verdict,
        template_verified,
        search,
        probe,
        agrees,
    };
    c.report("gallery run", &src.label, &cfg, &run)?;
    if agrees {
        eprintln!("{id}: {:?} as expected", e.verdict);
        Ok(None)
    } else {
        Ok(Some(Found(format!("{id}: observed behaviour differs from {:?}", e.verdict))))
    }
}

fn run(cli: &Cli) -> Result<Option<Found>> {
    let c = &cli.common;
    match &cli.command {
        Command::CheckLnc { search_box } => check_lnc(c, search_box.as_deref()),
        Command::Section => section(c),
        Command::Probe { path, end, refine } => probe(c, path, end.as_deref(), *refine),
        Command::Openness { base, radius, targets } => openness(c, base.as_deref(), *radius, *targets),
        Command::Crosscheck { targets, bases } => crosscheck(c, *targets, *bases),
        Command::Gallery { action: GalleryAction::List } => {
            let cfg = c.config()?;
            let items: Vec<ListedEntry> =
                gallery::list().into_iter().map(|(id, verdict, description)| ListedEntry { id, verdict, description }).collect();
            c.report("gallery list", "gallery", &cfg, &items)?;
            Ok(None)
        }
        Command::Gallery { action: GalleryAction::Run { id } } => gallery_run(c, id),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Found(msg))) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
