//! Trace execution, lockstep differential checking and benchmark output.

use std::fmt;
use std::time::Instant;

use crate::dynsc::{self, DynSc};
use crate::dynscc::{self, DynScc, SccOptions};
use crate::error::{Error, Result};
use crate::graph::PlanarDigraph;
use crate::oracle::{reach_count, scc_labels, scc_members, scc_stats};
use crate::rdivision::RDivision;
use crate::ssr::{self, DynSsr};
use crate::trace::{Command, Mode, Query, Trace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    /// 1-based command index; 0 is the initial graph.
    pub step: usize,
    pub field: String,
    pub got: String,
    pub want: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {} got {} want {}", self.step, self.field, self.got, self.want)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Piece size; the mode's default when `None`.
    pub r: Option<usize>,
    /// Check every step against the oracles.
    pub diff: bool,
    pub debug_closedness: bool,
    pub fault_injection: bool,
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub step: usize,
    pub op: String,
    pub micros: u128,
    pub pieces_rebuilt: usize,
    pub pathnet_queries: usize,
    pub pieces: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub r: usize,
    /// One line per query command.
    pub answers: Vec<String>,
    pub records: Vec<StepRecord>,
    pub divergence: Option<Divergence>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

pub fn default_r(mode: Mode, n: usize) -> usize {
    match mode {
        Mode::Scc => dynscc::default_r(n),
        Mode::Sc => dynsc::default_r(n),
        Mode::Ssr => ssr::default_r(n),
    }
}

enum Engine {
    Scc(DynScc),
    Sc(DynSc),
    Ssr(DynSsr),
}

impl Engine {
    fn new(mode: Mode, g: PlanarDigraph, r: usize, opts: &RunOptions) -> Result<Self> {
        Ok(match mode {
            Mode::Scc => Engine::Scc(DynScc::with_options(
                g,
                r,
                SccOptions {
                    debug_closedness: opts.debug_closedness,
                    fault_injection: opts.fault_injection,
                },
            )?),
            Mode::Sc => Engine::Sc(DynSc::new(g, r)?),
            Mode::Ssr => Engine::Ssr(DynSsr::new(g, r)?),
        })
    }

    fn div(&self) -> &RDivision {
        match self {
            Engine::Scc(d) => &d.div,
            Engine::Sc(d) => &d.div,
            Engine::Ssr(d) => &d.div,
        }
    }

    fn update(&mut self, c: Command) -> Result<()> {
        match (self, c) {
            (Engine::Scc(d), Command::Add(u, v)) => d.insert_edge(u, v).map(drop),
            (Engine::Scc(d), Command::Del(u, v)) => d.delete_edge(u, v).map(drop),
            (Engine::Sc(d), Command::Add(u, v)) => d.insert_edge(u, v).map(drop),
            (Engine::Sc(d), Command::Del(u, v)) => d.delete_edge(u, v).map(drop),
            (Engine::Ssr(d), Command::Add(u, v)) => d.insert_edge(u, v),
            (Engine::Ssr(d), Command::Del(u, v)) => d.delete_edge(u, v),
            (_, Command::Query(_)) => Ok(()),
        }
    }

    fn counters(&self) -> (usize, usize) {
        match self {
            Engine::Scc(d) => (d.last_rebuilt, d.view().queries),
            Engine::Sc(d) => (d.last_rebuilt, 0),
            Engine::Ssr(d) => (d.last_rebuilt, 0),
        }
    }

    fn answer(&self, q: Query) -> Result<String> {
        let unsupported = || Error::Unsupported(format!("query `{}` needs another mode", Command::Query(q)));
        match (self, q) {
            (Engine::Scc(d), Query::NumSccs) => Ok(d.view().scc_count.to_string()),
            (Engine::Scc(d), Query::Largest) => Ok(d.view().largest.to_string()),
            (Engine::Scc(d), Query::SccOf(v)) => {
                let h = d.scc_of(v)?;
                let mut m = d.members(&h)?;
                m.sort_unstable();
                Ok(format_members(&m))
            }
            (Engine::Sc(d), Query::StronglyConnected) => Ok(d.is_strongly_connected().to_string()),
            (Engine::Ssr(d), Query::Reach(s)) => Ok(d.count_reachable(s)?.to_string()),
            _ => Err(unsupported()),
        }
    }

    /// State fields compared after every update.
    fn state(&self) -> Vec<(&'static str, String)> {
        match self {
            Engine::Scc(d) => vec![
                ("scc_count", d.view().scc_count.to_string()),
                ("largest", d.view().largest.to_string()),
            ],
            Engine::Sc(d) => vec![("sc", d.is_strongly_connected().to_string())],
            Engine::Ssr(_) => vec![],
        }
    }
}

fn format_members(m: &[u32]) -> String {
    let mut s = format!("{}:", m.len());
    for v in m {
        s.push(' ');
        s.push_str(&v.to_string());
    }
    s
}

fn oracle_state(mode: Mode, g: &PlanarDigraph) -> Vec<(&'static str, String)> {
    match mode {
        Mode::Scc => {
            let (k, big) = scc_stats(&scc_labels(g));
            vec![("scc_count", k.to_string()), ("largest", big.to_string())]
        }
        Mode::Sc => {
            let (k, _) = scc_stats(&scc_labels(g));
            vec![("sc", (k == 1).to_string())]
        }
        Mode::Ssr => vec![],
    }
}

fn oracle_answer(g: &PlanarDigraph, q: Query) -> String {
    match q {
        Query::NumSccs => scc_stats(&scc_labels(g)).0.to_string(),
        Query::Largest => scc_stats(&scc_labels(g)).1.to_string(),
        Query::SccOf(v) => format_members(&scc_members(&scc_labels(g), v)),
        Query::StronglyConnected => (scc_stats(&scc_labels(g)).0 == 1).to_string(),
        Query::Reach(s) => reach_count(g, s).to_string(),
    }
}

fn compare(step: usize, got: Vec<(&'static str, String)>, want: Vec<(&'static str, String)>) -> Option<Divergence> {
    got.into_iter().zip(want).find(|(a, b)| a.1 != b.1).map(|(a, b)| Divergence {
        step,
        field: a.0.to_string(),
        got: a.1,
        want: b.1,
    })
}

fn op_name(c: &Command) -> String {
    match c {
        Command::Add(..) => "add".into(),
        Command::Del(..) => "del".into(),
        Command::Query(q) => match q {
            Query::NumSccs => "q nsccs".into(),
            Query::Largest => "q largest".into(),
            Query::SccOf(_) => "q sccof".into(),
            Query::StronglyConnected => "q sc".into(),
            Query::Reach(_) => "q ssr".into(),
        },
    }
}

/// Runs `trace` in `mode`. With `opts.diff` the oracles run in lockstep and
/// the run stops at the first divergence.
pub fn run(trace: &Trace, mode: Mode, opts: &RunOptions) -> Result<Report> {
    let r = opts.r.unwrap_or_else(|| default_r(mode, trace.graph.num_vertices()));
    let mut shadow = trace.graph.clone();
    let mut engine = Engine::new(mode, trace.graph.clone(), r, opts)?;
    let mut report = Report {
        r,
        ..Default::default()
    };
    if opts.diff {
        report.divergence = compare(0, engine.state(), oracle_state(mode, &shadow));
        if report.divergence.is_some() {
            return Ok(report);
        }
    }
    for (i, &c) in trace.commands.iter().enumerate() {
        let step = i + 1;
        let start = Instant::now();
        let mut answer = None;
        match c {
            Command::Query(q) => answer = Some(engine.answer(q)?),
            _ => engine.update(c)?,
        }
        let micros = start.elapsed().as_micros();
        let (rebuilt, queries) = match c {
            Command::Query(_) => (0, 0),
            _ => engine.counters(),
        };
        report.records.push(StepRecord {
            step,
            op: op_name(&c),
            micros,
            pieces_rebuilt: rebuilt,
            pathnet_queries: queries,
            pieces: engine.div().pieces.len(),
        });
        if opts.diff {
            match c {
                Command::Add(u, v) => shadow.insert_edge(u, v).map(drop),
                Command::Del(u, v) => shadow.delete_edge(u, v).map(drop),
                Command::Query(_) => Ok(()),
            }?;
            let found = match (c, &answer) {
                (Command::Query(q), Some(a)) => {
                    let want = oracle_answer(&shadow, q);
                    (a != &want).then(|| Divergence {
                        step,
                        field: op_name(&c),
                        got: a.clone(),
                        want,
                    })
                }
                _ => engine
                    .div()
                    .validate()
                    .err()
                    .map(|e| Divergence {
                        step,
                        field: "rdivision".into(),
                        got: e,
                        want: "valid".into(),
                    })
                    .or_else(|| compare(step, engine.state(), oracle_state(mode, &shadow))),
            };
            if found.is_some() {
                report.divergence = found;
                return Ok(report);
            }
        }
        if let Some(a) = answer {
            report.answers.push(a);
        }
    }
    Ok(report)
}

pub const CSV_HEADER: &str = "r,step,op,micros,pieces_rebuilt,pathnet_queries,pieces";

/// One CSV row per command and per `r`. With `deterministic` the timing
/// column is written as 0 so the output is byte-identical across runs.
pub fn bench(trace: &Trace, mode: Mode, r_grid: &[usize], deterministic: bool) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for &r in r_grid {
        let rep = run(
            trace,
            mode,
            &RunOptions {
                r: Some(r),
                ..Default::default()
            },
        )?;
        for s in &rep.records {
            let micros = if deterministic { 0 } else { s.micros };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r, s.step, s.op, micros, s.pieces_rebuilt, s.pathnet_queries, s.pieces
            ));
        }
    }
    Ok(out)
}
