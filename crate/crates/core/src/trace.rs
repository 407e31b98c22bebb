//! Text traces: a header, an initial graph, then updates and queries.
//!
//! ```text
//! trace scc 7
//! p 4 2
//! e 0 1
//! e 1 2
//! add 2 0
//! q nsccs
//! del 0 1
//! q sccof 3
//! ```

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, PlanarDigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Scc,
    Sc,
    Ssr,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "scc" => Ok(Mode::Scc),
            "sc" => Ok(Mode::Sc),
            "ssr" => Ok(Mode::Ssr),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Scc => "scc",
            Mode::Sc => "sc",
            Mode::Ssr => "ssr",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    NumSccs,
    Largest,
    SccOf(VertexId),
    StronglyConnected,
    Reach(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Add(VertexId, VertexId),
    Del(VertexId, VertexId),
    Query(Query),
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Command::Add(u, v) => write!(f, "add {u} {v}"),
            Command::Del(u, v) => write!(f, "del {u} {v}"),
            Command::Query(Query::NumSccs) => write!(f, "q nsccs"),
            Command::Query(Query::Largest) => write!(f, "q largest"),
            Command::Query(Query::SccOf(v)) => write!(f, "q sccof {v}"),
            Command::Query(Query::StronglyConnected) => write!(f, "q sc"),
            Command::Query(Query::Reach(s)) => write!(f, "q ssr {s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub mode: Mode,
    pub seed: u64,
    pub graph: PlanarDigraph,
    pub commands: Vec<Command>,
}

impl Trace {
    pub fn to_text(&self) -> String {
        let mut s = format!("trace {} {}\n", self.mode, self.seed);
        s.push_str(&self.graph.to_text());
        for c in &self.commands {
            let _ = writeln!(s, "{c}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| err(1, "empty trace"))?;
        let mut hs = head.split_whitespace();
        if hs.next() != Some("trace") {
            return Err(err(1, "expected `trace <mode> <seed>` header"));
        }
        let mode: Mode = hs
            .next()
            .ok_or_else(|| err(1, "missing mode"))?
            .parse()
            .map_err(|m: String| err(1, &m))?;
        let seed: u64 = hs
            .next()
            .unwrap_or("0")
            .parse()
            .map_err(|_| err(1, "bad seed"))?;

        let mut graph_text = String::new();
        let mut commands = Vec::new();
        for (i, line) in lines {
            let no = i + 1;
            let mut it = line.split_whitespace();
            let tag = it.next().unwrap();
            let mut vertex = || -> Result<VertexId> {
                it.next()
                    .ok_or_else(|| err(no, "missing vertex"))?
                    .parse()
                    .map_err(|_| err(no, "bad vertex"))
            };
            match tag {
                "p" | "e" | "c" | "#" => {
                    if !commands.is_empty() && tag != "c" && tag != "#" {
                        return Err(err(no, "graph line after commands"));
                    }
                    // keep line numbers aligned for graph parse errors
                    while graph_text.lines().count() < i {
                        graph_text.push('\n');
                    }
                    graph_text.push_str(line);
                    graph_text.push('\n');
                }
                "add" => commands.push(Command::Add(vertex()?, vertex()?)),
                "del" => commands.push(Command::Del(vertex()?, vertex()?)),
                "q" => {
                    let kind = it.next().ok_or_else(|| err(no, "missing query kind"))?;
                    let q = match kind {
                        "nsccs" => Query::NumSccs,
                        "largest" => Query::Largest,
                        "sc" => Query::StronglyConnected,
                        "sccof" => Query::SccOf(
                            it.next()
                                .ok_or_else(|| err(no, "missing vertex"))?
                                .parse()
                                .map_err(|_| err(no, "bad vertex"))?,
                        ),
                        "ssr" => Query::Reach(
                            it.next()
                                .ok_or_else(|| err(no, "missing vertex"))?
                                .parse()
                                .map_err(|_| err(no, "bad vertex"))?,
                        ),
                        _ => return Err(err(no, "unknown query")),
                    };
                    commands.push(Command::Query(q));
                }
                _ => return Err(err(no, "unknown command")),
            }
        }
        let (n, edges) = parse_edge_list(&graph_text)?;
        for c in &commands {
            let vs: &[VertexId] = match c {
                Command::Add(u, v) | Command::Del(u, v) => &[*u, *v],
                Command::Query(Query::SccOf(v)) | Command::Query(Query::Reach(v)) => &[*v],
                Command::Query(_) => &[],
            };
            if let Some(&bad) = vs.iter().find(|&&v| v as usize >= n) {
                return Err(Error::UnknownVertex(bad));
            }
        }
        let graph = PlanarDigraph::from_edges(n, &edges)?;
        Ok(Trace {
            mode,
            seed,
            graph,
            commands,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "trace scc 7\np 4 2\ne 0 1\ne 1 2\nadd 2 0\nq nsccs\ndel 0 1\nq sccof 3\nq largest\n";
        let t = Trace::parse(text).unwrap();
        assert_eq!(t.commands.len(), 5);
        assert_eq!(t.to_text(), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Trace::parse("p 2 0\n").is_err());
        assert!(Trace::parse("trace foo 1\np 2 0\n").is_err());
        assert!(matches!(
            Trace::parse("trace sc 1\np 2 0\nadd 0 5\n"),
            Err(Error::UnknownVertex(5))
        ));
    }
}
