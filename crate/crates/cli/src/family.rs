//! Graph family descriptions, as words (`line-of complete 4`) or as a
//! single colon-joined token (`line-of:complete:4`).

use johnson_core::graph::{
    complement, complete_bipartite, complete_graph, cycle_graph, johnson_graph_capped,
    kneser_graph_capped, line_graph, path_graph, Graph,
};
use johnson_core::{Error, Result};

fn number(words: &mut std::slice::Iter<'_, String>, what: &str) -> Result<usize> {
    let w = words
        .next()
        .ok_or_else(|| Error::Parameter(format!("missing {what}")))?;
    w.parse()
        .map_err(|_| Error::Parameter(format!("{what} must be a non-negative integer, got {w:?}")))
}

fn checked(g: Graph, cap: usize) -> Result<Graph> {
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded {
            vertices: g.vertex_count() as u128,
            cap,
        });
    }
    Ok(g)
}

fn build_from(words: &mut std::slice::Iter<'_, String>, cap: usize) -> Result<Graph> {
    let family = words
        .next()
        .ok_or_else(|| Error::Parameter("missing graph family".into()))?;
    match family.as_str() {
        "johnson" => {
            let (n, m) = (number(words, "n")?, number(words, "m")?);
            johnson_graph_capped(n, m, cap)
        }
        "kneser" => {
            let (n, m) = (number(words, "n")?, number(words, "m")?);
            kneser_graph_capped(n, m, cap)
        }
        "complete" => checked(complete_graph(number(words, "n")?)?, cap),
        "bipartite" => {
            let (s, t) = (number(words, "s")?, number(words, "t")?);
            checked(complete_bipartite(s, t)?, cap)
        }
        "cycle" => checked(cycle_graph(number(words, "n")?)?, cap),
        "path" => checked(path_graph(number(words, "n")?)?, cap),
        "line-of" => {
            let inner = build_from(words, cap)?;
            if inner.edge_count() > cap {
                return Err(Error::CapExceeded {
                    vertices: inner.edge_count() as u128,
                    cap,
                });
            }
            Ok(line_graph(&inner)?.graph)
        }
        "complement" => Ok(complement(&build_from(words, cap)?)),
        other => Err(Error::Parameter(format!(
            "unknown family {other:?} (johnson, kneser, complete, bipartite, cycle, path, line-of, complement)"
        ))),
    }
}

pub fn build(words: &[String], cap: usize) -> Result<Graph> {
    let words: Vec<String> = words
        .iter()
        .flat_map(|w| w.split(':').map(str::to_owned))
        .collect();
    let mut it = words.iter();
    let g = build_from(&mut it, cap)?;
    if let Some(extra) = it.next() {
        return Err(Error::Parameter(format!("unexpected argument {extra:?}")));
    }
    Ok(g)
}
