//! Text, JSON and DOT serialization.
//!
//! Graph text: first line `n m`, then `m` lines `u v` (0-based vertices).
//! Coloring text: one line per edge, `u v : c1 c2 ...` with 1-based colors;
//! the `u v` prefix identifies the edge, so line order is free, but writers
//! emit canonical edge order. JSON bundles both into one object with keys
//! `n`, `edges`, `k`, `colors`. DOT renders edge labels as `{c1,c2}` and
//! vertex labels as `id={...}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{verify, Coloring, ColoringError};
use crate::colorset::{ColorSet, MAX_COLORS};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("expected integer, got {0:?}")]
    BadInteger(String),
    #[error("graph header needs `n m`, got {0} tokens")]
    BadHeader(usize),
    #[error("graph body has {got} integers, expected {want}")]
    BadEdgeCount { got: usize, want: usize },
    #[error("coloring line {0:?} is not of the form `u v : colors`")]
    BadColoringLine(String),
    #[error("coloring references edge ({0}, {1}) absent from the graph")]
    UnknownEdge(usize, usize),
    #[error("coloring assigns edge ({0}, {1}) twice")]
    DuplicateEdge(usize, usize),
    #[error("coloring covers {got} edges, graph has {want}")]
    MissingEdges { got: usize, want: usize },
    #[error("color {0} outside 1..={MAX_COLORS}")]
    ColorOutOfRange(u64),
    #[error("JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

fn parse_int<T: std::str::FromStr>(tok: &str) -> Result<T, FormatError> {
    tok.parse::<T>()
        .map_err(|_| FormatError::BadInteger(tok.to_string()))
}

// ============================================================================
// Graph text format
// ============================================================================

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(FormatError::BadHeader(toks.len()));
    }
    let n: usize = parse_int(toks[0])?;
    let m: usize = parse_int(toks[1])?;
    let body = &toks[2..];
    if body.len() != 2 * m {
        return Err(FormatError::BadEdgeCount {
            got: body.len(),
            want: 2 * m,
        });
    }
    let mut edges = Vec::with_capacity(m);
    for pair in body.chunks(2) {
        edges.push((parse_int(pair[0])?, parse_int(pair[1])?));
    }
    Ok(Graph::new(n, &edges)?)
}

// ============================================================================
// Coloring text format
// ============================================================================

pub fn write_coloring(g: &Graph, c: &Coloring) -> String {
    debug_assert_eq!(g.m(), c.sets().len());
    let mut out = String::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        out.push_str(&format!("{u} {v} :"));
        for color in c.set(i).iter() {
            out.push_str(&format!(" {color}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a coloring against `g`; every graph edge must appear exactly
/// once. The declared palette is the largest color present.
pub fn parse_coloring(g: &Graph, text: &str) -> Result<Coloring, FormatError> {
    let mut sets: Vec<Option<ColorSet>> = vec![None; g.m()];
    let mut covered = 0usize;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| FormatError::BadColoringLine(line.to_string()))?;
        let ends: Vec<&str> = head.split_whitespace().collect();
        if ends.len() != 2 {
            return Err(FormatError::BadColoringLine(line.to_string()));
        }
        let u: usize = parse_int(ends[0])?;
        let v: usize = parse_int(ends[1])?;
        let idx = g
            .edge_index(u, v)
            .ok_or(FormatError::UnknownEdge(u, v))?;
        if sets[idx].is_some() {
            return Err(FormatError::DuplicateEdge(u, v));
        }
        let mut s = ColorSet::EMPTY;
        for tok in tail.split_whitespace() {
            let c: u64 = parse_int(tok)?;
            if c < 1 || c > MAX_COLORS as u64 {
                return Err(FormatError::ColorOutOfRange(c));
            }
            s.insert(c as u32);
        }
        sets[idx] = Some(s);
        covered += 1;
    }
    if covered != g.m() {
        return Err(FormatError::MissingEdges {
            got: covered,
            want: g.m(),
        });
    }
    let sets: Vec<ColorSet> = sets.into_iter().map(|s| s.unwrap()).collect();
    let k = sets.iter().map(|s| s.max_color()).max().unwrap_or(0);
    Ok(Coloring::new(k, sets)?)
}

// ============================================================================
// JSON format
// ============================================================================

#[derive(Serialize, Deserialize)]
struct ColoredGraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    k: u32,
    colors: Vec<Vec<u32>>,
}

pub fn to_json(g: &Graph, c: &Coloring) -> String {
    let doc = ColoredGraphJson {
        n: g.n(),
        edges: g.edges().to_vec(),
        k: c.k(),
        colors: c.sets().iter().map(|s| s.iter().collect()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<(Graph, Coloring), FormatError> {
    let doc: ColoredGraphJson =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if doc.colors.len() != doc.edges.len() {
        return Err(FormatError::MissingEdges {
            got: doc.colors.len(),
            want: doc.edges.len(),
        });
    }
    let g = Graph::new(doc.n, &doc.edges)?;
    // Edges may be listed in any order; route colors through the canonical
    // index so the pairing survives normalization.
    let mut sets: Vec<Option<ColorSet>> = vec![None; g.m()];
    for (&(u, v), colors) in doc.edges.iter().zip(&doc.colors) {
        let idx = g
            .edge_index(u, v)
            .ok_or(FormatError::UnknownEdge(u, v))?;
        if sets[idx].is_some() {
            return Err(FormatError::DuplicateEdge(u, v));
        }
        let mut s = ColorSet::EMPTY;
        for &c in colors {
            if c < 1 || c > MAX_COLORS {
                return Err(FormatError::ColorOutOfRange(c as u64));
            }
            s.insert(c);
        }
        sets[idx] = Some(s);
    }
    let sets: Vec<ColorSet> = sets
        .into_iter()
        .map(|s| s.expect("edge count checked above"))
        .collect();
    Ok((g, Coloring::new(doc.k, sets)?))
}

// ============================================================================
// DOT rendering
// ============================================================================

/// Graphviz rendering with vertex codes in the labels.
pub fn to_dot(g: &Graph, c: &Coloring) -> String {
    let codes = verify(g, c).map(|r| r.codes).unwrap_or_default();
    let mut out = String::from("graph uvd {\n");
    for v in 0..g.n() {
        let code = codes.get(v).copied().unwrap_or(ColorSet::EMPTY);
        out.push_str(&format!("  {v} [label=\"id={code}\"];\n"));
    }
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        out.push_str(&format!("  {u} -- {v} [label=\"{}\"];\n", c.set(i)));
    }
    out.push_str("}\n");
    out
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn colored_p3() -> (Graph, Coloring) {
        let g = generate::path(3).unwrap();
        let c = Coloring::new(
            2,
            vec![ColorSet::single(1), ColorSet::single(2)],
        )
        .unwrap();
        (g, c)
    }

    // ------------------------------------------------------------------
    // Graph text
    // ------------------------------------------------------------------

    #[test]
    fn graph_text_round_trip() {
        let g = generate::cycle(4).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_text_bad_counts() {
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(FormatError::BadEdgeCount { got: 2, want: 4 })
        ));
        assert!(matches!(
            parse_graph("x"),
            Err(FormatError::BadHeader(1))
        ));
        assert!(matches!(
            parse_graph("3 one\n"),
            Err(FormatError::BadInteger(_))
        ));
    }

    // ------------------------------------------------------------------
    // Coloring text
    // ------------------------------------------------------------------

    #[test]
    fn coloring_text_round_trip() {
        let (g, c) = colored_p3();
        let text = write_coloring(&g, &c);
        assert_eq!(text, "0 1 : 1\n1 2 : 2\n");
        assert_eq!(parse_coloring(&g, &text).unwrap(), c);
    }

    #[test]
    fn coloring_lines_in_any_order() {
        let (g, c) = colored_p3();
        assert_eq!(parse_coloring(&g, "1 2 : 2\n0 1 : 1\n").unwrap(), c);
    }

    #[test]
    fn coloring_errors() {
        let (g, _) = colored_p3();
        assert_eq!(
            parse_coloring(&g, "0 2 : 1\n1 2 : 2\n").unwrap_err(),
            FormatError::UnknownEdge(0, 2)
        );
        assert_eq!(
            parse_coloring(&g, "0 1 : 1\n1 0 : 2\n").unwrap_err(),
            FormatError::DuplicateEdge(1, 0)
        );
        assert_eq!(
            parse_coloring(&g, "0 1 : 1\n").unwrap_err(),
            FormatError::MissingEdges { got: 1, want: 2 }
        );
        assert_eq!(
            parse_coloring(&g, "0 1 : 1\n1 2 : 65\n").unwrap_err(),
            FormatError::ColorOutOfRange(65)
        );
    }

    #[test]
    fn empty_color_list_parses_to_empty_set() {
        // Corrupted colorings must be representable so the verifier can
        // reject them; parsing is not the validity gate.
        let (g, _) = colored_p3();
        let c = parse_coloring(&g, "0 1 : 1\n1 2 :\n").unwrap();
        assert!(c.set(1).is_empty());
    }

    // ------------------------------------------------------------------
    // JSON
    // ------------------------------------------------------------------

    #[test]
    fn json_round_trip_is_identity() {
        let (g, c) = colored_p3();
        let (g2, c2) = from_json(&to_json(&g, &c)).unwrap();
        assert_eq!(g2, g);
        assert_eq!(c2, c);
    }

    #[test]
    fn json_carries_declared_palette() {
        let (g, _) = colored_p3();
        let c = Coloring::new(5, vec![ColorSet::single(1), ColorSet::single(2)]).unwrap();
        let (_, c2) = from_json(&to_json(&g, &c)).unwrap();
        assert_eq!(c2.k(), 5);
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(matches!(from_json("{"), Err(FormatError::Json(_))));
    }

    // ------------------------------------------------------------------
    // DOT
    // ------------------------------------------------------------------

    #[test]
    fn dot_labels_edges_and_codes() {
        let (g, c) = colored_p3();
        let dot = to_dot(&g, &c);
        assert!(dot.contains("0 -- 1 [label=\"{1}\"];"));
        assert!(dot.contains("1 [label=\"id={1,2}\"];"));
        assert!(dot.starts_with("graph uvd {"));
    }
}
