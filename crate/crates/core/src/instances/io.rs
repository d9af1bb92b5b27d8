//! Instance files.
//!
//! One JSON object per file with a `kind` tag, a `meta` block, an `edges`
//! array and, for grouped instances, a `groups` array. Weights are written
//! as decimal strings using the shortest representation that parses back to
//! the same float, so `load(save(x)) == x` bit for bit. Each edge and group
//! sits on its own line to keep files diffable.

use std::fmt::Write as _;
use std::fs;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{self, DeserializeOwned, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::types::{
    BipartiteEdge, GraphEdge, GroupedInstance, GroupingMode, HemEdge, HemHypergraph, HvmHypergraph,
    HyperEdge, Instance, UndirectedGraph, WeightedBipartiteGraph,
};
use crate::scalar::Weight;

/// A weight read from a decimal string.
struct Decimal<W>(W);

impl<'de, W: Weight> Deserialize<'de> for Decimal<W> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct DecimalVisitor<W>(PhantomData<W>);

        impl<W: Weight> Visitor<'_> for DecimalVisitor<W> {
            type Value = Decimal<W>;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a nonnegative decimal weight string")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Self::Value, E> {
                let w: W = s
                    .trim()
                    .parse()
                    .map_err(|_| E::custom(format!("`{s}` is not a decimal number")))?;
                if !w.is_valid_weight() {
                    return Err(E::custom(format!("weight `{s}` must be finite and nonnegative")));
                }
                Ok(Decimal(w))
            }
        }

        deserializer.deserialize_str(DecimalVisitor(PhantomData))
    }
}

/// Only the `kind` tag; other fields are ignored at this stage.
#[derive(Deserialize)]
struct Head {
    kind: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteMeta {
    left_count: usize,
    right_count: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HvmMeta {
    left_count: usize,
    right_count: usize,
    d: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HemMeta {
    vertex_count: usize,
    d: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupedMeta {
    left_count: usize,
    right_count: usize,
    grouping_mode: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphMeta {
    vertex_count: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "W: Weight")]
struct BipartiteDoc<W> {
    #[allow(dead_code)]
    kind: String,
    meta: BipartiteMeta,
    edges: Vec<(usize, usize, Decimal<W>)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "W: Weight")]
struct HvmDoc<W> {
    #[allow(dead_code)]
    kind: String,
    meta: HvmMeta,
    edges: Vec<(usize, Vec<usize>, Decimal<W>)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "W: Weight")]
struct HemDoc<W> {
    #[allow(dead_code)]
    kind: String,
    meta: HemMeta,
    edges: Vec<(Vec<usize>, Decimal<W>)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "W: Weight")]
struct GroupedDoc<W> {
    #[allow(dead_code)]
    kind: String,
    meta: GroupedMeta,
    edges: Vec<(usize, usize, Decimal<W>)>,
    groups: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "W: Weight")]
struct GraphDoc<W> {
    #[allow(dead_code)]
    kind: String,
    meta: GraphMeta,
    edges: Vec<(usize, usize, Decimal<W>)>,
}

fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let field = err.path().to_string();
        let inner = err.into_inner();
        Error::Parse {
            line: inner.line(),
            field,
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| Error::Parse {
        line: e.line(),
        field: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

fn parse_mode(mode: &str) -> Result<GroupingMode> {
    match mode {
        "left-vertex-groups" => Ok(GroupingMode::LeftVertexGroups),
        "edge-groups" => Ok(GroupingMode::EdgeGroups),
        other => Err(Error::Parse {
            line: 0,
            field: "meta.grouping_mode".into(),
            message: format!("unknown grouping mode `{other}`"),
        }),
    }
}

/// Parses an instance document.
pub fn instance_from_str<W: Weight>(text: &str) -> Result<Instance<W>> {
    let head: Head = parse_doc(text)?;
    let bipartite_edges = |edges: Vec<(usize, usize, Decimal<W>)>| {
        edges
            .into_iter()
            .map(|(left, right, w)| BipartiteEdge {
                left,
                right,
                weight: w.0,
            })
            .collect::<Vec<_>>()
    };
    Ok(match head.kind.as_str() {
        "bipartite" => {
            let doc: BipartiteDoc<W> = parse_doc(text)?;
            Instance::Bipartite(WeightedBipartiteGraph::new(
                doc.meta.left_count,
                doc.meta.right_count,
                bipartite_edges(doc.edges),
            )?)
        }
        "hvm" => {
            let doc: HvmDoc<W> = parse_doc(text)?;
            let edges = doc
                .edges
                .into_iter()
                .map(|(left, rights, w)| HyperEdge {
                    left,
                    rights,
                    weight: w.0,
                })
                .collect();
            Instance::Hvm(HvmHypergraph::new(
                doc.meta.right_count,
                doc.meta.left_count,
                doc.meta.d,
                edges,
            )?)
        }
        "hem" => {
            let doc: HemDoc<W> = parse_doc(text)?;
            let edges = doc
                .edges
                .into_iter()
                .map(|(vertices, w)| HemEdge { vertices, weight: w.0 })
                .collect();
            Instance::Hem(HemHypergraph::new(doc.meta.vertex_count, doc.meta.d, edges)?)
        }
        "grouped" => {
            let doc: GroupedDoc<W> = parse_doc(text)?;
            let mode = parse_mode(&doc.meta.grouping_mode)?;
            let base = WeightedBipartiteGraph::new(
                doc.meta.left_count,
                doc.meta.right_count,
                bipartite_edges(doc.edges),
            )?;
            Instance::Grouped(GroupedInstance::new(base, mode, doc.groups)?)
        }
        "graph" => {
            let doc: GraphDoc<W> = parse_doc(text)?;
            let edges = doc
                .edges
                .into_iter()
                .map(|(u, v, w)| GraphEdge { u, v, weight: w.0 })
                .collect();
            Instance::Graph(UndirectedGraph::new(doc.meta.vertex_count, edges)?)
        }
        other => {
            return Err(Error::Parse {
                line: 0,
                field: "kind".into(),
                message: format!("unknown instance kind `{other}`"),
            })
        }
    })
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn weight_str<W: Weight>(w: W) -> String {
    json(&w.to_string())
}

fn write_lines(out: &mut String, name: &str, lines: &[String], last: bool) {
    if lines.is_empty() {
        let _ = write!(out, "  \"{name}\": []");
    } else {
        let _ = writeln!(out, "  \"{name}\": [");
        for (i, line) in lines.iter().enumerate() {
            let sep = if i + 1 == lines.len() { "" } else { "," };
            let _ = writeln!(out, "    {line}{sep}");
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Renders an instance document.
pub fn instance_to_string<W: Weight>(instance: &Instance<W>) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"kind\": {},", json(instance.kind()));
    let bipartite_lines = |g: &WeightedBipartiteGraph<W>| -> Vec<String> {
        g.edges()
            .iter()
            .map(|e| format!("[{}, {}, {}]", e.left, e.right, weight_str(e.weight)))
            .collect()
    };
    match instance {
        Instance::Bipartite(g) => {
            let meta = BipartiteMeta {
                left_count: g.left_count(),
                right_count: g.right_count(),
            };
            let _ = writeln!(out, "  \"meta\": {},", json(&meta));
            write_lines(&mut out, "edges", &bipartite_lines(g), true);
        }
        Instance::Hvm(h) => {
            let meta = HvmMeta {
                left_count: h.left_count(),
                right_count: h.right_count(),
                d: h.d(),
            };
            let _ = writeln!(out, "  \"meta\": {},", json(&meta));
            let lines: Vec<String> = h
                .edges()
                .iter()
                .map(|e| format!("[{}, {}, {}]", e.left, json(&e.rights), weight_str(e.weight)))
                .collect();
            write_lines(&mut out, "edges", &lines, true);
        }
        Instance::Hem(h) => {
            let meta = HemMeta {
                vertex_count: h.vertex_count(),
                d: h.d(),
            };
            let _ = writeln!(out, "  \"meta\": {},", json(&meta));
            let lines: Vec<String> = h
                .edges()
                .iter()
                .map(|e| format!("[{}, {}]", json(&e.vertices), weight_str(e.weight)))
                .collect();
            write_lines(&mut out, "edges", &lines, true);
        }
        Instance::Grouped(g) => {
            let meta = GroupedMeta {
                left_count: g.base().left_count(),
                right_count: g.base().right_count(),
                grouping_mode: g.mode().as_str().to_string(),
            };
            let _ = writeln!(out, "  \"meta\": {},", json(&meta));
            write_lines(&mut out, "edges", &bipartite_lines(g.base()), false);
            let groups: Vec<String> = g.groups().iter().map(json).collect();
            write_lines(&mut out, "groups", &groups, true);
        }
        Instance::Graph(g) => {
            let meta = GraphMeta {
                vertex_count: g.vertex_count(),
            };
            let _ = writeln!(out, "  \"meta\": {},", json(&meta));
            let lines: Vec<String> = g
                .edges()
                .iter()
                .map(|e| format!("[{}, {}, {}]", e.u, e.v, weight_str(e.weight)))
                .collect();
            write_lines(&mut out, "edges", &lines, true);
        }
    }
    out.push_str("}\n");
    out
}

pub fn save_instance<W: Weight>(instance: &Instance<W>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance_to_string(instance))?;
    Ok(())
}

pub fn load_instance<W: Weight>(path: impl AsRef<Path>) -> Result<Instance<W>> {
    let text = fs::read_to_string(path)?;
    instance_from_str(&text)
}
