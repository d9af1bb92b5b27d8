//! Arrival units and builders that cut an instance into them.

use crate::instances::{GroupedInstance, HvmHypergraph, UndirectedGraph, WeightedBipartiteGraph};
use crate::online::stream::Unit;
use crate::scalar::Weight;

/// An element of a classical secretary instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element<W> {
    pub id: usize,
    pub weight: W,
}

impl<W> Unit for Element<W> {
    fn unit_id(&self) -> usize {
        self.id
    }
}

/// A group of secretary elements revealed together.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementGroup<W> {
    pub group: usize,
    pub elements: Vec<Element<W>>,
}

impl<W> Unit for ElementGroup<W> {
    fn unit_id(&self) -> usize {
        self.group
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentEdge<W> {
    pub index: usize,
    pub right: usize,
    pub weight: W,
}

/// A left vertex with all its incident edges.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexArrival<W> {
    pub left: usize,
    pub edges: Vec<IncidentEdge<W>>,
}

impl<W> Unit for VertexArrival<W> {
    fn unit_id(&self) -> usize {
        self.left
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidentBundle<W> {
    pub index: usize,
    pub rights: Vec<usize>,
    pub weight: W,
}

/// A left vertex with all the hyperedges (bundles) containing it.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleArrival<W> {
    pub left: usize,
    pub edges: Vec<IncidentBundle<W>>,
}

impl<W> Unit for BundleArrival<W> {
    fn unit_id(&self) -> usize {
        self.left
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupEdge<W> {
    pub index: usize,
    pub left: usize,
    pub right: usize,
    pub weight: W,
}

/// A group of edges (or of left vertices with their edges) revealed at once.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupArrival<W> {
    pub group: usize,
    pub edges: Vec<GroupEdge<W>>,
}

impl<W> Unit for GroupArrival<W> {
    fn unit_id(&self) -> usize {
        self.group
    }
}

/// A single edge of an undirected graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeArrival<W> {
    pub index: usize,
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

impl<W> Unit for EdgeArrival<W> {
    fn unit_id(&self) -> usize {
        self.index
    }
}

pub fn elements<W: Weight>(weights: &[W]) -> Vec<Element<W>> {
    weights
        .iter()
        .enumerate()
        .map(|(id, &weight)| Element { id, weight })
        .collect()
}

/// One unit per left vertex, including isolated ones.
pub fn vertex_arrivals<W: Weight>(g: &WeightedBipartiteGraph<W>) -> Vec<VertexArrival<W>> {
    g.left_adjacency()
        .into_iter()
        .enumerate()
        .map(|(left, idx)| VertexArrival {
            left,
            edges: idx
                .into_iter()
                .map(|i| {
                    let e = g.edges()[i];
                    IncidentEdge {
                        index: i,
                        right: e.right,
                        weight: e.weight,
                    }
                })
                .collect(),
        })
        .collect()
}

pub fn bundle_arrivals<W: Weight>(h: &HvmHypergraph<W>) -> Vec<BundleArrival<W>> {
    h.left_adjacency()
        .into_iter()
        .enumerate()
        .map(|(left, idx)| BundleArrival {
            left,
            edges: idx
                .into_iter()
                .map(|i| {
                    let e = &h.edges()[i];
                    IncidentBundle {
                        index: i,
                        rights: e.rights.clone(),
                        weight: e.weight,
                    }
                })
                .collect(),
        })
        .collect()
}

/// One unit per group, carrying every edge the group reveals.
pub fn group_arrivals<W: Weight>(g: &GroupedInstance<W>) -> Vec<GroupArrival<W>> {
    let base = g.base();
    g.group_edges()
        .into_iter()
        .enumerate()
        .map(|(group, idx)| GroupArrival {
            group,
            edges: idx
                .into_iter()
                .map(|i| {
                    let e = base.edges()[i];
                    GroupEdge {
                        index: i,
                        left: e.left,
                        right: e.right,
                        weight: e.weight,
                    }
                })
                .collect(),
        })
        .collect()
}

pub fn edge_arrivals<W: Weight>(g: &UndirectedGraph<W>) -> Vec<EdgeArrival<W>> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(index, e)| EdgeArrival {
            index,
            u: e.u,
            v: e.v,
            weight: e.weight,
        })
        .collect()
}
