use crate::instances::types::{HemHypergraph, HvmHypergraph, HyperEdge};
use crate::scalar::Weight;

/// Edge-at-a-time to vertex-at-a-time: every hyperedge `i` gets a fresh
/// left vertex `i`, and the original vertices become the right side.
///
/// A random order of the new left vertices is a random order of the
/// original edges, and edge `i` keeps index `i` and its weight.
pub fn reduce_hem_to_hvm<W: Weight>(h: &HemHypergraph<W>) -> HvmHypergraph<W> {
    let edges = h
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| HyperEdge {
            left: i,
            rights: e.vertices.clone(),
            weight: e.weight,
        })
        .collect();
    HvmHypergraph::new(h.vertex_count(), h.edges().len(), h.d(), edges)
        .expect("a valid HEM instance maps to a valid HVM instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::types::HemEdge;

    #[test]
    fn empty_hem() {
        let h = HemHypergraph::<f64>::new(4, 2, vec![]).unwrap();
        let v = reduce_hem_to_hvm(&h);
        assert_eq!(v.left_count(), 0);
        assert_eq!(v.right_count(), 4);
        assert!(v.edges().is_empty());
    }

    #[test]
    fn transcription() {
        let h = HemHypergraph::new(
            3,
            2,
            vec![
                HemEdge { vertices: vec![0, 1], weight: 5.0 },
                HemEdge { vertices: vec![1, 2], weight: 3.0 },
            ],
        )
        .unwrap();
        let v = reduce_hem_to_hvm(&h);
        assert_eq!(v.left_count(), 2);
        assert_eq!(v.d(), 2);
        assert_eq!(
            v.edges(),
            &[
                HyperEdge { left: 0, rights: vec![0, 1], weight: 5.0 },
                HyperEdge { left: 1, rights: vec![1, 2], weight: 3.0 },
            ]
        );
    }
}
