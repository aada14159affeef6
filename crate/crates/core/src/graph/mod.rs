//! Terminal graphs, k-way cuts as labelings, and exact min-cut oracles.

mod mesh;

pub use mesh::{planar_dual_min_3cut, CutWitness, DualCase, MeshGraph};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest labeling space `brute_force_min_cut` will enumerate.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T = f64> {
    pub u: usize,
    pub v: usize,
    pub weight: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<T = f64> {
    k: usize,
    node_count: usize,
    terminals: Vec<usize>,
    edges: Vec<Edge<T>>,
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(k: usize, node_count: usize, terminals: Vec<usize>, edges: Vec<Edge<T>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidGraph(format!("need at least 2 terminals, got k = {k}")));
        }
        if terminals.len() != k {
            return Err(Error::InvalidGraph(format!(
                "expected {k} terminals, got {}",
                terminals.len()
            )));
        }
        for (i, &t) in terminals.iter().enumerate() {
            if t >= node_count {
                return Err(Error::InvalidGraph(format!("terminal {t} out of range")));
            }
            if terminals[..i].contains(&t) {
                return Err(Error::InvalidGraph(format!("terminal {t} listed twice")));
            }
        }
        for (id, e) in edges.iter().enumerate() {
            if e.u >= node_count || e.v >= node_count {
                return Err(Error::InvalidGraph(format!("edge {id} has an endpoint out of range")));
            }
            if e.u == e.v {
                return Err(Error::InvalidGraph(format!("edge {id} is a self-loop")));
            }
            if e.weight < T::zero() {
                return Err(Error::NegativeWeight(id));
            }
        }
        Ok(WeightedGraph {
            k,
            node_count,
            terminals,
            edges,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    /// Terminal index of `node`, if it is one.
    pub fn terminal_index(&self, node: usize) -> Option<usize> {
        self.terminals.iter().position(|&t| t == node)
    }

    pub fn total_weight(&self) -> T {
        crate::scalar::sum(self.edges.iter().map(|e| e.weight))
    }

    pub fn to_f64(&self) -> WeightedGraph<f64> {
        WeightedGraph {
            k: self.k,
            node_count: self.node_count,
            terminals: self.terminals.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    u: e.u,
                    v: e.v,
                    weight: e.weight.to_f64(),
                })
                .collect(),
        }
    }
}

/// A k-way cut given by the terminal each node is assigned to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new<T: Scalar>(g: &WeightedGraph<T>, labels: Vec<usize>) -> Result<Self> {
        let lab = Labeling { labels };
        lab.validate(g)?;
        Ok(lab)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn validate<T: Scalar>(&self, g: &WeightedGraph<T>) -> Result<()> {
        if self.labels.len() != g.node_count {
            return Err(Error::DimensionMismatch {
                expected: g.node_count,
                found: self.labels.len(),
            });
        }
        for (node, &l) in self.labels.iter().enumerate() {
            if l >= g.k {
                return Err(Error::InvalidLabeling {
                    node,
                    expected: g.terminal_index(node).unwrap_or(0),
                    found: l,
                });
            }
        }
        for (i, &t) in g.terminals.iter().enumerate() {
            if self.labels[t] != i {
                return Err(Error::InvalidLabeling {
                    node: t,
                    expected: i,
                    found: self.labels[t],
                });
            }
        }
        Ok(())
    }

    /// Ids of bichromatic edges.
    pub fn cut_edges<T: Scalar>(&self, g: &WeightedGraph<T>) -> Vec<usize> {
        g.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| self.labels[e.u] != self.labels[e.v])
            .map(|(id, _)| id)
            .collect()
    }
}

/// Total weight of bichromatic edges.
pub fn cut_cost<T: Scalar>(g: &WeightedGraph<T>, lab: &Labeling) -> Result<T> {
    lab.validate(g)?;
    Ok(unchecked_cost(g, &lab.labels))
}

fn unchecked_cost<T: Scalar>(g: &WeightedGraph<T>, labels: &[usize]) -> T {
    crate::scalar::sum(
        g.edges
            .iter()
            .filter(|e| labels[e.u] != labels[e.v])
            .map(|e| e.weight),
    )
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// True iff removing `edge_subset` leaves every pair of terminals
/// disconnected.
pub fn is_multiway_cut<T: Scalar>(g: &WeightedGraph<T>, edge_subset: &[usize]) -> Result<bool> {
    let mut removed = vec![false; g.edges.len()];
    for &id in edge_subset {
        if id >= g.edges.len() {
            return Err(Error::UnknownEdge(id));
        }
        removed[id] = true;
    }
    let mut ds = DisjointSets::new(g.node_count);
    for (id, e) in g.edges.iter().enumerate() {
        if !removed[id] {
            ds.union(e.u, e.v);
        }
    }
    let mut roots: Vec<usize> = g.terminals.iter().map(|&t| ds.find(t)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len() == g.k)
}

/// Exact minimum k-way cut by enumerating every labeling of the
/// non-terminals. Ties go to the lexicographically smallest label vector.
pub fn brute_force_min_cut<T: Scalar>(g: &WeightedGraph<T>) -> Result<(T, Labeling)> {
    let free: Vec<usize> = (0..g.node_count)
        .filter(|&v| g.terminal_index(v).is_none())
        .collect();
    let mut space: u64 = 1;
    for _ in &free {
        space = space.saturating_mul(g.k as u64);
        if space > BRUTE_FORCE_LIMIT {
            return Err(Error::TooLarge(format!(
                "{}^{} labelings exceed the brute-force limit",
                g.k,
                free.len()
            )));
        }
    }
    let mut labels = vec![0usize; g.node_count];
    for (i, &t) in g.terminals.iter().enumerate() {
        labels[t] = i;
    }
    let mut best_cost = unchecked_cost(g, &labels);
    let mut best = labels.clone();
    // Odometer over free nodes; the last free node varies fastest, so the
    // enumeration order is lexicographic in the full label vector.
    loop {
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok((best_cost, Labeling { labels: best }));
            }
            pos -= 1;
            let v = free[pos];
            if labels[v] + 1 < g.k {
                labels[v] += 1;
                break;
            }
            labels[v] = 0;
        }
        let c = unchecked_cost(g, &labels);
        if c < best_cost {
            best_cost = c;
            best.copy_from_slice(&labels);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validation() {
        assert!(matches!(
            WeightedGraph::<f64>::new(3, 3, vec![0, 1, 1], vec![]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            WeightedGraph::new(2, 2, vec![0, 1], vec![Edge { u: 0, v: 1, weight: -1.0 }]),
            Err(Error::NegativeWeight(0))
        ));
        assert!(matches!(
            WeightedGraph::new(2, 2, vec![0, 1], vec![Edge { u: 1, v: 1, weight: 1.0 }]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn cut_cost_examples() {
        let t = triangle();
        let lab = Labeling::new(&t, vec![0, 1, 2]).unwrap();
        assert_eq!(cut_cost(&t, &lab).unwrap(), 3.0);

        let s = star();
        let lab = Labeling::new(&s, vec![0, 1, 2, 0]).unwrap();
        assert_eq!(cut_cost(&s, &lab).unwrap(), 2.0);

        let bad = Labeling { labels: vec![1, 1, 2, 0] };
        assert!(matches!(
            cut_cost(&s, &bad),
            Err(Error::InvalidLabeling { node: 0, expected: 0, found: 1 })
        ));

        // no bichromatic edge at all
        let g = WeightedGraph::new(
            3,
            5,
            vec![0, 1, 2],
            vec![Edge { u: 0, v: 3, weight: 2.0 }, Edge { u: 3, v: 4, weight: 5.0 }],
        )
        .unwrap();
        let lab = Labeling::new(&g, vec![0, 1, 2, 0, 0]).unwrap();
        assert_eq!(cut_cost(&g, &lab).unwrap(), 0.0);
    }

    #[test]
    fn multiway_cut_examples() {
        let t = triangle();
        assert!(is_multiway_cut(&t, &[0, 1, 2]).unwrap());
        assert!(!is_multiway_cut(&t, &[0, 1]).unwrap());
        assert_eq!(is_multiway_cut(&t, &[7]), Err(Error::UnknownEdge(7)));
        let s = star();
        let lab = Labeling::new(&s, vec![0, 1, 2, 1]).unwrap();
        assert!(is_multiway_cut(&s, &lab.cut_edges(&s)).unwrap());
    }

    #[test]
    fn brute_force_examples() {
        let (c, lab) = brute_force_min_cut(&triangle()).unwrap();
        assert_eq!(c, 3.0);
        assert_eq!(lab.labels(), &[0, 1, 2]);
        let (c, lab) = brute_force_min_cut(&star()).unwrap();
        assert_eq!(c, 2.0);
        // lexicographically smallest optimum puts the center with terminal 0
        assert_eq!(lab.labels(), &[0, 1, 2, 0]);

        let big = WeightedGraph::<f64>::new(3, 20, vec![0, 1, 2], vec![]).unwrap();
        assert!(matches!(brute_force_min_cut(&big), Err(Error::TooLarge(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn graph() -> impl Strategy<Value = WeightedGraph> {
            (4usize..9).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n, 0u32..5), 1..16).prop_map(move |raw| {
                    let edges = raw
                        .into_iter()
                        .filter(|(u, v, _)| u != v)
                        .map(|(u, v, w)| Edge { u, v, weight: w as f64 })
                        .collect();
                    WeightedGraph::new(3, n, vec![0, 1, 2], edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn every_labeling_costs_at_least_the_minimum(g in graph(), seed in proptest::collection::vec(0usize..3, 9)) {
                let (best, best_lab) = brute_force_min_cut(&g).unwrap();
                prop_assert!(is_multiway_cut(&g, &best_lab.cut_edges(&g)).unwrap());
                let mut labels: Vec<usize> = seed[..g.node_count()].to_vec();
                labels[0] = 0;
                labels[1] = 1;
                labels[2] = 2;
                let lab = Labeling::new(&g, labels).unwrap();
                prop_assert!(cut_cost(&g, &lab).unwrap() >= best);
                prop_assert!(is_multiway_cut(&g, &lab.cut_edges(&g)).unwrap());
            }
        }
    }
}
