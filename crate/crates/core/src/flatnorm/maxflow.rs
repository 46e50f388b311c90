//! Dinic max-flow on a capacitated directed graph with real capacities.
//!
//! Arcs are stored in pairs: arc `e` and its residual twin `e ^ 1`. Adjacency
//! is kept in insertion order, so the result is deterministic for a fixed
//! arc ordering.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    to: Vec<u32>,
    residual: Vec<f64>,
    capacity: Vec<f64>,
    // CSR adjacency, rebuilt lazily after insertions
    start: Vec<u32>,
    order: Vec<u32>,
    csr_valid: bool,
}

impl FlowNetwork {
    pub fn new(node_count: usize) -> Self {
        Self {
            node_count,
            to: Vec::new(),
            residual: Vec::new(),
            capacity: Vec::new(),
            start: Vec::new(),
            order: Vec::new(),
            csr_valid: false,
        }
    }

    pub fn with_capacity(node_count: usize, edges: usize) -> Self {
        let mut net = Self::new(node_count);
        net.to.reserve(2 * edges);
        net.residual.reserve(2 * edges);
        net.capacity.reserve(2 * edges);
        net
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Adds the arc pair `u → v` (capacity `cap_uv`) and `v → u` (capacity
    /// `cap_vu`); returns the id of `u → v`. Capacities must be finite and
    /// nonnegative.
    pub fn add_edge(&mut self, u: usize, v: usize, cap_uv: f64, cap_vu: f64) -> usize {
        assert!(
            u < self.node_count && v < self.node_count,
            "node out of range"
        );
        assert!(
            cap_uv >= 0.0 && cap_vu >= 0.0 && cap_uv.is_finite() && cap_vu.is_finite(),
            "capacities must be finite and nonnegative"
        );
        let id = self.to.len();
        self.to.push(v as u32);
        self.residual.push(cap_uv);
        self.capacity.push(cap_uv);
        self.to.push(u as u32);
        self.residual.push(cap_vu);
        self.capacity.push(cap_vu);
        self.csr_valid = false;
        id
    }

    #[inline]
    fn tail(&self, e: usize) -> usize {
        self.to[e ^ 1] as usize
    }

    fn build_csr(&mut self) {
        if self.csr_valid {
            return;
        }
        let n = self.node_count;
        let mut start = vec![0u32; n + 1];
        for e in 0..self.to.len() {
            start[self.tail(e) + 1] += 1;
        }
        for u in 0..n {
            start[u + 1] += start[u];
        }
        let mut fill = start.clone();
        let mut order = vec![0u32; self.to.len()];
        for e in 0..self.to.len() {
            let u = self.tail(e);
            order[fill[u] as usize] = e as u32;
            fill[u] += 1;
        }
        self.start = start;
        self.order = order;
        self.csr_valid = true;
    }

    fn epsilon(&self) -> f64 {
        let max_cap = self.capacity.iter().cloned().fold(0.0, f64::max);
        max_cap * 1e-13
    }

    /// Runs Dinic from `source` to `sink` on the current residual graph and
    /// returns the value pushed.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> f64 {
        assert_ne!(source, sink, "source and sink must differ");
        self.build_csr();
        let n = self.node_count;
        let eps = self.epsilon();
        let mut level = vec![-1i32; n];
        let mut iter = vec![0u32; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut path: Vec<u32> = Vec::new();
        let mut total = 0.0;

        loop {
            level.iter_mut().for_each(|l| *l = -1);
            level[source] = 0;
            queue.clear();
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                for k in self.start[u]..self.start[u + 1] {
                    let e = self.order[k as usize] as usize;
                    let v = self.to[e] as usize;
                    if level[v] < 0 && self.residual[e] > eps {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if level[sink] < 0 {
                break;
            }
            iter.copy_from_slice(&self.start[..n]);

            path.clear();
            let mut u = source;
            loop {
                if u == sink {
                    let pushed = path
                        .iter()
                        .map(|&e| self.residual[e as usize])
                        .fold(f64::INFINITY, f64::min);
                    for &e in &path {
                        self.residual[e as usize] -= pushed;
                        self.residual[e as usize ^ 1] += pushed;
                    }
                    total += pushed;
                    let first_sat = path
                        .iter()
                        .position(|&e| self.residual[e as usize] <= eps)
                        .unwrap_or(0);
                    path.truncate(first_sat);
                    u = path
                        .last()
                        .map_or(source, |&e| self.to[e as usize] as usize);
                    continue;
                }
                let mut advanced = false;
                while iter[u] < self.start[u + 1] {
                    let e = self.order[iter[u] as usize] as usize;
                    let v = self.to[e] as usize;
                    if self.residual[e] > eps && level[v] == level[u] + 1 {
                        path.push(e as u32);
                        u = v;
                        advanced = true;
                        break;
                    }
                    iter[u] += 1;
                }
                if !advanced {
                    if u == source {
                        break;
                    }
                    level[u] = -1;
                    let e = path.pop().expect("non-source node has an entry arc") as usize;
                    u = self.tail(e);
                    iter[u] += 1;
                }
            }
        }
        total
    }

    /// Nodes reachable from `source` in the residual graph (the source side
    /// of a minimum cut after [`max_flow`](Self::max_flow)).
    pub fn source_side(&mut self, source: usize) -> Vec<bool> {
        self.build_csr();
        let eps = self.epsilon();
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::new();
        seen[source] = true;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for k in self.start[u]..self.start[u + 1] {
                let e = self.order[k as usize] as usize;
                let v = self.to[e] as usize;
                if !seen[v] && self.residual[e] > eps {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Sum of original capacities of arcs leaving the `side` set.
    pub fn cut_capacity(&self, side: &[bool]) -> f64 {
        (0..self.to.len())
            .filter(|&e| side[self.tail(e)] && !side[self.to[e] as usize])
            .map(|e| self.capacity[e])
            .sum()
    }
}
