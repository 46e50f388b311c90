use super::maxflow::FlowNetwork;
use super::stencil::Stencil;
use crate::geometry::{GridMask, Point};
use crate::{Error, Result};

/// A node of the cut graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Source,
    Sink,
    Pixel(usize),
}

/// A directed, capacitated arc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub from: Node,
    pub to: Node,
    pub capacity: f64,
}

/// Undirected neighbour edge between two pixels; both directions carry
/// `capacity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborEdge {
    pub a: usize,
    pub b: usize,
    pub capacity: f64,
}

/// Source/sink graph whose cut value for a pixel set `Σ` (source side) is the
/// discrete `Per(Σ) + λ·Area(Σ Δ Ω)`.
///
/// Pixels outside the grid are fixed on the sink side: the cut metric
/// weight of every stencil edge leaving the grid is folded into the pixel's
/// sink capacity.
#[derive(Debug, Clone)]
pub struct CutGraph {
    width: usize,
    height: usize,
    spacing: f64,
    origin: Point,
    lambda: f64,
    stencil: Stencil,
    source_caps: Vec<f64>,
    sink_caps: Vec<f64>,
    edges: Vec<NeighborEdge>,
}

pub fn build_cut_graph(mask: &GridMask, lambda: f64, stencil: Stencil) -> Result<CutGraph> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::parameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let (w, h) = (mask.width(), mask.height());
    let n = w * h;
    let spacing = mask.spacing();
    let fidelity = lambda * mask.pixel_area();
    let mut source_caps = vec![0.0; n];
    let mut sink_caps = vec![0.0; n];
    for (idx, &inside) in mask.cells().iter().enumerate() {
        if inside {
            source_caps[idx] = fidelity;
        } else {
            sink_caps[idx] = fidelity;
        }
    }

    let dirs = stencil.directions();
    let weights: Vec<f64> = stencil
        .unit_weights()
        .into_iter()
        .map(|u| u * spacing)
        .collect();
    let mut edges = Vec::with_capacity(n * dirs.len());
    for j in 0..h as isize {
        for i in 0..w as isize {
            let idx = j as usize * w + i as usize;
            for (&(dx, dy), &wt) in dirs.iter().zip(&weights) {
                // each undirected direction reaches one neighbour forward and
                // one backward
                for (ni, nj) in [
                    (i + dx as isize, j + dy as isize),
                    (i - dx as isize, j - dy as isize),
                ] {
                    let inside = ni >= 0 && nj >= 0 && (ni as usize) < w && (nj as usize) < h;
                    if inside {
                        let nidx = nj as usize * w + ni as usize;
                        if nidx > idx {
                            edges.push(NeighborEdge {
                                a: idx,
                                b: nidx,
                                capacity: wt,
                            });
                        }
                    } else {
                        sink_caps[idx] += wt;
                    }
                }
            }
        }
    }

    Ok(CutGraph {
        width: w,
        height: h,
        spacing,
        origin: mask.origin(),
        lambda,
        stencil,
        source_caps,
        sink_caps,
        edges,
    })
}

impl CutGraph {
    #[inline]
    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// Pixels plus source and sink.
    #[inline]
    pub fn node_count(&self) -> usize {
        self.pixel_count() + 2
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn stencil(&self) -> Stencil {
        self.stencil
    }

    pub fn neighbor_edges(&self) -> &[NeighborEdge] {
        &self.edges
    }

    pub fn terminal_capacities(&self, pixel: usize) -> (f64, f64) {
        (self.source_caps[pixel], self.sink_caps[pixel])
    }

    /// All directed arcs with positive capacity, in a fixed order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let terminals = (0..self.pixel_count()).flat_map(move |p| {
            let s = (self.source_caps[p] > 0.0).then(|| Arc {
                from: Node::Source,
                to: Node::Pixel(p),
                capacity: self.source_caps[p],
            });
            let t = (self.sink_caps[p] > 0.0).then(|| Arc {
                from: Node::Pixel(p),
                to: Node::Sink,
                capacity: self.sink_caps[p],
            });
            s.into_iter().chain(t)
        });
        let neighbours = self.edges.iter().flat_map(|e| {
            [
                Arc {
                    from: Node::Pixel(e.a),
                    to: Node::Pixel(e.b),
                    capacity: e.capacity,
                },
                Arc {
                    from: Node::Pixel(e.b),
                    to: Node::Pixel(e.a),
                    capacity: e.capacity,
                },
            ]
        });
        terminals.chain(neighbours)
    }

    /// Cut value of the partition whose source side is `sigma`.
    pub fn cut_value(&self, sigma: &[bool]) -> f64 {
        assert_eq!(sigma.len(), self.pixel_count());
        let mut total = 0.0;
        for p in 0..self.pixel_count() {
            if sigma[p] {
                total += self.sink_caps[p];
            } else {
                total += self.source_caps[p];
            }
        }
        for e in &self.edges {
            if sigma[e.a] != sigma[e.b] {
                total += e.capacity;
            }
        }
        total
    }

    fn partition_mask(&self, cells: Vec<bool>) -> GridMask {
        GridMask::from_cells(self.width, self.height, self.spacing, self.origin, cells)
            .expect("cut graph geometry is valid")
    }
}

/// Minimum cut of the graph: `(flow value, source-side pixels)`.
pub fn maxflow_mincut(graph: &CutGraph) -> (f64, GridMask) {
    let n = graph.pixel_count();
    let source = n;
    let sink = n + 1;
    let mut net = FlowNetwork::with_capacity(n + 2, 2 * n + graph.edges.len());
    for p in 0..n {
        let (s, t) = graph.terminal_capacities(p);
        if s > 0.0 {
            net.add_edge(source, p, s, 0.0);
        }
        if t > 0.0 {
            net.add_edge(p, sink, t, 0.0);
        }
    }
    for e in &graph.edges {
        net.add_edge(e.a, e.b, e.capacity, e.capacity);
    }
    let flow = net.max_flow(source, sink);
    let side = net.source_side(source);
    (flow, graph.partition_mask(side[..n].to_vec()))
}
