//! Edmonds–Karp max-flow, used to realize prescribed indegrees.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

/// A flow network with integer capacities. Arcs are stored in pairs so that
/// `id ^ 1` is the reverse arc.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    /// Returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow currently on arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id + 1].cap
    }

    /// Augments along shortest paths until none remain; arcs are scanned in
    /// insertion order so the result is deterministic.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = vec![None; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    break;
                }
                for &id in &self.out[v] {
                    let arc = &self.arcs[id];
                    if arc.cap > 0 && !seen[arc.to] {
                        seen[arc.to] = true;
                        pred[arc.to] = Some(id);
                        queue.push_back(arc.to);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while let Some(id) = pred[v] {
                bottleneck = bottleneck.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = sink;
            while let Some(id) = pred[v] {
                self.arcs[id].cap -= bottleneck;
                self.arcs[id ^ 1].cap += bottleneck;
                v = self.arcs[id ^ 1].to;
            }
            total += bottleneck;
        }
    }

    /// Nodes reachable from `source` in the residual network.
    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(v) = stack.pop() {
            for &id in &self.out[v] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_network() {
        let mut f = FlowNetwork::new(4);
        f.add_arc(0, 1, 3);
        f.add_arc(0, 2, 2);
        let mid = f.add_arc(1, 2, 5);
        f.add_arc(1, 3, 2);
        f.add_arc(2, 3, 3);
        assert_eq!(f.max_flow(0, 3), 5);
        assert!(f.flow(mid) >= 1);
        let reach = f.residual_reachable(0);
        assert!(!reach[3]);
    }
}
