//! Left-right planarity test (de Fraysseix and Rosenstiehl, in Brandes'
//! formulation). Test only; no embedding is built.

use super::SimpleGraph;

type EdgeRef = Option<usize>;

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
struct Interval {
    low: EdgeRef,
    high: EdgeRef,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr<'a> {
    g: &'a SimpleGraph,
    height: Vec<Option<usize>>,
    parent_edge: Vec<EdgeRef>,
    // Oriented edges, indexed by id.
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    oriented: std::collections::HashSet<(usize, usize)>,
    refs: Vec<EdgeRef>,
    lowpt_edge: Vec<EdgeRef>,
    stack_bottom_len: Vec<usize>,
    stack: Vec<ConflictPair>,
}

/// Whether the graph has a plane embedding.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.n();
    let m = g.edge_count();
    if n > 2 && m > 3 * n - 6 {
        return false;
    }
    let mut lr = Lr {
        g,
        height: vec![None; n],
        parent_edge: vec![None; n],
        src: Vec::with_capacity(m),
        dst: Vec::with_capacity(m),
        out: vec![Vec::new(); n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting_depth: Vec::with_capacity(m),
        oriented: std::collections::HashSet::with_capacity(m),
        refs: Vec::new(),
        lowpt_edge: Vec::new(),
        stack_bottom_len: Vec::new(),
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            roots.push(v);
            lr.orient(v);
        }
    }
    let m = lr.src.len();
    lr.refs = vec![None; m];
    lr.lowpt_edge = vec![None; m];
    lr.stack_bottom_len = vec![0; m];
    for v in 0..n {
        let mut out = std::mem::take(&mut lr.out[v]);
        out.sort_by_key(|&e| lr.nesting_depth[e]);
        lr.out[v] = out;
    }
    roots.into_iter().all(|r| lr.test(r))
}

impl Lr<'_> {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        let hv = self.height[v].expect("visited");
        for &w in self.g.neighbours(v) {
            if self.oriented.contains(&(v.min(w), v.max(w))) {
                continue;
            }
            self.oriented.insert((v.min(w), v.max(w)));
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.out[v].push(vw);
            self.lowpt.push(hv);
            self.lowpt2.push(hv);
            self.nesting_depth.push(0);
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => self.lowpt[vw] = hw,
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] + usize::from(self.lowpt2[vw] < hv);
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) if !i.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low.expect("non-empty pair")];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low.expect("non-empty pair")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let hv = self.height[v].expect("visited");
        let out = self.out[v].clone();
        for (idx, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom_len[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < hv {
                let e = e.expect("return edges imply a parent edge");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qrl = q.right.low.expect("non-empty interval");
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qrl] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom_len[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.refs[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pll) = p.left.low {
                self.refs[pll] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u].expect("visited");
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.refs[low] = p.right.low;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.refs[low] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                self.refs[e] = match (hl, hr) {
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => hl,
                    (Some(_), None) => hl,
                    _ => hr,
                };
            }
        }
    }
}
