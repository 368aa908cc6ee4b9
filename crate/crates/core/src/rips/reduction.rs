//! Boundary-matrix reduction over GF(2).
//!
//! Two routes produce the same diagram:
//!
//! * [`ReductionMode::Cohomology`] (default) reduces the anti-transposed
//!   boundary matrix: edges are processed in reverse filtration order, each
//!   column holding the edge's cofacet triangles and the pivot being the
//!   earliest of them. Dimension 0 is handled by union–find, and the edges
//!   it pairs are cleared from the dimension-1 pass.
//! * [`ReductionMode::Naive`] is the textbook left-to-right column
//!   reduction of the full boundary matrix with no shortcuts.
//!
//! Zero-length intervals are dropped in both.

use super::{FilteredComplex, Interval, PersistenceDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionMode {
    #[default]
    Cohomology,
    Naive,
}

impl std::str::FromStr for ReductionMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "cohomology" | "clearing" => Ok(Self::Cohomology),
            "naive" => Ok(Self::Naive),
            _ => Err(crate::Error::Format(format!(
                "unknown reduction mode {s:?}"
            ))),
        }
    }
}

pub fn compute_persistence(fc: &FilteredComplex) -> PersistenceDiagram {
    compute_persistence_with(fc, ReductionMode::Cohomology)
}

pub fn compute_persistence_with(fc: &FilteredComplex, mode: ReductionMode) -> PersistenceDiagram {
    let intervals = match mode {
        ReductionMode::Cohomology => cohomology(fc),
        ReductionMode::Naive => naive(fc),
    };
    PersistenceDiagram::new(intervals, fc.max_scale).expect("reduction yields valid intervals")
}

const NONE: u32 = u32::MAX;

/// Maps an unordered vertex pair to the edge's rank among edges.
struct EdgeTable {
    n: usize,
    slot: Vec<u32>,
}

impl EdgeTable {
    fn new(n: usize) -> Self {
        Self {
            n,
            slot: vec![NONE; n * n],
        }
    }

    fn set(&mut self, a: u32, b: u32, v: u32) {
        self.slot[a as usize * self.n + b as usize] = v;
    }

    fn get(&self, a: u32, b: u32) -> u32 {
        self.slot[a as usize * self.n + b as usize]
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges the classes; the older (smaller-index) root survives.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (old, young) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[young as usize] = old;
        true
    }
}

/// `a ^= b` on sorted index lists.
fn add_into(a: &mut Vec<u32>, b: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&a[i..]);
    scratch.extend_from_slice(&b[j..]);
    std::mem::swap(a, scratch);
}

fn push_interval(out: &mut Vec<Interval>, dim: u8, birth: f64, death: f64) {
    if birth < death {
        out.push(Interval::new(dim, birth, death));
    }
}

fn cohomology(fc: &FilteredComplex) -> Vec<Interval> {
    let n = fc.n_vertices();
    let simplices = fc.simplices();
    let mut out = Vec::new();

    let edges: Vec<_> = simplices.iter().filter(|s| s.dim() == 1).collect();
    let mut table = EdgeTable::new(n);
    for (e, s) in edges.iter().enumerate() {
        let v = s.vertices();
        table.set(v[0], v[1], e as u32);
    }

    // Dimension 0: each merging edge kills the younger component.
    let mut uf = UnionFind::new(n);
    let mut negative = vec![false; edges.len()];
    for (e, s) in edges.iter().enumerate() {
        let v = s.vertices();
        if uf.union(v[0], v[1]) {
            negative[e] = true;
            push_interval(&mut out, 0, 0.0, s.value);
        }
    }
    let components = (0..n as u32).filter(|&v| uf.find(v) == v).count();
    out.extend(std::iter::repeat_n(
        Interval::new(0, 0.0, f64::INFINITY),
        components,
    ));

    if fc.max_simplex_dim() < 2 {
        return out;
    }

    // Cofacet lists, filled in filtration order so each list is sorted.
    let triangles: Vec<_> = simplices.iter().filter(|s| s.dim() == 2).collect();
    let mut cofacets: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    for (t, s) in triangles.iter().enumerate() {
        let v = s.vertices();
        for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
            cofacets[table.get(a, b) as usize].push(t as u32);
        }
    }

    let mut pivot_owner = vec![NONE; triangles.len()];
    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); edges.len()];
    let mut scratch = Vec::new();
    for e in (0..edges.len()).rev() {
        if negative[e] {
            continue;
        }
        let mut col = std::mem::take(&mut cofacets[e]);
        while let Some(&pivot) = col.first() {
            let owner = pivot_owner[pivot as usize];
            if owner == NONE {
                break;
            }
            add_into(&mut col, &reduced[owner as usize], &mut scratch);
        }
        let birth = edges[e].value;
        match col.first() {
            Some(&pivot) => {
                pivot_owner[pivot as usize] = e as u32;
                push_interval(&mut out, 1, birth, triangles[pivot as usize].value);
                reduced[e] = col;
            }
            None => out.push(Interval::new(1, birth, f64::INFINITY)),
        }
    }
    out
}

fn naive(fc: &FilteredComplex) -> Vec<Interval> {
    let n = fc.n_vertices();
    let simplices = fc.simplices();
    let mut table = EdgeTable::new(n);
    let mut vertex_index = vec![NONE; n];
    for (i, s) in simplices.iter().enumerate() {
        let v = s.vertices();
        match s.dim() {
            0 => vertex_index[v[0] as usize] = i as u32,
            1 => table.set(v[0], v[1], i as u32),
            _ => {}
        }
    }

    let mut low_owner = vec![NONE; simplices.len()];
    let mut paired = vec![false; simplices.len()];
    let mut scratch = Vec::new();
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(simplices.len());
    let mut out = Vec::new();
    for (j, s) in simplices.iter().enumerate() {
        let v = s.vertices();
        let mut col: Vec<u32> = match s.dim() {
            0 => Vec::new(),
            1 => vec![vertex_index[v[0] as usize], vertex_index[v[1] as usize]],
            _ => vec![
                table.get(v[0], v[1]),
                table.get(v[0], v[2]),
                table.get(v[1], v[2]),
            ],
        };
        col.sort_unstable();
        while let Some(&low) = col.last() {
            let owner = low_owner[low as usize];
            if owner == NONE {
                break;
            }
            add_into(&mut col, &columns[owner as usize], &mut scratch);
        }
        if let Some(&low) = col.last() {
            low_owner[low as usize] = j as u32;
            paired[low as usize] = true;
            paired[j] = true;
            let birth = &simplices[low as usize];
            push_interval(&mut out, birth.dim() as u8, birth.value, s.value);
        }
        columns.push(col);
    }
    // Unpaired simplices below the top dimension create essential classes.
    let top = fc.max_simplex_dim();
    for (j, s) in simplices.iter().enumerate() {
        if !paired[j] && s.dim() < top {
            out.push(Interval::new(s.dim() as u8, s.value, f64::INFINITY));
        }
    }
    out
}
