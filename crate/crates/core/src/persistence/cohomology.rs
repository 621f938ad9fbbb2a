//! Persistent cohomology of clique filtrations without materializing the
//! complex.
//!
//! Simplices are named by their combinatorial-number-system index
//! `sum_k C(v_k, k + 1)` over ascending vertices `v_0 < v_1 < ...`, and
//! coboundaries are generated on the fly from the edge table. Dimension 0 is
//! handled by union-find; higher dimensions reduce the coboundary matrix
//! column by column in reverse filtration order, reusing pivots of the
//! previous dimension to skip columns (clearing). The resulting barcode is the
//! same as that of homology.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::diagram::{DiagramPoint, PersistenceDiagram};
use super::field::PrimeField;
use crate::error::{Error, Result};
use crate::filtration::FlagFiltration;

/// Filtration key of a simplex within one dimension.
#[derive(Debug, Clone, Copy)]
struct Key {
    value: f64,
    index: u64,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.total_cmp(&other.value).then(self.index.cmp(&other.index))
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    key: Key,
    coef: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

/// Binomial coefficients `C(i, k)` for `i <= n`, `k <= k_max`.
struct Binomial {
    table: Vec<Vec<u64>>,
}

impl Binomial {
    fn new(n: usize, k_max: usize) -> Option<Self> {
        let mut table = vec![vec![0u64; n + 1]; k_max + 1];
        for i in 0..=n {
            table[0][i] = 1;
        }
        for k in 1..=k_max {
            for i in 1..=n {
                table[k][i] = table[k - 1][i - 1].checked_add(table[k][i - 1])?;
            }
        }
        Some(Self { table })
    }

    #[inline]
    fn get(&self, i: usize, k: usize) -> u64 {
        self.table[k][i]
    }

    fn index(&self, ascending: &[usize]) -> u64 {
        ascending.iter().enumerate().map(|(k, &v)| self.get(v, k + 1)).sum()
    }

    /// Inverse of [`Binomial::index`] for a simplex with `len` vertices.
    fn vertices(&self, mut index: u64, len: usize, n: usize, out: &mut Vec<usize>) {
        out.clear();
        let mut hi = n;
        for k in (1..=len).rev() {
            // largest v < hi with C(v, k) <= index
            let (mut lo, mut top) = (k - 1, hi);
            while top - lo > 1 {
                let mid = (lo + top) / 2;
                if self.get(mid, k) <= index {
                    lo = mid;
                } else {
                    top = mid;
                }
            }
            out.push(lo);
            index -= self.get(lo, k);
            hi = lo;
        }
        out.reverse();
    }
}

struct Engine<'a> {
    f: &'a FlagFiltration,
    n: usize,
    binom: Binomial,
    field: PrimeField,
}

impl Engine<'_> {
    /// Calls `visit(key, coefficient)` for every cofacet of `simplex`.
    fn for_each_cofacet(&self, simplex: &[usize], value: f64, mut visit: impl FnMut(Key, u32)) {
        let d = simplex.len();
        // offset[i]: index contribution of `simplex` once a new vertex is inserted at position i
        let mut offset = vec![0u64; d + 1];
        for (i, slot) in offset.iter_mut().enumerate() {
            *slot = simplex
                .iter()
                .enumerate()
                .map(|(k, &v)| if k < i { self.binom.get(v, k + 1) } else { self.binom.get(v, k + 2) })
                .sum();
        }
        let mut pos = 0;
        for w in 0..self.n {
            if pos < d && simplex[pos] == w {
                pos += 1;
                continue;
            }
            let mut v = value.max(self.f.vertex(w));
            let mut present = true;
            for &u in simplex {
                let e = self.f.edge(u, w);
                if e == f64::INFINITY {
                    present = false;
                    break;
                }
                v = v.max(e);
            }
            if !present {
                continue;
            }
            let index = offset[pos] + self.binom.get(w, pos + 1);
            visit(Key { value: v, index }, self.field.sign(pos));
        }
    }

    fn min_cofacet(&self, simplex: &[usize], value: f64) -> Option<Entry> {
        let mut best: Option<Entry> = None;
        self.for_each_cofacet(simplex, value, |key, coef| {
            if best.is_none_or(|b| key < b.key) {
                best = Some(Entry { key, coef });
            }
        });
        best
    }

    fn push_coboundary(&self, heap: &mut BinaryHeap<Reverse<Entry>>, simplex: &[usize], value: f64, scale: u32) {
        self.for_each_cofacet(simplex, value, |key, coef| {
            heap.push(Reverse(Entry {
                key,
                coef: self.field.mul(coef, scale),
            }));
        });
    }

    /// Removes and returns the smallest entry with nonzero combined coefficient.
    fn pop_pivot(&self, heap: &mut BinaryHeap<Reverse<Entry>>) -> Option<Entry> {
        loop {
            let Reverse(mut pivot) = heap.pop()?;
            while let Some(Reverse(top)) = heap.peek() {
                if top.key.index != pivot.key.index {
                    break;
                }
                pivot.coef = self.field.add(pivot.coef, top.coef);
                heap.pop();
            }
            if pivot.coef != 0 {
                return Some(pivot);
            }
        }
    }

    /// All `dim`-simplices, in increasing filtration order, skipping `cleared`.
    fn columns(&self, dim: usize, cleared: &HashSet<u64>) -> Vec<(Key, Vec<usize>)> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(dim + 1);
        for v in 0..self.n {
            current.push(v);
            self.grow(&mut current, self.f.vertex(v), dim + 1, cleared, &mut out);
            current.pop();
        }
        out.sort_by_key(|a| a.0);
        out
    }

    fn grow(
        &self,
        current: &mut Vec<usize>,
        value: f64,
        len: usize,
        cleared: &HashSet<u64>,
        out: &mut Vec<(Key, Vec<usize>)>,
    ) {
        if current.len() == len {
            let key = Key {
                value,
                index: self.binom.index(current),
            };
            if !cleared.contains(&key.index) {
                out.push((key, current.clone()));
            }
            return;
        }
        let last = *current.last().unwrap();
        for w in (last + 1)..self.n {
            let mut v = value.max(self.f.vertex(w));
            let mut present = true;
            for &u in current.iter() {
                let e = self.f.edge(u, w);
                if e == f64::INFINITY {
                    present = false;
                    break;
                }
                v = v.max(e);
            }
            if present {
                current.push(w);
                self.grow(current, v, len, cleared, out);
                current.pop();
            }
        }
    }
}

/// Persistent homology of a clique filtration in dimensions `0..=max_dim`
/// over Z/pZ. Zero-persistence pairs are dropped.
pub fn flag_persistence(f: &FlagFiltration, max_dim: usize, p: u32) -> Result<PersistenceDiagram> {
    let field = PrimeField::new(p)?;
    let n = f.n_vertices();
    let binom = Binomial::new(n, max_dim + 2).ok_or(Error::Oversize(n))?;
    let engine = Engine { f, n, binom, field };
    let mut points = Vec::new();

    let mut cleared = dimension_zero(&engine, &mut points);
    for dim in 1..=max_dim {
        cleared = reduce_dimension(&engine, dim, &cleared, &mut points);
    }
    Ok(PersistenceDiagram::new(p, max_dim, points))
}

/// Union-find with the elder rule. Returns the edges that merge components,
/// which are exactly the pivots of the dimension-0 coboundary reduction.
fn dimension_zero(engine: &Engine, points: &mut Vec<DiagramPoint>) -> HashSet<u64> {
    let f = engine.f;
    let n = engine.n;
    let mut edges: Vec<(Key, usize, usize)> = f
        .edges()
        .into_iter()
        .map(|(i, j, v)| {
            let index = engine.binom.index(&[i, j]);
            (Key { value: v, index }, i, j)
        })
        .collect();
    edges.sort_by_key(|a| a.0);

    let mut parent: Vec<usize> = (0..n).collect();
    // oldest vertex of each component, compared by (value, index)
    let mut oldest: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let older = |a: usize, b: usize| f.vertex(a).total_cmp(&f.vertex(b)).then(a.cmp(&b)) == Ordering::Less;

    let mut merges = HashSet::new();
    for (key, i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            continue;
        }
        let (oi, oj) = (oldest[ri], oldest[rj]);
        let (young, old) = if older(oi, oj) { (oj, oi) } else { (oi, oj) };
        let birth = f.vertex(young);
        if key.value > birth {
            points.push(DiagramPoint::new(0, birth, key.value));
        }
        parent[ri] = rj;
        oldest[rj] = old;
        merges.insert(key.index);
    }
    for v in 0..n {
        if find(&mut parent, v) == v {
            points.push(DiagramPoint::new(0, f.vertex(oldest[v]), f64::INFINITY));
        }
    }
    merges
}

/// Reduces the coboundary columns of `dim`-simplices. Returns the pivots,
/// which clear the columns of the next dimension.
fn reduce_dimension(
    engine: &Engine,
    dim: usize,
    cleared: &HashSet<u64>,
    points: &mut Vec<DiagramPoint>,
) -> HashSet<u64> {
    let field = engine.field;
    let columns = engine.columns(dim, cleared);
    // pivot index -> (reduction column as (key, coefficient), pivot coefficient)
    let mut pivots: HashMap<u64, usize> = HashMap::new();
    let mut stored: Vec<(Vec<Entry>, u32)> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut scratch = Vec::with_capacity(dim + 1);

    for (key, simplex) in columns.iter().rev() {
        let birth = key.value;
        let Some(first) = engine.min_cofacet(simplex, birth) else {
            points.push(DiagramPoint::new(dim, birth, f64::INFINITY));
            continue;
        };
        if let std::collections::hash_map::Entry::Vacant(e) = pivots.entry(first.key.index) {
            e.insert(stored.len());
            stored.push((vec![Entry { key: *key, coef: 1 }], first.coef));
            if first.key.value > birth {
                points.push(DiagramPoint::new(dim, birth, first.key.value));
            }
            continue;
        }

        heap.clear();
        let mut reduction = vec![Entry { key: *key, coef: 1 }];
        engine.push_coboundary(&mut heap, simplex, birth, 1);
        loop {
            let Some(pivot) = engine.pop_pivot(&mut heap) else {
                points.push(DiagramPoint::new(dim, birth, f64::INFINITY));
                break;
            };
            match pivots.get(&pivot.key.index) {
                Some(&slot) => {
                    let (other, other_coef) = &stored[slot];
                    let factor = field.neg(field.mul(pivot.coef, field.inv(*other_coef)));
                    // put the pivot back before adding the other column
                    heap.push(Reverse(pivot));
                    for e in other {
                        let c = field.mul(e.coef, factor);
                        reduction.push(Entry { key: e.key, coef: c });
                        engine.binom.vertices(e.key.index, dim + 1, engine.n, &mut scratch);
                        engine.push_coboundary(&mut heap, &scratch, e.key.value, c);
                    }
                }
                None => {
                    pivots.insert(pivot.key.index, stored.len());
                    stored.push((compress(reduction, field), pivot.coef));
                    if pivot.key.value > birth {
                        points.push(DiagramPoint::new(dim, birth, pivot.key.value));
                    }
                    break;
                }
            }
        }
    }
    pivots.into_keys().collect()
}

/// Merges repeated simplices in a reduction column and drops zeros.
fn compress(mut col: Vec<Entry>, field: PrimeField) -> Vec<Entry> {
    col.sort_by_key(|a| a.key);
    let mut out: Vec<Entry> = Vec::with_capacity(col.len());
    for e in col {
        match out.last_mut() {
            Some(last) if last.key.index == e.key.index => last.coef = field.add(last.coef, e.coef),
            _ => out.push(e),
        }
        if out.last().is_some_and(|l| l.coef == 0) {
            out.pop();
        }
    }
    out
}
