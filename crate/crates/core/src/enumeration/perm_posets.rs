//! Posets that are intersections of two linear orders, counted up to
//! isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use super::permutation::Permutation;
use crate::poset::Poset;

/// `i < j` iff `i < j` as positions and `π(i) < π(j)`.
pub fn permutation_poset(p: &Permutation) -> Poset {
    let v = p.values();
    let mut pairs = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] < v[j] {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relations(v.len(), &pairs).expect("intersection of linear orders is a poset")
}

/// Canonical form of a poset: the least adjacency bit string over all
/// vertex orders that list invariant cells in order. Cells come from
/// iterated refinement of (down-degree, up-degree) by neighbour cells.
pub fn canonical_form(p: &Poset) -> Vec<bool> {
    let n = p.len();
    let mut colour: Vec<usize> = {
        let key: Vec<(usize, usize)> = (0..n)
            .map(|a| {
                let down = (0..n).filter(|&b| p.less(b, a)).count();
                let up = (0..n).filter(|&b| p.less(a, b)).count();
                (down, up)
            })
            .collect();
        relabel(&key)
    };
    loop {
        let key: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|a| {
                let mut down: Vec<usize> = (0..n).filter(|&b| p.less(b, a)).map(|b| colour[b]).collect();
                let mut up: Vec<usize> = (0..n).filter(|&b| p.less(a, b)).map(|b| colour[b]).collect();
                down.sort_unstable();
                up.sort_unstable();
                (colour[a], down, up)
            })
            .collect();
        let next = relabel(&key);
        let cells_before = colour.iter().collect::<BTreeSet<_>>().len();
        let cells_after = next.iter().collect::<BTreeSet<_>>().len();
        colour = next;
        if cells_after == cells_before {
            break;
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        cells.entry(c).or_default().push(v);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    permute_cells(p, &cells, 0, &mut order, &mut vec![false; n], &mut best);
    best.unwrap_or_default()
}

/// Dense colour ids ordered by key.
fn relabel<K: Ord + Clone>(key: &[K]) -> Vec<usize> {
    let distinct: Vec<K> = key.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    key.iter()
        .map(|k| distinct.binary_search(k).expect("present"))
        .collect()
}

fn encode(p: &Poset, order: &[usize]) -> Vec<bool> {
    let mut bits = Vec::with_capacity(order.len() * order.len());
    for &a in order {
        for &b in order {
            bits.push(p.less(a, b));
        }
    }
    bits
}

fn permute_cells(
    p: &Poset,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    placed: &mut Vec<bool>,
    best: &mut Option<Vec<bool>>,
) {
    if cell == cells.len() {
        let bits = encode(p, order);
        if best.as_ref().is_none_or(|b| bits < *b) {
            *best = Some(bits);
        }
        return;
    }
    let members = &cells[cell];
    let remaining: Vec<usize> = members.iter().copied().filter(|&v| !placed[v]).collect();
    if remaining.is_empty() {
        permute_cells(p, cells, cell + 1, order, placed, best);
        return;
    }
    for v in remaining {
        placed[v] = true;
        order.push(v);
        permute_cells(p, cells, cell, order, placed, best);
        order.pop();
        placed[v] = false;
    }
}

/// For every `π ∈ S_n`, the poset of `π` up to isomorphism, bucketed by
/// width (maximum antichain size). Returns `width -> number of classes`.
pub fn count_perm_ordered_posets(n: usize) -> BTreeMap<usize, usize> {
    let mut seen: BTreeMap<usize, BTreeSet<Vec<bool>>> = BTreeMap::new();
    for pi in Permutation::all(n) {
        let p = permutation_poset(&pi);
        let width = p.width();
        seen.entry(width).or_default().insert(canonical_form(&p));
    }
    seen.into_iter().map(|(k, v)| (k, v.len())).collect()
}
