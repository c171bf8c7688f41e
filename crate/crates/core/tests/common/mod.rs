//! Brute-force reference computations shared by the integration tests.
//!
//! Everything here works from the raw crossing list of a diagram: circles
//! are compared as arc sets, the differential is one dense matrix per
//! degree, and ranks come from schoolbook elimination on `Vec<bool>`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use khcausal::invariants::GradedDims;
use khcausal::linkdiag::{PlanarDiagram, Sign};

pub type Dims = BTreeMap<(i32, i32, Option<i32>), usize>;

pub fn dims_of(g: &GradedDims) -> Dims {
    g.iter().map(|(g, d)| ((g.i, g.j, g.k), d)).collect()
}

fn rank(mut m: Vec<Vec<bool>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if let Some(p) = (r..m.len()).find(|&x| m[x][c]) {
            m.swap(r, p);
            let pivot = m[r].clone();
            for (x, row) in m.iter_mut().enumerate() {
                if x != r && row[c] {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= *b;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

/// Circles of a resolution as sets of arc labels.
fn circles(d: &PlanarDiagram, state: &[bool]) -> Vec<BTreeSet<u32>> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (c, &one) in d.crossings().iter().zip(state) {
        let [a, b, cc, dd] = c.arcs;
        if one {
            edges.push((a, dd));
            edges.push((b, cc));
        } else {
            edges.push((a, b));
            edges.push((cc, dd));
        }
    }
    let mut labels: BTreeSet<u32> = d.crossings().iter().flat_map(|c| c.arcs).collect();
    labels.extend(d.circles());
    let mut out: Vec<BTreeSet<u32>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &start in &labels {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(p, q) in &edges {
                for (u, v) in [(p, q), (q, p)] {
                    if u == x && seen.insert(v) {
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

#[derive(Clone)]
struct Gen {
    state: usize,
    /// label per circle, `true` for v+
    plus: Vec<bool>,
}

/// Khovanov (or, with `annular`, annular Khovanov) homology of `d` by
/// brute force. The annular version needs the axis marking of `d`.
pub fn naive_homology(d: &PlanarDiagram, annular: bool) -> Dims {
    let n = d.crossing_count();
    let n_minus = d.crossings().iter().filter(|c| c.sign == Sign::Negative).count() as i32;
    let n_plus = n as i32 - n_minus;
    let axis: BTreeSet<u32> = d.axis().map(|a| a.iter().copied().collect()).unwrap_or_default();
    assert!(!annular || d.axis().is_some(), "annular oracle needs an axis");

    let states: Vec<Vec<bool>> = (0..1usize << n)
        .map(|s| (0..n).map(|c| s >> c & 1 == 1).collect())
        .collect();
    let state_circles: Vec<Vec<BTreeSet<u32>>> = states.iter().map(|s| circles(d, s)).collect();

    let mut gens: Vec<Gen> = Vec::new();
    for (s, cs) in state_circles.iter().enumerate() {
        for l in 0..1usize << cs.len() {
            gens.push(Gen {
                state: s,
                plus: (0..cs.len()).map(|x| l >> x & 1 == 1).collect(),
            });
        }
    }
    let grade = |g: &Gen| -> (i32, i32, Option<i32>) {
        let h = states[g.state].iter().filter(|&&b| b).count() as i32;
        let deg: i32 = g.plus.iter().map(|&p| if p { 1 } else { -1 }).sum();
        let k = annular.then(|| {
            state_circles[g.state]
                .iter()
                .zip(&g.plus)
                .filter(|(c, _)| c.iter().filter(|a| axis.contains(a)).count() % 2 == 1)
                .map(|(_, &p)| if p { 1 } else { -1 })
                .sum()
        });
        (h - n_minus, deg + h + n_plus - 2 * n_minus, k)
    };
    let index: HashMap<(usize, Vec<bool>), usize> = gens
        .iter()
        .enumerate()
        .map(|(x, g)| ((g.state, g.plus.clone()), x))
        .collect();

    // image of each generator under the full differential
    let image = |g: &Gen| -> Vec<usize> {
        let mut out = Vec::new();
        for (c, &on) in states[g.state].iter().enumerate() {
            if on {
                continue;
            }
            let t = g.state | 1 << c;
            let (old, new) = (&state_circles[g.state], &state_circles[t]);
            let gone: Vec<usize> = (0..old.len()).filter(|&x| !new.contains(&old[x])).collect();
            let born: Vec<usize> = (0..new.len()).filter(|&y| !old.contains(&new[y])).collect();
            let mut base = vec![false; new.len()];
            for (x, circle) in old.iter().enumerate() {
                if let Some(y) = new.iter().position(|z| z == circle) {
                    base[y] = g.plus[x];
                }
            }
            let mut targets: Vec<Vec<bool>> = Vec::new();
            match (gone.len(), born.len()) {
                (2, 1) => {
                    let (a, b) = (g.plus[gone[0]], g.plus[gone[1]]);
                    if a || b {
                        let mut v = base.clone();
                        v[born[0]] = a && b;
                        targets.push(v);
                    }
                }
                (1, 2) => {
                    if g.plus[gone[0]] {
                        for (p, q) in [(true, false), (false, true)] {
                            let mut v = base.clone();
                            v[born[0]] = p;
                            v[born[1]] = q;
                            targets.push(v);
                        }
                    } else {
                        let mut v = base.clone();
                        v[born[0]] = false;
                        v[born[1]] = false;
                        targets.push(v);
                    }
                }
                other => panic!("edge changes circles as {other:?}"),
            }
            for v in targets {
                out.push(index[&(t, v)]);
            }
        }
        out
    };

    // group generators by (j, k); the differential preserves both
    let mut groups: BTreeMap<(i32, Option<i32>), BTreeMap<i32, Vec<usize>>> = BTreeMap::new();
    for (x, g) in gens.iter().enumerate() {
        let (i, j, k) = grade(g);
        groups.entry((j, k)).or_default().entry(i).or_default().push(x);
    }
    let mut out = Dims::new();
    for ((j, k), by_i) in groups {
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for (&i, src) in &by_i {
            let Some(tgt) = by_i.get(&(i + 1)) else {
                continue;
            };
            let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(p, &x)| (x, p)).collect();
            let mut m = vec![vec![false; src.len()]; tgt.len()];
            for (col, &x) in src.iter().enumerate() {
                for y in image(&gens[x]) {
                    if let Some(&row) = pos.get(&y) {
                        m[row][col] ^= true;
                    }
                }
            }
            ranks.insert(i, rank(m));
        }
        for (&i, src) in &by_i {
            let dim = src.len() - ranks.get(&i).copied().unwrap_or(0) - ranks.get(&(i - 1)).copied().unwrap_or(0);
            if dim > 0 {
                out.insert((i, j, k), dim);
            }
        }
    }
    out
}

/// Minkowski causal relation by the metric inequality `|Δp| ≤ |Δt|`.
pub fn metric_related(x: [f64; 3], y: [f64; 3]) -> bool {
    let dp = ((y[0] - x[0]).powi(2) + (y[1] - x[1]).powi(2)).sqrt();
    dp <= (y[2] - x[2]).abs()
}
