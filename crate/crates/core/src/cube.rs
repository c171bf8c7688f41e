//! Cube-of-resolutions complexes over Z/2.
//!
//! Conventions: at a crossing `(a, b, c, d)` the 0-smoothing joins `a–b`
//! and `c–d`, the 1-smoothing joins `a–d` and `b–c`; for a positive crossing
//! the 0-smoothing is the oriented one. A generator is a resolution `r`
//! with a label `v₊`/`v₋` on each state circle, graded by
//!
//! * `i = |r| − n₋`
//! * `j = (#v₊ − #v₋) + |r| + n₊ − 2n₋`
//! * `k = (#v₊ − #v₋)` counted over essential circles only.
//!
//! The annular complex keeps exactly the differential entries that preserve
//! `k`. Complexes are stored block by block, keyed by `j` (and `k`).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{self, SparseBitMatrix};
use crate::linkdiag::{AnnularDiagram, PlanarDiagram};

/// Homological, quantum and (optional) annular grading.
pub type Grading = (i32, i32, Option<i32>);

// block, source degree, row, col
type Entry = (u32, i32, u32, u32);

pub const DEFAULT_CROSSING_LIMIT: usize = 20;
/// Resolutions are packed into a `u64`, and labels likewise.
pub const MAX_CROSSINGS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Resolution {
    bits: u64,
    len: usize,
}

impl Resolution {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= 64 && (len == 64 || bits >> len == 0), "bits beyond length");
        Resolution { bits, len }
    }

    pub fn parse(text: &str) -> Option<Self> {
        let mut bits = 0;
        for (c, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << c,
                _ => return None,
            }
        }
        Some(Resolution::new(bits, text.len()))
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn weight(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bit(self, c: usize) -> bool {
        self.bits >> c & 1 == 1
    }
}

impl std::fmt::Display for Resolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in 0..self.len {
            f.write_str(if self.bit(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateCircles {
    pub count: usize,
    /// Circle of each arc, arcs in sorted-label order. Circles are numbered
    /// by their smallest arc.
    pub arc_circle: Vec<u32>,
    pub essential: Vec<bool>,
}

impl StateCircles {
    pub fn essential_count(&self) -> usize {
        self.essential.iter().filter(|&&e| e).count()
    }
}

/// Dense arc indexing of a diagram, shared by every vertex of the cube.
struct Smoother {
    slots: Vec<[usize; 4]>,
    arc_count: usize,
    axis: Option<Vec<bool>>,
}

impl Smoother {
    fn new(d: &PlanarDiagram) -> Self {
        let labels = d.arc_labels();
        let index = |a: u32| labels.binary_search(&a).expect("label present");
        let slots = d.crossings().iter().map(|c| c.arcs.map(index)).collect();
        let axis = d.axis().map(|axis| {
            let mut flags = vec![false; labels.len()];
            for &a in axis {
                flags[index(a)] = true;
            }
            flags
        });
        Smoother {
            slots,
            arc_count: labels.len(),
            axis,
        }
    }

    fn smooth(&self, bits: u64) -> StateCircles {
        let mut parent: Vec<u32> = (0..self.arc_count as u32).collect();
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let union = |p: &mut Vec<u32>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a as u32), find(p, b as u32));
            if ra != rb {
                p[ra.max(rb) as usize] = ra.min(rb);
            }
        };
        for (c, s) in self.slots.iter().enumerate() {
            if bits >> c & 1 == 0 {
                union(&mut parent, s[0], s[1]);
                union(&mut parent, s[2], s[3]);
            } else {
                union(&mut parent, s[0], s[3]);
                union(&mut parent, s[1], s[2]);
            }
        }
        let mut circle_of_root = vec![u32::MAX; self.arc_count];
        let mut arc_circle = Vec::with_capacity(self.arc_count);
        let mut count = 0u32;
        for a in 0..self.arc_count as u32 {
            let root = find(&mut parent, a) as usize;
            if circle_of_root[root] == u32::MAX {
                circle_of_root[root] = count;
                count += 1;
            }
            arc_circle.push(circle_of_root[root]);
        }
        let mut parity = vec![false; count as usize];
        if let Some(axis) = &self.axis {
            for (a, &on_axis) in axis.iter().enumerate() {
                if on_axis {
                    parity[arc_circle[a] as usize] ^= true;
                }
            }
        }
        StateCircles {
            count: count as usize,
            arc_circle,
            essential: parity,
        }
    }
}

/// Smooths every crossing of `d` according to `r`. Circles are essential
/// when they cross the braid-closure ray an odd number of times, which
/// needs the axis marking carried by planarized annular diagrams.
pub fn smooth(d: &PlanarDiagram, r: Resolution) -> StateCircles {
    assert_eq!(r.len(), d.crossing_count(), "resolution length");
    Smoother::new(d).smooth(r.bits())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub resolution: u64,
    /// Bit `c` set means circle `c` carries `v₊`.
    pub labels: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub j: i32,
    pub k: Option<i32>,
}

#[derive(Debug, Clone)]
pub struct Block {
    pub key: BlockKey,
    pub min_i: i32,
    /// Generators of `C^{min_i + t}` for each `t`.
    pub chains: Vec<Vec<Generator>>,
    /// `boundaries[t]: C^{min_i + t} → C^{min_i + t + 1}`.
    pub boundaries: Vec<SparseBitMatrix>,
}

impl Block {
    pub fn dim(&self, i: i32) -> usize {
        let t = i - self.min_i;
        if t < 0 {
            return 0;
        }
        self.chains.get(t as usize).map_or(0, Vec::len)
    }

    pub fn max_i(&self) -> i32 {
        self.min_i + self.chains.len() as i32 - 1
    }

    fn incoming(&self, t: usize) -> SparseBitMatrix {
        if t == 0 {
            SparseBitMatrix::zeros(self.chains[0].len(), 0)
        } else {
            self.boundaries[t - 1].clone()
        }
    }

    fn outgoing(&self, t: usize) -> SparseBitMatrix {
        if t + 1 == self.chains.len() {
            SparseBitMatrix::zeros(0, self.chains[t].len())
        } else {
            self.boundaries[t].clone()
        }
    }

    /// Homology dimension per homological degree; zero entries included.
    pub fn homology(&self) -> Result<Vec<(i32, usize)>> {
        let ranks: Vec<usize> = self.boundaries.iter().map(SparseBitMatrix::rank).collect();
        for w in self.boundaries.windows(2) {
            gf2::check_composition(&w[0], &w[1])?;
        }
        Ok((0..self.chains.len())
            .map(|t| {
                let r_in = if t == 0 { 0 } else { ranks[t - 1] };
                let r_out = ranks.get(t).copied().unwrap_or(0);
                (self.min_i + t as i32, self.chains[t].len() - r_in - r_out)
            })
            .collect())
    }

    /// Homology through [`gf2::homology_dims`], one degree at a time.
    pub fn homology_checked(&self) -> Result<Vec<(i32, usize)>> {
        (0..self.chains.len())
            .map(|t| Ok((self.min_i + t as i32, gf2::homology_dims(&self.incoming(t), &self.outgoing(t))?)))
            .collect()
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for w in self.boundaries.windows(2) {
            gf2::check_composition(&w[0], &w[1]).map_err(|e| {
                Error::Integrity(format!("block j={} k={:?}: {e}", self.key.j, self.key.k))
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    Khovanov,
    /// Subcomplex where the circle through the smallest arc is labelled `v-`.
    Reduced,
    Annular,
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub kind: ComplexKind,
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub blocks: BTreeMap<BlockKey, Block>,
}

impl ChainComplex {
    pub fn total_generators(&self) -> usize {
        self.blocks
            .values()
            .flat_map(|b| b.chains.iter())
            .map(Vec::len)
            .sum()
    }

    /// Generator count per homological degree, summed over blocks.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for b in self.blocks.values() {
            for (t, gens) in b.chains.iter().enumerate() {
                *out.entry(b.min_i + t as i32).or_insert(0) += gens.len();
            }
        }
        out
    }

    pub fn check_d_squared(&self) -> Result<()> {
        self.blocks.values().try_for_each(Block::check_d_squared)
    }

    /// Nonzero homology dimensions keyed by `(i, j, k)`.
    pub fn homology(&self) -> Result<BTreeMap<Grading, usize>> {
        let per_block: Vec<Vec<(i32, usize)>> = self
            .blocks
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|b| b.homology())
            .collect::<Result<_>>()?;
        let mut out = BTreeMap::new();
        for (b, dims) in self.blocks.values().zip(per_block) {
            for (i, dim) in dims {
                if dim > 0 {
                    out.insert((i, b.key.j, b.key.k), dim);
                }
            }
        }
        Ok(out)
    }

    /// Text dump: generator lists and boundary matrix triplets per block.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let kind = match self.kind {
            ComplexKind::Khovanov => "kh",
            ComplexKind::Reduced => "khr",
            ComplexKind::Annular => "akh",
        };
        let _ = writeln!(
            s,
            "complex {kind} crossings={} n_plus={} n_minus={}",
            self.crossings, self.n_plus, self.n_minus
        );
        for b in self.blocks.values() {
            match b.key.k {
                Some(k) => {
                    let _ = writeln!(s, "block j={} k={k}", b.key.j);
                }
                None => {
                    let _ = writeln!(s, "block j={}", b.key.j);
                }
            }
            for (t, gens) in b.chains.iter().enumerate() {
                let i = b.min_i + t as i32;
                let _ = writeln!(s, "  C^{i} dim={}", gens.len());
                for (idx, g) in gens.iter().enumerate() {
                    let r = Resolution::new(g.resolution, self.crossings);
                    let _ = writeln!(s, "    {idx}: r={r} labels={:b}", g.labels);
                }
                if let Some(m) = b.boundaries.get(t) {
                    let _ = writeln!(s, "  d^{i} {}x{}", m.rows(), m.cols());
                    for (row, col) in m.entries() {
                        let _ = writeln!(s, "    ({row},{col})");
                    }
                }
            }
        }
        s
    }
}

pub fn build_kh_complex(d: &PlanarDiagram, crossing_limit: usize) -> Result<ChainComplex> {
    build(&d.forget_axis(), ComplexKind::Khovanov, crossing_limit)
}

/// The reduced complex. Over Z/2 its homology `S` determines Kh through
/// `Kh(i, j) = S(i, j) + S(i, j − 2)`.
pub fn build_reduced_kh_complex(d: &PlanarDiagram, crossing_limit: usize) -> Result<ChainComplex> {
    build(&d.forget_axis(), ComplexKind::Reduced, crossing_limit)
}

pub fn build_akh_complex(d: &AnnularDiagram, crossing_limit: usize) -> Result<ChainComplex> {
    build(&d.planarize(), ComplexKind::Annular, crossing_limit)
}

struct Vertex {
    circles: StateCircles,
    /// bit c set when circle c is essential
    essential_mask: u64,
}

fn build(d: &PlanarDiagram, kind: ComplexKind, crossing_limit: usize) -> Result<ChainComplex> {
    let n = d.crossing_count();
    let limit = crossing_limit.min(MAX_CROSSINGS);
    if n > limit {
        return Err(Error::CrossingLimit {
            crossings: n,
            limit,
        });
    }
    let (n_plus, n_minus) = (d.n_plus() as i32, d.n_minus() as i32);
    let smoother = Smoother::new(d);
    let annular = kind == ComplexKind::Annular;
    let reduced = kind == ComplexKind::Reduced;
    // label bit of the marked circle is set: not in the reduced subcomplex
    let off_marked = |v: &Vertex, labels: u64| reduced && labels >> v.circles.arc_circle[0] & 1 == 1;

    let vertices: Vec<Vertex> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let circles = smoother.smooth(bits);
            let essential_mask = circles
                .essential
                .iter()
                .enumerate()
                .filter(|(_, &e)| e)
                .fold(0u64, |m, (c, _)| m | 1 << c);
            Vertex {
                circles,
                essential_mask,
            }
        })
        .collect();

    let grading = |r: u64, v: &Vertex, labels: u64| -> (i32, BlockKey) {
        let weight = r.count_ones() as i32;
        let plus = labels.count_ones() as i32;
        let deg = 2 * plus - v.circles.count as i32;
        let k = annular.then(|| {
            let ess_plus = (labels & v.essential_mask).count_ones() as i32;
            2 * ess_plus - v.essential_mask.count_ones() as i32
        });
        (
            weight - n_minus,
            BlockKey {
                j: deg + weight + n_plus - 2 * n_minus,
                k,
            },
        )
    };

    // global generator id = offset[r] + labels
    let mut offsets = Vec::with_capacity(vertices.len() + 1);
    let mut total = 0usize;
    for v in &vertices {
        offsets.push(total);
        total += 1usize << v.circles.count;
    }
    offsets.push(total);

    // assign each generator to (block, degree) with a local index
    let mut block_index: HashMap<BlockKey, usize> = HashMap::new();
    let mut block_gens: Vec<BTreeMap<i32, Vec<Generator>>> = Vec::new();
    let mut keys: Vec<BlockKey> = Vec::new();
    let mut placement: Vec<(u32, u32)> = vec![(0, 0); total];
    for (r, v) in vertices.iter().enumerate() {
        for labels in 0..1u64 << v.circles.count {
            if off_marked(v, labels) {
                continue;
            }
            let (i, key) = grading(r as u64, v, labels);
            let b = *block_index.entry(key).or_insert_with(|| {
                keys.push(key);
                block_gens.push(BTreeMap::new());
                keys.len() - 1
            });
            let gens = block_gens[b].entry(i).or_default();
            placement[offsets[r] + labels as usize] = (b as u32, gens.len() as u32);
            gens.push(Generator {
                resolution: r as u64,
                labels,
            });
        }
    }

    // differential entries per block
    let per_vertex: Vec<Result<Vec<Entry>>> = (0..vertices.len())
        .into_par_iter()
        .map(|r| {
            let mut out = Vec::new();
            let v = &vertices[r];
            for c in (0..n).filter(|&c| r >> c & 1 == 0) {
                let r2 = r | 1 << c;
                let w = &vertices[r2];
                let s = smoother.slots[c];
                let (ca, cc) = (v.circles.arc_circle[s[0]], v.circles.arc_circle[s[2]]);
                let image: Vec<u32> = first_arcs(&v.circles)
                    .iter()
                    .map(|&a| w.circles.arc_circle[a])
                    .collect();
                let merge = ca != cc;
                let (pa, pb) = (w.circles.arc_circle[s[0]], w.circles.arc_circle[s[1]]);
                for labels in 0..1u64 << v.circles.count {
                    if off_marked(v, labels) {
                        continue;
                    }
                    let mut base = 0u64;
                    for (x, &img) in image.iter().enumerate() {
                        if x as u32 != ca && x as u32 != cc && labels >> x & 1 == 1 {
                            base |= 1 << img;
                        }
                    }
                    let la = labels >> ca & 1 == 1;
                    let lc = labels >> cc & 1 == 1;
                    let mut targets: [Option<u64>; 2] = [None, None];
                    if merge {
                        match (la, lc) {
                            (true, true) => targets[0] = Some(base | 1 << pa),
                            (true, false) | (false, true) => targets[0] = Some(base),
                            (false, false) => {}
                        }
                    } else if la {
                        targets = [Some(base | 1 << pa), Some(base | 1 << pb)];
                    } else {
                        targets[0] = Some(base);
                    }
                    let (src_i, src_key) = grading(r as u64, v, labels);
                    let (src_block, src_idx) = placement[offsets[r] + labels as usize];
                    for t in targets.into_iter().flatten() {
                        if off_marked(w, t) {
                            return Err(Error::Integrity(format!(
                                "reduced subcomplex not closed at resolution {}",
                                Resolution::new(r as u64, n)
                            )));
                        }
                        let (tgt_i, tgt_key) = grading(r2 as u64, w, t);
                        debug_assert_eq!(tgt_i, src_i + 1);
                        debug_assert_eq!(tgt_key.j, src_key.j);
                        if annular {
                            let drop = src_key.k.unwrap() - tgt_key.k.unwrap();
                            if drop != 0 && drop != 2 {
                                return Err(Error::Integrity(format!(
                                    "differential changes k by {} at resolution {}",
                                    -drop,
                                    Resolution::new(r as u64, n)
                                )));
                            }
                            if drop != 0 {
                                continue;
                            }
                        }
                        let (tgt_block, tgt_idx) = placement[offsets[r2] + t as usize];
                        debug_assert_eq!(tgt_block, src_block);
                        out.push((src_block, src_i, tgt_idx, src_idx));
                    }
                }
            }
            Ok(out)
        })
        .collect();

    let mut entries: Vec<BTreeMap<i32, Vec<(u32, u32)>>> = vec![BTreeMap::new(); keys.len()];
    for part in per_vertex {
        for (b, i, row, col) in part? {
            entries[b as usize].entry(i).or_default().push((row, col));
        }
    }

    let blocks: Vec<Block> = keys
        .par_iter()
        .zip(block_gens.into_par_iter())
        .zip(entries.into_par_iter())
        .map(|((&key, gens), entries)| {
            let min_i = *gens.keys().next().unwrap();
            let max_i = *gens.keys().next_back().unwrap();
            let chains: Vec<Vec<Generator>> = (min_i..=max_i)
                .map(|i| gens.get(&i).cloned().unwrap_or_default())
                .collect();
            let boundaries = (min_i..max_i)
                .map(|i| {
                    let t = (i - min_i) as usize;
                    let e = entries.get(&i).map_or(&[][..], Vec::as_slice);
                    SparseBitMatrix::from_entries(chains[t + 1].len(), chains[t].len(), e)
                })
                .collect();
            Block {
                key,
                min_i,
                chains,
                boundaries,
            }
        })
        .collect();

    Ok(ChainComplex {
        kind,
        crossings: n,
        n_plus: d.n_plus(),
        n_minus: d.n_minus(),
        blocks: blocks.into_iter().map(|b| (b.key, b)).collect(),
    })
}

/// Smallest arc of each circle.
fn first_arcs(c: &StateCircles) -> Vec<usize> {
    let mut first = vec![usize::MAX; c.count];
    for (a, &circ) in c.arc_circle.iter().enumerate() {
        if first[circ as usize] == usize::MAX {
            first[circ as usize] = a;
        }
    }
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::{braid_closure, model_link, parse_braid, parse_pd, ModelName};

    fn hopf() -> PlanarDiagram {
        parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap()
    }

    #[test]
    fn smooth_hopf() {
        let d = hopf();
        assert_eq!(smooth(&d, Resolution::parse("00").unwrap()).count, 2);
        assert_eq!(smooth(&d, Resolution::parse("10").unwrap()).count, 1);
        assert_eq!(smooth(&d, Resolution::parse("01").unwrap()).count, 1);
        assert_eq!(smooth(&d, Resolution::parse("11").unwrap()).count, 2);
    }

    #[test]
    fn smooth_u2_essential() {
        let u2 = braid_closure(&parse_braid("", 2).unwrap()).planarize();
        let s = smooth(&u2, Resolution::new(0, 0));
        assert_eq!(s.count, 2);
        assert_eq!(s.essential, vec![true, true]);
    }

    #[test]
    fn hopf_chain_dims() {
        let c = build_kh_complex(&model_link(ModelName::HopfPositive).planar(), 20).unwrap();
        let dims: Vec<usize> = c.dims_by_degree().values().copied().collect();
        assert_eq!(dims, vec![4, 4, 4]);
        assert_eq!(c.total_generators(), 12);
        c.check_d_squared().unwrap();
    }

    #[test]
    fn unknot_complex() {
        let c = build_kh_complex(&model_link(ModelName::Unknot).planar(), 20).unwrap();
        assert_eq!(c.blocks.len(), 2);
        assert!(c.blocks.values().all(|b| b.boundaries.is_empty() && b.min_i == 0));
    }

    #[test]
    fn crossing_limit() {
        let d = braid_closure(&parse_braid("1 1 1 1", 2).unwrap()).planarize();
        match build_kh_complex(&d, 3) {
            Err(Error::CrossingLimit { crossings: 4, limit: 3 }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn u2_annular_blocks() {
        let u2 = braid_closure(&parse_braid("", 2).unwrap());
        let c = build_akh_complex(&u2, 20).unwrap();
        let h = c.homology().unwrap();
        assert_eq!(h.get(&(0, 2, Some(2))), Some(&1));
        assert_eq!(h.get(&(0, 0, Some(0))), Some(&2));
        assert_eq!(h.get(&(0, -2, Some(-2))), Some(&1));
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn checked_homology_matches_fast_path() {
        let d = braid_closure(&parse_braid("1 -2 1 2", 3).unwrap());
        let c = build_akh_complex(&d, 20).unwrap();
        for b in c.blocks.values() {
            assert_eq!(b.homology().unwrap(), b.homology_checked().unwrap());
        }
    }

    #[test]
    fn smoothing_independent_of_crossing_order() {
        let d = braid_closure(&parse_braid("1 2 -1 2 2", 3).unwrap()).planarize();
        let n = d.crossing_count();
        let order: Vec<usize> = (0..n).rev().collect();
        let p = d.permute_crossings(&order);
        for bits in 0..1u64 << n {
            let permuted_bits = order
                .iter()
                .enumerate()
                .fold(0u64, |m, (new, &old)| m | (bits >> old & 1) << new);
            let a = smooth(&d, Resolution::new(bits, n));
            let b = smooth(&p, Resolution::new(permuted_bits, n));
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dump_lists_blocks() {
        let c = build_kh_complex(&hopf(), 20).unwrap();
        let s = c.dump();
        assert!(s.starts_with("complex kh crossings=2 n_plus=2 n_minus=0"));
        assert!(s.contains("block j=0"));
        assert!(s.contains("d^0"));
    }
}
