//! Oriented planar diagrams stored as PD codes.
//!
//! A crossing lists its four arc labels counterclockwise starting from the
//! incoming under-arc, so the under strand always runs from slot 0 to slot 2.
//! The sign fixes the over strand: positive means it runs from slot 3 to
//! slot 1, negative from slot 1 to slot 3.

use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], sign: Sign) -> Self {
        Crossing { arcs, sign }
    }

    /// Whether the arc at `slot` points into the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        match (slot, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (1, Sign::Positive) | (3, Sign::Negative) => false,
            (1, Sign::Negative) | (3, Sign::Positive) => true,
            _ => unreachable!("slot index out of range"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    circles: Vec<u32>,
    component_count: usize,
    n_plus: usize,
    n_minus: usize,
    axis: Option<Vec<u32>>,
}

/// Slot position of an arc end: (crossing index, slot 0..4).
type Slot = (usize, usize);

struct Incidence {
    /// label -> both ends, in (crossing, slot) order
    ends: BTreeMap<u32, Vec<Slot>>,
}

impl Incidence {
    fn build(raw: &[[u32; 4]], circles: &[u32]) -> Result<Self> {
        let mut ends: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (x, arcs) in raw.iter().enumerate() {
            for (slot, &a) in arcs.iter().enumerate() {
                ends.entry(a).or_default().push((x, slot));
            }
        }
        for (&a, e) in &ends {
            if e.len() != 2 {
                return Err(Error::Diagram(format!(
                    "arc {a} appears {} time(s); every arc must appear exactly twice",
                    e.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for &c in circles {
            if ends.contains_key(&c) {
                return Err(Error::Diagram(format!(
                    "circle O({c}) reuses a crossing arc label"
                )));
            }
            if !seen.insert(c) {
                return Err(Error::Diagram(format!("circle O({c}) listed twice")));
            }
        }
        Ok(Incidence { ends })
    }

    fn partner(&self, raw: &[[u32; 4]], s: Slot) -> Slot {
        let label = raw[s.0][s.1];
        let e = &self.ends[&label];
        if e[0] == s {
            e[1]
        } else {
            e[0]
        }
    }
}

/// One passage of a component through a crossing.
#[derive(Debug, Clone, Copy)]
struct Pass {
    crossing: usize,
    in_slot: usize,
}

/// Walks every component as a cyclic sequence of passes, in a canonical
/// starting direction. Reversing a component swaps each pass's in/out slot.
fn trace_components(raw: &[[u32; 4]], inc: &Incidence) -> Vec<Vec<Pass>> {
    let mut visited: BTreeSet<u32> = BTreeSet::new();
    let mut comps = Vec::new();
    for (&label, ends) in &inc.ends {
        if visited.contains(&label) {
            continue;
        }
        let start = ends[0];
        let mut passes = Vec::new();
        let mut arrive = start;
        loop {
            visited.insert(raw[arrive.0][arrive.1]);
            passes.push(Pass {
                crossing: arrive.0,
                in_slot: arrive.1,
            });
            let leave = (arrive.0, (arrive.1 + 2) % 4);
            visited.insert(raw[leave.0][leave.1]);
            arrive = inc.partner(raw, leave);
            if arrive == start {
                break;
            }
        }
        comps.push(passes);
    }
    comps
}

/// Infers crossing signs from under-strand directions. Components that
/// never pass under are oriented by an explicit sign where given; otherwise
/// they run from slot 3 to slot 1 at their first crossing.
pub(crate) fn infer_signs(raw: &[[u32; 4]], hints: &[Option<Sign>], circles: &[u32]) -> Result<Vec<Sign>> {
    let inc = Incidence::build(raw, circles)?;
    let comps = trace_components(raw, &inc);
    let mut signs: Vec<Option<Sign>> = vec![None; raw.len()];

    for passes in &comps {
        let forward_under = passes.iter().filter(|p| p.in_slot == 0).count();
        let backward_under = passes.iter().filter(|p| p.in_slot == 2).count();
        let forward = match (forward_under, backward_under) {
            (_, 0) if forward_under > 0 => true,
            (0, _) if backward_under > 0 => false,
            (0, 0) => {
                // all-over component; hinted sign on its first crossing wins
                let first = passes.iter().min_by_key(|p| p.crossing).unwrap();
                let fwd_sign = if first.in_slot == 3 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                match hints[first.crossing] {
                    Some(h) => h == fwd_sign,
                    None => first.in_slot == 3,
                }
            }
            _ => {
                let x = passes.iter().find(|p| p.in_slot % 2 == 0).unwrap().crossing;
                return Err(Error::Diagram(format!(
                    "orientation inconsistency: component through crossing {} runs both ways along under-strands",
                    x + 1
                )));
            }
        };
        for p in passes {
            let in_slot = if forward { p.in_slot } else { (p.in_slot + 2) % 4 };
            match in_slot {
                3 => signs[p.crossing] = Some(Sign::Positive),
                1 => signs[p.crossing] = Some(Sign::Negative),
                _ => {}
            }
        }
    }

    let mut out = Vec::with_capacity(raw.len());
    for (x, s) in signs.into_iter().enumerate() {
        let s = s.expect("every crossing has an over-strand");
        if let Some(h) = hints[x] {
            if h != s {
                return Err(Error::Diagram(format!(
                    "orientation inconsistency: crossing {} is marked {:?} but the strands force {:?}",
                    x + 1,
                    h,
                    s
                )));
            }
        }
        out.push(s);
    }
    Ok(out)
}

impl PlanarDiagram {
    /// Builds and validates a diagram from signed crossings and crossingless
    /// circles.
    pub fn new(crossings: Vec<Crossing>, circles: Vec<u32>) -> Result<Self> {
        if crossings.is_empty() && circles.is_empty() {
            return Err(Error::Diagram("empty diagram".into()));
        }
        let raw: Vec<[u32; 4]> = crossings.iter().map(|c| c.arcs).collect();
        let inc = Incidence::build(&raw, &circles)?;

        // every arc leaves one crossing and enters another
        for (&label, ends) in &inc.ends {
            let ins = ends
                .iter()
                .filter(|&&(x, s)| crossings[x].is_incoming(s))
                .count();
            if ins != 1 {
                return Err(Error::Diagram(format!(
                    "orientation inconsistency at arc {label}: {ins} incoming ends"
                )));
            }
        }

        check_planarity(&raw, &inc)?;

        let comps = trace_components(&raw, &inc);
        let n_plus = crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        Ok(PlanarDiagram {
            n_minus: crossings.len() - n_plus,
            n_plus,
            component_count: comps.len() + circles.len(),
            crossings,
            circles,
            axis: None,
        })
    }

    /// Builds a diagram from unsigned PD tuples, inferring orientations.
    pub fn from_unsigned(raw: Vec<[u32; 4]>, hints: Vec<Option<Sign>>, circles: Vec<u32>) -> Result<Self> {
        assert_eq!(raw.len(), hints.len());
        let signs = infer_signs(&raw, &hints, &circles)?;
        let crossings = raw
            .into_iter()
            .zip(signs)
            .map(|(arcs, sign)| Crossing { arcs, sign })
            .collect();
        Self::new(crossings, circles)
    }

    pub(crate) fn with_axis(mut self, mut axis: Vec<u32>) -> Self {
        axis.sort_unstable();
        self.axis = Some(axis);
        self
    }

    /// The same diagram with no annular data.
    pub fn forget_axis(&self) -> Self {
        PlanarDiagram {
            axis: None,
            ..self.clone()
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn circles(&self) -> &[u32] {
        &self.circles
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Labels of arcs crossing the braid-closure ray, when the diagram is a
    /// closed braid drawn around an axis.
    pub fn axis(&self) -> Option<&[u32]> {
        self.axis.as_deref()
    }

    /// All arc labels (crossing arcs and crossingless circles), sorted.
    pub fn arc_labels(&self) -> Vec<u32> {
        let mut labels: Vec<u32> = self
            .crossings
            .iter()
            .flat_map(|c| c.arcs)
            .chain(self.circles.iter().copied())
            .collect();
        labels.sort_unstable();
        labels.dedup();
        labels
    }

    /// Stable content hash over the PD text and any axis marking.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_pd_text().as_bytes());
        if let Some(axis) = &self.axis {
            h.update(b"|axis:");
            for a in axis {
                h.update(a.to_le_bytes());
            }
        }
        h.finalize()
            .iter()
            .take(16)
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Signs that cannot be recovered from under-strand directions alone
    /// (crossings whose over-strand component never passes under).
    pub(crate) fn unforced_sign_crossings(&self) -> Vec<bool> {
        let raw: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        let inc = Incidence::build(&raw, &self.circles).expect("validated diagram");
        let mut unforced = vec![false; raw.len()];
        for passes in trace_components(&raw, &inc) {
            if passes.iter().all(|p| p.in_slot % 2 == 1) {
                for p in passes {
                    unforced[p.crossing] = true;
                }
            }
        }
        unforced
    }

    /// The same diagram with the crossing list reordered by `order`.
    pub fn permute_crossings(&self, order: &[usize]) -> Self {
        let crossings = order.iter().map(|&i| self.crossings[i]).collect();
        PlanarDiagram {
            crossings,
            ..self.clone()
        }
    }
}

/// Euler check on the face set traced from the rotation system:
/// V − E + F = 2 for every connected piece.
fn check_planarity(raw: &[[u32; 4]], inc: &Incidence) -> Result<()> {
    let v = raw.len();
    if v == 0 {
        return Ok(());
    }
    let e = inc.ends.len();

    let idx = |s: Slot| s.0 * 4 + s.1;
    let mut seen = vec![false; 4 * v];
    let mut faces = 0usize;
    for start in 0..4 * v {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut s = (start / 4, start % 4);
        while !seen[idx(s)] {
            seen[idx(s)] = true;
            s = inc.partner(raw, (s.0, (s.1 + 1) % 4));
        }
    }

    // connected pieces of the 4-valent graph
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for ends in inc.ends.values() {
        let (a, b) = (find(&mut parent, ends[0].0), find(&mut parent, ends[1].0));
        parent[a] = b;
    }
    let pieces = (0..v).filter(|&x| find(&mut parent, x) == x).count();

    let euler = v as i64 - e as i64 + faces as i64;
    if euler != 2 * pieces as i64 {
        return Err(Error::Diagram(format!(
            "non-planar incidence: V - E + F = {euler}, expected {}",
            2 * pieces
        )));
    }
    Ok(())
}
