//! Closed braids in the thickened annulus.
//!
//! The braid is drawn with strands running upward, positions ordered left to
//! right, and closed around an axis. A positive letter `σ_i` is a positive
//! crossing in which the strand coming from position `i` passes over.
//! Arc labels are dense integers starting at 1, assigned by walking each
//! component from the bottom of its lowest starting position. The arcs that
//! run through the closure region (one per position) carry the axis marking.


use super::braid::BraidWord;
use super::planar::{Crossing, PlanarDiagram, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnularDiagram {
    presentation: BraidWord,
    component_windings: Vec<usize>,
}

impl AnnularDiagram {
    pub fn presentation(&self) -> &BraidWord {
        &self.presentation
    }

    /// Winding of each component about the axis, components ordered by
    /// their lowest starting position.
    pub fn component_windings(&self) -> &[usize] {
        &self.component_windings
    }

    pub fn component_count(&self) -> usize {
        self.component_windings.len()
    }

    pub fn strand_count(&self) -> usize {
        self.presentation.strand_count()
    }

    pub fn crossing_count(&self) -> usize {
        self.presentation.len()
    }

    /// Planar diagram of the closure, keeping the axis marking.
    pub fn planarize(&self) -> PlanarDiagram {
        closed_braid_pd(&self.presentation, false)
    }
}

pub fn braid_closure(b: &BraidWord) -> AnnularDiagram {
    AnnularDiagram {
        component_windings: b.cycles().iter().map(Vec::len).collect(),
        presentation: b.clone(),
    }
}

/// The closure as a link diagram in the plane.
pub fn annular_to_planar(d: &AnnularDiagram) -> PlanarDiagram {
    d.planarize()
}

/// Closure of `d` together with a positively oriented meridian circle
/// around all strands, placed after the last braid letter. The meridian
/// crosses over every strand on its lower pass and under every strand on
/// its upper pass, so each of its 2m crossings is positive.
pub fn augment_with_meridian(d: &AnnularDiagram) -> PlanarDiagram {
    closed_braid_pd(&d.presentation, true).forget_axis()
}

fn closed_braid_pd(b: &BraidWord, meridian: bool) -> PlanarDiagram {
    let m = b.strand_count();
    let mut next_id = m as u32;
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };
    // temporary ids 0..m are the closure arcs entering each position
    let mut cur: Vec<u32> = (0..m as u32).collect();
    let mut crossings: Vec<([u32; 4], Sign)> = Vec::new();

    for &g in b.letters() {
        let left = g.unsigned_abs() as usize - 1;
        let right = left + 1;
        let (l_in, r_in) = (cur[left], cur[right]);
        let to_right = fresh();
        let to_left = fresh();
        if g > 0 {
            // strand from the left passes over
            crossings.push(([r_in, to_right, to_left, l_in], Sign::Positive));
        } else {
            crossings.push(([l_in, r_in, to_right, to_left], Sign::Negative));
        }
        cur[right] = to_right;
        cur[left] = to_left;
    }

    let mut meridian_start = None;
    if meridian {
        let mu_start = fresh();
        meridian_start = Some(mu_start);
        let mut mu = mu_start;
        let mut uppers = Vec::with_capacity(m);
        for &below in &cur[..m] {
            let mid = fresh();
            let mu_out = fresh();
            crossings.push(([below, mu_out, mid, mu], Sign::Positive));
            mu = mu_out;
            uppers.push(mid);
        }
        for p in (0..m).rev() {
            let out = fresh();
            let mu_out = if p == 0 { mu_start } else { fresh() };
            crossings.push(([mu, out, mu_out, uppers[p]], Sign::Positive));
            mu = mu_out;
            cur[p] = out;
        }
    }

    // close up: the arc leaving position p at the top is closure arc p
    let mut alias: Vec<u32> = (0..next_id).collect();
    for (p, &c) in cur.iter().enumerate() {
        alias[c as usize] = p as u32;
    }
    for (arcs, _) in &mut crossings {
        for a in arcs.iter_mut() {
            *a = alias[*a as usize];
        }
    }

    // head[a] = (crossing, slot) where arc a enters
    let mut head: Vec<Option<(usize, usize)>> = vec![None; next_id as usize];
    for (x, (arcs, sign)) in crossings.iter().enumerate() {
        let c = Crossing::new(*arcs, *sign);
        for slot in 0..4 {
            if c.is_incoming(slot) {
                head[arcs[slot] as usize] = Some((x, slot));
            }
        }
    }

    // relabel in traversal order
    let mut label: Vec<u32> = vec![0; next_id as usize];
    let mut next_label = 1u32;
    let mut circles = Vec::new();
    let mut starts: Vec<u32> = (0..m as u32).collect();
    starts.extend(meridian_start);
    for start in starts {
        if label[start as usize] != 0 {
            continue;
        }
        let mut a = start;
        loop {
            label[a as usize] = next_label;
            next_label += 1;
            match head[a as usize] {
                None => {
                    circles.push(label[a as usize]);
                    break;
                }
                Some((x, slot)) => {
                    a = crossings[x].0[(slot + 2) % 4];
                    if a == start {
                        break;
                    }
                }
            }
        }
    }

    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|(arcs, sign)| Crossing::new(arcs.map(|a| label[a as usize]), sign))
        .collect();
    let axis: Vec<u32> = (0..m).map(|p| label[p]).collect();
    PlanarDiagram::new(crossings, circles)
        .expect("closed braid diagrams are valid")
        .with_axis(axis)
}
