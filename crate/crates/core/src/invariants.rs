//! Graded homology dimensions of Kh and AKh, and the graded Euler
//! characteristic computed two ways: from homology and from the state sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Serialize, Serializer};

use crate::cube::{self, smooth, Resolution};
use crate::error::{Error, Result};
use crate::linkdiag::{AnnularDiagram, PlanarDiagram};

/// Tag of the grading conventions in [`crate::cube`]. Dimensions carrying a
/// different tag are never compared.
pub const CONVENTION: &str = "z2;i=|r|-n-;j=deg+|r|+n+-2n-;k=essential;v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading {
    pub i: i32,
    pub j: i32,
    pub k: Option<i32>,
}

#[derive(Debug, Clone)]
pub struct GradedDims {
    dims: BTreeMap<Grading, usize>,
    diagram_hash: String,
    convention: String,
}

impl PartialEq for GradedDims {
    /// Isomorphism of graded Z/2 vector spaces: equal dimensions in every
    /// grading, under the same convention.
    fn eq(&self, other: &Self) -> bool {
        self.convention == other.convention && self.dims == other.dims
    }
}

impl Eq for GradedDims {}

impl GradedDims {
    pub fn new(dims: impl IntoIterator<Item = (Grading, usize)>, diagram_hash: impl Into<String>) -> Self {
        GradedDims {
            dims: dims.into_iter().filter(|&(_, d)| d > 0).collect(),
            diagram_hash: diagram_hash.into(),
            convention: CONVENTION.to_string(),
        }
    }

    pub fn bigraded(entries: &[((i32, i32), usize)]) -> Self {
        Self::new(
            entries.iter().map(|&((i, j), d)| (Grading { i, j, k: None }, d)),
            "",
        )
    }

    pub fn trigraded(entries: &[((i32, i32, i32), usize)]) -> Self {
        Self::new(
            entries
                .iter()
                .map(|&((i, j, k), d)| (Grading { i, j, k: Some(k) }, d)),
            "",
        )
    }

    pub fn with_convention(mut self, convention: impl Into<String>) -> Self {
        self.convention = convention.into();
        self
    }

    pub fn diagram_hash(&self) -> &str {
        &self.diagram_hash
    }

    pub fn convention(&self) -> &str {
        &self.convention
    }

    pub fn get(&self, g: Grading) -> usize {
        self.dims.get(&g).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Grading, usize)> + '_ {
        self.dims.iter().map(|(&g, &d)| (g, d))
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dimension(&self) -> usize {
        self.dims.values().sum()
    }

    /// Sums out the annular grading.
    pub fn marginalize_k(&self) -> GradedDims {
        let mut dims = BTreeMap::new();
        for (g, d) in self.iter() {
            *dims.entry(Grading { k: None, ..g }).or_insert(0) += d;
        }
        GradedDims {
            dims,
            diagram_hash: self.diagram_hash.clone(),
            convention: self.convention.clone(),
        }
    }

    /// `(i, j, k) ↦ (−i, −j, −k)`, the effect of mirroring over a field.
    pub fn mirrored(&self) -> GradedDims {
        GradedDims {
            dims: self
                .iter()
                .map(|(g, d)| {
                    (
                        Grading {
                            i: -g.i,
                            j: -g.j,
                            k: g.k.map(|k| -k),
                        },
                        d,
                    )
                })
                .collect(),
            diagram_hash: String::new(),
            convention: self.convention.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graded dims serialize")
    }

    /// Parses the JSON array emitted by [`GradedDims::to_json`].
    pub fn from_json(text: &str, diagram_hash: &str, convention: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Entry {
            i: i32,
            j: i32,
            k: Option<i32>,
            dim: usize,
        }
        let entries: Vec<Entry> =
            serde_json::from_str(text).map_err(|e| Error::Cache(format!("bad graded dims JSON: {e}")))?;
        Ok(GradedDims::new(
            entries
                .into_iter()
                .map(|e| (Grading { i: e.i, j: e.j, k: e.k }, e.dim)),
            diagram_hash,
        )
        .with_convention(convention))
    }
}

impl Serialize for GradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entry(Grading, usize);
        impl Serialize for Entry {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(4))?;
                m.serialize_entry("i", &self.0.i)?;
                m.serialize_entry("j", &self.0.j)?;
                m.serialize_entry("k", &self.0.k)?;
                m.serialize_entry("dim", &self.1)?;
                m.end()
            }
        }
        let mut seq = s.serialize_seq(Some(self.dims.len()))?;
        for (g, d) in self.iter() {
            seq.serialize_element(&Entry(g, d))?;
        }
        seq.end()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(g, d)| match g.k {
                Some(k) => format!("({},{},{}):{d}", g.i, g.j, k),
                None => format!("({},{}):{d}", g.i, g.j),
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn from_homology(h: BTreeMap<crate::cube::Grading, usize>, hash: String) -> GradedDims {
    GradedDims::new(h.into_iter().map(|((i, j, k), d)| (Grading { i, j, k }, d)), hash)
}

/// Khovanov homology over Z/2, graded by `(i, j)`.
///
/// Computed from the reduced complex, half the size of the full one:
/// over Z/2, `Kh ≅ Khr ⊗ V`.
pub fn kh(d: &PlanarDiagram, crossing_limit: usize) -> Result<GradedDims> {
    let c = cube::build_reduced_kh_complex(d, crossing_limit)?;
    let mut full = BTreeMap::new();
    for ((i, j, k), dim) in c.homology()? {
        for j in [j, j + 2] {
            *full.entry((i, j, k)).or_insert(0) += dim;
        }
    }
    Ok(from_homology(full, d.forget_axis().content_hash()))
}

/// Khovanov homology from the full cube, without the reduction used by [`kh`].
pub fn kh_unreduced(d: &PlanarDiagram, crossing_limit: usize) -> Result<GradedDims> {
    let c = cube::build_kh_complex(d, crossing_limit)?;
    Ok(from_homology(c.homology()?, d.forget_axis().content_hash()))
}

/// Annular Khovanov homology over Z/2, graded by `(i, j, k)`.
pub fn akh(d: &AnnularDiagram, crossing_limit: usize) -> Result<GradedDims> {
    let c = cube::build_akh_complex(d, crossing_limit)?;
    Ok(from_homology(c.homology()?, d.planarize().content_hash()))
}

/// Laurent polynomial in `q` with integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: i64, exponent: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coefficient);
        p
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: i32, coefficient: i64) {
        let c = self.terms.entry(exponent).or_insert(0);
        *c += coefficient;
        if *c == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn coefficient(&self, exponent: i32) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::monomial(1, 0), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "q^{e}")?,
                (_, 1) => write!(f, "{a}q")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// `Σ (−1)^i q^j dim`, summing over `k` when present.
pub fn graded_euler(g: &GradedDims) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for (gr, d) in g.iter() {
        let sign = if gr.i.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(gr.j, sign * d as i64);
    }
    p
}

/// State sum `(−1)^{n₋} q^{n₊ − 2n₋} Σ_r (−q)^{|r|} (q + q⁻¹)^{circles(r)}`.
/// Uses no rank computations.
pub fn chain_euler(d: &PlanarDiagram, crossing_limit: usize) -> Result<LaurentPolynomial> {
    let n = d.crossing_count();
    if n > crossing_limit.min(cube::MAX_CROSSINGS) {
        return Err(Error::CrossingLimit {
            crossings: n,
            limit: crossing_limit.min(cube::MAX_CROSSINGS),
        });
    }
    let d = d.forget_axis();
    let circle = LaurentPolynomial::from_terms(&[(1, 1), (-1, 1)]);
    let minus_q = LaurentPolynomial::monomial(-1, 1);

    let mut circle_pows: Vec<LaurentPolynomial> = vec![LaurentPolynomial::monomial(1, 0)];
    let mut body = LaurentPolynomial::zero();
    for bits in 0..1u64 << n {
        let r = Resolution::new(bits, n);
        let c = smooth(&d, r).count;
        while circle_pows.len() <= c {
            let next = circle_pows.last().unwrap() * &circle;
            circle_pows.push(next);
        }
        let term = &minus_q.pow(r.weight() as u32) * &circle_pows[c];
        body = &body + &term;
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(&LaurentPolynomial::monomial(sign, np - 2 * nm) * &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::{braid_closure, model_link, parse_braid, parse_pd, ModelName};

    #[test]
    fn reduced_matches_full_cube() {
        let mut ds: Vec<PlanarDiagram> = ["", "1", "1 1", "-1 -1 -1", "1 -1 1 1 -1"]
            .iter()
            .map(|w| braid_closure(&parse_braid(w, 2).unwrap()).planarize())
            .collect();
        ds.push(braid_closure(&parse_braid("1 -2 1 -2", 3).unwrap()).planarize());
        ds.push(braid_closure(&parse_braid("1", 3).unwrap()).planarize());
        ds.push(parse_pd("O(1) O(2)").unwrap());
        ds.push(model_link(ModelName::P3).planar());
        for d in ds {
            assert_eq!(kh(&d, 20).unwrap(), kh_unreduced(&d, 20).unwrap(), "{}", d.to_pd_text());
        }
    }

    #[test]
    fn unknot() {
        let o = model_link(ModelName::Unknot).planar();
        let g = kh(&o, 20).unwrap();
        assert_eq!(g, GradedDims::bigraded(&[((0, 1), 1), ((0, -1), 1)]));
        let e = LaurentPolynomial::from_terms(&[(1, 1), (-1, 1)]);
        assert_eq!(graded_euler(&g), e);
        assert_eq!(chain_euler(&o, 20).unwrap(), e);
    }

    #[test]
    fn empty_dims_zero_polynomial() {
        assert!(graded_euler(&GradedDims::new([], "")).is_zero());
    }

    #[test]
    fn convention_tag_blocks_equality() {
        let a = GradedDims::bigraded(&[((0, 1), 1)]);
        let b = a.clone().with_convention("other");
        assert_ne!(a, b);
    }

    #[test]
    fn json_shape() {
        let g = GradedDims::trigraded(&[((0, 2, 2), 1), ((0, -2, -2), 1), ((0, 0, 0), 2)]);
        assert_eq!(
            g.to_json(),
            r#"[{"i":0,"j":-2,"k":-2,"dim":1},{"i":0,"j":0,"k":0,"dim":2},{"i":0,"j":2,"k":2,"dim":1}]"#
        );
        let back = GradedDims::from_json(&g.to_json(), "", CONVENTION).unwrap();
        assert_eq!(back, g);
        let b = GradedDims::bigraded(&[((0, 1), 1)]);
        assert_eq!(b.to_json(), r#"[{"i":0,"j":1,"k":null,"dim":1}]"#);
    }

    #[test]
    fn polynomial_display() {
        let p = LaurentPolynomial::from_terms(&[(-1, 1), (1, 1), (3, -2), (0, 1)]);
        assert_eq!(p.to_string(), "q^-1 + 1 + q - 2q^3");
    }
}
