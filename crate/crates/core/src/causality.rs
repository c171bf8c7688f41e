//! Deciding whether two skies are linked in the solid torus.
//!
//! Two disjoint skies are unlinked exactly when their annular Khovanov
//! homology matches that of `U2`, the closure of the trivial two-braid, and
//! exactly when the Khovanov homology of the skies together with the
//! meridian of the solid torus matches that of `P3`, the connected sum of
//! two Hopf links. Homology over Z/2 is compared by graded dimension.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::cube::MAX_CROSSINGS;
use crate::error::{Error, Result};
use crate::invariants::{akh, kh, GradedDims};
use crate::linkdiag::{augment_with_meridian, model_link, AnnularDiagram, ModelLink, ModelName};

/// Homology route used to decide a sky pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Akh,
    Kh,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "akh" => Ok(Method::Akh),
            "kh" => Ok(Method::Kh),
            other => Err(Error::parse(other, "route must be `akh` or `kh`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Akh,
    Kh,
    SkyIntersection,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Akh => "akh",
            Route::Kh => "kh",
            Route::SkyIntersection => "sky_intersection",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<Method> for Route {
    fn from(m: Method) -> Self {
        match m {
            Method::Akh => Route::Akh,
            Method::Kh => Route::Kh,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Homology { computed: GradedDims, model: GradedDims },
    /// Angle of the light ray shared by both events.
    Intersection { theta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub related: bool,
    pub route: Route,
    pub model: Option<ModelName>,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn sky_intersection(theta: f64) -> Self {
        Verdict {
            related: true,
            route: Route::SkyIntersection,
            model: None,
            evidence: Evidence::Intersection { theta },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            related: bool,
            route: &'static str,
            model: &'static str,
            computed: Option<&'a GradedDims>,
            model_dims: Option<&'a GradedDims>,
            #[serde(skip_serializing_if = "Option::is_none")]
            intersection_theta: Option<f64>,
        }
        let (computed, model_dims, theta) = match &self.evidence {
            Evidence::Homology { computed, model } => (Some(computed), Some(model), None),
            Evidence::Intersection { theta } => (None, None, Some(*theta)),
        };
        Wire {
            related: self.related,
            route: self.route.as_str(),
            model: self.model.map_or("none", ModelName::as_str),
            computed,
            model_dims,
            intersection_theta: theta,
        }
        .serialize(s)
    }
}

/// Checks that `d` is a pair of longitudes: two components, each winding
/// once around the axis.
pub fn validate_sky_pair(d: &AnnularDiagram) -> std::result::Result<(), Vec<String>> {
    let mut violations = Vec::new();
    let n = d.component_count();
    if n != 2 {
        let noun = if n == 1 { "component" } else { "components" };
        violations.push(format!("{n} {noun}, expected 2"));
    }
    for (c, &w) in d.component_windings().iter().enumerate() {
        if w != 1 {
            violations.push(format!("component {} winds {w} times, expected 1", c + 1));
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

pub fn require_sky_pair(d: &AnnularDiagram) -> Result<()> {
    validate_sky_pair(d).map_err(Error::Hypothesis)
}

/// AKh of `U2`; the model has no crossings, so no limit applies.
pub fn u2_akh() -> &'static GradedDims {
    static CELL: OnceLock<GradedDims> = OnceLock::new();
    CELL.get_or_init(|| {
        let ModelLink::Annular(u2) = model_link(ModelName::U2) else {
            unreachable!("U2 is annular")
        };
        akh(&u2, MAX_CROSSINGS).expect("U2 homology")
    })
}

/// Kh of `P3`, computed from its 4-crossing diagram.
pub fn p3_kh() -> &'static GradedDims {
    static CELL: OnceLock<GradedDims> = OnceLock::new();
    CELL.get_or_init(|| kh(&model_link(ModelName::P3).planar(), MAX_CROSSINGS).expect("P3 homology"))
}

/// Verdict for a sky pair whose homology along `method` is `computed`.
pub fn verdict_from(method: Method, computed: GradedDims) -> Verdict {
    let (model_name, model) = match method {
        Method::Akh => (ModelName::U2, u2_akh().clone()),
        Method::Kh => (ModelName::P3, p3_kh().clone()),
    };
    Verdict {
        related: computed != model,
        route: method.into(),
        model: Some(model_name),
        evidence: Evidence::Homology { computed, model },
    }
}

pub fn decide_akh(d: &AnnularDiagram, crossing_limit: usize) -> Result<Verdict> {
    require_sky_pair(d)?;
    Ok(verdict_from(Method::Akh, akh(d, crossing_limit)?))
}

pub fn decide_kh(d: &AnnularDiagram, crossing_limit: usize) -> Result<Verdict> {
    require_sky_pair(d)?;
    Ok(verdict_from(Method::Kh, kh(&augment_with_meridian(d), crossing_limit)?))
}

pub fn decide(d: &AnnularDiagram, method: Method, crossing_limit: usize) -> Result<Verdict> {
    match method {
        Method::Akh => decide_akh(d, crossing_limit),
        Method::Kh => decide_kh(d, crossing_limit),
    }
}
