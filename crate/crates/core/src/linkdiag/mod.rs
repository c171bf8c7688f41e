//! Link diagrams: braid words, their closures in the annulus, and planar
//! PD codes.

mod annular;
mod braid;
mod pd;
mod planar;

pub use annular::{annular_to_planar, augment_with_meridian, braid_closure, AnnularDiagram};
pub use braid::{apply_move, parse_braid, BraidMove, BraidWord};
pub use pd::parse_pd;
pub use planar::{Crossing, PlanarDiagram, Sign};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Reference links the causality routes compare against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelName {
    /// Closure of the trivial two-braid.
    U2,
    /// Connected sum of two Hopf links: `U2` plus the meridian.
    P3,
    Unknot,
    HopfPositive,
    HopfNegative,
}

impl ModelName {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::U2 => "U2",
            ModelName::P3 => "P3",
            ModelName::Unknot => "unknot",
            ModelName::HopfPositive => "hopf_positive",
            ModelName::HopfNegative => "hopf_negative",
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "U2" => ModelName::U2,
            "P3" => ModelName::P3,
            "unknot" => ModelName::Unknot,
            "hopf_positive" => ModelName::HopfPositive,
            "hopf_negative" => ModelName::HopfNegative,
            other => return Err(Error::UnknownModel(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelLink {
    Annular(AnnularDiagram),
    Planar(PlanarDiagram),
}

impl ModelLink {
    /// Planar diagram of the model (the closure, for annular models).
    pub fn planar(&self) -> PlanarDiagram {
        match self {
            ModelLink::Annular(a) => annular_to_planar(a),
            ModelLink::Planar(p) => p.clone(),
        }
    }
}

pub fn model_link(name: ModelName) -> ModelLink {
    let closure = |m: usize, letters: Vec<i32>| {
        braid_closure(&BraidWord::new(m, letters).expect("model braid words are valid"))
    };
    match name {
        ModelName::U2 => ModelLink::Annular(closure(2, vec![])),
        ModelName::P3 => ModelLink::Planar(augment_with_meridian(&closure(2, vec![]))),
        ModelName::Unknot => {
            ModelLink::Planar(PlanarDiagram::new(vec![], vec![1]).expect("unknot is valid"))
        }
        ModelName::HopfPositive => {
            ModelLink::Planar(annular_to_planar(&closure(2, vec![1, 1])).forget_axis())
        }
        ModelName::HopfNegative => {
            ModelLink::Planar(annular_to_planar(&closure(2, vec![-1, -1])).forget_axis())
        }
    }
}

pub fn model_link_by_name(name: &str) -> Result<ModelLink> {
    Ok(model_link(name.parse()?))
}
