//! Input bundle for the `falsim` subcommand.
//!
//! ```json
//! {
//!   "group": { "permutations": [[1, 0, 2], [1, 2, 0]] },
//!   "places": [["v2", 0], ["v3", 1], ["v5", 2]],
//!   "ring": { "ell": 5, "k": 1 },
//!   "rep1": { "dimension": 1, "images": [[[1]], [[1]]] },
//!   "rep2": { "dimension": 1, "images": [[[4]], [[1]]] }
//! }
//! ```
//!
//! `group` is either `{"permutations": [...]}` or `{"table": [...]}`.
//! `images` holds one integer matrix per group generator: per permutation
//! for permutation groups, per element for tables. An optional `cover` list
//! of place labels replaces the greedy cover.

use galrep_core::faltings_sim::{
    conjugacy_classes, frobenius_cover, trace_determination_check, FiniteGroup, ModRep,
    PlaceTable, ResidueRing, TraceCheck,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub group: GroupSpec,
    pub places: Vec<(String, usize)>,
    pub ring: RingSpec,
    pub rep1: RepSpec,
    pub rep2: RepSpec,
    #[serde(default)]
    pub cover: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Permutations(Vec<Vec<usize>>),
    Table(Vec<Vec<usize>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub ell: u64,
    pub k: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub dimension: usize,
    pub images: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Serialize)]
pub struct FalsimReport {
    pub group_order: usize,
    pub classes: Vec<Vec<usize>>,
    pub cover: Vec<String>,
    pub cover_given: bool,
    pub check: TraceCheck,
}

fn build_rep(group: &FiniteGroup, ring: ResidueRing, spec: &RepSpec) -> galrep_core::Result<ModRep> {
    let n = spec.dimension;
    let mut images = Vec::with_capacity(spec.images.len());
    for m in &spec.images {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(galrep_core::Error::NotSquare);
        }
        images.push(m.iter().flatten().map(|&x| ring.reduce(x)).collect());
    }
    ModRep::from_generator_images(group, ring, n, &images)
}

pub fn run_bundle(bundle: &Bundle) -> galrep_core::Result<FalsimReport> {
    let group = match &bundle.group {
        GroupSpec::Permutations(p) => FiniteGroup::from_permutations(p)?,
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone())?,
    };
    let ring = ResidueRing::new(bundle.ring.ell, bundle.ring.k)?;
    let places = PlaceTable::new(&group, bundle.places.clone())?;
    let rho1 = build_rep(&group, ring, &bundle.rep1)?;
    let rho2 = build_rep(&group, ring, &bundle.rep2)?;
    let (cover, cover_given) = match &bundle.cover {
        Some(c) => (c.clone(), true),
        None => (frobenius_cover(&group, &places)?, false),
    };
    let check = trace_determination_check(&group, &rho1, &rho2, &cover, &places)?;
    Ok(FalsimReport {
        group_order: group.order(),
        classes: conjugacy_classes(&group),
        cover,
        cover_given,
        check,
    })
}
