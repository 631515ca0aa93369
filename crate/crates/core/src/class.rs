use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Planar,
    #[serde(rename = "trifree")]
    TriangleFreePlanar,
    #[serde(rename = "bipartite")]
    BipartitePlanar,
    #[serde(rename = "girth5")]
    Girth5Planar,
    Outerplanar,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::Planar,
        GraphClass::TriangleFreePlanar,
        GraphClass::BipartitePlanar,
        GraphClass::Girth5Planar,
        GraphClass::Outerplanar,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Planar => "planar",
            GraphClass::TriangleFreePlanar => "trifree",
            GraphClass::BipartitePlanar => "bipartite",
            GraphClass::Girth5Planar => "girth5",
            GraphClass::Outerplanar => "outerplanar",
        }
    }

    pub fn params(self) -> ClassParams {
        ClassParams::for_class(self)
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s:?} (expected planar, trifree, bipartite, girth5 or outerplanar)"))
    }
}

/// Per-class constants driving both the algorithm and its worst-case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassParams {
    /// Minimum number of shared red neighbors for a pair to be selected in
    /// phase two; `None` disables phase two.
    pub pair_threshold: Option<usize>,
    /// Upper bound on the residual degree once phases one and two are done.
    pub residual_cap: usize,
    /// Worst-case `|D1 ∪ D2| / γ`.
    pub phase12_constant: i64,
    pub lp_density_num: i64,
    pub lp_density_den: i64,
    /// First index of the `d_i ≤ ... r_i` constraint family.
    pub lp_low_index: usize,
    /// Integer approximation factor guaranteed for the class.
    pub published_factor: i64,
    /// Claimed bound on the LP optimum.
    pub lp_claimed_bound: Ratio<i64>,
    /// Claimed bound on `phase12_constant + lp optimum`.
    pub claimed_total: Ratio<i64>,
}

impl ClassParams {
    pub fn for_class(class: GraphClass) -> Self {
        let r = Ratio::new;
        match class {
            GraphClass::Planar => ClassParams {
                pair_threshold: Some(10),
                residual_cap: 30,
                phase12_constant: 4,
                lp_density_num: 3,
                lp_density_den: 1,
                lp_low_index: 7,
                published_factor: 20,
                lp_claimed_bound: r(159, 10),
                claimed_total: r(199, 10),
            },
            GraphClass::TriangleFreePlanar => ClassParams {
                pair_threshold: Some(7),
                residual_cap: 18,
                phase12_constant: 3,
                lp_density_num: 2,
                lp_density_den: 1,
                lp_low_index: 5,
                published_factor: 14,
                lp_claimed_bound: r(21, 2),
                claimed_total: r(27, 2),
            },
            GraphClass::BipartitePlanar => ClassParams {
                pair_threshold: Some(7),
                residual_cap: 18,
                phase12_constant: 2,
                lp_density_num: 2,
                lp_density_den: 1,
                lp_low_index: 5,
                published_factor: 13,
                lp_claimed_bound: r(21, 2),
                claimed_total: r(25, 2),
            },
            GraphClass::Girth5Planar => ClassParams {
                pair_threshold: None,
                residual_cap: 3,
                phase12_constant: 3,
                lp_density_num: 5,
                lp_density_den: 3,
                lp_low_index: 4,
                published_factor: 7,
                lp_claimed_bound: r(4, 1),
                claimed_total: r(7, 1),
            },
            GraphClass::Outerplanar => ClassParams {
                pair_threshold: None,
                residual_cap: 9,
                phase12_constant: 3,
                lp_density_num: 2,
                lp_density_den: 1,
                lp_low_index: 5,
                published_factor: 12,
                lp_claimed_bound: r(43, 5),
                claimed_total: r(58, 5),
            },
        }
    }

    pub fn density(&self) -> Ratio<i64> {
        Ratio::new(self.lp_density_num, self.lp_density_den)
    }
}
