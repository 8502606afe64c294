//! JSON encodings of chains and matrix chains.
//!
//! Floats are written by `serde_json` in shortest round-trip form, so reading a
//! file back reproduces every coordinate bit for bit.

use avalanche_core::catspaces::{verify_cat_comparison, CatReport, H3Point, MetricTree, H3};
use avalanche_core::chains::{Chain, GoodPair};
use avalanche_core::cocycle::MatChain;
use avalanche_core::hyp2::{HPoint, Mat2, H2};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: f64,
    pub b: f64,
}

impl From<&GoodPair> for PairJson {
    fn from(gp: &GoodPair) -> Self {
        PairJson {
            a: gp.a(),
            b: gp.b(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

/// `{"model": "H2" | "H3" | "tree", "points": [...], "pair": {"a", "b"}}`; tree
/// chains also carry the tree and list node ids as points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum ChainFile {
    H2 {
        points: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair: Option<PairJson>,
    },
    H3 {
        points: Vec<[f64; 3]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair: Option<PairJson>,
    },
    #[serde(rename = "tree")]
    Tree {
        tree: TreeJson,
        points: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pair: Option<PairJson>,
    },
}

/// `{"mats": [[a, b, c, d], ...], "pair": {...}}` for `A_1, ..., A_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub mats: Vec<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairJson>,
}

/// A chain in any of the supported spaces.
#[derive(Debug, Clone)]
pub enum AnyChain {
    H2(Chain<H2>),
    H3(Chain<H3>),
    Tree(Chain<MetricTree>),
}

impl AnyChain {
    pub fn n(&self) -> usize {
        match self {
            AnyChain::H2(c) => c.n(),
            AnyChain::H3(c) => c.n(),
            AnyChain::Tree(c) => c.n(),
        }
    }

    pub fn tension(&self) -> f64 {
        match self {
            AnyChain::H2(c) => c.tension(),
            AnyChain::H3(c) => c.tension(),
            AnyChain::Tree(c) => c.tension(),
        }
    }

    pub fn is_good_chain(&self, gp: &GoodPair) -> bool {
        match self {
            AnyChain::H2(c) => c.is_good_chain(gp),
            AnyChain::H3(c) => c.is_good_chain(gp),
            AnyChain::Tree(c) => c.is_good_chain(gp),
        }
    }

    pub fn cat_report(&self) -> avalanche_core::Result<CatReport> {
        match self {
            AnyChain::H2(c) => verify_cat_comparison(c),
            AnyChain::H3(c) => verify_cat_comparison(c),
            AnyChain::Tree(c) => verify_cat_comparison(c),
        }
    }

    pub fn to_file(&self, gp: Option<&GoodPair>) -> ChainFile {
        let pair = gp.map(PairJson::from);
        match self {
            AnyChain::H2(c) => ChainFile::H2 {
                points: c.points().iter().map(|p| [p.re(), p.im()]).collect(),
                pair,
            },
            AnyChain::H3(c) => ChainFile::H3 {
                points: c.points().iter().map(|p| [p.x(), p.y(), p.z()]).collect(),
                pair,
            },
            AnyChain::Tree(c) => ChainFile::Tree {
                tree: TreeJson {
                    nodes: c.space().node_count(),
                    edges: c.space().edges().to_vec(),
                },
                points: c.points().to_vec(),
                pair,
            },
        }
    }
}

impl ChainFile {
    pub fn pair(&self) -> Option<PairJson> {
        match self {
            ChainFile::H2 { pair, .. }
            | ChainFile::H3 { pair, .. }
            | ChainFile::Tree { pair, .. } => *pair,
        }
    }

    pub fn into_chain(self) -> Result<AnyChain, CliError> {
        Ok(match self {
            ChainFile::H2 { points, .. } => {
                let pts = points
                    .iter()
                    .map(|&[x, y]| HPoint::new(x, y))
                    .collect::<Result<Vec<_>, _>>()?;
                AnyChain::H2(Chain::h2(pts)?)
            }
            ChainFile::H3 { points, .. } => {
                let pts = points
                    .iter()
                    .map(|&[x, y, z]| H3Point::new(x, y, z))
                    .collect::<Result<Vec<_>, _>>()?;
                AnyChain::H3(Chain::new(H3, pts)?)
            }
            ChainFile::Tree { tree, points, .. } => AnyChain::Tree(Chain::new(
                MetricTree::new(tree.nodes, tree.edges)?,
                points,
            )?),
        })
    }
}

impl MatrixFile {
    pub fn from_chain(mc: &MatChain, gp: Option<&GoodPair>) -> Self {
        MatrixFile {
            mats: mc.mats().iter().map(Mat2::entries).collect(),
            pair: gp.map(PairJson::from),
        }
    }

    pub fn into_chain(self) -> Result<MatChain, CliError> {
        let mats = self
            .mats
            .iter()
            .map(|&[a, b, c, d]| Mat2::new(a, b, c, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatChain::new(mats)?)
    }
}

/// Contents of a file passed to `verify --from-file`.
#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Chain(ChainFile),
    Matrix(MatrixFile),
}

impl InputFile {
    /// Matrix files are recognised by their `mats` key.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("mats").is_some() {
            Ok(InputFile::Matrix(serde_json::from_value(value)?))
        } else {
            Ok(InputFile::Chain(serde_json::from_value(value)?))
        }
    }
}
