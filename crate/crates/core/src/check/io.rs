//! JSON group and module documents.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::GModule;
use crate::perm::{named, wreath_product_cp, Perm, PermGroup};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

/// A permutation group, either by generators in cycle notation (1-based
/// points) or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    Generators { degree: usize, generators: Vec<Vec<Vec<usize>>> },
    Wreath { name: WreathTag, base: Box<GroupDoc>, p: u32 },
    Product { name: ProductTag, factors: Vec<GroupDoc> },
    Named { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WreathTag {
    Wreath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductTag {
    Product,
}

impl GroupDoc {
    pub fn named(name: &str) -> GroupDoc {
        GroupDoc::Named { name: name.to_string() }
    }

    pub fn build(&self) -> Result<PermGroup> {
        match self {
            GroupDoc::Generators { degree, generators } => {
                let gens = generators.iter().map(|c| Perm::from_cycles(*degree, c)).collect::<Result<Vec<_>>>()?;
                PermGroup::new(*degree, gens)
            }
            GroupDoc::Named { name } => named::by_name(name),
            GroupDoc::Wreath { base, p, .. } => {
                let g0 = base.build()?;
                let w = wreath_product_cp(&g0, *p)?;
                PermGroup::new(w.group.degree(), w.group.generators().to_vec())
            }
            GroupDoc::Product { factors, .. } => {
                let gs = factors.iter().map(GroupDoc::build).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&PermGroup> = gs.iter().collect();
                Ok(named::direct_product(&refs)?.0)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupDoc::Generators { degree, generators } => format!("<{} generators on {degree} points>", generators.len()),
            GroupDoc::Named { name } => name.clone(),
            GroupDoc::Wreath { base, p, .. } => format!("{}wrC{p}", base.label()),
            GroupDoc::Product { factors, .. } => factors.iter().map(GroupDoc::label).collect::<Vec<_>>().join("x"),
        }
    }
}

/// A module: explicit matrices (row-major, one per group generator), the
/// trivial module, or a named construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleDoc {
    Matrices { prime: u32, dim: usize, action: Vec<Vec<Vec<u32>>> },
    Trivial { trivial: usize },
    Sign { sign: bool },
    Blocks { blocks: Vec<Vec<usize>>, #[serde(default)] sum_zero: bool },
    Partitions { partitions: Vec<Vec<Vec<usize>>>, #[serde(default)] sum_zero: bool },
}

impl ModuleDoc {
    pub fn build(&self, group: Arc<PermGroup>, p: u32) -> Result<GModule> {
        match self {
            ModuleDoc::Matrices { prime, dim, action } => {
                if *prime != p {
                    return Err(Error::InvalidModule(format!("module prime {prime} differs from {p}")));
                }
                let mats = action
                    .iter()
                    .map(|m| {
                        if m.len() != *dim || m.iter().any(|r| r.len() != *dim) {
                            return Err(Error::InvalidModule("matrix is not dim × dim".into()));
                        }
                        let rows: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
                        Ok(Matrix::from_rows(p, *dim, &rows))
                    })
                    .collect::<Result<Vec<_>>>()?;
                GModule::new(group, p, *dim, mats)
            }
            ModuleDoc::Trivial { trivial } => Ok(GModule::trivial(group, p, *trivial)),
            ModuleDoc::Sign { sign: true } => Ok(GModule::sign(group, p)),
            ModuleDoc::Sign { sign: false } => Ok(GModule::trivial(group, p, 1)),
            ModuleDoc::Blocks { blocks, sum_zero: false } => GModule::permutation_on_blocks(group, p, blocks),
            ModuleDoc::Blocks { blocks, sum_zero: true } => GModule::sum_zero_on_blocks(group, p, blocks),
            ModuleDoc::Partitions { partitions, sum_zero: false } => GModule::permutation_on_partitions(group, p, partitions),
            ModuleDoc::Partitions { partitions, sum_zero: true } => GModule::sum_zero_on_partitions(group, p, partitions),
        }
    }

    /// The document of an existing module, as explicit matrices.
    pub fn from_module(m: &GModule) -> ModuleDoc {
        let action = m
            .generator_matrices()
            .iter()
            .map(|a| (0..a.nrows()).map(|i| a.row(i).to_vec()).collect())
            .collect();
        ModuleDoc::Matrices { prime: m.p(), dim: m.dim(), action }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
