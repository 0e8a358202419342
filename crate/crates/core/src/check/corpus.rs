//! The built-in corpus of `(G, p)` instances, each with one twisted module.

use super::io::{GroupDoc, ModuleDoc};
use crate::error::{Error, Result};
use crate::module::GModule;
use crate::perm::{o_p, PermGroup};
use std::sync::Arc;

/// Which module of an instance to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleChoice {
    Trivial,
    Twisted,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub group_doc: GroupDoc,
    pub group: Arc<PermGroup>,
    pub p: u32,
    pub twisted: GModule,
    pub twisted_label: &'static str,
}

impl Instance {
    pub fn module(&self, which: ModuleChoice) -> GModule {
        match which {
            ModuleChoice::Trivial => GModule::trivial(self.group.clone(), self.p, 1),
            ModuleChoice::Twisted => self.twisted.clone(),
        }
    }

    pub fn label(&self, which: ModuleChoice) -> &'static str {
        match which {
            ModuleChoice::Trivial => "trivial",
            ModuleChoice::Twisted => self.twisted_label,
        }
    }
}

pub const INSTANCE_NAMES: [&str; 7] = ["S3@2", "S3@3", "S4@2", "A4@2", "D8@2", "S3wrC3@3", "SL(2,3)@3"];

fn pairings() -> Vec<Vec<Vec<usize>>> {
    vec![vec![vec![1, 2], vec![3, 4]], vec![vec![1, 3], vec![2, 4]], vec![vec![1, 4], vec![2, 3]]]
}

pub fn instance(name: &str) -> Result<Instance> {
    let (doc, p, label) = match name {
        "S3@2" => (GroupDoc::named("S3"), 2, "sum-zero on points"),
        "S3@3" => (GroupDoc::named("S3"), 3, "sign"),
        "S4@2" => (GroupDoc::named("S4"), 2, "sum-zero on pairings"),
        "A4@2" => (GroupDoc::named("A4"), 2, "sum-zero on pairings"),
        "D8@2" => (GroupDoc::named("D8"), 2, "permutation on diagonals"),
        "S3wrC3@3" => (
            GroupDoc::Wreath { name: super::io::WreathTag::Wreath, base: Box::new(GroupDoc::named("S3")), p: 3 },
            3,
            "sign",
        ),
        "SL(2,3)@3" => (GroupDoc::named("SL(2,3)"), 3, "sum-zero on cosets of O_2"),
        _ => return Err(Error::Parse(format!("unknown corpus instance {name:?}"))),
    };
    let group = Arc::new(doc.build()?);
    let twisted = match name {
        "S3@2" => ModuleDoc::Blocks { blocks: vec![vec![1], vec![2], vec![3]], sum_zero: true }.build(group.clone(), p)?,
        "S3@3" | "S3wrC3@3" => GModule::sign(group.clone(), p),
        "S4@2" | "A4@2" => GModule::sum_zero_on_partitions(group.clone(), p, &pairings())?,
        "D8@2" => GModule::permutation_on_blocks(group.clone(), p, &[vec![1, 3], vec![2, 4]])?,
        _ => {
            let q8 = o_p(&group, &group.whole(), 2);
            GModule::sum_zero_on_cosets(group.clone(), p, &q8)?
        }
    };
    let name = INSTANCE_NAMES.iter().copied().find(|&n| n == name).expect("listed");
    Ok(Instance { name, group_doc: doc, group, p, twisted, twisted_label: label })
}

pub fn corpus() -> Result<Vec<Instance>> {
    INSTANCE_NAMES.iter().map(|n| instance(n)).collect()
}
