//! JSON report document.

use serde::{Deserialize, Serialize};
use solvrad::radical::{
    ClassSuitability, GroupKappa, KRadicalVerdict, Kappa, RadicalElements, TripleScan,
};
use solvrad::rootsys::{CoxeterConvention, RootType};
use solvrad::structure::{ConjugacyClass, HallThompsonTriple};
use solvrad::{PermGroup, Permutation};

pub const TOOL: &str = "solvrad";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub cap: u64,
    /// Echo of the group spec, when the command takes one.
    pub spec: Option<String>,
    pub group: Option<GroupInfo>,
    /// False when a verification or diff failed.
    pub ok: bool,
    pub payload: Payload,
    /// Excluded from determinism comparisons.
    pub timing: Timing,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub degree: usize,
    pub order: String,
    pub generators: Vec<Permutation>,
}

impl GroupInfo {
    pub fn of(g: &PermGroup) -> Self {
        GroupInfo {
            degree: g.degree(),
            order: g.order().to_string(),
            generators: g.generators().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Group,
    Classes(ClassesDoc),
    Solvable(SolvableDoc),
    Radical(RadicalDoc),
    Kradical(RadicalElements),
    Kappa(GroupKappa),
    Suitable(SuitableDoc),
    Table1(Table1Doc),
    Sharpness(SharpnessDoc),
    Rootcheck(RootCheckDoc),
    Verify(VerifyDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesDoc {
    pub count: usize,
    pub total_size: u64,
    pub classes: Vec<ConjugacyClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvableDoc {
    pub solvable: bool,
    /// Orders of the derived series.
    pub series: Vec<String>,
    pub triple: Option<HallThompsonTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalClassDoc {
    pub class_index: usize,
    pub representative: Permutation,
    pub element_order: u64,
    pub class_size: u64,
    /// Membership flag per method, in the order of `RadicalDoc::methods`.
    pub in_radical: Vec<bool>,
    /// Least `n ≤ n_max` with a commutator witness (commutator method only).
    pub commutator_degree: Option<usize>,
    pub kappa: Kappa,
    pub k_verdicts: Vec<KRadicalVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDoc {
    pub method: String,
    pub order: String,
    pub generators: Vec<Permutation>,
    pub member_classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalDoc {
    pub n_max: usize,
    pub methods: Vec<MethodDoc>,
    pub methods_agree: bool,
    pub classes: Vec<RadicalClassDoc>,
    pub kappa: Option<usize>,
    pub kappa_class: Option<usize>,
    /// Order of `R(G/R(G))`; `None` when the quotient is too large to realize.
    pub quotient_radical_order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuitableDoc {
    pub k: usize,
    pub classes: Vec<ClassSuitability>,
    pub radical_classes: Vec<usize>,
    pub suitable_classes: Vec<usize>,
    pub unknown_classes: Vec<usize>,
    pub matches_radical: bool,
    /// Informational: per class, whether 3 conjugates already refute
    /// suitability (`None` if undecided). Only filled when `k > 3`.
    pub refuted_with_three: Option<Vec<Option<bool>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub count: usize,
    pub orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub label: String,
    pub field: u32,
    pub realization: Option<String>,
    pub derived: bool,
    pub order: u64,
    pub expected: Entry,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub version: u32,
    pub description: String,
    pub rows: Vec<GoldenRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    Mismatch,
    SkippedOrder,
    Unrealizable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub golden: GoldenRow,
    pub status: RowStatus,
    pub observed: Option<Entry>,
    pub group: Option<GroupInfo>,
    pub verdicts: Option<RadicalElements>,
    /// For each 2-radical class, the 3-tuple search (expected to refute).
    pub three_verdicts: Vec<KRadicalVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Doc {
    pub golden_version: u32,
    pub max_order: u64,
    pub diff: String,
    pub rows: Vec<Table1Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessDoc {
    pub n: usize,
    pub scan: TripleScan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub kind: RootType,
    pub rank: usize,
    pub word: Vec<usize>,
    pub pass: bool,
    pub w_alpha1: Option<Vec<i64>>,
    pub w_inv_alpha2: Option<Vec<i64>>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCheckDoc {
    pub convention: CoxeterConvention,
    pub rows: Vec<RootRow>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub source_command: String,
    pub checks: Vec<Check>,
    pub all_ok: bool,
}

/// The report as JSON with the timing block removed.
pub fn deterministic_view(report: &Report) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("serializable");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    v
}
