//! Packing and covering indices, thickness, partitions, homotheties and
//! Følner boxes, with checks tying them to the densities.

mod checks;
mod index;
mod partition;
mod search;

pub use checks::{
    di_nasso_lupini_check, ergo_sum_check, finitely_representable, folner_set, homothety_witness,
    is_right_thick, set_algebra, t92_check, FolnerBox, Homothety, T92Report,
};
pub use index::{covering_number, packing_index};
pub use partition::{brs_bound, partition_analyze, CellReport, ConjugateCover, PartitionReport};

use crate::grp::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PackValue {
    Exact(usize),
    /// At least this many disjoint translates exist.
    AtLeast(usize),
}

impl PackValue {
    /// The proven lower bound.
    pub fn lower(&self) -> usize {
        match *self {
            PackValue::Exact(k) | PackValue::AtLeast(k) => k,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            PackValue::Exact(k) => Some(k),
            PackValue::AtLeast(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackResult {
    pub value: PackValue,
    /// Points `F` whose translates `xA` are pairwise disjoint.
    pub witness: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovValue {
    Exact(usize),
    /// A cover of this size exists; optimality was not proven.
    AtMost(usize),
    /// No finite set of translates covers the group.
    Infinite,
}

impl CovValue {
    /// The proven upper bound, if finite.
    pub fn upper(&self) -> Option<usize> {
        match *self {
            CovValue::Exact(k) | CovValue::AtMost(k) => Some(k),
            CovValue::Infinite => None,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            CovValue::Exact(k) => Some(k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovResult {
    pub value: CovValue,
    /// Points `F` with `FA` equal to the group; empty when infinite.
    pub witness: Vec<Element>,
}
