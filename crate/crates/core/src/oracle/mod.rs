//! Brute-force oracles, seeded instance generators, the mapping-cylinder
//! gadgets that connect isomorphic instances, and theorem checkers.
//!
//! Everything here is exhaustive and meant for desk-scale inputs. Long
//! searches take a [`Budget`] and stop with [`OracleError::BudgetExceeded`]
//! once it runs dry.

mod cores;
mod cylinder;
mod enumerate;
mod generate;
mod theorem;

use thiserror::Error;

pub use cores::{all_orders_cores_cat, all_orders_cores_delta};
pub use cylinder::{
    cat_stage, cylinder_cat, cylinder_delta, delta_stage, verify_cat_ladder, verify_delta_ladder, CylinderCat,
    CylinderDelta, LadderReport,
};
pub use enumerate::{enumerate_delta_maps, enumerate_functors, homotopic_functors_bounded, ZigZag, ZigZagStep};
pub use generate::{random_acyclic_category, random_delta_complex, relabel_category, relabel_complex, GeneratorParams};
pub use theorem::{check_theorem, Instance, InstanceKind, TheoremError, TheoremReport, TheoremTag, Verdict};

/// Exhaustive-search sizes accepted by the all-orders oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_objects: usize,
    pub max_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_objects: 6, max_vertices: 7 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("oracle budget exhausted")]
pub struct BudgetExceeded;

/// A source of work allowance. Oracles charge it as they go.
pub trait Budget {
    fn charge(&mut self, steps: u64) -> Result<(), BudgetExceeded>;
}

/// Never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    fn charge(&mut self, _steps: u64) -> Result<(), BudgetExceeded> {
        Ok(())
    }
}

/// A fixed number of steps.
#[derive(Clone, Copy, Debug)]
pub struct StepLimit {
    pub remaining: u64,
}

impl Budget for StepLimit {
    fn charge(&mut self, steps: u64) -> Result<(), BudgetExceeded> {
        self.remaining = self.remaining.checked_sub(steps).ok_or(BudgetExceeded)?;
        Ok(())
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    fn charge(&mut self, steps: u64) -> Result<(), BudgetExceeded> {
        (**self).charge(steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    BudgetExceeded(#[from] BudgetExceeded),
    #[error("instance has {size} elements, exhaustive bound is {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("the supplied map is not an isomorphism")]
    NotIsomorphism,
    #[error("rung {rung} is outside 1..={max}")]
    RungOutOfRange { rung: usize, max: usize },
    #[error("the complex is empty")]
    EmptyComplex,
}

impl OracleError {
    pub fn tag(&self) -> &'static str {
        match self {
            OracleError::BudgetExceeded(_) => "BudgetExceeded",
            OracleError::TooLarge { .. } => "TooLarge",
            OracleError::NotIsomorphism => "NotIsomorphism",
            OracleError::RungOutOfRange { .. } => "RungOutOfRange",
            OracleError::EmptyComplex => "EmptyComplex",
        }
    }
}
