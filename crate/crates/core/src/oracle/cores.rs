//! Cores over every removal order.
//!
//! A state is the set of removed objects (vertices), so each reachable
//! subcategory (subcomplex) is examined once no matter how many orders lead
//! to it. Minimal states are grouped into isomorphism classes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{Budget, OracleConfig, OracleError};
use crate::category::AcyclicCategory;
use crate::delta::DeltaComplex;

fn explore<T, B: Budget>(
    n: usize,
    budget: &mut B,
    restrict: impl Fn(u64) -> T,
    reducible: impl Fn(&T) -> Vec<usize>,
    isomorphic: impl Fn(&T, &T) -> bool,
) -> Result<Vec<T>, OracleError> {
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![0u64];
    let mut classes: Vec<T> = Vec::new();
    seen.insert(0u64);
    while let Some(removed) = stack.pop() {
        budget.charge(1)?;
        let current = restrict(removed);
        let moves = reducible(&current);
        if moves.is_empty() {
            if !classes.iter().any(|c| isomorphic(c, &current)) {
                classes.push(current);
            }
            continue;
        }
        for i in moves {
            debug_assert!(i < n);
            let next = removed | 1 << i;
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok(classes)
}

/// Representatives of the isomorphism classes of cores reached by removing
/// beat objects in every possible order.
pub fn all_orders_cores_cat<B: Budget>(
    cat: &AcyclicCategory,
    config: &OracleConfig,
    budget: &mut B,
) -> Result<Vec<AcyclicCategory>, OracleError> {
    let n = cat.object_count();
    if n > config.max_objects || n > 63 {
        return Err(OracleError::TooLarge { size: n, bound: config.max_objects });
    }
    explore(
        n,
        budget,
        |removed| cat.full_subcategory(|x| removed >> x.0 & 1 == 0),
        |sub| {
            sub.object_ids()
                .filter(|&x| sub.find_beat(x).is_some())
                .map(|x| cat.object_by_name(sub.object_name(x)).expect("subcategory object").0)
                .collect()
        },
        |a, b| a.isomorphism_to(b).is_some(),
    )
}

/// Representatives of the isomorphism classes of cores reached by removing
/// dominated vertices in every possible order.
pub fn all_orders_cores_delta<B: Budget>(
    x: &DeltaComplex,
    config: &OracleConfig,
    budget: &mut B,
) -> Result<Vec<DeltaComplex>, OracleError> {
    let n = x.vertex_count();
    if n > config.max_vertices || n > 63 {
        return Err(OracleError::TooLarge { size: n, bound: config.max_vertices });
    }
    if n == 0 {
        return Err(OracleError::EmptyComplex);
    }
    explore(
        n,
        budget,
        |removed| x.subcomplex(|s| x.vertex_set(s).iter().all(|v| removed >> v.0 & 1 == 0)),
        |sub| {
            sub.vertices()
                .filter(|&v| sub.find_domination(v).is_some())
                .map(|v| x.by_name(sub.name(v)).expect("subcomplex vertex").0)
                .collect()
        },
        |a, b| a.isomorphism_to(b).is_some(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{StepLimit, Unlimited};

    #[test]
    fn chain_has_the_point_as_only_core() {
        let cores = all_orders_cores_cat(&fixtures::chain3(), &OracleConfig::default(), &mut Unlimited).unwrap();
        assert_eq!(cores.len(), 1);
        assert_eq!(cores[0].object_count(), 1);
    }

    #[test]
    fn circle_category_is_its_own_core() {
        let s1 = fixtures::circle_category();
        let cores = all_orders_cores_cat(&s1, &OracleConfig::default(), &mut Unlimited).unwrap();
        assert_eq!(cores, [s1]);
    }

    #[test]
    fn complexes() {
        let cores =
            all_orders_cores_delta(&fixtures::full_triangle(), &OracleConfig::default(), &mut Unlimited).unwrap();
        assert_eq!(cores.len(), 1);
        assert_eq!(cores[0].simplex_count(), 1);
        let s2 = fixtures::sphere_complex();
        assert_eq!(all_orders_cores_delta(&s2, &OracleConfig::default(), &mut Unlimited).unwrap(), [s2]);
    }

    #[test]
    fn bounds_and_budgets_are_enforced() {
        let tiny = OracleConfig { max_objects: 2, max_vertices: 2 };
        assert_eq!(all_orders_cores_cat(&fixtures::chain3(), &tiny, &mut Unlimited).unwrap_err().tag(), "TooLarge");
        let err = all_orders_cores_delta(
            &fixtures::disc_complex(),
            &OracleConfig::default(),
            &mut StepLimit { remaining: 1 },
        );
        assert_eq!(err.unwrap_err().tag(), "BudgetExceeded");
    }
}
