//! Wall-clock budgets for the oracles.

use std::time::{Duration, Instant};

use collapsar_core::oracle::{Budget, BudgetExceeded};

/// Environment variable overriding the per-call budget, in seconds.
pub const BUDGET_ENV: &str = "COLLAPSAR_BUDGET_SECS";

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

/// Runs out once a fixed instant has passed. The clock is read every
/// `CHECK_EVERY` charged steps to keep charging cheap.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Instant,
    until_check: u64,
}

const CHECK_EVERY: u64 = 256;

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        Deadline { end: Instant::now() + limit, until_check: 0 }
    }

    /// A deadline of `COLLAPSAR_BUDGET_SECS` seconds (fractions allowed),
    /// or ten seconds when the variable is unset or unreadable.
    pub fn from_env() -> Self {
        Self::after(budget_from(std::env::var(BUDGET_ENV).ok().as_deref()))
    }
}

pub fn budget_from(value: Option<&str>) -> Duration {
    value
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|s| s.is_finite() && *s >= 0.0)
        .map_or(DEFAULT_BUDGET, Duration::from_secs_f64)
}

impl Budget for Deadline {
    fn charge(&mut self, steps: u64) -> Result<(), BudgetExceeded> {
        if self.until_check > steps {
            self.until_check -= steps;
            return Ok(());
        }
        self.until_check = CHECK_EVERY;
        if Instant::now() >= self.end {
            Err(BudgetExceeded)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_override() {
        assert_eq!(budget_from(None), DEFAULT_BUDGET);
        assert_eq!(budget_from(Some("2.5")), Duration::from_millis(2500));
        assert_eq!(budget_from(Some("soon")), DEFAULT_BUDGET);
        assert_eq!(budget_from(Some("-1")), DEFAULT_BUDGET);
    }

    #[test]
    fn an_expired_deadline_refuses_work() {
        let mut d = Deadline::after(Duration::ZERO);
        assert_eq!(d.charge(1), Err(BudgetExceeded));
        let mut d = Deadline::after(Duration::from_secs(3600));
        assert!((0..10_000).all(|_| d.charge(1).is_ok()));
    }
}
