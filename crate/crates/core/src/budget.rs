//! Cooperative search budgets.
//!
//! Searches call [`Budget::tick`] once per node; a budget that reports
//! exhaustion stops the search, which then returns an explicit partial result
//! or [`crate::Error::BudgetExceeded`]. Wall-clock budgets live in the std
//! companion crate.

pub trait Budget {
    /// Account for one unit of work. Returns false once the budget is spent.
    fn tick(&mut self) -> bool;
}

/// Never runs out.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    #[inline]
    fn tick(&mut self) -> bool {
        true
    }
}

/// Allows a fixed number of ticks.
#[derive(Debug, Clone, Copy)]
pub struct StepLimit {
    remaining: u64,
}

impl StepLimit {
    pub fn new(steps: u64) -> Self {
        StepLimit { remaining: steps }
    }
}

impl Budget for StepLimit {
    #[inline]
    fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    #[inline]
    fn tick(&mut self) -> bool {
        (**self).tick()
    }
}
