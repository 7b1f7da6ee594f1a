//! Multi-threaded drivers over the core searches. Results never depend on
//! the number of workers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use semiheap_core::budget::Budget;
use semiheap_core::enumeration::{self, Enumeration, SearchOptions};
use semiheap_core::semiheap::first_para_associativity_failure;
use semiheap_core::{TernaryTable, Violation};

/// Wall-clock budget; the clock is read once every 1024 ticks.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    end: Option<Instant>,
    ticks: u32,
    expired: bool,
}

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        Deadline { end: Instant::now().checked_add(limit), ticks: 0, expired: false }
    }

    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) => Self::after(Duration::from_secs_f64(s.max(0.0))),
            None => Deadline { end: None, ticks: 0, expired: false },
        }
    }
}

impl Budget for Deadline {
    fn tick(&mut self) -> bool {
        if self.expired {
            return false;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 1024 == 1 {
            if let Some(end) = self.end {
                self.expired = Instant::now() >= end;
            }
        }
        !self.expired
    }
}

fn run_indexed<T: Send>(count: usize, jobs: usize, work: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let slots: Vec<Mutex<Option<T>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, count.max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let value = work(i);
                *slots[i].lock().expect("no worker panics while holding a slot") = Some(value);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().expect("unpoisoned").expect("every slot filled")).collect()
}

/// The enumeration split on the first free cell, one branch per task.
pub fn enumerate(n: usize, options: SearchOptions, jobs: usize, deadline: Deadline) -> Enumeration {
    let branches = enumeration::branch_count(n, options.kind);
    if jobs <= 1 || branches <= 1 {
        let mut budget = deadline;
        return enumeration::enumerate_semiheaps(n, options, &mut budget);
    }
    let parts = run_indexed(branches, jobs, |v| {
        let mut budget = deadline;
        enumeration::enumerate_branch(n, options, v, &mut budget)
    });
    enumeration::merge(n, options, parts)
}

/// Lexicographically first para-associativity failure, scanning `x1`
/// values in parallel.
pub fn para_associativity_failure(table: &TernaryTable, jobs: usize) -> Option<Violation> {
    let n = table.order();
    if jobs <= 1 || n < 2 {
        return first_para_associativity_failure(table, 0..n);
    }
    run_indexed(n, jobs, |x1| first_para_associativity_failure(table, x1..x1 + 1)).into_iter().flatten().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use semiheap_core::budget::Unlimited;

    #[test]
    fn parallel_enumeration_matches_sequential() {
        for n in 0..=3 {
            let options = SearchOptions::default();
            let seq = enumeration::enumerate_semiheaps(n, options, &mut Unlimited);
            let par = enumerate(n, options, 3, Deadline::from_secs(None));
            assert_eq!(seq.tables, par.tables);
            assert_eq!((seq.count, seq.iso_count), (par.count, par.iso_count));
        }
    }

    #[test]
    fn parallel_law_check_finds_the_first_failure() {
        let t = TernaryTable::from_fn(3, |_, y, _| y).unwrap();
        assert_eq!(para_associativity_failure(&t, 4), first_para_associativity_failure(&t, 0..3));
    }

    #[test]
    fn zero_deadline_stops_immediately() {
        let mut d = Deadline::after(Duration::ZERO);
        assert!(!d.tick());
    }
}
