#![allow(dead_code)]

use std::io::Write;
use std::sync::OnceLock;
use std::thread;

use proofcount::{Formula, Logic, Mode};

/// Every formula built from `a`, `b`, `->`, `/\` and `\/` with at most
/// `max_size` nodes, smallest first.
pub fn formulas_up_to(max_size: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    for k in 1..=max_size {
        let mut out = Vec::new();
        if k == 1 {
            out.push(Formula::atom("a"));
            out.push(Formula::atom("b"));
        }
        for left in 1..k.saturating_sub(1) {
            let right = k - 1 - left;
            for l in &by_size[left] {
                for r in &by_size[right] {
                    out.push(Formula::implies(l.clone(), r.clone()));
                    out.push(Formula::and(l.clone(), r.clone()));
                    out.push(Formula::or(l.clone(), r.clone()));
                }
            }
        }
        by_size[k] = out;
    }
    by_size.concat()
}

pub fn corpus() -> &'static [Formula] {
    static CORPUS: OnceLock<Vec<Formula>> = OnceLock::new();
    CORPUS.get_or_init(|| formulas_up_to(7))
}

pub const LOGICS: [Logic; 3] = [Logic::Classical, Logic::Intuitionistic, Logic::Minimal];

pub fn eta_modes() -> impl Iterator<Item = Mode> {
    LOGICS.into_iter().map(|l| Mode::new(l, true))
}

/// Maps `f` over `items` on all cores, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(|| part.iter().map(&f).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

/// Writes straight to the process stdout so the line survives test output
/// capture.
pub fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}
