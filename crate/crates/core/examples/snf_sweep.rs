//! Prints the recurrence residual outcome for every index hypothesis.

use superell_core::current::{documented_sweep, hypothesis_sweep};

fn main() {
    for o in hypothesis_sweep(&documented_sweep()) {
        let first = o
            .first_counterexample
            .map(|(t, res)| format!("{t:?} -> {res}"))
            .unwrap_or_default();
        println!("{:<22} {:>3}/{} nonzero  {first}", o.hypothesis, o.nonzero, o.tuples);
    }
}
