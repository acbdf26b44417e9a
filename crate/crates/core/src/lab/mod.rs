//! Checking campaigns over any [`RankOracle`](crate::rank::RankOracle).

mod checks;
mod enumeration;
mod fault;
mod report;

pub use checks::{
    check_corollary_nr, check_equivalence_theorem, check_noether_reduction, check_riemann_inequality,
    check_rr, check_rr1, check_rr2, corollary_nr_witness, witness_chain, Check, EquivalenceReport,
    Witness,
};
pub use enumeration::{default_degree_window, DivisorEnumeration, EnumerationMode, DEFAULT_CASE_CAP};
pub use fault::PerturbedOracle;
pub use report::{CaseInputs, CheckReport, Counterexample, ReportParams};
