//! Closed forms against the brute-force oracle on every instance small enough
//! to simulate.

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::combinatorics::{frac, ExactRational};
use crate::dephasing::{qfi_lower_bound_dephasing, z_sums};
use crate::erasure::{lemma1_blocks, qfi_lower_bound_erasure};
use crate::error::Result;
use crate::oracle::{self, OracleDensity};
use crate::probe::GnuParams;
use crate::render::to_f64;

/// Largest qubit count the verification loops visit.
pub const VERIFY_MAX_QUBITS: u64 = 12;
pub const FORMULA_RTOL: f64 = 1e-9;
pub const STRUCTURE_ATOL: f64 = 1e-12;
/// Slack allowed when checking a lower bound against the float QFI.
pub const VALIDITY_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyScope {
    Erasure,
    Dephasing,
    Identities,
    All,
}

impl VerifyScope {
    fn covers(&self, other: VerifyScope) -> bool {
        *self == VerifyScope::All || *self == other
    }
}

/// Outcome of one family of comparisons.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    /// Worst observed error (relative, or absolute for structural checks).
    pub max_error: f64,
    pub tolerance: f64,
    /// One line per failing instance, naming it and both values.
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            instances: 0,
            max_error: 0.0,
            tolerance,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, instance: String, err: f64, detail: impl FnOnce() -> String) {
        self.instances += 1;
        self.max_error = self.max_error.max(err);
        // NaN must count as a failure
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(err <= self.tolerance) {
            self.failures.push(format!("{instance}: {}", detail()));
        }
    }

    fn fail(&mut self, instance: String, why: String) {
        self.instances += 1;
        self.max_error = f64::INFINITY;
        self.failures.push(format!("{instance}: {why}"));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// `|a - b| / max(|a|, |b|, 1)`: relative for the sizes of interest, absolute
/// for values that are exactly zero in exact arithmetic.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// `(g, n, t)` with `n >= 2`, `1 <= t < min(g, n)` and `g n <= max_qubits`.
pub fn erasure_instances(max_qubits: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n in 2..=max_qubits {
        for g in 1..=max_qubits / n {
            for t in 1..g.min(n) {
                out.push((g, n, t));
            }
        }
    }
    out
}

/// `(g, n)` with `2 g n <= max_qubits`.
pub fn dephasing_instances(max_qubits: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 1..=max_qubits / 2 {
        for g in 1..=max_qubits / (2 * n) {
            out.push((g, n));
        }
    }
    out
}

pub fn dephasing_lambdas() -> Vec<ExactRational> {
    vec![frac(0, 1), frac(1, 4), frac(1, 2), frac(3, 4), frac(1, 1)]
}

fn erasure_state(g: u64, n: u64) -> Result<oracle::OracleState> {
    oracle::build_state(GnuParams::new(g, n, 1)?)
}

/// Erasure closed form versus the dense oracle commutator norm.
pub fn check_erasure_formula(instances: &[(u64, u64, u64)]) -> CheckResult {
    let mut c = CheckResult::new("erasure bound == oracle ||[rho,H]||_2^2", FORMULA_RTOL);
    for &(g, n, t) in instances {
        let inst = format!("g={g} n={n} t={t}");
        let run = || -> Result<(f64, f64)> {
            let exact = to_f64(&qfi_lower_bound_erasure(g, n, t)?);
            let rho = oracle::partial_trace(&erasure_state(g, n)?, t as usize)?;
            Ok((exact, oracle::commutator_bound(&rho)?))
        };
        match run() {
            Ok((a, b)) => c.record(inst, relative_error(a, b), || format!("formula {a} vs oracle {b}")),
            Err(e) => c.fail(inst, e.to_string()),
        }
    }
    c
}

/// Structured partial-trace form versus the explicit partial trace, entrywise.
pub fn check_block_structure(instances: &[(u64, u64, u64)]) -> CheckResult {
    let mut c = CheckResult::new("structured partial trace == oracle partial trace", STRUCTURE_ATOL);
    for &(g, n, t) in instances {
        let inst = format!("g={g} n={n} t={t}");
        let run = || -> Result<f64> {
            let rebuilt = oracle::reconstruct_partial_trace(&lemma1_blocks(g, n, t)?)?;
            let direct = oracle::partial_trace(&erasure_state(g, n)?, t as usize)?.to_dense()?;
            Ok((rebuilt - direct).amax())
        };
        match run() {
            Ok(e) => c.record(inst, e, || format!("max entry difference {e}")),
            Err(e) => c.fail(inst, e.to_string()),
        }
    }
    c
}

fn validity_error(bound: f64, qfi: f64) -> f64 {
    // zero when bound <= qfi; otherwise the relative excess
    ((bound - qfi) / qfi.abs().max(1e-300)).max(0.0)
}

/// Erasure closed form against the exact SLD QFI.
pub fn check_erasure_validity(instances: &[(u64, u64, u64)]) -> CheckResult {
    let mut c = CheckResult::new("erasure bound <= oracle SLD QFI", VALIDITY_RTOL);
    for &(g, n, t) in instances {
        let inst = format!("g={g} n={n} t={t}");
        let run = || -> Result<(f64, f64)> {
            let bound = to_f64(&qfi_lower_bound_erasure(g, n, t)?);
            let mx = oracle::partial_trace_mixture(&erasure_state(g, n)?, t as usize)?;
            Ok((bound, oracle::exact_qfi(&OracleDensity::Mixture(mx))?))
        };
        match run() {
            Ok((b, q)) => c.record(inst, validity_error(b, q), || format!("bound {b} exceeds QFI {q}")),
            Err(e) => c.fail(inst, e.to_string()),
        }
    }
    c
}

fn dephased(g: u64, n: u64, lambda: &ExactRational) -> Result<OracleDensity> {
    let s = oracle::build_state(GnuParams::new(g, n, 2)?)?;
    Ok(OracleDensity::Mixture(oracle::apply_single_error_dephasing(&s, to_f64(lambda))?))
}

/// Single-error dephasing closed form versus the oracle commutator norm.
pub fn check_dephasing_formula(instances: &[(u64, u64)], lambdas: &[ExactRational]) -> CheckResult {
    let mut c = CheckResult::new("dephasing bound == oracle ||[w,H]||_2^2", FORMULA_RTOL);
    for &(g, n) in instances {
        for l in lambdas {
            let inst = format!("g={g} n={n} lambda={}", crate::render::to_decimal(l));
            let run = || -> Result<(f64, f64)> {
                let exact = to_f64(&qfi_lower_bound_dephasing(g, n, l)?);
                Ok((exact, oracle::commutator_bound(&dephased(g, n, l)?)?))
            };
            match run() {
                Ok((a, b)) => c.record(inst, relative_error(a, b), || format!("formula {a} vs oracle {b}")),
                Err(e) => c.fail(inst, e.to_string()),
            }
        }
    }
    c
}

pub fn check_dephasing_validity(instances: &[(u64, u64)], lambdas: &[ExactRational]) -> CheckResult {
    let mut c = CheckResult::new("dephasing bound <= oracle SLD QFI", VALIDITY_RTOL);
    for &(g, n) in instances {
        for l in lambdas {
            let inst = format!("g={g} n={n} lambda={}", crate::render::to_decimal(l));
            let run = || -> Result<(f64, f64)> {
                let bound = to_f64(&qfi_lower_bound_dephasing(g, n, l)?);
                Ok((bound, oracle::exact_qfi(&dephased(g, n, l)?)?))
            };
            match run() {
                Ok((b, q)) => c.record(inst, validity_error(b, q), || format!("bound {b} exceeds QFI {q}")),
                Err(e) => c.fail(inst, e.to_string()),
            }
        }
    }
    c
}

/// Closed-form index sums versus literal enumeration, exactly.
pub fn check_z_sums(instances: &[(u64, u64)]) -> CheckResult {
    let mut c = CheckResult::new("index-sum closed forms == enumeration (exact)", 0.0);
    for &(g, n) in instances {
        let inst = format!("g={g} n={n}");
        let run = || -> Result<bool> {
            let closed = z_sums(g, n)?;
            let brute = oracle::enumerate_z_sums(g as usize, n as usize)?;
            Ok(closed == brute)
        };
        match run() {
            Ok(true) => c.record(inst, 0.0, String::new),
            Ok(false) => c.fail(inst, "closed form differs from enumeration".into()),
            Err(e) => c.fail(inst, e.to_string()),
        }
    }
    c
}

pub const IDENTITY_DIMS: [usize; 4] = [2, 4, 8, 16];

/// `triples` random Hermitian triples per dimension, from a fixed seed.
pub fn check_identities(triples: usize, seed: u64) -> CheckResult {
    let mut c = CheckResult::new("Hermitian commutator trace identities", FORMULA_RTOL);
    let mut rng = StdRng::seed_from_u64(seed);
    for dim in IDENTITY_DIMS {
        for k in 0..triples {
            let a = oracle::random_hermitian(dim, &mut rng);
            let b = oracle::random_hermitian(dim, &mut rng);
            let m = oracle::random_hermitian(dim, &mut rng);
            let inst = format!("dim={dim} triple={k}");
            let scale = oracle::identities::identity_scale(&a, &b, &m);
            match oracle::hermitian_identity_check(&a, &b, &m) {
                Ok(r) => {
                    let err = r.relative_error(scale);
                    c.record(inst, err, || format!("{r:?}"));
                }
                Err(e) => c.fail(inst, e.to_string()),
            }
        }
    }
    c
}

/// Run the suite for `scope` over all instances with at most 12 qubits.
pub fn run_verification(scope: VerifyScope) -> VerifyReport {
    let mut report = VerifyReport::default();
    if scope.covers(VerifyScope::Erasure) {
        let inst = erasure_instances(VERIFY_MAX_QUBITS);
        report.checks.push(check_erasure_formula(&inst));
        report.checks.push(check_block_structure(&inst));
        report.checks.push(check_erasure_validity(&inst));
    }
    if scope.covers(VerifyScope::Dephasing) {
        let inst = dephasing_instances(VERIFY_MAX_QUBITS);
        let lambdas = dephasing_lambdas();
        report.checks.push(check_dephasing_formula(&inst, &lambdas));
        report.checks.push(check_z_sums(&inst));
        report.checks.push(check_dephasing_validity(&inst, &lambdas));
    }
    if scope.covers(VerifyScope::Identities) {
        report.checks.push(check_identities(100, 0x5eed));
    }
    report
}
