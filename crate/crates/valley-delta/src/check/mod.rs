//! Assembles both sides of every identity and conjecture instance,
//! compares them exactly, and reports machine-readable verdicts.
//!
//! A [`Session`] owns the shared path-table cache and produces
//! [`CheckReport`]s; [`sweep`] runs whole parameter families and collects
//! the reports in deterministic order. Proved identities and conjecture
//! instances carry different classifications so exit-code policy can
//! separate "implementation bug" from "mathematical news".

mod expr;

pub use expr::parse_expr;

use std::sync::atomic::Ordering;
use std::time::Instant;

use serde::Serialize;

use crate::paths::{verify_pushing_theorem, Rules, TableCache, Touch};
use crate::symfunc::{self, delta, delta_prime, e_nk, h_perp, nabla, theta, Basis, SymError, SymF};

/// Whether a mismatch means a bug or mathematical news.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// A proved identity: a mismatch is an implementation bug.
    Proved,
    /// A conjecture instance: evidence either way.
    Conjecture,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Touch: a number, or "all".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_label: Option<usize>,
}

impl CheckParams {
    fn new(n: usize) -> Self {
        CheckParams {
            m: None,
            n,
            k: None,
            r: None,
            max_label: None,
        }
    }

    fn touch(mut self, r: Touch) -> Self {
        self.r = Some(match r {
            Touch::Exactly(v) => v.to_string(),
            Touch::All => "all".into(),
        });
        self
    }
}

/// Outcome of one check: canonical renderings of both sides, the verdict,
/// and bookkeeping counters.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub classification: Classification,
    pub params: CheckParams,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub wall_ms: u64,
    pub paths_enumerated: u64,
    pub cache_hits: u64,
}

impl CheckReport {
    pub fn one_line(&self) -> String {
        let CheckParams { m, n, k, r, .. } = &self.params;
        let mut parts = Vec::new();
        if let Some(m) = m {
            parts.push(format!("m={m}"));
        }
        parts.push(format!("n={n}"));
        if let Some(k) = k {
            parts.push(format!("k={k}"));
        }
        if let Some(r) = r {
            parts.push(format!("r={r}"));
        }
        format!(
            "{:20} {:22} {}",
            self.check,
            parts.join(" "),
            if self.equal { "equal" } else { "MISMATCH" }
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error("{0}")]
    Sym(#[from] SymError),
    #[error("{0}")]
    Arith(#[from] crate::qt::QtError),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Shared state for a batch of checks: the path-table cache and the rule
/// set under test.
pub struct Session {
    tables: TableCache,
    rules: Rules,
}

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

impl Session {
    pub fn new() -> Self {
        Session::with_rules(Rules::standard())
    }

    /// A session running under perturbed combinatorial rules; used to show
    /// the checks are sensitive to the definitions.
    pub fn with_rules(rules: Rules) -> Self {
        Session {
            tables: TableCache::new(),
            rules,
        }
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    fn counters(&self) -> (u64, u64) {
        (
            self.tables.objects_built.load(Ordering::Relaxed),
            self.tables.hits.load(Ordering::Relaxed) + symfunc::cache_stats().0,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        &self,
        check: &str,
        classification: Classification,
        params: CheckParams,
        lhs: String,
        rhs: String,
        equal: bool,
        started: Instant,
        counters: (u64, u64),
    ) -> CheckReport {
        let (paths0, hits0) = counters;
        let (paths1, hits1) = self.counters();
        CheckReport {
            check: check.into(),
            classification,
            params,
            lhs,
            rhs,
            equal,
            wall_ms: started.elapsed().as_millis() as u64,
            paths_enumerated: paths1 - paths0,
            cache_hits: hits1 - hits0,
        }
    }

    /// Theta on elementaries against the primed Delta:
    /// `Theta_{e_k} nabla e_{n-k} = Delta'_{e_{n-k-1}} e_n`.
    pub fn check_theta_en(&self, n: usize, k: usize) -> Result<CheckReport, CheckError> {
        if k >= n {
            return Err(CheckError::BadParams(format!("need k < n, got ({n},{k})")));
        }
        let t0 = Instant::now();
        let c0 = self.counters();
        let lhs = theta(&SymF::e(k), &nabla(&SymF::e(n - k))?)?.convert(Basis::Monomial)?;
        let rhs = delta_prime(&SymF::e(n - k - 1), &SymF::e(n))?.convert(Basis::Monomial)?;
        let equal = lhs == rhs;
        let mut params = CheckParams::new(n);
        params.k = Some(k);
        Ok(self.finish(
            "theta-en",
            Classification::Proved,
            params,
            lhs.to_string(),
            rhs.to_string(),
            equal,
            t0,
            c0,
        ))
    }

    /// The skewing identity: `h_m^perp Theta_{e_k} nabla E_{n-k,r}` equals
    /// the double sum over `p, i` of `t^{m-p} q^C(i,2) [r-p+i,i]_q
    /// [r,p-i]_q Delta_{h_{m-p}} Theta_{e_{k-i}} nabla E_{n-m-(k-i),r-p+i}`.
    pub fn check_sf_identity(
        &self,
        m: usize,
        n: usize,
        k: usize,
        r: usize,
    ) -> Result<CheckReport, CheckError> {
        if k >= n {
            return Err(CheckError::BadParams(format!("need k < n, got ({n},{k})")));
        }
        let t0 = Instant::now();
        let c0 = self.counters();
        let lhs = h_perp(m, &theta(&SymF::e(k), &nabla(&e_nk((n - k) as i64, r as i64)?)?)?)?
            .convert(Basis::Monomial)?;
        let mut rhs = SymF::zero(Basis::Monomial);
        for p in 0..=m {
            for i in 0..=p.min(k) {
                let interlace = crate::qt::q_binomial(r as i64 - p as i64 + i as i64, i as i64);
                let choose = crate::qt::q_binomial(r as i64, p as i64 - i as i64);
                if interlace.is_zero() || choose.is_zero() {
                    continue;
                }
                let e = e_nk(
                    n as i64 - m as i64 - (k as i64 - i as i64),
                    r as i64 - p as i64 + i as i64,
                )?;
                if e.is_zero() {
                    continue;
                }
                let term = delta(&SymF::h(m - p), &theta(&SymF::e(k - i), &nabla(&e)?)?)?;
                let scale = crate::qt::QtPoly::monomial(
                    (i * i.saturating_sub(1) / 2) as u32,
                    (m - p) as u32,
                    1,
                );
                let coef: crate::qt::QtRational = (&(&scale * &interlace) * &choose).into();
                rhs = rhs.add(&term.scalar_mul(&coef))?;
            }
        }
        let rhs = rhs.convert(Basis::Monomial)?;
        let equal = lhs == rhs;
        let mut params = CheckParams::new(n).touch(Touch::Exactly(r));
        params.m = Some(m);
        params.k = Some(k);
        Ok(self.finish(
            "sf-identity",
            Classification::Proved,
            params,
            lhs.to_string(),
            rhs.to_string(),
            equal,
            t0,
            c0,
        ))
    }

    /// The pushing identity over paths, with alphabet `n + 1`.
    pub fn check_pushing(
        &self,
        m: usize,
        n: usize,
        k: usize,
        r: usize,
    ) -> Result<CheckReport, CheckError> {
        let t0 = Instant::now();
        let c0 = self.counters();
        let outcome = verify_pushing_theorem(m, n, k, r, n as u8 + 1, &self.tables, self.rules);
        let mut params = CheckParams::new(n).touch(Touch::Exactly(r));
        params.m = Some(m);
        params.k = Some(k);
        params.max_label = Some(n + 1);
        Ok(self.finish(
            "pushing",
            Classification::Proved,
            params,
            outcome.lhs.to_string(),
            outcome.rhs.to_string(),
            outcome.equal,
            t0,
            c0,
        ))
    }

    /// Valley Delta conjecture (touch-refined or summed): symbolic side
    /// against the generating polynomial of `LD(n)^{.k}` in `n` variables.
    pub fn check_valley_delta(
        &self,
        n: usize,
        k: usize,
        r: Touch,
    ) -> Result<CheckReport, CheckError> {
        if k >= n {
            return Err(CheckError::BadParams(format!("need k < n, got ({n},{k})")));
        }
        let t0 = Instant::now();
        let c0 = self.counters();
        let sym = match r {
            Touch::All => delta_prime(&SymF::e(n - k - 1), &SymF::e(n))?,
            Touch::Exactly(r) => theta(&SymF::e(k), &nabla(&e_nk((n - k) as i64, r as i64)?)?)?,
        };
        let lhs = sym.to_xpoly(n)?;
        let rhs = self
            .tables
            .labelled(0, n, n as u8, self.rules)
            .genpoly(k, r);
        let equal = lhs == rhs;
        let mut params = CheckParams::new(n).touch(r);
        params.k = Some(k);
        Ok(self.finish(
            "valley-delta",
            if k == 0 {
                Classification::Proved
            } else {
                Classification::Conjecture
            },
            params,
            lhs.to_string(),
            rhs.to_string(),
            equal,
            t0,
            c0,
        ))
    }

    /// Generalised valley Delta conjecture: zero labels allowed,
    /// `Delta_{h_m}` on the symbolic side.
    pub fn check_generalised(
        &self,
        m: usize,
        n: usize,
        k: usize,
        r: Touch,
    ) -> Result<CheckReport, CheckError> {
        if k >= n {
            return Err(CheckError::BadParams(format!("need k < n, got ({n},{k})")));
        }
        let t0 = Instant::now();
        let c0 = self.counters();
        let inner = match r {
            Touch::All => delta_prime(&SymF::e(n - k - 1), &SymF::e(n))?,
            Touch::Exactly(r) => theta(&SymF::e(k), &nabla(&e_nk((n - k) as i64, r as i64)?)?)?,
        };
        let lhs = delta(&SymF::h(m), &inner)?.to_xpoly(n)?;
        let rhs = self
            .tables
            .labelled(m, n, n as u8, self.rules)
            .genpoly(k, r);
        let equal = lhs == rhs;
        let mut params = CheckParams::new(n).touch(r);
        params.m = Some(m);
        params.k = Some(k);
        Ok(self.finish(
            "generalised",
            if k == 0 {
                Classification::Proved
            } else {
                Classification::Conjecture
            },
            params,
            lhs.to_string(),
            rhs.to_string(),
            equal,
            t0,
            c0,
        ))
    }

    /// The skewing/selection bridge, independent of any conjecture:
    /// `h_m^perp` of the symmetrised generating polynomial equals the
    /// maximal-label restricted sum, over alphabet `n + 1`.
    pub fn check_hperp_combinatorial(
        &self,
        m: usize,
        n: usize,
        k: usize,
        r: usize,
    ) -> Result<CheckReport, CheckError> {
        let t0 = Instant::now();
        let c0 = self.counters();
        let max_label = n as u8 + 1;
        let gen = self
            .tables
            .labelled(0, n, max_label, self.rules)
            .genpoly(k, Touch::Exactly(r));
        let symmetrised = SymF::from_xpoly(&gen)?;
        let lhs = h_perp(m, &symmetrised)?.to_xpoly(n)?;
        let rhs = self
            .tables
            .maxlabel(n, max_label, self.rules)
            .genpoly(k, r, m);
        let equal = lhs == rhs;
        let mut params = CheckParams::new(n).touch(Touch::Exactly(r));
        params.m = Some(m);
        params.k = Some(k);
        params.max_label = Some(n + 1);
        Ok(self.finish(
            "hperp-combinatorial",
            Classification::Proved,
            params,
            lhs.to_string(),
            rhs.to_string(),
            equal,
            t0,
            c0,
        ))
    }
}

/// Which checks a sweep runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    ThetaEn,
    SfIdentity,
    Pushing,
    ValleyDelta,
    Generalised,
    HperpCombinatorial,
}

impl CheckKind {
    pub fn all() -> [CheckKind; 6] {
        [
            CheckKind::ThetaEn,
            CheckKind::SfIdentity,
            CheckKind::Pushing,
            CheckKind::ValleyDelta,
            CheckKind::Generalised,
            CheckKind::HperpCombinatorial,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::ThetaEn => "theta-en",
            CheckKind::SfIdentity => "sf-identity",
            CheckKind::Pushing => "pushing",
            CheckKind::ValleyDelta => "valley-delta",
            CheckKind::Generalised => "generalised",
            CheckKind::HperpCombinatorial => "hperp-combinatorial",
        }
    }

    pub fn parse(s: &str) -> Option<CheckKind> {
        CheckKind::all().into_iter().find(|k| k.name() == s)
    }
}

/// Default size budgets: enumeration checks up to total size 6, symbolic
/// checks up to degree 5.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;
pub const DEFAULT_SYMBOLIC_LIMIT: usize = 5;

/// Run every selected check over all admissible parameter tuples within
/// the size budgets, in deterministic parameter order. Per-tuple errors
/// (e.g. degree-bound refusals) abort the sweep — they indicate misuse,
/// not mathematical findings.
pub fn sweep(
    session: &Session,
    enumeration_limit: usize,
    symbolic_limit: usize,
    kinds: &[CheckKind],
) -> Result<Vec<CheckReport>, CheckError> {
    let mut out = Vec::new();
    let mut kinds = kinds.to_vec();
    kinds.sort();
    kinds.dedup();
    for kind in kinds {
        match kind {
            CheckKind::ThetaEn => {
                for n in 1..=symbolic_limit {
                    for k in 0..n {
                        out.push(session.check_theta_en(n, k)?);
                    }
                }
            }
            CheckKind::SfIdentity => {
                for n in 1..=symbolic_limit {
                    for m in 0..=symbolic_limit.saturating_sub(n) {
                        for k in 0..n {
                            for r in 0..=n - k {
                                out.push(session.check_sf_identity(m, n, k, r)?);
                            }
                        }
                    }
                }
            }
            CheckKind::Pushing => {
                for n in 1..=enumeration_limit {
                    for m in 0..=n.min(enumeration_limit.saturating_sub(n)) {
                        for k in 0..n {
                            for r in 0..=n {
                                out.push(session.check_pushing(m, n, k, r)?);
                            }
                        }
                    }
                }
            }
            CheckKind::ValleyDelta => {
                for n in 1..=symbolic_limit {
                    for k in 0..n {
                        out.push(session.check_valley_delta(n, k, Touch::All)?);
                        for r in 0..=n - k {
                            out.push(session.check_valley_delta(n, k, Touch::Exactly(r))?);
                        }
                    }
                }
            }
            CheckKind::Generalised => {
                for n in 1..=symbolic_limit {
                    for m in 0..=symbolic_limit.saturating_sub(n) {
                        for k in 0..n {
                            out.push(session.check_generalised(m, n, k, Touch::All)?);
                            for r in 0..=n - k {
                                out.push(session.check_generalised(m, n, k, Touch::Exactly(r))?);
                            }
                        }
                    }
                }
            }
            CheckKind::HperpCombinatorial => {
                for n in 1..=symbolic_limit {
                    for m in 0..=n.min(symbolic_limit.saturating_sub(n)) {
                        for k in 0..n {
                            for r in 0..=n {
                                out.push(session.check_hperp_combinatorial(m, n, k, r)?);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exit-code policy: 0 all equal; 1 a proved identity failed; 2 only
/// conjecture instances failed and the caller asked for advisory
/// treatment.
pub fn exit_code(reports: &[CheckReport], conjectures_advisory: bool) -> i32 {
    let proved_failure = reports
        .iter()
        .any(|r| !r.equal && r.classification == Classification::Proved);
    let conjecture_failure = reports
        .iter()
        .any(|r| !r.equal && r.classification == Classification::Conjecture);
    if proved_failure {
        1
    } else if conjecture_failure {
        if conjectures_advisory {
            2
        } else {
            1
        }
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_en_small() {
        let s = Session::new();
        let r = s.check_theta_en(1, 0).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, "m[1]");
        let r = s.check_theta_en(3, 1).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
        assert!(s.check_theta_en(2, 2).is_err());
    }

    #[test]
    fn sf_identity_degenerate_and_small() {
        let s = Session::new();
        // m = 0 collapses to the p = 0, i = 0 term.
        let r = s.check_sf_identity(0, 2, 0, 1).unwrap();
        assert!(r.equal);
        let r = s.check_sf_identity(1, 2, 0, 1).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
    }

    #[test]
    fn pushing_small() {
        let s = Session::new();
        let r = s.check_pushing(1, 2, 0, 1).unwrap();
        assert!(r.equal);
        assert_eq!(r.params.max_label, Some(3));
    }

    #[test]
    fn valley_delta_small() {
        let s = Session::new();
        let r = s.check_valley_delta(1, 0, Touch::Exactly(1)).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, "x1");
        assert_eq!(r.classification, Classification::Proved);
        // The shuffle case n=2, all touches.
        let r = s.check_valley_delta(2, 0, Touch::All).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, "x1^2 + (1 + q + t)*x1*x2 + x2^2");
        // k >= 1 instances are conjecture evidence.
        let r = s.check_valley_delta(2, 1, Touch::All).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
        assert_eq!(r.classification, Classification::Conjecture);
    }

    #[test]
    fn generalised_small() {
        let s = Session::new();
        let r = s.check_generalised(1, 2, 0, Touch::All).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
        // m = 0 must agree with the plain valley check.
        let a = s.check_generalised(0, 2, 1, Touch::All).unwrap();
        let b = s.check_valley_delta(2, 1, Touch::All).unwrap();
        assert_eq!(a.lhs, b.lhs);
        assert_eq!(a.rhs, b.rhs);
    }

    #[test]
    fn hperp_combinatorial_small() {
        let s = Session::new();
        // m = 0: both sides are the generating polynomial in n variables.
        let r = s.check_hperp_combinatorial(0, 2, 0, 2).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
        let r = s.check_hperp_combinatorial(1, 2, 0, 1).unwrap();
        assert!(r.equal, "lhs={} rhs={}", r.lhs, r.rhs);
    }

    #[test]
    fn sweep_zero_budget_is_vacuous() {
        let s = Session::new();
        let reports = sweep(&s, 0, 0, &CheckKind::all()).unwrap();
        assert!(reports.is_empty());
        assert_eq!(exit_code(&reports, false), 0);
    }

    #[test]
    fn sweep_small_is_all_equal_and_deterministic() {
        let s = Session::new();
        let reports = sweep(&s, 2, 2, &CheckKind::all()).unwrap();
        assert!(!reports.is_empty());
        let failures: Vec<String> = reports
            .iter()
            .filter(|r| !r.equal)
            .map(|r| r.one_line())
            .collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let again = sweep(&s, 2, 2, &CheckKind::all()).unwrap();
        let a: Vec<_> = reports.iter().map(|r| (&r.lhs, &r.rhs)).collect();
        let b: Vec<_> = again.iter().map(|r| (&r.lhs, &r.rhs)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn perturbed_rules_break_a_sweep() {
        let s = Session::with_rules(Rules::perturbed_dinv_penalty());
        let reports = sweep(&s, 3, 3, &[CheckKind::Pushing, CheckKind::ValleyDelta]).unwrap();
        assert!(reports.iter().any(|r| !r.equal));
        assert_eq!(exit_code(&reports, false), 1);
    }

    #[test]
    fn exit_codes() {
        let s = Session::new();
        let mut ok = s.check_theta_en(2, 0).unwrap();
        assert_eq!(exit_code(std::slice::from_ref(&ok), false), 0);
        ok.equal = false;
        assert_eq!(exit_code(std::slice::from_ref(&ok), true), 1);
        let mut conj = s.check_valley_delta(2, 1, Touch::All).unwrap();
        conj.equal = false;
        assert_eq!(exit_code(std::slice::from_ref(&conj), true), 2);
        assert_eq!(exit_code(std::slice::from_ref(&conj), false), 1);
        let both = vec![ok, conj];
        assert_eq!(exit_code(&both, true), 1);
    }

    #[test]
    fn reports_serialise_to_json_lines() {
        let s = Session::new();
        let r = s.check_theta_en(2, 1).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"check\":\"theta-en\""));
        assert!(json.contains("\"equal\":true"));
    }
}
