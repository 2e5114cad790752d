//! Acceptance suite: every release-gating criterion as one test, each
//! printing a PASS line (run with `--nocapture` to see them). All
//! comparisons are exact polynomial identities; no tolerances anywhere.

use std::collections::BTreeSet;
use std::time::Instant;

use valley_delta::check::{sweep, CheckKind, Session};
use valley_delta::paths::{enumerate, genpoly, LabelledPath, Rules, TableCache, Touch};
use valley_delta::qt::{q_binomial, QtPoly, QtRational};
use valley_delta::symfunc::{e_nk, nabla, set_cache_dir, Basis, SymF};

fn init_cache() {
    // Warm-run criterion: share one on-disk cache across test processes.
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../target/htilde-cache");
    set_cache_dir(Some(dir));
}

fn pass(criterion: u32, what: &str, t0: Instant) {
    println!(
        "criterion {criterion}: PASS — {what} ({:.2?})",
        t0.elapsed()
    );
}

/// Criterion 1: the 8-row worked example validates with area 7, dinv 4,
/// touch 1 and monomial x1..x6.
#[test]
fn criterion_01_example_path_regression() {
    let t0 = Instant::now();
    let p = LabelledPath::new(
        vec![0, 1, 1, 0, 1, 2, 1, 1],
        vec![1, 2, 4, 0, 5, 6, 0, 3],
        BTreeSet::from([3, 7]),
    )
    .expect("the worked example is valid");
    assert_eq!(p.area(), 7);
    assert_eq!(p.dinv(), 4);
    assert_eq!(p.touch(), 1);
    assert_eq!(p.monomial(8).unwrap().to_string(), "x1*x2*x3*x4*x5*x6");
    assert!(t0.elapsed().as_secs() < 1);
    pass(1, "worked example: area 7, dinv 4, touch 1, x1..x6", t0);
}

/// Criterion 2: the 10-row pushing example maps to its expected image
/// with 2 deleted steps, 1 deleted decoration, and the stated area/touch
/// drops.
#[test]
fn criterion_02_pushing_regression() {
    let t0 = Instant::now();
    let p = LabelledPath::new(
        vec![0, 1, 1, 0, 0, 1, 0, 0, 0, 1],
        vec![2, 3, 4, 4, 1, 3, 4, 2, 3, 4],
        BTreeSet::from([3, 7, 9]),
    )
    .unwrap();
    let maximal = p.labels().iter().filter(|&&w| w == 4).count();
    let res = p.push();
    let expected = LabelledPath::new(
        vec![0, 1, 0, 0, 1, 0, 0, 0],
        vec![2, 3, 0, 1, 3, 2, 3, 0],
        BTreeSet::from([3, 7]),
    )
    .unwrap();
    assert_eq!(res.pushed, expected);
    assert_eq!(res.deleted_steps, 2);
    assert_eq!(res.deleted_decorations, 1);
    assert_eq!(
        p.area() - res.pushed.area(),
        (maximal - res.deleted_steps) as u64
    );
    assert_eq!(
        p.touch() - res.pushed.touch(),
        res.deleted_steps - res.deleted_decorations
    );
    assert!(t0.elapsed().as_secs() < 1);
    pass(2, "pushing example: image exact, 2 deletions, 1 decoration", t0);
}

/// Criterion 3: the pushing identity holds exactly for every tuple with
/// 0 <= m <= n <= 6, 0 <= k < n, 0 <= r <= n, alphabet n + 1 (a superset
/// of all tuples with m + n <= 6).
#[test]
fn criterion_03_pushing_theorem_full_sweep() {
    let t0 = Instant::now();
    let cache = TableCache::new();
    let mut tuples = 0u64;
    for n in 1..=6usize {
        for m in 0..=n {
            for k in 0..n {
                for r in 0..=n {
                    let out = valley_delta::paths::verify_pushing_theorem(
                        m,
                        n,
                        k,
                        r,
                        n as u8 + 1,
                        &cache,
                        Rules::standard(),
                    );
                    assert!(
                        out.equal,
                        "pushing identity fails at (m={m}, n={n}, k={k}, r={r}):\n lhs={}\n rhs={}",
                        out.lhs, out.rhs
                    );
                    tuples += 1;
                }
            }
        }
    }
    pass(
        3,
        &format!("pushing identity exact on {tuples} tuples, m <= n <= 6"),
        t0,
    );
}

/// Criterion 4: Theta on elementaries matches the primed Delta for all
/// 0 <= k < n <= 5.
#[test]
fn criterion_04_theta_en_identity() {
    init_cache();
    let t0 = Instant::now();
    let session = Session::new();
    let mut tuples = 0;
    for n in 1..=5 {
        for k in 0..n {
            let r = session.check_theta_en(n, k).unwrap();
            assert!(r.equal, "theta-en fails at (n={n}, k={k})");
            tuples += 1;
        }
    }
    pass(4, &format!("theta-en identity exact on {tuples} tuples, n <= 5"), t0);
}

/// Criterion 5: the h_m-skewing double-sum identity holds exactly for all
/// m + n <= 5 and admissible k, r.
#[test]
fn criterion_05_skewing_identity() {
    init_cache();
    let t0 = Instant::now();
    let session = Session::new();
    let mut tuples = 0;
    for n in 1..=5usize {
        for m in 0..=5 - n {
            for k in 0..n {
                for r in 0..=n - k {
                    let rep = session.check_sf_identity(m, n, k, r).unwrap();
                    assert!(
                        rep.equal,
                        "skewing identity fails at (m={m}, n={n}, k={k}, r={r}):\n lhs={}\n rhs={}",
                        rep.lhs, rep.rhs
                    );
                    tuples += 1;
                }
            }
        }
    }
    pass(
        5,
        &format!("skewing double-sum identity exact on {tuples} tuples, m+n <= 5"),
        t0,
    );
}

/// Criterion 6: nabla e_n equals the generating polynomial of undecorated
/// labelled paths in n variables for n <= 5 — the cross-validation that
/// ties the Macdonald expansions, nabla, the basis conversions, and the
/// path statistics together.
#[test]
fn criterion_06_shuffle_cross_validation() {
    init_cache();
    let t0 = Instant::now();
    for n in 1..=5usize {
        let symbolic = nabla(&SymF::e(n)).unwrap().to_xpoly(n).unwrap();
        let combinatorial = genpoly(0, n, 0, Touch::All, n as u8);
        assert_eq!(symbolic, combinatorial, "nabla e_{n} mismatch");
    }
    pass(6, "nabla e_n = labelled-path generating polynomial, n <= 5", t0);
}

/// Criterion 7: the E family — E_{n,0} = delta_{n,0}, the components sum
/// to e_n, and the z = q^j specialisation for j <= 3 — all exact, n <= 5.
#[test]
fn criterion_07_e_family() {
    init_cache();
    let t0 = Instant::now();
    assert_eq!(e_nk(0, 0).unwrap(), SymF::one(Basis::Power));
    for n in 1..=5i64 {
        assert!(e_nk(n, 0).unwrap().is_zero(), "E_{{{n},0}} != 0");
        let mut total = SymF::zero(Basis::Power);
        for k in 0..=n {
            total = total.add(&e_nk(n, k).unwrap()).unwrap();
        }
        assert_eq!(total, SymF::e(n as usize), "components do not sum to e_{n}");
        // z = q^j: e_n[X (1-q^j)/(1-q)] = sum_k [k+j-1 choose k]_q E_{n,k}.
        let en_p = SymF::e(n as usize).convert(Basis::Power).unwrap();
        for j in 1..=3u32 {
            let mut lhs = SymF::zero(Basis::Power);
            for (lambda, c) in en_p.coeffs() {
                let mut scale = QtRational::one();
                for &part in lambda.parts() {
                    let p = part as u32;
                    let num = &QtPoly::one() - &QtPoly::monomial(j * p, 0, 1);
                    let den = &QtPoly::one() - &QtPoly::monomial(p, 0, 1);
                    scale = &scale * &QtRational::from(num).checked_div(&den.into()).unwrap();
                }
                lhs.add_term(lambda.clone(), &(c * &scale));
            }
            let mut rhs = SymF::zero(Basis::Power);
            for k in 0..=n {
                let coef: QtRational = q_binomial(k + i64::from(j) - 1, k).into();
                rhs = rhs.add(&e_nk(n, k).unwrap().scalar_mul(&coef)).unwrap();
            }
            assert_eq!(lhs, rhs, "q^{j} specialisation fails at n={n}");
        }
    }
    pass(7, "E-family: boundary, splitting, q^j specialisation, n <= 5", t0);
}

/// Criterion 8: the skewing/selection bridge — h_m^perp of the symmetrised
/// generating polynomial equals the maximal-label restricted sum — for all
/// m + n <= 5 and admissible k, r.
#[test]
fn criterion_08_skewing_selects_maximal_labels() {
    init_cache();
    let t0 = Instant::now();
    let session = Session::new();
    let mut tuples = 0;
    for n in 1..=5usize {
        for m in 0..=n.min(5 - n) {
            for k in 0..n {
                for r in 0..=n {
                    let rep = session.check_hperp_combinatorial(m, n, k, r).unwrap();
                    assert!(
                        rep.equal,
                        "selection bridge fails at (m={m}, n={n}, k={k}, r={r}):\n lhs={}\n rhs={}",
                        rep.lhs, rep.rhs
                    );
                    tuples += 1;
                }
            }
        }
    }
    pass(
        8,
        &format!("h_m-skewing = maximal-label selection on {tuples} tuples, m+n <= 5"),
        t0,
    );
}

/// Criterion 9: conjecture evidence — the valley Delta conjecture and its
/// generalisation (plus touch refinements) hold exactly on every instance
/// with m + n <= 5 and k >= 1.
#[test]
fn criterion_09_conjecture_evidence() {
    init_cache();
    let t0 = Instant::now();
    let session = Session::new();
    let mut instances = 0;
    for n in 2..=5usize {
        for k in 1..n {
            let rep = session.check_valley_delta(n, k, Touch::All).unwrap();
            assert!(rep.equal, "valley Delta fails at (n={n}, k={k}, all)");
            instances += 1;
            for r in 0..=n - k {
                let rep = session
                    .check_valley_delta(n, k, Touch::Exactly(r))
                    .unwrap();
                assert!(rep.equal, "valley Delta fails at (n={n}, k={k}, r={r})");
                instances += 1;
            }
            for m in 1..=5 - n {
                let rep = session.check_generalised(m, n, k, Touch::All).unwrap();
                assert!(rep.equal, "generalised fails at (m={m}, n={n}, k={k}, all)");
                instances += 1;
                for r in 0..=n - k {
                    let rep = session
                        .check_generalised(m, n, k, Touch::Exactly(r))
                        .unwrap();
                    assert!(
                        rep.equal,
                        "generalised fails at (m={m}, n={n}, k={k}, r={r})"
                    );
                    instances += 1;
                }
            }
        }
    }
    pass(
        9,
        &format!("conjecture evidence: {instances} instances equal, m+n <= 5, k >= 1"),
        t0,
    );
}

/// Criterion 10: mutation sensitivity — doubling the dinv decoration
/// penalty, or dropping the label condition from the valley rule, must
/// break the pushing sweep (criterion 3 range) and the conjecture suite
/// (criterion 9 range).
#[test]
fn criterion_10_mutation_sensitivity() {
    init_cache();
    let t0 = Instant::now();
    for (name, rules) in [
        ("doubled dinv penalty", Rules::perturbed_dinv_penalty()),
        ("weakened valley condition", Rules::perturbed_valley_condition()),
    ] {
        let session = Session::with_rules(rules);
        // Criterion 3 range: first failing pushing tuple.
        let mut pushing_failure = None;
        'push: for n in 1..=6usize {
            for m in 0..=n.min(6 - n) {
                for k in 0..n {
                    for r in 0..=n {
                        let rep = session.check_pushing(m, n, k, r).unwrap();
                        if !rep.equal {
                            pushing_failure = Some((m, n, k, r));
                            break 'push;
                        }
                    }
                }
            }
        }
        let pushing_failure = pushing_failure
            .unwrap_or_else(|| panic!("{name}: pushing sweep insensitive to the mutation"));
        // Criterion 9 range: first failing conjecture instance.
        let mut conjecture_failure = None;
        'conj: for n in 2..=5usize {
            for k in 1..n {
                for r in (0..=n - k).map(Touch::Exactly).chain([Touch::All]) {
                    let rep = session.check_valley_delta(n, k, r).unwrap();
                    if !rep.equal {
                        conjecture_failure = Some((n, k, r));
                        break 'conj;
                    }
                }
            }
        }
        let conjecture_failure = conjecture_failure
            .unwrap_or_else(|| panic!("{name}: conjecture suite insensitive to the mutation"));
        println!(
            "  mutation '{name}': pushing breaks at {pushing_failure:?}, \
             conjectures break at {conjecture_failure:?}"
        );
    }
    pass(10, "both rule mutations break criteria 3 and 9", t0);
}

/// Round-trip conversions across all bases are exact identities through
/// degree 6 (the calibration the verification sweeps rely on).
#[test]
fn supplement_round_trips_degree_6() {
    init_cache();
    let t0 = Instant::now();
    for d in 0..=6usize {
        for p in valley_delta::symfunc::Partition::all(d) {
            let f = SymF::m(p.clone());
            for basis in Basis::all() {
                let round = f.convert(basis).unwrap().convert(Basis::Monomial).unwrap();
                assert_eq!(round, f, "round trip m{p} via {basis:?}");
            }
        }
    }
    pass(0, "basis round-trips exact through degree 6 (supplement)", t0);
}

/// The enumeration stream and the bucketed tables agree on a spread of
/// families (both routes to every generating polynomial).
#[test]
fn supplement_enumeration_vs_tables() {
    let t0 = Instant::now();
    for (m, n, k) in [(0usize, 4usize, 1usize), (1, 3, 2), (2, 2, 1)] {
        let table = genpoly(m, n, k, Touch::All, n as u8);
        let mut direct = valley_delta::qt::XPoly::zero(n);
        for p in enumerate(m, n, k, n as u8) {
            let coef = QtRational::from(QtPoly::monomial(
                u32::try_from(p.dinv()).unwrap(),
                p.area() as u32,
                1,
            ));
            direct = direct
                .checked_add(&p.monomial(n).unwrap().scalar_mul(&coef))
                .unwrap();
        }
        assert_eq!(table, direct, "({m},{n},{k})");
    }
    pass(0, "table route equals enumeration route (supplement)", t0);
}
