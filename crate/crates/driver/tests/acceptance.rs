//! One PASS/FAIL line per acceptance criterion.

use std::sync::Arc;
use std::time::Instant;

use depthzero::characters::DepthZeroCharacter;
use depthzero::charformula::{self as cf, sweep_characters, FormulaContext};
use depthzero::dualgroup as dg;
use depthzero::ffield::{BuildOptions, FieldTower};
use depthzero::localmodel::EtaBranch;
use depthzero::tori::tate::tate_cohomology;
use depthzero::uniqueness as un;
use depthzero::TorusKind;

fn ctx(kind: TorusKind, q: u64, branch: EtaBranch) -> FormulaContext {
    let tower = Arc::new(FieldTower::for_q(q, &BuildOptions::default()).unwrap());
    FormulaContext::new(kind, tower, branch).unwrap()
}

fn chevalley() -> bool {
    let o = dg::DEFAULT_ORDER;
    dg::lemma71_check(o).unwrap()
        && dg::mhat4_check(o).unwrap()
        && dg::eta_triple_product(&dg::eta_constants(o).unwrap()) == -1
        && dg::square_relation_failures(o).unwrap().is_empty()
}

fn dual_lifts() -> bool {
    TorusKind::ALL.iter().all(|&k| dg::twisted_power_sampled(k, dg::DEFAULT_ORDER, 200, 7).unwrap().is_none())
}

fn tate() -> bool {
    [3u64, 5, 7, 9].iter().all(|&q| {
        TorusKind::ALL.iter().all(|&k| {
            let r = tate_cohomology(k, q).unwrap();
            let want = if k == TorusKind::T1 { (4, 1) } else { (2, 1) };
            (r.h_minus1_order(), r.h0_order()) == want && r.sequence_exact()
        })
    })
}

fn eta_rho() -> bool {
    TorusKind::ALL
        .iter()
        .all(|&k| [3, 5].iter().all(|&q| cf::verify_eta_rho(&ctx(k, q, EtaBranch::Plus)).map(|r| r.passed()).unwrap_or(false)))
}

fn identity() -> bool {
    TorusKind::ALL.iter().all(|&k| {
        [3, 5, 7].iter().all(|&q| {
            let c = ctx(k, q, EtaBranch::Plus);
            let chars = sweep_characters(&c).unwrap();
            cf::verify_identity(&c, &chars).unwrap().passed()
        })
    })
}

fn lift_independence() -> bool {
    TorusKind::ALL.iter().all(|&k| {
        let c = ctx(k, 3, EtaBranch::Plus);
        let chars = DepthZeroCharacter::all(c.torus());
        cf::verify_lift_independence(&c, &chars).unwrap().passed()
    })
}

fn thresholds() -> bool {
    let t1 = un::threshold_scan(TorusKind::T1, 200, un::DEFAULT_SCAN_LIMIT).unwrap();
    let t2 = un::threshold_scan(TorusKind::T2, 200, un::DEFAULT_SCAN_LIMIT).unwrap();
    println!(
        "    empirical minimal thresholds: T1 {:?}, T2 {:?}",
        t1.empirical_threshold, t2.empirical_threshold
    );
    t1.holds_from(47) && t2.holds_from(4)
}

fn rigidity() -> bool {
    [(TorusKind::T1, 3), (TorusKind::T2, 3), (TorusKind::T2, 5)].iter().all(|&(k, q)| {
        let r = un::prop99_check(k, q, un::DEFAULT_EVAL_CAP, 0).unwrap();
        r.exhaustive() && r.passed()
    })
}

fn invariance() -> bool {
    let branches = [3, 5, 7].iter().all(|&q| {
        EtaBranch::BOTH.iter().all(|&b| {
            let c = ctx(TorusKind::T2, q, b);
            cf::verify_identity(&c, &sweep_characters(&c).unwrap()).unwrap().passed()
        })
    });
    let per_kind = TorusKind::ALL.iter().all(|&k| {
        let c = ctx(k, 3, EtaBranch::Plus);
        let all = DepthZeroCharacter::all(c.torus());
        cf::verify_positive_systems(&c, &all).unwrap().passed()
            && cf::verify_denominator_reps(&c, 100, 3).unwrap().passed()
            && cf::verify_split_denominator(&c).unwrap().passed()
    });
    branches && per_kind
}

fn determinism() -> bool {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let out = dir.path().to_str().unwrap().to_string();
            let code = depthzero_driver::run(["depthzero", "all", "--out", &out, "--seed", "5", "--format", "json"]);
            assert_eq!(code, 0);
            std::fs::read(dir.path().join("report.json")).unwrap()
        })
        .collect();
    runs[0] == runs[1]
}

type Criterion = (&'static str, fn() -> bool);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("chevalley relations", chevalley),
        ("dual-group lift independence", dual_lifts),
        ("tate cohomology orders", tate),
        ("eta-rho cross-validation", eta_rho),
        ("theta equals r", identity),
        ("lift independence of theta", lift_independence),
        ("threshold scan", thresholds),
        ("weyl-sum rigidity", rigidity),
        ("invariance suite", invariance),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let ok = check();
        println!("criterion {:>2} {}: {} ({:.2}s)", i + 1, if ok { "PASS" } else { "FAIL" }, name, t0.elapsed().as_secs_f64());
        if !ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
