//! The registered check suites.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;
use std::time::Instant;

use depthzero::characters::{regular_characters, DepthZeroCharacter};
use depthzero::charformula::{
    self as cf, sweep_characters, FormulaContext, FormulaError, SweepReport,
};
use depthzero::dualgroup as dg;
use depthzero::ffield::{BuildOptions, FieldError, FieldTower};
use depthzero::localmodel::{EtaBranch, LocalError};
use depthzero::tori::tate::{non_strongly_regular_count, tate_cohomology};
use depthzero::tori::{Torus, TorusError, WeylGroup};
use depthzero::uniqueness::{self as un, UniquenessError};
use depthzero::TorusKind;
use serde_json::json;

use crate::config::{Config, Summation};
use crate::report::{CheckRecord, Report, SkipReason};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Campaign {
    Cohomology,
    Chevalley,
    Identity,
    Thresholds,
    Uniqueness,
    All,
}

fn is_budget_field(e: &FieldError) -> bool {
    matches!(e, FieldError::BudgetExceeded { .. })
}

fn is_budget_formula(e: &FormulaError) -> bool {
    match e {
        FormulaError::Local(LocalError::Field(f)) => is_budget_field(f),
        FormulaError::Torus(TorusError::Local(LocalError::Field(f))) => is_budget_field(f),
        _ => false,
    }
}

/// A check that could not be computed: budget problems skip, anything else fails.
fn errored(rec: CheckRecord, budget: bool, e: impl Display) -> CheckRecord {
    if budget {
        rec.skipped(SkipReason::Budget, e.to_string())
    } else {
        rec.outcome(false).witness(json!({ "error": e.to_string() }))
    }
}

fn sweep_record(rec: CheckRecord, r: Result<SweepReport, FormulaError>) -> CheckRecord {
    match r {
        Ok(s) => rec.outcome(s.passed()).witness(s),
        Err(e) => {
            let b = is_budget_formula(&e);
            errored(rec, b, e)
        }
    }
}

pub struct Runner<'a> {
    cfg: &'a Config,
    towers: BTreeMap<u64, Arc<FieldTower>>,
    pub report: Report,
}

impl<'a> Runner<'a> {
    pub fn new(cfg: &'a Config) -> Self {
        Runner { cfg, towers: BTreeMap::new(), report: Report::default() }
    }

    fn push(&mut self, started: Instant, rec: CheckRecord) {
        self.report.timings.push((rec.id.clone(), started.elapsed().as_secs_f64() * 1000.0));
        self.report.checks.push(rec);
    }

    fn tower(&mut self, q: u64) -> Result<Arc<FieldTower>, FieldError> {
        if let Some(t) = self.towers.get(&q) {
            return Ok(t.clone());
        }
        let opts = BuildOptions { table_budget: self.cfg.table_budget, ..BuildOptions::default() };
        let t = Arc::new(FieldTower::for_q_cached(q, &opts, self.cfg.cache_dir.as_deref())?);
        self.towers.insert(q, t.clone());
        Ok(t)
    }

    fn context(&mut self, kind: TorusKind, q: u64, branch: EtaBranch) -> Result<FormulaContext, FormulaError> {
        let tower = self.tower(q).map_err(|e| FormulaError::Local(e.into()))?;
        let ctx = FormulaContext::new(kind, tower, branch)?.with_epsilon(self.cfg.epsilon);
        match self.cfg.summation {
            Summation::Full => Ok(ctx),
            Summation::Trivial => {
                let id = ctx.rational_weyl().identity().clone();
                ctx.with_summation(WeylGroup { kind, elements: vec![id] })
            }
        }
    }

    pub fn run(&mut self, c: Campaign) {
        match c {
            Campaign::Cohomology => self.cohomology(),
            Campaign::Chevalley => self.chevalley(),
            Campaign::Identity => self.identity(),
            Campaign::Thresholds => self.thresholds(),
            Campaign::Uniqueness => self.uniqueness(),
            Campaign::All => {
                for c in [Campaign::Cohomology, Campaign::Chevalley, Campaign::Identity, Campaign::Thresholds, Campaign::Uniqueness] {
                    self.run(c);
                }
            }
        }
    }

    fn cohomology(&mut self) {
        let cfg = self.cfg;
        for &kind in &cfg.kinds {
            let expected: (u128, u128) = match kind {
                TorusKind::T1 => (4, 1),
                TorusKind::T2 => (2, 1),
            };
            for &q in &cfg.q {
                let t0 = Instant::now();
                let rec = CheckRecord::new(format!("tate.{kind}.q{q}"), "tate-cohomology-orders").param("kind", kind).param("q", q);
                let rec = match tate_cohomology(kind, q) {
                    Ok(r) => {
                        let ok = (r.h_minus1_order(), r.h0_order()) == expected && r.sequence_exact();
                        rec.outcome(ok).witness(json!({
                            "h_minus1": r.h_minus1_order(),
                            "h0": r.h0_order(),
                            "rational": r.rational_order(),
                            "coinvariants": r.coinv_order(),
                            "h_minus1_parities": r.h_minus1_classes.iter().map(|c| c.v).collect::<Vec<_>>(),
                        }))
                    }
                    Err(e) => errored(rec, false, e),
                };
                self.push(t0, rec);

                let t0 = Instant::now();
                let rec = CheckRecord::new(format!("root-kernels.{kind}.q{q}"), "root-kernel-count").param("kind", kind).param("q", q);
                let rec = match Torus::new(kind, q).and_then(|t| Ok((non_strongly_regular_count(&t)?, t))) {
                    Ok((y, t)) => {
                        let direct = t.enumerate_rational().iter().filter(|g| !t.is_strongly_regular(g)).count() as u128;
                        rec.outcome(y == direct).witness(json!({ "inclusion_exclusion": y, "enumeration": direct }))
                    }
                    Err(e) => errored(rec, false, e),
                };
                self.push(t0, rec);
            }
        }
    }

    fn chevalley(&mut self) {
        let cfg = self.cfg;
        let order = cfg.dual_order;
        let boolean = |id: &str, anchor: &'static str, r: Result<bool, dg::DualError>| {
            let rec = CheckRecord::new(id, anchor).param("order", order);
            match r {
                Ok(b) => rec.outcome(b),
                Err(e) => errored(rec, false, e),
            }
        };
        let t0 = Instant::now();
        let rec = boolean("chevalley.lift-square", "lift-square-identity", dg::lemma71_check(order));
        self.push(t0, rec);
        let t0 = Instant::now();
        let rec = boolean("chevalley.quartic-lift", "quartic-lift-identity", dg::mhat4_check(order));
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = CheckRecord::new("chevalley.structure-constants", "structure-constant-product").param("order", order);
        let rec = match dg::eta_constants(order) {
            Ok(t) => {
                let p = dg::eta_triple_product(&t);
                let signs = t.values().all(|&v| v == 1 || v == -1);
                rec.outcome(p == -1 && signs).witness(json!({ "triple_product": p, "entries": t.len() }))
            }
            Err(e) => errored(rec, false, e),
        };
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = CheckRecord::new("chevalley.root-squares", "root-element-squares").param("order", order);
        let rec = match dg::square_relation_failures(order) {
            Ok(bad) => rec.outcome(bad.is_empty()).witness(json!({
                "roots": dg::DualRoot::all().len(),
                "failures": bad.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            })),
            Err(e) => errored(rec, false, e),
        };
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = CheckRecord::new("chevalley.reflection-conjugation", "reflection-conjugation").param("order", order);
        let mut bad = None;
        'scan: for k in 0..order as i64 {
            for r in dg::DualRoot::all() {
                for s in dg::DualRoot::all() {
                    match dg::conjugation_relation(order, r, s, k) {
                        Ok(true) => {}
                        Ok(false) => {
                            bad = Some(json!({ "root": r.to_string(), "coroot_of": s.to_string(), "k": k }));
                            break 'scan;
                        }
                        Err(e) => {
                            bad = Some(json!({ "error": e.to_string() }));
                            break 'scan;
                        }
                    }
                }
            }
        }
        let rec = match bad {
            None => rec.outcome(true),
            Some(w) => rec.outcome(false).witness(w),
        };
        self.push(t0, rec);

        for &kind in &cfg.kinds {
            let t0 = Instant::now();
            let rec = CheckRecord::new(format!("chevalley.torus-factor.{kind}"), "torus-factor-independence")
                .param("kind", kind)
                .param("order", order)
                .param("samples", cfg.lift_samples)
                .param("seed", cfg.seed);
            let rec = match dg::twisted_power_sampled(kind, order, cfg.lift_samples, cfg.seed) {
                Ok(None) => rec.outcome(true),
                Ok(Some(t)) => rec.outcome(false).witness(json!({ "a": t.a, "b": t.b })),
                Err(e) => errored(rec, false, e),
            };
            self.push(t0, rec);

            let t0 = Instant::now();
            let rec = CheckRecord::new(format!("chevalley.parity-values.{kind}"), "parity-values").param("kind", kind).param("order", order);
            let want = match kind {
                TorusKind::T1 => [1, -1],
                TorusKind::T2 => [-1, 1],
            };
            let rec = match dg::h_values(kind, order) {
                Ok(h) => rec.outcome(h.signs == want).witness(json!({ "signs": h.signs })),
                Err(e) => errored(rec, false, e),
            };
            self.push(t0, rec);
        }
    }

    fn identity_cost(ctx: &FormulaContext, chars: usize, twists: usize) -> u128 {
        let t = ctx.torus();
        let sr = t.rational_count() as u128;
        chars as u128 * sr * ctx.rational_weyl().len() as u128 * ctx.summation().len() as u128 * twists as u128
    }

    fn identity(&mut self) {
        let cfg = self.cfg;
        for &kind in &cfg.kinds {
            for &q in &cfg.q {
                for &branch in &cfg.eta_branches {
                    self.identity_at(kind, q, branch);
                }
            }
        }
        if cfg.kinds.contains(&TorusKind::T2) {
            for &q in &cfg.q {
                self.branch_independence(q);
            }
        }
        for &kind in &cfg.kinds {
            for &branch in &cfg.eta_branches {
                self.invariance_at(kind, cfg.invariance_q, branch);
            }
        }
    }

    fn identity_at(&mut self, kind: TorusKind, q: u64, branch: EtaBranch) {
        let suffix = format!("{kind}.q{q}.{}", branch.name());
        let base = |id: &str, anchor: &'static str| {
            CheckRecord::new(format!("{id}.{suffix}"), anchor).param("kind", kind).param("q", q).param("eta_branch", branch)
        };
        let t0 = Instant::now();
        let ctx = match self.context(kind, q, branch) {
            Ok(c) => c,
            Err(e) => {
                let b = is_budget_formula(&e);
                for (id, anchor) in [
                    ("eta-rho", "eta-rho-characterisation"),
                    ("identity", "theta-equals-r"),
                    ("lift-independence", "lift-independence"),
                    ("packet", "packet-classes"),
                ] {
                    let rec = errored(base(id, anchor), b, &e);
                    self.push(t0, rec);
                }
                return;
            }
        };

        let rec = sweep_record(base("eta-rho", "eta-rho-characterisation"), cf::verify_eta_rho(&ctx));
        self.push(t0, rec);

        let t0 = Instant::now();
        let chars = sweep_characters(&ctx);
        let regular_count = regular_characters(ctx.torus()).map(|r| r.len()).unwrap_or(0);
        let set = if regular_count == 0 { "all" } else { "regular" };
        let rec = base("identity", "theta-equals-r").param("characters", set).param("regular_characters", regular_count);
        let rec = match &chars {
            Err(e) => errored(rec, false, e),
            Ok(ch) if Self::identity_cost(&ctx, ch.len(), 1) > self.cfg.max_evaluations => {
                let n = Self::identity_cost(&ctx, ch.len(), 1);
                rec.skipped(SkipReason::Budget, format!("{n} evaluations exceed max_evaluations"))
            }
            Ok(ch) => sweep_record(rec, cf::verify_identity(&ctx, ch)),
        };
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = base("lift-independence", "lift-independence").param("characters", set);
        let twists = match kind {
            TorusKind::T1 => 4,
            TorusKind::T2 => 2,
        };
        let rec = match &chars {
            Err(e) => errored(rec, false, e),
            Ok(ch) if Self::identity_cost(&ctx, ch.len(), twists) > self.cfg.max_evaluations => {
                let n = Self::identity_cost(&ctx, ch.len(), twists);
                rec.skipped(SkipReason::Budget, format!("{n} evaluations exceed max_evaluations"))
            }
            Ok(ch) => sweep_record(rec, cf::verify_lift_independence(&ctx, ch)),
        };
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = base("packet", "packet-classes").param("summation_order", ctx.summation().len());
        let first = regular_characters(ctx.torus()).ok().and_then(|r| r.first().copied());
        let rec = match first {
            None => rec.skipped(SkipReason::NotApplicable, "no regular character at this q"),
            Some(chi) => match ctx.packet(&ctx.genuine(chi)) {
                Ok(p) => {
                    let want = ctx.rational_weyl().len() / ctx.summation().len();
                    let labels: Vec<Vec<String>> = p.classes.iter().map(|c| c.labels.clone()).collect();
                    rec.outcome(p.classes.len() == want).witness(json!({
                        "character": chi.exps,
                        "classes": p.classes.len(),
                        "labels": labels,
                        "note": p.note,
                    }))
                }
                Err(e) => errored(rec, is_budget_formula(&e), e),
            },
        };
        self.push(t0, rec);
    }

    fn branch_independence(&mut self, q: u64) {
        let t0 = Instant::now();
        let kind = TorusKind::T2;
        let rec = CheckRecord::new(format!("branch-independence.{kind}.q{q}"), "eta-branch-independence").param("kind", kind).param("q", q);
        let mut per_branch = Vec::new();
        let mut err = None;
        for branch in EtaBranch::BOTH {
            let r = self.context(kind, q, branch).and_then(|ctx| {
                let ch = sweep_characters(&ctx)?;
                if Self::identity_cost(&ctx, ch.len(), 1) > self.cfg.max_evaluations {
                    return Ok(None);
                }
                cf::verify_identity(&ctx, &ch).map(Some)
            });
            match r {
                Ok(Some(s)) => per_branch.push((branch, s)),
                Ok(None) => {
                    err = Some((true, "identity sweep exceeds max_evaluations".to_string()));
                    break;
                }
                Err(e) => {
                    err = Some((is_budget_formula(&e), e.to_string()));
                    break;
                }
            }
        }
        let rec = match err {
            Some((b, e)) => errored(rec, b, e),
            None => {
                let ok = per_branch.iter().all(|(_, s)| s.passed());
                let summary: Vec<_> = per_branch
                    .iter()
                    .map(|(b, s)| json!({ "branch": b, "comparisons": s.comparisons, "witness": s.witness }))
                    .collect();
                rec.outcome(ok).witness(summary)
            }
        };
        self.push(t0, rec);
    }

    fn invariance_at(&mut self, kind: TorusKind, q: u64, branch: EtaBranch) {
        let suffix = format!("{kind}.q{q}.{}", branch.name());
        let base = |id: &str, anchor: &'static str| {
            CheckRecord::new(format!("{id}.{suffix}"), anchor).param("kind", kind).param("q", q).param("eta_branch", branch)
        };
        let t0 = Instant::now();
        let ctx = match self.context(kind, q, branch) {
            Ok(c) => c,
            Err(e) => {
                let b = is_budget_formula(&e);
                for (id, anchor) in [
                    ("denominator-reps", "denominator-well-defined"),
                    ("split-denominator", "split-denominator"),
                    ("positive-systems", "positive-system-independence"),
                ] {
                    let rec = errored(base(id, anchor), b, &e);
                    self.push(t0, rec);
                }
                return;
            }
        };
        let rec = base("denominator-reps", "denominator-well-defined")
            .param("reps_per_class", self.cfg.reps_per_class)
            .param("seed", self.cfg.seed);
        let rec = sweep_record(rec, cf::verify_denominator_reps(&ctx, self.cfg.reps_per_class, self.cfg.seed));
        self.push(t0, rec);

        let t0 = Instant::now();
        let rec = sweep_record(base("split-denominator", "split-denominator"), cf::verify_split_denominator(&ctx));
        self.push(t0, rec);

        let t0 = Instant::now();
        let all = DepthZeroCharacter::all(ctx.torus());
        let cost = Self::identity_cost(&ctx, all.len(), 4) * ctx.full_weyl().len() as u128;
        let rec = base("positive-systems", "positive-system-independence").param("characters", "all");
        let rec = if cost > self.cfg.max_evaluations {
            rec.skipped(SkipReason::Budget, format!("{cost} evaluations exceed max_evaluations"))
        } else {
            sweep_record(rec, cf::verify_positive_systems(&ctx, &all))
        };
        self.push(t0, rec);
    }

    fn thresholds(&mut self) {
        let cfg = self.cfg;
        for &kind in &cfg.kinds {
            let t0 = Instant::now();
            let claimed_from = match kind {
                TorusKind::T1 => 47,
                TorusKind::T2 => 4,
            };
            let rec = CheckRecord::new(format!("thresholds.{kind}"), "threshold-inequality")
                .param("kind", kind)
                .param("q_max", cfg.q_max)
                .param("claimed_from", claimed_from);
            let rec = match un::threshold_scan(kind, cfg.q_max, cfg.threshold_limit) {
                Ok(r) => {
                    let rec = rec.outcome(r.holds_from(claimed_from)).witness(json!({
                        "rows": r.rows.len(),
                        "empirical_threshold": r.empirical_threshold,
                        "failing_from_claim": r.rows.iter().filter(|x| x.q >= claimed_from && !x.holds).map(|x| x.q).collect::<Vec<_>>(),
                    }));
                    self.report.thresholds.push(r);
                    rec
                }
                Err(e) => {
                    let b = matches!(e, UniquenessError::BudgetExceeded { .. });
                    errored(rec, b, e)
                }
            };
            self.push(t0, rec);
        }
    }

    fn uniqueness(&mut self) {
        let cfg = self.cfg;
        for &kind in &cfg.kinds {
            for &q in &cfg.q {
                let t0 = Instant::now();
                let rec = CheckRecord::new(format!("rigidity.{kind}.q{q}"), "weyl-sum-rigidity")
                    .param("kind", kind)
                    .param("q", q)
                    .param("cap", cfg.rigidity_cap)
                    .param("seed", cfg.seed);
                let rec = match un::prop99_check(kind, q, cfg.rigidity_cap, cfg.seed) {
                    Ok(r) => rec.outcome(r.passed()).witness(json!({ "report": r, "vacuous": r.regular == 0 })),
                    Err(e) => {
                        let b = matches!(e, UniquenessError::BudgetExceeded { .. });
                        errored(rec, b, e)
                    }
                };
                self.push(t0, rec);

                let t0 = Instant::now();
                let rec = CheckRecord::new(format!("nonvanishing.{kind}.q{q}"), "matching-torus-nonvanishing")
                    .param("kind", kind)
                    .param("q", q);
                let rec = match un::cross_torus_note(kind, q) {
                    Ok(r) => rec.outcome(r.nonvanishing()).witness(r),
                    Err(UniquenessError::NoRegularCharacter { .. }) => {
                        rec.skipped(SkipReason::NotApplicable, "no regular character at this q")
                    }
                    Err(e) => errored(rec, false, e),
                };
                self.push(t0, rec);
            }
        }
    }
}
