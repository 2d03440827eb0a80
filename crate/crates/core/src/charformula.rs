//! The character formula on `T(F)_{0,s}`: the Weyl denominator, the
//! `rho`-shift `eta_rho`, `Theta_chi`, `R_phi`, and the sweeps comparing them.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::lcm;
use crate::characters::{regular_characters, CharError, DepthZeroCharacter, GenuineCharacter};
use crate::cyclo::{CycInt, CycloError, RootOfUnity};
use crate::dualgroup::{h_values, DualError, HValues, DEFAULT_ORDER};
use crate::ffield::FieldTower;
use crate::localmodel::{eta, uv_diff, EtaBranch, LocalError, UnitVal};
use crate::tori::tate::tate_cohomology;
use crate::tori::{Coinv, PairPoint, RatPoint, Root, Torus, TorusError, WeylElem, WeylGroup, STANDARD_POSITIVE};
use crate::TorusKind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("{0:?} is not strongly regular")]
    NotStronglyRegular(RatPoint),
    #[error("eta_rho: no character satisfies the constraints")]
    NoSolution,
    #[error("eta_rho: {0} characters satisfy the constraints")]
    MultipleSolutions(usize),
    #[error("summation set is not a subgroup of the rational Weyl group")]
    NotSubgroup,
    #[error("representative does not project to the requested class")]
    WrongRepresentative,
    #[error("{0}")]
    Torus(#[from] TorusError),
    #[error("{0}")]
    Local(#[from] LocalError),
    #[error("{0}")]
    Dual(#[from] DualError),
    #[error("{0}")]
    Char(#[from] CharError),
    #[error("{0}")]
    Cyclo(#[from] CycloError),
}

type Res<T> = Result<T, FormulaError>;

/// Everything `Theta` and `R` depend on besides the character.
#[derive(Clone, Debug)]
pub struct FormulaContext {
    torus: Torus,
    tower: Arc<FieldTower>,
    positive: [Root; 4],
    branch: EtaBranch,
    full: WeylGroup,
    rational: WeylGroup,
    summation: WeylGroup,
    epsilon: i64,
    h: HValues,
}

impl FormulaContext {
    pub fn new(kind: TorusKind, tower: Arc<FieldTower>, branch: EtaBranch) -> Res<Self> {
        let torus = Torus::new(kind, tower.q())?;
        let rational = torus.rational_weyl_group();
        Ok(FormulaContext {
            torus,
            full: torus.weyl_group(),
            summation: rational.clone(),
            rational,
            positive: STANDARD_POSITIVE,
            branch,
            epsilon: 1,
            h: h_values(kind, DEFAULT_ORDER)?,
            tower,
        })
    }

    /// Replace the summation group; it must be a subgroup of the rational one.
    pub fn with_summation(mut self, group: WeylGroup) -> Res<Self> {
        let closed = group.elements.iter().all(|a| {
            self.rational.by_mat(&a.mat).is_some()
                && group.elements.iter().all(|b| group.compose(a, b).is_some())
        });
        if !closed || group.elements.iter().all(|e| !e.is_identity()) {
            return Err(FormulaError::NotSubgroup);
        }
        self.summation = group;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: i64) -> Self {
        self.epsilon = epsilon;
        self
    }

    /// Override the `H^-1` values attached to genuine characters.
    pub fn with_h(mut self, h: HValues) -> Self {
        self.h = h;
        self
    }

    pub fn with_positive(mut self, positive: [Root; 4]) -> Self {
        self.positive = positive;
        self
    }

    pub fn torus(&self) -> &Torus {
        &self.torus
    }

    pub fn kind(&self) -> TorusKind {
        self.torus.kind()
    }

    pub fn q(&self) -> u64 {
        self.torus.q()
    }

    pub fn branch(&self) -> EtaBranch {
        self.branch
    }

    pub fn positive(&self) -> [Root; 4] {
        self.positive
    }

    pub fn h(&self) -> HValues {
        self.h
    }

    pub fn full_weyl(&self) -> &WeylGroup {
        &self.full
    }

    pub fn rational_weyl(&self) -> &WeylGroup {
        &self.rational
    }

    pub fn summation(&self) -> &WeylGroup {
        &self.summation
    }

    /// Order of the cyclotomic ring holding `Theta` and `R`.
    pub fn value_order(&self) -> u64 {
        lcm(self.torus.n(), 4)
    }

    /// Base character made genuine with the fixed `H^-1` values.
    pub fn genuine(&self, base: DepthZeroCharacter) -> GenuineCharacter {
        GenuineCharacter { base, h: self.h }
    }

    fn eta(&self, a: &UnitVal) -> Res<RootOfUnity> {
        Ok(eta(self.kind(), a, self.branch)?)
    }

    fn eta_diff(&self, a: &UnitVal, b: &UnitVal) -> Res<RootOfUnity> {
        self.eta(&uv_diff(&self.tower, a, b)?)
    }

    fn inverse(&self, w: &WeylElem) -> WeylElem {
        self.full.inverse(w).expect("group closed under inverses").clone()
    }

    fn compose(&self, a: &WeylElem, b: &WeylElem) -> WeylElem {
        self.full.compose(a, b).expect("group closed under products").clone()
    }

    fn require_sr(&self, g: &RatPoint) -> Res<()> {
        if self.torus.is_strongly_regular(g) {
            Ok(())
        } else {
            Err(FormulaError::NotStronglyRegular(*g))
        }
    }

    // ---- eta_rho ----

    /// Explicit `eta_rho` on the class of `rep`.
    pub fn eta_rho_closed(&self, rep: &PairPoint) -> Res<RootOfUnity> {
        let s = self.torus.shape();
        match self.kind() {
            TorusKind::T1 => {
                let (w1, w2) = (rep.w, rep.z);
                let num = w1.pow(2, s).mul(&w2, s)?;
                let den = w1.galois(1, s).pow(2, s).mul(&w2.galois(1, s).pow(2, s), s)?;
                self.eta(&num.div(&den, s)?)
            }
            TorusKind::T2 => {
                let x = rep.w.div(&rep.z.galois(1, s), s)?;
                let num = x.mul(&x.galois(1, s).pow(2, s), s)?;
                self.eta(&num.div(&x.galois(3, s), s)?)
            }
        }
    }

    /// `eta o 2rho o N` on a class, for the positive system `positive`.
    pub fn eta_two_rho_norm(&self, positive: &[Root; 4], c: &Coinv) -> Res<RootOfUnity> {
        let two_rho = positive.iter().fold(Root::new(0, 0), |acc, r| Root::new(acc.a + r.a, acc.b + r.b));
        let g = self.torus.rational_to_pair(&self.torus.coinv_norm(c));
        self.eta(&self.torus.root_on_pair(two_rho, &g))
    }

    /// `eta_rho` for the context's positive system, found by exhaustive search.
    pub fn eta_rho_solve(&self) -> Res<EtaRhoTable> {
        self.eta_rho_solve_for(&self.positive)
    }

    /// All characters `psi(u, v) = zeta_n^(b.u) (-1)^(c.v)` of the coinvariant
    /// group are tried. A solution squares to `eta o 2rho o N`, is trivial on
    /// unit classes, and is genuine: nontrivial on `H^-1` and trivial on the
    /// part of `H^-1` on which the lift character `h` is trivial.
    pub fn eta_rho_solve_for(&self, positive: &[Root; 4]) -> Res<EtaRhoTable> {
        let t = &self.torus;
        let n = t.n();
        let rank = t.rank();
        let elements = t.enumerate_coinv();
        let target: Vec<RootOfUnity> =
            elements.iter().map(|c| self.eta_two_rho_norm(positive, c)).collect::<Res<_>>()?;
        let h1 = tate_cohomology(t.kind(), t.q())?.h_minus1_classes;
        let units: Vec<Coinv> = elements.iter().copied().filter(|c| c.v == [0, 0]).collect();

        let b_range: Vec<[u64; 2]> = match rank {
            1 => (0..n).map(|b| [b, 0]).collect(),
            _ => (0..n).flat_map(|b0| (0..n).map(move |b1| [b0, b1])).collect(),
        };
        let c_range: Vec<[u8; 2]> = match rank {
            1 => vec![[0, 0], [1, 0]],
            _ => vec![[0, 0], [1, 0], [0, 1], [1, 1]],
        };
        let psi = |b: [u64; 2], cv: [u8; 2], x: &Coinv| {
            let e = (b[0] * x.u[0] + b[1] * x.u[1]) % n;
            let s = (cv[0] * x.v[0] + cv[1] * x.v[1]) % 2 == 1;
            RootOfUnity::new(n, e as i64).mul(&RootOfUnity::sign(s))
        };
        let mut found = Vec::new();
        for &b in &b_range {
            for &cv in &c_range {
                let square_ok = elements.iter().zip(&target).all(|(x, tv)| psi(b, cv, x).pow(2) == *tv);
                let units_ok = square_ok && units.iter().all(|x| psi(b, cv, x).is_one());
                let genuine = units_ok
                    && h1.iter().any(|d| !psi(b, cv, d).is_one())
                    && h1.iter().filter(|d| self.h.eval(d) == 1).all(|d| psi(b, cv, d).is_one());
                if genuine {
                    found.push((b, cv));
                }
            }
        }
        match found.len() {
            0 => Err(FormulaError::NoSolution),
            1 => {
                let (b, cv) = found[0];
                Ok(EtaRhoTable { values: elements.iter().map(|x| (*x, psi(b, cv, x))).collect() })
            }
            k => Err(FormulaError::MultipleSolutions(k)),
        }
    }

    // ---- denominators ----

    /// The Weyl denominator in its combined form, evaluated on a pair
    /// representative of a class.
    pub fn weyl_denominator(&self, rep: &PairPoint) -> Res<RootOfUnity> {
        let s = self.torus.shape();
        let factors: [(UnitVal, UnitVal); 4] = match self.kind() {
            TorusKind::T1 => {
                let a = self.torus.root_on_pair(Root::new(1, 0), rep);
                let b = self.torus.root_on_pair(Root::new(0, 1), rep);
                let ab = a.mul(&b, s)?;
                let aab = a.mul(&ab, s)?;
                [a, b, ab, aab].map(|r| (r, r.galois(1, s)))
            }
            TorusKind::T2 => {
                let x = rep.w.div(&rep.z.galois(1, s), s)?;
                let [t0, t1, t2, t3] = [0u32, 1, 2, 3].map(|j| x.galois(j, s));
                [
                    (t0, t2),
                    (t1.mul(&t2, s)?, t0.mul(&t3, s)?),
                    (t1, t3),
                    (t0.mul(&t1, s)?, t2.mul(&t3, s)?),
                ]
            }
        };
        let mut d = RootOfUnity::one();
        for (a, b) in &factors {
            d = d.mul(&self.eta_diff(a, b)?);
        }
        Ok(d)
    }

    /// `eta(Delta^0(gamma, positive))` with `Delta^0 = prod (1 - r(gamma)^-1)`.
    pub fn delta0_eta(&self, gamma: &RatPoint, positive: &[Root; 4]) -> Res<RootOfUnity> {
        self.require_sr(gamma)?;
        let s = self.torus.shape();
        let g = self.torus.rational_to_pair(gamma);
        let one = UnitVal::one(s, self.torus.level());
        let mut d = RootOfUnity::one();
        for r in positive {
            let v = self.torus.root_on_pair(*r, &g).inv(s);
            d = d.mul(&self.eta_diff(&one, &v)?);
        }
        Ok(d)
    }

    /// `eta(Delta^0(N c, positive)) * eta_rho'(c)`.
    pub fn split_denominator(&self, c: &Coinv, positive: &[Root; 4], table: &EtaRhoTable) -> Res<RootOfUnity> {
        let d0 = self.delta0_eta(&self.torus.coinv_norm(c), positive)?;
        Ok(d0.mul(&table.get(c).ok_or(FormulaError::WrongRepresentative)?))
    }

    // ---- Theta and R ----

    /// `chi(g^-1 c)`.
    fn chi_moved(&self, chi: &GenuineCharacter, g: &WeylElem, c: &Coinv) -> Res<RootOfUnity> {
        let moved = self.torus.act_coinv(&self.inverse(g), c)?;
        Ok(chi.eval(&self.torus, &moved))
    }

    /// Exponent counts of `sum_{n} chi((n w)^-1 c)` in `mu_L`.
    fn numerator_counts(&self, chi: &GenuineCharacter, w: &WeylElem, c: &Coinv) -> Res<Vec<i64>> {
        let order = self.value_order();
        let mut counts = vec![0i64; order as usize];
        for n in &self.summation.elements {
            let v = self.chi_moved(chi, &self.compose(n, w), c)?;
            counts[v.exponent_in(order)? as usize] += 1;
        }
        Ok(counts)
    }

    fn finish(&self, mut counts: Vec<i64>, denom: RootOfUnity) -> Res<CycInt> {
        let order = self.value_order();
        let shift = denom.inv().exponent_in(order)? as usize;
        counts.rotate_right(shift);
        Ok(CycInt::from_exponent_counts(order, &counts).scale(self.epsilon))
    }

    /// `^w Theta_chi(gamma)` through the valuation-zero lift of `gamma`.
    pub fn theta(&self, chi: &GenuineCharacter, w: &WeylElem, gamma: &RatPoint) -> Res<CycInt> {
        let lift = self.torus.unit_class_of(gamma);
        self.theta_with_lift(chi, w, &lift, &self.torus.coinv_rep(&lift))
    }

    /// `^w Theta_chi` on the norm of `lift`, with `rep` representing `lift`.
    pub fn theta_with_lift(&self, chi: &GenuineCharacter, w: &WeylElem, lift: &Coinv, rep: &PairPoint) -> Res<CycInt> {
        if self.torus.project(rep) != *lift {
            return Err(FormulaError::WrongRepresentative);
        }
        self.require_sr(&self.torus.coinv_norm(lift))?;
        let counts = self.numerator_counts(chi, w, lift)?;
        self.finish(counts, self.weyl_denominator(rep)?)
    }

    /// `^w Theta_chi` with the split denominator for another positive system.
    pub fn theta_split(
        &self,
        chi: &GenuineCharacter,
        w: &WeylElem,
        lift: &Coinv,
        positive: &[Root; 4],
        table: &EtaRhoTable,
    ) -> Res<CycInt> {
        let counts = self.numerator_counts(chi, w, lift)?;
        self.finish(counts, self.split_denominator(lift, positive, table)?)
    }

    /// `^w R_phi(gamma) = eps * sum_n chi((n w)^-1 gamma)`.
    pub fn r_phi(&self, base: &DepthZeroCharacter, w: &WeylElem, gamma: &RatPoint) -> Res<CycInt> {
        self.require_sr(gamma)?;
        let order = self.value_order();
        let mut counts = vec![0i64; order as usize];
        for n in &self.summation.elements {
            let g = self.inverse(&self.compose(n, w));
            let v = base.eval(&self.torus.act_rational(&g, gamma)?);
            counts[v.exponent_in(order)? as usize] += 1;
        }
        Ok(CycInt::from_exponent_counts(order, &counts).scale(self.epsilon))
    }

    /// The functions `^w Theta_chi` on `T(F)_{0,s}`, `w` over the rational Weyl
    /// group, grouped by equality.
    pub fn packet(&self, chi: &GenuineCharacter) -> Res<Packet> {
        let sr = self.torus.strongly_regular_set();
        let mut classes: Vec<PacketClass> = Vec::new();
        for w in &self.rational.elements {
            let values: Vec<CycInt> = sr.iter().map(|g| self.theta(chi, w, g)).collect::<Res<_>>()?;
            match classes.iter_mut().find(|c| c.values == values) {
                Some(c) => c.labels.push(w.word.clone()),
                None => classes.push(PacketClass { labels: vec![w.word.clone()], values }),
            }
        }
        Ok(Packet { summation_order: self.summation.len(), classes, note: PACKET_NOTE })
    }
}

/// A character of the coinvariant group, tabulated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaRhoTable {
    pub values: HashMap<Coinv, RootOfUnity>,
}

impl EtaRhoTable {
    pub fn get(&self, c: &Coinv) -> Option<RootOfUnity> {
        self.values.get(c).copied()
    }
}

pub const PACKET_NOTE: &str = "classes are taken for the configured summation group; \
whether the Galois-fixed normaliser quotient is a proper subgroup of the rational Weyl group \
is not determined here, so packet sizes are conditional on that choice";

#[derive(Clone, Debug)]
pub struct PacketClass {
    pub labels: Vec<String>,
    pub values: Vec<CycInt>,
}

#[derive(Clone, Debug)]
pub struct Packet {
    pub summation_order: usize,
    pub classes: Vec<PacketClass>,
    pub note: &'static str,
}

// ---- sweeps ----

/// First disagreement found by a sweep, in serialisable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub character: [u64; 2],
    pub weyl: String,
    pub gamma: [u64; 2],
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub kind: TorusKind,
    pub q: u64,
    pub branch: EtaBranch,
    pub characters: usize,
    pub elements: usize,
    pub comparisons: u64,
    pub witness: Option<Witness>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn new(ctx: &FormulaContext, characters: usize, elements: usize) -> Self {
        SweepReport { kind: ctx.kind(), q: ctx.q(), branch: ctx.branch, characters, elements, comparisons: 0, witness: None }
    }
}

/// Characters worth sweeping: the regular ones, or all of them when there
/// are none (the identities are algebraic and hold regardless).
pub fn sweep_characters(ctx: &FormulaContext) -> Res<Vec<DepthZeroCharacter>> {
    let reg = regular_characters(&ctx.torus)?;
    Ok(if reg.is_empty() { DepthZeroCharacter::all(&ctx.torus) } else { reg })
}

fn merge(mut report: SweepReport, parts: Vec<Res<(u64, Option<Witness>)>>) -> Res<SweepReport> {
    for p in parts {
        let (count, witness) = p?;
        report.comparisons += count;
        if report.witness.is_none() {
            report.witness = witness;
        }
    }
    Ok(report)
}

/// `^w Theta_chi = ^w R_phi` on every strongly regular element, for every
/// character in `chars` and every rational `w`.
pub fn verify_identity(ctx: &FormulaContext, chars: &[DepthZeroCharacter]) -> Res<SweepReport> {
    let sr = ctx.torus.strongly_regular_set();
    let parts: Vec<_> = chars
        .par_iter()
        .map(|base| {
            let chi = ctx.genuine(*base);
            let mut count = 0;
            for w in &ctx.rational.elements {
                for g in &sr {
                    let th = ctx.theta(&chi, w, g)?;
                    let r = ctx.r_phi(base, w, g)?;
                    count += 1;
                    if th != r {
                        let detail = format!("theta = {th}, R = {r}");
                        return Ok((count, Some(Witness { character: base.exps, weyl: w.word.clone(), gamma: g.k, detail })));
                    }
                }
            }
            Ok((count, None))
        })
        .collect();
    merge(SweepReport::new(ctx, chars.len(), sr.len()), parts)
}

/// `Theta` is unchanged when the lift is twisted by any class of `H^-1`.
pub fn verify_lift_independence(ctx: &FormulaContext, chars: &[DepthZeroCharacter]) -> Res<SweepReport> {
    let t = &ctx.torus;
    let sr = t.strongly_regular_set();
    let h1 = tate_cohomology(t.kind(), t.q())?.h_minus1_classes;
    let parts: Vec<_> = chars
        .par_iter()
        .map(|base| {
            let chi = ctx.genuine(*base);
            let mut count = 0;
            for w in &ctx.rational.elements {
                for g in &sr {
                    let reference = ctx.theta(&chi, w, g)?;
                    let lift = t.unit_class_of(g);
                    for d in &h1 {
                        let twisted = t.coinv_mul(&lift, d);
                        let v = ctx.theta_with_lift(&chi, w, &twisted, &t.coinv_rep(&twisted))?;
                        count += 1;
                        if v != reference {
                            let detail = format!("twist {:?}: {v} vs {reference}", d.v);
                            return Ok((count, Some(Witness { character: base.exps, weyl: w.word.clone(), gamma: g.k, detail })));
                        }
                    }
                }
            }
            Ok((count, None))
        })
        .collect();
    merge(SweepReport::new(ctx, chars.len(), sr.len()), parts)
}

/// The combined denominator takes one value on each class: `per_class`
/// random representatives `rep * t / sigma(t)` are compared with the
/// canonical one.
pub fn verify_denominator_reps(ctx: &FormulaContext, per_class: usize, seed: u64) -> Res<SweepReport> {
    let t = &ctx.torus;
    let order = t.shape().order(t.level()) as i64;
    let classes: Vec<Coinv> =
        t.enumerate_coinv().into_iter().filter(|c| t.is_strongly_regular(&t.coinv_norm(c))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport::new(ctx, 0, classes.len());
    for c in &classes {
        let base = t.coinv_rep(c);
        let reference = ctx.weyl_denominator(&base)?;
        for _ in 0..per_class {
            let s = t.pair_from_exponents(
                rng.gen_range(0..order),
                rng.gen_range(-3..=3),
                rng.gen_range(0..order),
                rng.gen_range(-3..=3),
            );
            let boundary = t.pair_mul(&s, &t.pair_inv(&t.pair_galois(&s)))?;
            let rep = t.pair_mul(&base, &boundary)?;
            report.comparisons += 1;
            let detail = if t.project(&rep) != *c {
                Some("representative left its class".to_string())
            } else {
                let d = ctx.weyl_denominator(&rep)?;
                (d != reference).then(|| format!("D = {d} vs {reference}"))
            };
            if let Some(detail) = detail {
                let gamma = t.coinv_norm(c).k;
                report.witness = Some(Witness { character: [0, 0], weyl: "1".into(), gamma, detail });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// On valuation-zero lifts the split and combined denominators agree.
pub fn verify_split_denominator(ctx: &FormulaContext) -> Res<SweepReport> {
    let t = &ctx.torus;
    let table = ctx.eta_rho_solve()?;
    let sr = t.strongly_regular_set();
    let mut report = SweepReport::new(ctx, 0, sr.len());
    for g in &sr {
        let lift = t.unit_class_of(g);
        let split = ctx.split_denominator(&lift, &ctx.positive, &table)?;
        let combined = ctx.weyl_denominator(&t.coinv_rep(&lift))?;
        report.comparisons += 1;
        if split != combined {
            let detail = format!("split {split} vs combined {combined}");
            report.witness = Some(Witness { character: [0, 0], weyl: "1".into(), gamma: g.k, detail });
            break;
        }
    }
    Ok(report)
}

/// Recomputing `Delta^0`, `2rho'` and `eta_rho'` for each `w(Delta+)` leaves
/// `Theta` unchanged on every lift.
pub fn verify_positive_systems(ctx: &FormulaContext, chars: &[DepthZeroCharacter]) -> Res<SweepReport> {
    let t = &ctx.torus;
    let sr = t.strongly_regular_set();
    let h1 = tate_cohomology(t.kind(), t.q())?.h_minus1_classes;
    let mut report = SweepReport::new(ctx, chars.len(), sr.len());
    for v in &ctx.full.elements {
        let positive = t.positive_system_image(v);
        let table = ctx.eta_rho_solve_for(&positive)?;
        for base in chars {
            let chi = ctx.genuine(*base);
            for w in &ctx.rational.elements {
                for g in &sr {
                    let reference = ctx.theta(&chi, w, g)?;
                    for d in &h1 {
                        let lift = t.coinv_mul(&t.unit_class_of(g), d);
                        let val = ctx.theta_split(&chi, w, &lift, &positive, &table)?;
                        report.comparisons += 1;
                        if val != reference {
                            let detail = format!("positive system {}: {val} vs {reference}", v.word);
                            report.witness = Some(Witness { character: base.exps, weyl: w.word.clone(), gamma: g.k, detail });
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `eta_rho_solve` agrees with `eta_rho_closed` on every class.
pub fn verify_eta_rho(ctx: &FormulaContext) -> Res<SweepReport> {
    let t = &ctx.torus;
    let table = ctx.eta_rho_solve()?;
    let classes = t.enumerate_coinv();
    let mut report = SweepReport::new(ctx, 0, classes.len());
    for c in &classes {
        let closed = ctx.eta_rho_closed(&t.coinv_rep(c))?;
        let solved = table.get(c).ok_or(FormulaError::WrongRepresentative)?;
        let square_ok = solved.pow(2) == ctx.eta_two_rho_norm(&ctx.positive, c)?;
        report.comparisons += 1;
        if closed != solved || !square_ok {
            let detail = format!("class {:?}/{:?}: solved {solved}, closed {closed}", c.u, c.v);
            report.witness = Some(Witness { character: [0, 0], weyl: "1".into(), gamma: t.coinv_norm(c).k, detail });
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::BuildOptions;

    fn ctx(kind: TorusKind, q: u64) -> FormulaContext {
        let tower = Arc::new(FieldTower::for_q(q, &BuildOptions::default()).unwrap());
        FormulaContext::new(kind, tower, EtaBranch::Plus).unwrap()
    }

    #[test]
    fn eta_rho_closed_values() {
        let c = ctx(TorusKind::T1, 3);
        let t = *c.torus();
        assert_eq!(c.eta_rho_closed(&t.coinv_rep(&t.coinv([0, 0], [0, 1]))).unwrap(), RootOfUnity::sign(true));
        assert_eq!(c.eta_rho_closed(&t.coinv_rep(&t.coinv([0, 0], [1, 0]))).unwrap(), RootOfUnity::one());
        let c = ctx(TorusKind::T2, 3);
        let t = *c.torus();
        assert_eq!(c.eta_rho_closed(&t.coinv_rep(&t.coinv([0, 0], [1, 0]))).unwrap(), RootOfUnity::sign(true));
    }

    #[test]
    fn uniformizer_shift_negates_denominator() {
        let c = ctx(TorusKind::T1, 5);
        let t = *c.torus();
        let g = t.strongly_regular_set()[0];
        let rep = t.coinv_rep(&t.unit_class_of(&g));
        assert!(c.weyl_denominator(&rep).unwrap().is_one());
        let s = t.shape();
        let pi = UnitVal::uniformizer(s, t.level());
        let shifted = PairPoint { w: rep.w.mul(&pi, s).unwrap(), z: rep.z.mul(&pi, s).unwrap() };
        assert_eq!(c.weyl_denominator(&shifted).unwrap(), RootOfUnity::sign(true));

        let c = ctx(TorusKind::T2, 5);
        let t = *c.torus();
        let g = t.strongly_regular_set()[0];
        let rep = t.coinv_rep(&t.unit_class_of(&g));
        let s = t.shape();
        let shifted = PairPoint { w: rep.w.mul(&UnitVal::uniformizer(s, t.level()), s).unwrap(), z: rep.z };
        assert_eq!(c.weyl_denominator(&shifted).unwrap(), c.weyl_denominator(&rep).unwrap().mul(&RootOfUnity::sign(true)));
    }

    #[test]
    fn non_strongly_regular_is_rejected() {
        let c = ctx(TorusKind::T2, 3);
        let t = *c.torus();
        let chi = c.genuine(DepthZeroCharacter::new(&t, [1, 0]));
        let w = c.rational_weyl().identity().clone();
        let one = t.rational_one();
        assert!(matches!(c.theta(&chi, &w, &one), Err(FormulaError::NotStronglyRegular(_))));
        assert!(matches!(c.r_phi(&chi.base, &w, &one), Err(FormulaError::NotStronglyRegular(_))));
    }

    #[test]
    fn packet_sizes_track_summation_group() {
        let c = ctx(TorusKind::T2, 3);
        let t = *c.torus();
        let chi = c.genuine(DepthZeroCharacter::new(&t, [1, 0]));
        assert_eq!(c.packet(&chi).unwrap().classes.len(), 1);
        let trivial = WeylGroup { kind: TorusKind::T2, elements: vec![c.rational_weyl().identity().clone()] };
        let c = c.with_summation(trivial).unwrap();
        let p = c.packet(&chi).unwrap();
        assert_eq!(p.classes.len(), 4);
        assert_eq!(p.summation_order, 1);
    }

    #[test]
    fn non_subgroup_rejected() {
        let c = ctx(TorusKind::T2, 3);
        let only_a = WeylGroup { kind: TorusKind::T2, elements: vec![c.full_weyl().by_word("a").unwrap().clone()] };
        assert!(matches!(c.with_summation(only_a), Err(FormulaError::NotSubgroup)));
    }
}
