//! The headline invariants: depth by four routes, width by two, depth at
//! primes, graded Matlis duals, and Frobenius pushforwards.
//!
//! Routes never consult one another except in explicit certificate mode,
//! which is labeled in the report; agreement across routes is evidence the
//! harness checks, not an assumption the engine makes.

use crate::complex::FreeComplex;
use crate::derived::{
    hom_transition_matrix, lift_resolution_map, resolve_module, Caps, FreeResolution,
};
use crate::extint::ExtInt;
use crate::groebner::{vec_zero, PolyVec, RSubmodule};
use crate::homology::induced_between;
use crate::monomial::Monomial;
use crate::pmodule::{ModuleMap, PresentedModule};
use crate::poly::Polynomial;
use crate::prescomplex::PresentedComplex;
use crate::ring::RingSpec;
use crate::rule::{ComplexHandle, EvalComplex, FreeOp, Tail};
use crate::scalar::Field;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("the ideal contains 1")]
    ImproperIdeal,
    #[error("operation requires a graded finite-length module")]
    NotFiniteLength,
    #[error("operation requires a graded instance")]
    NotGraded,
    #[error("operation requires a prime field of positive characteristic")]
    WrongCharacteristic,
    #[error(transparent)]
    Derived(#[from] crate::derived::DerivedError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certainty {
    Exact,
    /// Rests on the asserted validity of a parametric tail beyond the probes.
    Conditional,
    /// A cap was exhausted before the value could be pinned.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct DepthReport {
    pub value: ExtInt,
    pub route: &'static str,
    pub certainty: Certainty,
    pub evidence: String,
}

impl DepthReport {
    fn new(value: ExtInt, route: &'static str, certainty: Certainty, evidence: String) -> Self {
        DepthReport { value, route, certainty, evidence }
    }
}

pub type WidthReport = DepthReport;

fn check_proper(ring: &RingSpec, a_gens: &[Polynomial]) -> Result<(), InvariantError> {
    let gens: Vec<PolyVec> = a_gens.iter().map(|p| vec![p.clone()]).collect();
    let gb = RSubmodule::new(ring, 1, &gens);
    if gb.contains(ring, &vec![ring.one()]) {
        return Err(InvariantError::ImproperIdeal);
    }
    Ok(())
}

/// 1 lies in a + Ann(M): the module's support misses V(a), so every a-local
/// invariant of M vanishes.
fn support_avoids(ring: &RingSpec, a_gens: &[Polynomial], m: &PresentedModule) -> bool {
    let mut gens: Vec<PolyVec> = a_gens.iter().map(|p| vec![p.clone()]).collect();
    gens.extend(m.annihilator().into_iter().map(|p| vec![p]));
    let gb = RSubmodule::new(ring, 1, &gens);
    gb.contains(ring, &vec![ring.one()])
}

/// depth via n - sup(K (x) C), the Koszul homology route.
pub fn depth_koszul(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<DepthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    let n = a_gens.len() as i64;
    let k = FreeComplex::koszul_or_unit(ring.clone(), a_gens);
    let ev = EvalComplex::from_handle(c).with_probe(caps.probe).apply(FreeOp::TensorLeft(k));
    let s = ev.sup();
    let value = ExtInt::Int(n).checked_sub(&s.value).unwrap_or(ExtInt::PosInf);
    let certainty = if s.exact { Certainty::Exact } else { Certainty::Conditional };
    Ok(DepthReport::new(
        value,
        "koszul",
        certainty,
        format!("n = {}, sup(K (x) C) = {}", n, s.value),
    ))
}

/// depth via Koszul cohomology: inf of the degrees where Hom(K, C) is alive.
pub fn depth_koszul_coh(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<DepthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    let k = FreeComplex::koszul_or_unit(ring.clone(), a_gens);
    let ev = EvalComplex::from_handle(c).with_probe(caps.probe).apply(FreeOp::HomFrom(k));
    let s = ev.sup();
    let value = s.value.neg();
    let certainty = if s.exact { Certainty::Exact } else { Certainty::Conditional };
    Ok(DepthReport::new(
        value,
        "koszul-cohomology",
        certainty,
        format!("sup Hom(K, C) = {}", s.value),
    ))
}

fn resolve_quotient(ring: &Arc<RingSpec>, a_gens: &[Polynomial], length: usize) -> FreeResolution {
    let m = PresentedModule::cyclic(ring.clone(), a_gens.to_vec());
    let minimal = m.is_graded();
    resolve_module(&m, length, minimal).expect("cyclic module resolves")
}

/// First nonvanishing Ext^l(R/a, M) for a module with a M != M; None when the
/// certified band runs out first, +inf surfaces as i64::MAX.
fn ext_depth_module(
    ring: &Arc<RingSpec>,
    res_a: &FreeResolution,
    m: &PresentedModule,
    cap: i64,
) -> Option<i64> {
    let _ = ring;
    let x = PresentedComplex::from_module(m, 0);
    let hom = PresentedComplex::hom_from_free(&res_a.complex, &x);
    let certified = match res_a.certified_terms() {
        ExtInt::PosInf => i64::MAX,
        ExtInt::Int(c) => c,
        ExtInt::NegInf => return None,
    };
    for l in 0..=cap.min(certified) {
        if !hom.homology_at(-l).module.is_zero() {
            return Some(l);
        }
    }
    if res_a.complete && cap >= res_a.length() {
        return Some(i64::MAX);
    }
    None
}

enum Contribution {
    Value(i64),
    Skip,
    Unresolved,
}

/// depth via inf { l : Ext^l(R/a, C) != 0 }.
pub fn depth_ext(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    candidate: Option<i64>,
    caps: &Caps,
) -> Result<DepthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    let dim = crate::groebner::krull_dim(&ring).finite().unwrap_or(0);
    match c {
        ComplexHandle::Free(f) => {
            let pc = PresentedComplex::from_free(f);
            let (sup, inf) = (pc.sup(), pc.inf());
            let (sup, inf) = match (sup.finite(), inf.finite()) {
                (Some(s), Some(i)) => (s, i),
                _ => {
                    return Ok(DepthReport::new(
                        ExtInt::PosInf,
                        "ext",
                        Certainty::Exact,
                        "homology vanishes".into(),
                    ))
                }
            };
            let all_avoid = (inf..=sup).all(|d| {
                let h = pc.homology_at(d).module;
                h.is_zero() || support_avoids(&ring, a_gens, &h)
            });
            if all_avoid {
                return Ok(DepthReport::new(
                    ExtInt::PosInf,
                    "ext",
                    Certainty::Exact,
                    "support of homology avoids V(a)".into(),
                ));
            }
            let n = a_gens.len() as i64;
            let cap_top = n.max(dim) + (sup - inf) + caps.search_slack;
            let need = ((cap_top + f.hi().max(0) + 2).max(4) as usize).min(caps.resolution_length);
            let res_a = resolve_quotient(&ring, a_gens, need);
            let hom = PresentedComplex::hom_from_free(&res_a.complex, &pc);
            let certified_l = match res_a.certified_terms() {
                ExtInt::PosInf => i64::MAX,
                ExtInt::Int(cl) => cl - f.hi(),
                ExtInt::NegInf => -1,
            };
            let start = -sup;
            if let Some(d) = candidate {
                let mut ok = d <= certified_l.min(start + cap_top);
                if ok {
                    for l in start..d {
                        if !hom.homology_at(-l).module.is_zero() {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && !hom.homology_at(-d).module.is_zero() {
                    return Ok(DepthReport::new(
                        ExtInt::Int(d),
                        "ext",
                        Certainty::Exact,
                        format!("certificate mode: Ext vanishes below {} and is alive there", d),
                    ));
                }
            }
            for l in start..=start + cap_top {
                if l > certified_l {
                    return Ok(DepthReport::new(
                        ExtInt::Int(l),
                        "ext",
                        Certainty::Inconclusive,
                        format!("certified band exhausted at Ext^{}", l),
                    ));
                }
                if !hom.homology_at(-l).module.is_zero() {
                    return Ok(DepthReport::new(
                        ExtInt::Int(l),
                        "ext",
                        Certainty::Exact,
                        format!("first nonvanishing Ext at {}", l),
                    ));
                }
            }
            if res_a.complete {
                Ok(DepthReport::new(
                    ExtInt::PosInf,
                    "ext",
                    Certainty::Exact,
                    "Ext vanishes through the full band".into(),
                ))
            } else {
                Ok(DepthReport::new(
                    ExtInt::PosInf,
                    "ext",
                    Certainty::Inconclusive,
                    "search cap exhausted".into(),
                ))
            }
        }
        ComplexHandle::Rule(r) => {
            let res_a =
                resolve_quotient(&ring, a_gens, ((dim + caps.search_slack + 4) as usize).min(caps.resolution_length));
            let cap = dim + caps.search_slack;
            let contribution = |m: &PresentedModule| -> Contribution {
                if m.gens == 0 || m.is_zero() || m.mod_out(a_gens).is_zero() {
                    Contribution::Skip
                } else {
                    match ext_depth_module(&ring, &res_a, m, cap) {
                        Some(l) if l < i64::MAX => Contribution::Value(l),
                        Some(_) => Contribution::Skip,
                        None => Contribution::Unresolved,
                    }
                }
            };
            combine_rule_route(r, caps, "ext", contribution)
        }
    }
}

/// Shared aggregation for module-wise depth routes over rule complexes:
/// contributions l - degree, minimized, with tail handling.
fn combine_rule_route(
    r: &crate::rule::RuleComplex,
    caps: &Caps,
    route: &'static str,
    contribution: impl Fn(&PresentedModule) -> Contribution,
) -> Result<DepthReport, InvariantError> {
    let mut value = ExtInt::PosInf;
    let mut certainty = Certainty::Exact;
    let mut notes: Vec<String> = Vec::new();
    for (k, m) in r.modules.iter().enumerate() {
        let e = r.lo + k as i64;
        match contribution(m) {
            Contribution::Value(l) => value = value.min(ExtInt::Int(l - e)),
            Contribution::Skip => {}
            Contribution::Unresolved => {
                certainty = Certainty::Inconclusive;
                notes.push(format!("module at degree {} unresolved", e));
            }
        }
    }
    let probe = caps.probe.max(1) as i64;
    let up_degrees: Vec<i64> = match &r.up {
        Tail::Zero => vec![],
        Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.hi() + 1 + t).collect(),
        Tail::Parametric(_) => (0..probe).map(|t| r.hi() + 1 + t).collect(),
    };
    let up_param = r.up.is_parametric();
    for e in up_degrees {
        let m = r.module_at(e);
        match contribution(&m) {
            Contribution::Value(_) => {
                return Ok(DepthReport::new(
                    ExtInt::NegInf,
                    route,
                    if up_param { Certainty::Conditional } else { Certainty::Exact },
                    format!("live tail module at degree {} repeats upward", e),
                ));
            }
            Contribution::Skip => {}
            Contribution::Unresolved => {
                certainty = Certainty::Inconclusive;
                notes.push(format!("tail module at degree {} unresolved", e));
            }
        }
    }
    if up_param && certainty == Certainty::Exact {
        certainty = Certainty::Conditional;
    }
    let down_degrees: Vec<i64> = match &r.down {
        Tail::Zero => vec![],
        Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.lo - 1 - t).collect(),
        Tail::Parametric(_) => (0..probe).map(|t| r.lo - 1 - t).collect(),
    };
    let down_param = r.down.is_parametric();
    for e in down_degrees {
        let m = r.module_at(e);
        match contribution(&m) {
            Contribution::Value(l) => value = value.min(ExtInt::Int(l - e)),
            Contribution::Skip => {}
            Contribution::Unresolved => {
                certainty = Certainty::Inconclusive;
                notes.push(format!("tail module at degree {} unresolved", e));
            }
        }
    }
    if down_param && certainty == Certainty::Exact {
        certainty = Certainty::Conditional;
    }
    Ok(DepthReport::new(value, route, certainty, notes.join("; ")))
}

const LC_HF_LO: i64 = -4;
const LC_HF_HI: i64 = 4;

#[derive(PartialEq, Eq, Clone, Debug)]
enum Measure {
    Hilbert(Vec<usize>),
    Dim(usize),
    NonzeroFlag(bool),
}

impl Measure {
    fn is_zero(&self) -> bool {
        match self {
            Measure::Hilbert(v) => v.iter().all(|d| *d == 0),
            Measure::Dim(d) => *d == 0,
            Measure::NonzeroFlag(f) => !f,
        }
    }
}

fn image_measure(map: &ModuleMap) -> Measure {
    if map.target.is_graded() && map.source.is_graded() {
        return Measure::Hilbert(
            map.image_hilbert(LC_HF_LO, LC_HF_HI).into_iter().collect(),
        );
    }
    if let Some(d) = map.image_dim() {
        return Measure::Dim(d);
    }
    Measure::NonzeroFlag(!map.is_zero_map())
}

/// The Ext systems over powers of the ideal: resolutions of R/a^m and the
/// lifted transition maps along the canonical surjections.
struct LcSystem {
    resolutions: Vec<FreeResolution>,
    lifts: Vec<Vec<Vec<PolyVec>>>,
}

impl LcSystem {
    fn build(ring: &Arc<RingSpec>, a_gens: &[Polynomial], caps: &Caps, length: usize) -> Self {
        use crate::groebner::{ideal_arith, IdealOp, SubmoduleGens};
        let base = SubmoduleGens::ideal(a_gens.to_vec());
        let mut resolutions = Vec::new();
        let mut quotients = Vec::new();
        let mut power = base.clone();
        for m in 1..=caps.lc_nmax.max(3) {
            if m > 1 {
                power = ideal_arith(ring, &power, &base, IdealOp::Product);
            }
            let q = PresentedModule::cyclic(ring.clone(), power.ideal_gens());
            let minimal = q.is_graded();
            resolutions.push(resolve_module(&q, length, minimal).expect("powers resolve"));
            quotients.push(q);
        }
        let mut lifts = Vec::new();
        for m in 0..resolutions.len() - 1 {
            let map0 = vec![vec![ring.one()]];
            lifts.push(lift_resolution_map(
                ring,
                &resolutions[m + 1],
                &quotients[m + 1],
                &resolutions[m],
                &quotients[m],
                &map0,
            ));
        }
        LcSystem { resolutions, lifts }
    }

    /// At cohomological level l against X: whether the m = 1 stage is alive,
    /// and the image measures of the consecutive transition maps.
    fn stage_measures(
        &self,
        ring: &Arc<RingSpec>,
        x: &PresentedComplex,
        l: i64,
    ) -> (bool, Vec<Measure>) {
        let n = -l;
        let hs: Vec<_> = self
            .resolutions
            .iter()
            .map(|r| PresentedComplex::hom_from_free(&r.complex, x).homology_at(n))
            .collect();
        let e1_nonzero = !hs[0].module.is_zero();
        let mut measures = Vec::new();
        for m in 0..self.lifts.len() {
            let matrix = hom_transition_matrix(
                ring,
                &self.resolutions[m + 1].complex,
                &self.resolutions[m].complex,
                &self.lifts[m],
                x,
                n,
            );
            let map = induced_between(ring, &hs[m], &hs[m + 1], &matrix);
            measures.push(image_measure(&map));
        }
        (e1_nonzero, measures)
    }
}

fn stabilized_nonzero(measures: &[Measure]) -> bool {
    measures.windows(3).any(|w| !w[0].is_zero() && w[0] == w[1] && w[1] == w[2])
}

/// depth via local cohomology, computed through the Ext colimit over powers
/// of the ideal with image-stabilization detection.
pub fn depth_lc(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<DepthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    let dim = crate::groebner::krull_dim(&ring).finite().unwrap_or(0);
    match c {
        ComplexHandle::Free(f) => {
            let pc = PresentedComplex::from_free(f);
            let (sup, inf) = (pc.sup(), pc.inf());
            let (sup, inf) = match (sup.finite(), inf.finite()) {
                (Some(s), Some(i)) => (s, i),
                _ => {
                    return Ok(DepthReport::new(
                        ExtInt::PosInf,
                        "local-cohomology",
                        Certainty::Exact,
                        "homology vanishes".into(),
                    ))
                }
            };
            let all_avoid = (inf..=sup).all(|d| {
                let h = pc.homology_at(d).module;
                h.is_zero() || support_avoids(&ring, a_gens, &h)
            });
            if all_avoid {
                return Ok(DepthReport::new(
                    ExtInt::PosInf,
                    "local-cohomology",
                    Certainty::Exact,
                    "support of homology avoids V(a)".into(),
                ));
            }
            let cap_top = (a_gens.len() as i64).max(dim) + (sup - inf) + caps.search_slack;
            let length =
                ((cap_top + f.hi().max(0) + 2).max(4) as usize).min(caps.resolution_length);
            let system = LcSystem::build(&ring, a_gens, caps, length);
            lc_scan(&ring, &system, &pc, -sup, cap_top, f.hi())
        }
        ComplexHandle::Rule(r) => {
            let length = ((dim + caps.search_slack + 2).max(4) as usize).min(caps.resolution_length);
            let system = LcSystem::build(&ring, a_gens, caps, length);
            let cap = dim + caps.search_slack;
            let contribution = |m: &PresentedModule| -> Contribution {
                if m.gens == 0 || m.is_zero() || m.mod_out(a_gens).is_zero() {
                    return Contribution::Skip;
                }
                let x = PresentedComplex::from_module(m, 0);
                match lc_scan(&ring, &system, &x, 0, cap, 0) {
                    Ok(rep) => match (rep.certainty, rep.value) {
                        (Certainty::Inconclusive, _) => Contribution::Unresolved,
                        (_, ExtInt::Int(l)) => Contribution::Value(l),
                        (_, ExtInt::PosInf) => Contribution::Skip,
                        (_, ExtInt::NegInf) => Contribution::Unresolved,
                    },
                    Err(_) => Contribution::Unresolved,
                }
            };
            combine_rule_route(r, caps, "local-cohomology", contribution)
        }
    }
}

fn lc_scan(
    ring: &Arc<RingSpec>,
    system: &LcSystem,
    x: &PresentedComplex,
    start: i64,
    cap: i64,
    x_hi: i64,
) -> Result<DepthReport, InvariantError> {
    let certified_l = system
        .resolutions
        .iter()
        .map(|r| match r.certified_terms() {
            ExtInt::PosInf => i64::MAX,
            ExtInt::Int(c) => c - x_hi,
            ExtInt::NegInf => -1,
        })
        .min()
        .unwrap_or(-1);
    let mut first_e1: Option<i64> = None;
    for l in start..=start + cap {
        if l > certified_l {
            return Ok(DepthReport::new(
                ExtInt::Int(l),
                "local-cohomology",
                Certainty::Inconclusive,
                format!("certified band exhausted at level {}", l),
            ));
        }
        let (e1_nonzero, measures) = system.stage_measures(ring, x, l);
        if e1_nonzero && first_e1.is_none() {
            first_e1 = Some(l);
        }
        if stabilized_nonzero(&measures) {
            // below this level every stage vanished, and weak sensitivity
            // bounds the whole colimit by the m = 1 stage
            let certainty =
                if first_e1 == Some(l) { Certainty::Exact } else { Certainty::Conditional };
            return Ok(DepthReport::new(
                ExtInt::Int(l),
                "local-cohomology",
                certainty,
                format!("image data stabilized nonzero at level {}", l),
            ));
        }
        if measures.iter().any(|m| !m.is_zero()) {
            return Ok(DepthReport::new(
                ExtInt::Int(l),
                "local-cohomology",
                Certainty::Inconclusive,
                format!("images nonzero but not stabilized at level {}", l),
            ));
        }
    }
    let complete = system.resolutions.iter().all(|r| r.complete);
    Ok(DepthReport::new(
        ExtInt::PosInf,
        "local-cohomology",
        if complete { Certainty::Exact } else { Certainty::Inconclusive },
        "all probed systems vanish".into(),
    ))
}

/// width via inf(K (x) C).
pub fn width_koszul(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<WidthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    let k = FreeComplex::koszul_or_unit(ring.clone(), a_gens);
    let ev = EvalComplex::from_handle(c).with_probe(caps.probe).apply(FreeOp::TensorLeft(k));
    let i = ev.inf();
    let certainty = if i.exact { Certainty::Exact } else { Certainty::Conditional };
    Ok(DepthReport::new(
        i.value,
        "width-koszul",
        certainty,
        format!("inf(K (x) C) = {}", i.value),
    ))
}

/// width via inf { l : Tor_l(R/a, C) != 0 }.
pub fn width_tor(
    a_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<WidthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, a_gens)?;
    match c {
        ComplexHandle::Free(f) => {
            let pc = PresentedComplex::from_free(f);
            let (sup, inf) = (pc.sup(), pc.inf());
            let (sup, inf) = match (sup.finite(), inf.finite()) {
                (Some(s), Some(i)) => (s, i),
                _ => {
                    return Ok(DepthReport::new(
                        ExtInt::PosInf,
                        "tor",
                        Certainty::Exact,
                        "homology vanishes".into(),
                    ))
                }
            };
            let cap_top = a_gens.len() as i64 + (sup - inf) + caps.search_slack;
            let need = ((cap_top + 2 - f.lo().min(0)).max(4) as usize).min(caps.resolution_length);
            let res_a = resolve_quotient(&ring, a_gens, need);
            let tens = PresentedComplex::free_tensor(&res_a.complex, &pc);
            // junk from an incomplete resolution sits at the top; scanning
            // upward from inf C stays in the certified band
            let certified_n = match res_a.certified_terms() {
                ExtInt::PosInf => i64::MAX,
                ExtInt::Int(cl) => cl + f.lo(),
                ExtInt::NegInf => f.lo() - 1,
            };
            for n in inf..=inf + cap_top {
                if n > certified_n {
                    return Ok(DepthReport::new(
                        ExtInt::Int(n),
                        "tor",
                        Certainty::Inconclusive,
                        format!("certified band exhausted at degree {}", n),
                    ));
                }
                if !tens.homology_at(n).module.is_zero() {
                    return Ok(DepthReport::new(
                        ExtInt::Int(n),
                        "tor",
                        Certainty::Exact,
                        format!("first nonvanishing Tor at degree {}", n),
                    ));
                }
            }
            Ok(DepthReport::new(
                ExtInt::PosInf,
                "tor",
                if res_a.complete { Certainty::Exact } else { Certainty::Inconclusive },
                "Tor vanishes through the scanned band".into(),
            ))
        }
        ComplexHandle::Rule(r) => {
            // Tor_0(R/a, M) = M/aM decides each summand: zero kills the whole
            // derived tensor by the support argument, nonzero contributes at
            // the summand's own degree
            let live = |m: &PresentedModule| -> bool {
                m.gens > 0 && !m.is_zero() && !m.mod_out(a_gens).is_zero()
            };
            let mut value = ExtInt::PosInf;
            let mut certainty = Certainty::Exact;
            for (k, m) in r.modules.iter().enumerate() {
                if live(m) {
                    value = value.min(ExtInt::Int(r.lo + k as i64));
                }
            }
            let probe = caps.probe.max(1) as i64;
            let down_degrees: Vec<i64> = match &r.down {
                Tail::Zero => vec![],
                Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.lo - 1 - t).collect(),
                Tail::Parametric(_) => (0..probe).map(|t| r.lo - 1 - t).collect(),
            };
            for e in down_degrees {
                if live(&r.module_at(e)) {
                    return Ok(DepthReport::new(
                        ExtInt::NegInf,
                        "tor",
                        if r.down.is_parametric() {
                            Certainty::Conditional
                        } else {
                            Certainty::Exact
                        },
                        format!("live tail module at degree {} repeats downward", e),
                    ));
                }
            }
            if r.down.is_parametric() {
                certainty = Certainty::Conditional;
            }
            let up_degrees: Vec<i64> = match &r.up {
                Tail::Zero => vec![],
                Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.hi() + 1 + t).collect(),
                Tail::Parametric(_) => (0..probe).map(|t| r.hi() + 1 + t).collect(),
            };
            for e in up_degrees {
                if live(&r.module_at(e)) {
                    value = value.min(ExtInt::Int(e));
                }
            }
            if r.up.is_parametric() && certainty == Certainty::Exact {
                certainty = Certainty::Conditional;
            }
            Ok(DepthReport::new(value, "tor", certainty, String::new()))
        }
    }
}

/// depth over the localization at a prime, via annihilator membership:
/// localized homology survives exactly when its annihilator lies inside p.
pub fn depth_at_prime(
    p_gens: &[Polynomial],
    c: &ComplexHandle,
    caps: &Caps,
) -> Result<DepthReport, InvariantError> {
    let ring = c.ring().clone();
    check_proper(&ring, p_gens)?;
    let n = p_gens.len() as i64;
    let k = FreeComplex::koszul_or_unit(ring.clone(), p_gens);
    let p_sub = RSubmodule::new(
        &ring,
        1,
        &p_gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>(),
    );
    let survives = |m: &PresentedModule| -> bool {
        if m.is_zero() {
            return false;
        }
        m.annihilator().iter().all(|f| p_sub.contains(&ring, &vec![f.clone()]))
    };
    let mut top = ExtInt::NegInf;
    let mut exact = true;
    match c {
        ComplexHandle::Free(f) => {
            let pc = PresentedComplex::from_free(&k.tensor(f));
            if let Some((lo, hi)) = pc.window() {
                for d in (lo..=hi).rev() {
                    if survives(&pc.homology_at(d).module) {
                        top = ExtInt::Int(d);
                        break;
                    }
                }
            }
        }
        ComplexHandle::Rule(r) => {
            let probe = caps.probe.max(1) as i64;
            let piece_top = |e: i64| -> ExtInt {
                let m = r.module_at(e);
                if m.gens == 0 {
                    return ExtInt::NegInf;
                }
                let pc = PresentedComplex::from_module(&m, e);
                let kt = PresentedComplex::free_tensor(&k, &pc);
                let Some((lo, hi)) = kt.window() else { return ExtInt::NegInf };
                for d in (lo..=hi).rev() {
                    if survives(&kt.homology_at(d).module) {
                        return ExtInt::Int(d);
                    }
                }
                ExtInt::NegInf
            };
            for (idx, _) in r.modules.iter().enumerate() {
                top = top.max(piece_top(r.lo + idx as i64));
            }
            let up_degs: Vec<i64> = match &r.up {
                Tail::Zero => vec![],
                Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.hi() + 1 + t).collect(),
                Tail::Parametric(_) => (0..probe).map(|t| r.hi() + 1 + t).collect(),
            };
            for e in up_degs {
                if piece_top(e) != ExtInt::NegInf {
                    top = ExtInt::PosInf;
                }
            }
            if r.up.is_parametric() {
                exact = false;
            }
            let down_degs: Vec<i64> = match &r.down {
                Tail::Zero => vec![],
                Tail::Periodic(mods) => (0..mods.len() as i64).map(|t| r.lo - 1 - t).collect(),
                Tail::Parametric(_) => (0..probe).map(|t| r.lo - 1 - t).collect(),
            };
            for e in down_degs {
                top = top.max(piece_top(e));
            }
            if r.down.is_parametric() {
                exact = false;
            }
        }
    }
    let value = ExtInt::Int(n).checked_sub(&top).unwrap_or(ExtInt::PosInf);
    Ok(DepthReport::new(
        value,
        "at-prime",
        if exact { Certainty::Exact } else { Certainty::Conditional },
        format!("top surviving Koszul homology degree = {}", top),
    ))
}

/// Graded Matlis dual of a finite-length module: reversed Hilbert function,
/// transposed variable action.
pub fn matlis_dual(m: &PresentedModule) -> Result<PresentedModule, InvariantError> {
    let ring = m.ring.clone();
    if !ring.is_graded() || m.weights.is_none() {
        return Err(InvariantError::NotGraded);
    }
    let Some(basis) = m.k_basis() else {
        return Err(InvariantError::NotFiniteLength);
    };
    let weights = m.weights.as_ref().unwrap();
    let degrees: Vec<i64> = basis
        .iter()
        .map(|(c, mono)| weights[*c] + mono.degree() as i64)
        .collect();
    let dim = basis.len();
    if dim == 0 {
        return Ok(PresentedModule::zero(ring));
    }
    let index_of = |c: usize, mono: &Monomial| -> usize {
        basis
            .iter()
            .position(|(bc, bm)| *bc == c && bm == mono)
            .expect("normal form lands in the standard basis")
    };
    let gb = m.rel_gb();
    // action[v][b]: coordinates of x_v * basis[b] in the standard basis
    let mut action: Vec<Vec<Vec<(usize, crate::scalar::Scalar)>>> =
        vec![vec![Vec::new(); dim]; ring.nvars()];
    for (b, (c, mono)) in basis.iter().enumerate() {
        for v in 0..ring.nvars() {
            let xm = mono.mul(&Monomial::var(v, ring.nvars()));
            let mut vec = vec_zero(m.gens);
            vec[*c] = Polynomial::term(xm, ring.field.one());
            let nf = gb.nf(&ring, &vec);
            for (cc, poly) in nf.iter().enumerate() {
                for (mm, coeff) in poly.terms() {
                    action[v][b].push((index_of(cc, mm), coeff.clone()));
                }
            }
        }
    }
    let dual_weights: Vec<i64> = degrees.iter().map(|d| -d).collect();
    let mut rels: Vec<PolyVec> = Vec::new();
    for v in 0..ring.nvars() {
        for b in 0..dim {
            // x_v f_b = sum over b' of <x_v b', b> f_{b'}
            let mut col = vec_zero(dim);
            col[b] = ring.var(v);
            for bp in 0..dim {
                for (target, coeff) in &action[v][bp] {
                    if *target == b {
                        col[bp] = ring.sub(
                            &col[bp],
                            &Polynomial::constant(coeff.clone(), ring.nvars()),
                        );
                    }
                }
            }
            rels.push(col);
        }
    }
    Ok(PresentedModule::new(ring, dim, Some(dual_weights), rels))
}

/// The pushforward of R along the e-th Frobenius power, presented as an
/// R-module on the monomials with exponents below p^e.
pub fn frobenius_pushforward(
    ring: &Arc<RingSpec>,
    e: u32,
) -> Result<PresentedModule, InvariantError> {
    let Field::Fp(p) = ring.field else {
        return Err(InvariantError::WrongCharacteristic);
    };
    if e < 1 {
        return Err(InvariantError::WrongCharacteristic);
    }
    let q = p.pow(e);
    let nv = ring.nvars();
    let mut basis: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..nv {
        let mut next = Vec::new();
        for b in &basis {
            for t in 0..q {
                let mut bb = b.clone();
                bb.push(t as u32);
                next.push(bb);
            }
        }
        basis = next;
    }
    let index_of = |exps: &[u32]| -> usize {
        exps.iter().fold(0usize, |acc, &t| acc * q as usize + t as usize)
    };
    let gens = basis.len();
    let weights: Vec<i64> = basis.iter().map(|b| b.iter().map(|x| *x as i64).sum()).collect();
    let mut rels: Vec<PolyVec> = Vec::new();
    for f in &ring.ideal {
        for alpha in &basis {
            // decompose x^alpha f over the basis: restriction of scalars
            // turns x^(q gamma + beta) into x^gamma acting on the beta slot
            let shifted = f.mul_term(&Monomial::new(alpha.clone()), &ring.field.one());
            let mut col = vec_zero(gens);
            for (mono, coeff) in shifted.terms() {
                let mut beta = Vec::with_capacity(nv);
                let mut gamma = Vec::with_capacity(nv);
                for &d in mono.exps() {
                    beta.push(d % q as u32);
                    gamma.push(d / q as u32);
                }
                // the Frobenius fixes the prime field, so coefficients carry over
                let row = index_of(&beta);
                let term = Polynomial::term(Monomial::new(gamma), coeff.clone());
                col[row] = ring.add(&col[row], &term);
            }
            if !crate::groebner::vec_is_zero(&col) {
                rels.push(col);
            }
        }
    }
    let m = PresentedModule::new(ring.clone(), gens, Some(weights), rels);
    if m.is_graded() {
        Ok(m)
    } else {
        Ok(PresentedModule::new(ring.clone(), m.gens, None, m.rels.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::{ModuleTemplate, RuleComplex};

    fn qring(vars: &[&str]) -> Arc<RingSpec> {
        Arc::new(RingSpec::poly_ring_q(vars))
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn all_vars(ring: &Arc<RingSpec>) -> Vec<Polynomial> {
        (0..ring.nvars()).map(|i| ring.var(i)).collect()
    }

    #[test]
    fn depth_of_regular_sequence() {
        let r = qring(&["x", "y", "z"]);
        let m = all_vars(&r);
        let c = ComplexHandle::Free(FreeComplex::unit(r.clone()));
        let dk = depth_koszul(&m, &c, &caps()).unwrap();
        assert_eq!(dk.value, ExtInt::Int(3));
        assert_eq!(dk.certainty, Certainty::Exact);
        let dc = depth_koszul_coh(&m, &c, &caps()).unwrap();
        assert_eq!(dc.value, ExtInt::Int(3));
        let de = depth_ext(&m, &c, None, &caps()).unwrap();
        assert_eq!(de.value, ExtInt::Int(3));
        assert_eq!(de.certainty, Certainty::Exact);
        let dl = depth_lc(&m, &c, &caps()).unwrap();
        assert_eq!(dl.value, ExtInt::Int(3));
    }

    #[test]
    fn depth_of_hypersurface_module() {
        let r = qring(&["x", "y"]);
        let m = all_vars(&r);
        let c = ComplexHandle::module(PresentedModule::cyclic(r.clone(), vec![r.var(0)]));
        for rep in [
            depth_koszul(&m, &c, &caps()).unwrap(),
            depth_koszul_coh(&m, &c, &caps()).unwrap(),
            depth_ext(&m, &c, None, &caps()).unwrap(),
            depth_lc(&m, &c, &caps()).unwrap(),
        ] {
            assert_eq!(rep.value, ExtInt::Int(1), "route {}", rep.route);
        }
    }

    #[test]
    fn depth_of_zero_complex_is_plus_infinity() {
        let r = qring(&["x"]);
        let c = ComplexHandle::Free(FreeComplex::zero(r.clone()));
        for rep in [
            depth_koszul(&[r.var(0)], &c, &caps()).unwrap(),
            depth_koszul_coh(&[r.var(0)], &c, &caps()).unwrap(),
            depth_ext(&[r.var(0)], &c, None, &caps()).unwrap(),
            depth_lc(&[r.var(0)], &c, &caps()).unwrap(),
        ] {
            assert_eq!(rep.value, ExtInt::PosInf);
            assert_eq!(rep.certainty, Certainty::Exact);
        }
    }

    #[test]
    fn depth_lc_of_line_at_x() {
        let r = qring(&["x"]);
        let c = ComplexHandle::Free(FreeComplex::unit(r.clone()));
        let rep = depth_lc(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::Int(1));
        let c = ComplexHandle::module(PresentedModule::cyclic(r.clone(), vec![r.var(0)]));
        let rep = depth_lc(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::Int(0));
    }

    #[test]
    fn shifted_complex_depth() {
        let r = qring(&["x"]);
        let c = ComplexHandle::Free(FreeComplex::unit(r.clone()).shift(1));
        let dk = depth_koszul(&[r.var(0)], &c, &caps()).unwrap();
        let dc = depth_koszul_coh(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(dk.value, ExtInt::Int(0));
        assert_eq!(dc.value, ExtInt::Int(0));
    }

    #[test]
    fn width_examples() {
        let r = qring(&["x"]);
        let k = PresentedModule::residue_field(r.clone());
        let c = ComplexHandle::module(k);
        assert_eq!(width_koszul(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(0));
        assert_eq!(width_tor(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(0));
        let c = ComplexHandle::Free(FreeComplex::unit(r.clone()).shift(2));
        assert_eq!(width_koszul(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(2));
        assert_eq!(width_tor(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(2));
        let c = ComplexHandle::Free(FreeComplex::zero(r.clone()));
        assert_eq!(width_koszul(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::PosInf);
        assert_eq!(width_tor(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::PosInf);
    }

    #[test]
    fn width_of_negative_shift() {
        let r = qring(&["x"]);
        let k = PresentedModule::residue_field(r.clone());
        let c = ComplexHandle::module(k).shift(-3);
        assert_eq!(width_tor(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(-3));
        assert_eq!(width_koszul(&[r.var(0)], &c, &caps()).unwrap().value, ExtInt::Int(-3));
    }

    #[test]
    fn depth_at_prime_examples() {
        let r = qring(&["x", "y"]);
        let rx = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        let c = ComplexHandle::module(rx);
        let rep = depth_at_prime(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::Int(0));
        let free = ComplexHandle::Free(FreeComplex::unit(r.clone()));
        let rep = depth_at_prime(&all_vars(&r), &free, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::Int(2));
        let rx = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        let rep = depth_at_prime(&[r.var(1)], &ComplexHandle::module(rx), &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::Int(1));
    }

    #[test]
    fn matlis_dual_examples() {
        let r = qring(&["x"]);
        let k = PresentedModule::residue_field(r.clone());
        let dk = matlis_dual(&k).unwrap();
        assert_eq!(dk.dim_k(), Some(1));
        let m = PresentedModule::cyclic(r.clone(), vec![r.parse_poly("x^3").unwrap()]);
        let dm = matlis_dual(&m).unwrap();
        assert_eq!(dm.dim_k(), Some(3));
        let hf: Vec<usize> = (-3..=0).map(|d| dm.hilbert(d)).collect();
        assert_eq!(hf, vec![0, 1, 1, 1]);
        let ddm = matlis_dual(&dm).unwrap();
        let hf2: Vec<usize> = (0..=3).map(|d| ddm.hilbert(d)).collect();
        assert_eq!(hf2, vec![1, 1, 1, 0]);
        let two = PresentedModule::new(
            r.clone(),
            2,
            Some(vec![0, 1]),
            vec![vec![r.var(0), r.zero()], vec![r.zero(), r.var(0)]],
        );
        let d2 = matlis_dual(&two).unwrap();
        assert_eq!(d2.hilbert(0), 1);
        assert_eq!(d2.hilbert(-1), 1);
    }

    #[test]
    fn frobenius_pushforward_examples() {
        let r = Arc::new(
            RingSpec::new(
                Field::Fp(2),
                vec!["x".into()],
                crate::monomial::MonomialOrder::GrevLex,
                vec![],
            )
            .unwrap(),
        );
        let m = frobenius_pushforward(&r, 1).unwrap();
        assert_eq!(m.gens, 2);
        assert!(m.rels.is_empty());
        let r3 = Arc::new(
            RingSpec::new(
                Field::Fp(3),
                vec!["x".into()],
                crate::monomial::MonomialOrder::GrevLex,
                vec![],
            )
            .unwrap(),
        );
        let m3 = frobenius_pushforward(&r3, 1).unwrap();
        assert_eq!(m3.gens, 3);
        let rq = Arc::new({
            let base = RingSpec::new(
                Field::Fp(2),
                vec!["x".into()],
                crate::monomial::MonomialOrder::GrevLex,
                vec![],
            )
            .unwrap();
            let x2 = base.parse_poly("x^2").unwrap();
            base.quotient(&[x2])
        });
        let mq = frobenius_pushforward(&rq, 1).unwrap();
        assert_eq!(mq.dim_k(), Some(2));
        // x acts by zero on the pushforward
        let killed = mq.mod_out(&[rq.var(0)]);
        assert_eq!(killed.dim_k(), Some(2));
    }

    #[test]
    fn comaximal_family_depth() {
        let r = qring(&["t"]);
        let ext = Arc::new(ModuleTemplate::ext_ring(&r, "n"));
        let template = ModuleTemplate {
            base: r.clone(),
            ext: ext.clone(),
            gens: 1,
            weights: None,
            rels: vec![vec![ext.parse_poly("t - n").unwrap()]],
        };
        let window: Vec<PresentedModule> = (0..=5).map(|d| template.instantiate(d)).collect();
        let rc = RuleComplex {
            ring: r.clone(),
            lo: 0,
            modules: window,
            up: Tail::Parametric(template),
            down: Tail::Zero,
        };
        let c = ComplexHandle::Rule(rc);
        for d in 0..=4i64 {
            let ideal = vec![r.parse_poly(&format!("t - {}", d)).unwrap()];
            let rep = depth_koszul(&ideal, &c, &caps()).unwrap();
            assert_eq!(rep.value, ExtInt::Int(-d), "depth at t - {}", d);
            assert_eq!(rep.certainty, Certainty::Conditional);
            let rep2 = depth_ext(&ideal, &c, None, &caps()).unwrap();
            assert_eq!(rep2.value, ExtInt::Int(-d));
        }
        // a = (0): depth = -sup M = -inf
        let rep = depth_koszul(&[], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::NegInf);
    }

    #[test]
    fn periodic_coproduct_depth_is_minus_infinity() {
        let r = qring(&["x"]);
        let k = PresentedModule::residue_field(r.clone());
        let rc = RuleComplex {
            ring: r.clone(),
            lo: 0,
            modules: vec![k.clone()],
            up: Tail::Periodic(vec![k]),
            down: Tail::Zero,
        };
        let c = ComplexHandle::Rule(rc);
        let rep = depth_koszul(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::NegInf);
        assert_eq!(rep.certainty, Certainty::Exact);
        let rep = depth_ext(&[r.var(0)], &c, None, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::NegInf);
        assert_eq!(rep.certainty, Certainty::Exact);
        let rep = depth_lc(&[r.var(0)], &c, &caps()).unwrap();
        assert_eq!(rep.value, ExtInt::NegInf);
    }
}
