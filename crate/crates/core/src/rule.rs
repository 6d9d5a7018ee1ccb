//! Zero-differential complexes with finite windows and rule-governed tails,
//! and the evaluation pipeline that applies free-complex operations
//! summand-wise while tracking what the tails contribute.
//!
//! Periodic tails give exact answers; parametric tails are probed beyond the
//! window and global conclusions drawn from them are labeled conditional.

use crate::complex::FreeComplex;
use crate::extint::ExtInt;
use crate::monomial::Monomial;
use crate::pmodule::PresentedModule;
use crate::poly::Polynomial;
use crate::prescomplex::{HomologyAt, PresentedComplex};
use crate::ring::RingSpec;
use std::sync::Arc;

/// A presentation template with an integer degree parameter. The template
/// lives over the base ring extended by one trailing parameter variable;
/// instantiation substitutes the degree and drops the parameter coordinate.
#[derive(Clone, Debug)]
pub struct ModuleTemplate {
    pub base: Arc<RingSpec>,
    pub ext: Arc<RingSpec>,
    pub gens: usize,
    pub weights: Option<Vec<i64>>,
    /// Relation columns over the extended ring.
    pub rels: Vec<Vec<Polynomial>>,
}

impl ModuleTemplate {
    /// Extend the base ring by a parameter variable.
    pub fn ext_ring(base: &RingSpec, param: &str) -> RingSpec {
        let mut vars = base.vars.clone();
        assert!(!vars.iter().any(|v| v == param), "parameter shadows a ring variable");
        vars.push(param.to_string());
        // the defining ideal does not mention the parameter: reuse it verbatim
        let ideal = base.ideal.iter().map(|p| extend_poly(p, &base.order)).collect();
        RingSpec::new(base.field.clone(), vars, base.order, ideal).unwrap()
    }

    pub fn instantiate(&self, degree: i64) -> PresentedModule {
        let param_index = self.ext.nvars() - 1;
        let rels: Vec<Vec<Polynomial>> = self
            .rels
            .iter()
            .map(|col| {
                col.iter()
                    .map(|p| {
                        let sub = p.substitute_int(
                            param_index,
                            degree,
                            &self.ext.field,
                            &self.ext.order,
                        );
                        project_drop_last(&sub, &self.base.order)
                    })
                    .collect()
            })
            .collect();
        PresentedModule::new(self.base.clone(), self.gens, self.weights.clone(), rels)
    }
}

fn extend_poly(p: &Polynomial, ord: &crate::monomial::MonomialOrder) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.push(0);
            (Monomial::new(e), c.clone())
        })
        .collect();
    Polynomial::from_terms(terms, ord)
}

fn project_drop_last(p: &Polynomial, ord: &crate::monomial::MonomialOrder) -> Polynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = m.exps();
            assert_eq!(*e.last().unwrap(), 0, "parameter must be eliminated before projecting");
            (Monomial::new(e[..e.len() - 1].to_vec()), c.clone())
        })
        .collect();
    Polynomial::from_terms(terms, ord)
}

/// Tail rule extending a rule complex beyond its explicit window.
#[derive(Clone, Debug)]
pub enum Tail {
    Zero,
    /// modules[k] sits k steps beyond the window edge, repeating with period
    /// equal to the list length.
    Periodic(Vec<PresentedModule>),
    Parametric(ModuleTemplate),
}

impl Tail {
    pub fn is_parametric(&self) -> bool {
        matches!(self, Tail::Parametric(_))
    }
    pub fn is_zero(&self) -> bool {
        matches!(self, Tail::Zero)
    }
}

/// A complex with zero differential: an explicit window of presented modules
/// plus tail rules upward and downward.
#[derive(Clone, Debug)]
pub struct RuleComplex {
    pub ring: Arc<RingSpec>,
    pub lo: i64,
    pub modules: Vec<PresentedModule>,
    pub up: Tail,
    pub down: Tail,
}

impl RuleComplex {
    pub fn bounded(ring: Arc<RingSpec>, lo: i64, modules: Vec<PresentedModule>) -> Self {
        RuleComplex { ring, lo, modules, up: Tail::Zero, down: Tail::Zero }
    }

    pub fn single(m: PresentedModule, degree: i64) -> Self {
        RuleComplex::bounded(m.ring.clone(), degree, vec![m])
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    /// The module at any degree; tails instantiate on demand.
    pub fn module_at(&self, d: i64) -> PresentedModule {
        if d >= self.lo && d <= self.hi() {
            return self.modules[(d - self.lo) as usize].clone();
        }
        let (tail, steps) = if d > self.hi() {
            (&self.up, (d - self.hi() - 1) as usize)
        } else {
            (&self.down, (self.lo - 1 - d) as usize)
        };
        match tail {
            Tail::Zero => PresentedModule::zero(self.ring.clone()),
            Tail::Periodic(mods) => mods[steps % mods.len()].clone(),
            Tail::Parametric(t) => t.instantiate(d),
        }
    }

    pub fn has_parametric_tail(&self) -> bool {
        self.up.is_parametric() || self.down.is_parametric()
    }

    pub fn is_bounded(&self) -> bool {
        self.up.is_zero() && self.down.is_zero()
    }
}

/// Either a bounded free complex or a rule complex.
#[derive(Clone, Debug)]
pub enum ComplexHandle {
    Free(FreeComplex),
    Rule(RuleComplex),
}

impl ComplexHandle {
    pub fn ring(&self) -> &Arc<RingSpec> {
        match self {
            ComplexHandle::Free(f) => &f.ring,
            ComplexHandle::Rule(r) => &r.ring,
        }
    }

    pub fn module(m: PresentedModule) -> Self {
        ComplexHandle::Rule(RuleComplex::single(m, 0))
    }

    pub fn shift(&self, n: i64) -> Self {
        match self {
            ComplexHandle::Free(f) => ComplexHandle::Free(f.shift(n)),
            ComplexHandle::Rule(r) => {
                let mut r = r.clone();
                r.lo += n;
                ComplexHandle::Rule(r)
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ComplexHandle::Free(_) => true,
            ComplexHandle::Rule(r) => r.is_bounded(),
        }
    }

    /// Degreewise finite with weights everywhere it needs them.
    pub fn is_weighted(&self) -> bool {
        match self {
            ComplexHandle::Free(f) => f.is_weighted(),
            ComplexHandle::Rule(r) => r.modules.iter().all(|m| m.weights.is_some()),
        }
    }
}

/// A free-complex operation applied summand-wise to an evaluation.
#[derive(Clone, Debug)]
pub enum FreeOp {
    TensorLeft(FreeComplex),
    HomFrom(FreeComplex),
    Shift(i64),
}

/// An extended-integer answer with an exactness label: conditional answers
/// rest on the asserted validity of a parametric tail beyond the probe range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtValue {
    pub value: ExtInt,
    pub exact: bool,
}

impl ExtValue {
    pub fn exact(value: ExtInt) -> Self {
        ExtValue { value, exact: true }
    }
    pub fn conditional(value: ExtInt) -> Self {
        ExtValue { value, exact: false }
    }
}

pub const DEFAULT_PROBE: usize = 4;

/// A complex prepared for computation: bounded summands holding the window
/// content, the original rule kept for tail instantiation, and the pipeline
/// of free operations applied so far.
#[derive(Clone, Debug)]
pub struct EvalComplex {
    pub ring: Arc<RingSpec>,
    summands: Vec<PresentedComplex>,
    rule: Option<RuleComplex>,
    ops: Vec<FreeOp>,
    /// window the op pipeline spreads a point module over, relative to its degree
    op_lo: i64,
    op_hi: i64,
    pub probe: usize,
}

impl EvalComplex {
    pub fn from_handle(h: &ComplexHandle) -> Self {
        match h {
            ComplexHandle::Free(f) => EvalComplex {
                ring: f.ring.clone(),
                summands: vec![PresentedComplex::from_free(f)],
                rule: None,
                ops: vec![],
                op_lo: 0,
                op_hi: 0,
                probe: DEFAULT_PROBE,
            },
            ComplexHandle::Rule(r) => {
                let summands = r
                    .modules
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m.gens > 0)
                    .map(|(k, m)| PresentedComplex::from_module(m, r.lo + k as i64))
                    .collect();
                EvalComplex {
                    ring: r.ring.clone(),
                    summands,
                    rule: Some(r.clone()),
                    ops: vec![],
                    op_lo: 0,
                    op_hi: 0,
                    probe: DEFAULT_PROBE,
                }
            }
        }
    }

    pub fn with_probe(mut self, probe: usize) -> Self {
        self.probe = probe.max(1);
        self
    }

    pub fn is_conditional(&self) -> bool {
        self.rule.as_ref().map_or(false, |r| r.has_parametric_tail())
    }

    fn apply_to(&self, p: &PresentedComplex, op: &FreeOp) -> PresentedComplex {
        match op {
            FreeOp::TensorLeft(f) => PresentedComplex::free_tensor(f, p),
            FreeOp::HomFrom(f) => PresentedComplex::hom_from_free(f, p),
            FreeOp::Shift(n) => p.shift(*n),
        }
    }

    pub fn apply(&self, op: FreeOp) -> EvalComplex {
        let summands = self.summands.iter().map(|p| self.apply_to(p, &op)).collect();
        let (dlo, dhi) = match &op {
            FreeOp::TensorLeft(f) => match f.window() {
                Some((a, b)) => (a, b),
                None => (0, 0),
            },
            FreeOp::HomFrom(f) => match f.window() {
                Some((a, b)) => (-b, -a),
                None => (0, 0),
            },
            FreeOp::Shift(n) => (*n, *n),
        };
        let mut ops = self.ops.clone();
        ops.push(op);
        EvalComplex {
            ring: self.ring.clone(),
            summands,
            rule: self.rule.clone(),
            ops,
            op_lo: self.op_lo + dlo,
            op_hi: self.op_hi + dhi,
            probe: self.probe,
        }
    }

    /// Instantiate the (transformed) tail element whose base module sits at
    /// original degree e.
    fn tail_instance(&self, e: i64) -> PresentedComplex {
        let rule = self.rule.as_ref().expect("tail instance needs a rule complex");
        let m = rule.module_at(e);
        let mut p = PresentedComplex::from_module(&m, e);
        for op in &self.ops {
            p = self.apply_to(&p, op);
        }
        p
    }

    /// Tail representative degrees in the given direction: one period for
    /// periodic tails, the probe range for parametric ones.
    fn tail_rep_degrees(&self, upward: bool) -> Vec<i64> {
        let Some(rule) = &self.rule else { return vec![] };
        let tail = if upward { &rule.up } else { &rule.down };
        let edge = if upward { rule.hi() + 1 } else { rule.lo - 1 };
        let dir: i64 = if upward { 1 } else { -1 };
        match tail {
            Tail::Zero => vec![],
            Tail::Periodic(mods) => (0..mods.len() as i64).map(|k| edge + dir * k).collect(),
            Tail::Parametric(_) => (0..self.probe as i64).map(|k| edge + dir * k).collect(),
        }
    }

    fn tail_is_parametric(&self, upward: bool) -> bool {
        self.rule
            .as_ref()
            .map_or(false, |r| if upward { r.up.is_parametric() } else { r.down.is_parametric() })
    }

    /// Largest degree with nonzero homology.
    pub fn sup(&self) -> ExtValue {
        let mut value = ExtInt::NegInf;
        let mut exact = true;
        for s in &self.summands {
            value = value.max(s.sup());
        }
        // a nonzero module repeating upward forces sup = +inf
        let up = self.tail_rep_degrees(true);
        let up_param = self.tail_is_parametric(true);
        for e in &up {
            let t = self.tail_instance(*e);
            if t.has_nonzero_homology() {
                return ExtValue { value: ExtInt::PosInf, exact: !up_param };
            }
        }
        if up_param && !up.is_empty() {
            exact = false;
        }
        // downward tails contribute their top occurrences
        let down = self.tail_rep_degrees(false);
        let down_param = self.tail_is_parametric(false);
        for e in &down {
            let t = self.tail_instance(*e);
            value = value.max(t.sup());
        }
        if down_param && !down.is_empty() {
            exact = false;
        }
        ExtValue { value, exact }
    }

    /// Smallest degree with nonzero homology.
    pub fn inf(&self) -> ExtValue {
        let mut value = ExtInt::PosInf;
        let mut exact = true;
        for s in &self.summands {
            value = value.min(s.inf());
        }
        let down = self.tail_rep_degrees(false);
        let down_param = self.tail_is_parametric(false);
        for e in &down {
            let t = self.tail_instance(*e);
            if t.has_nonzero_homology() {
                return ExtValue { value: ExtInt::NegInf, exact: !down_param };
            }
        }
        if down_param && !down.is_empty() {
            exact = false;
        }
        let up = self.tail_rep_degrees(true);
        let up_param = self.tail_is_parametric(true);
        for e in &up {
            let t = self.tail_instance(*e);
            value = value.min(t.inf());
        }
        if up_param && !up.is_empty() {
            exact = false;
        }
        ExtValue { value, exact }
    }

    /// All direct-sum pieces of the homology at one degree.
    pub fn homology_pieces(&self, d: i64) -> Vec<HomologyAt> {
        let mut out: Vec<HomologyAt> = Vec::new();
        for s in &self.summands {
            if let Some((lo, hi)) = s.window() {
                if d >= lo && d <= hi {
                    out.push(s.homology_at(d));
                }
            }
        }
        if let Some(rule) = &self.rule {
            // tail elements whose transformed window can reach degree d
            let lo_e = d - self.op_hi;
            let hi_e = d - self.op_lo;
            for e in lo_e..=hi_e {
                if e > rule.hi() && !rule.up.is_zero() {
                    let t = self.tail_instance(e);
                    out.push(t.homology_at(d));
                } else if e < rule.lo && !rule.down.is_zero() {
                    let t = self.tail_instance(e);
                    out.push(t.homology_at(d));
                }
            }
        }
        out
    }

    /// Homology at one degree as a single presented module.
    pub fn homology_at(&self, d: i64) -> PresentedModule {
        let pieces = self.homology_pieces(d);
        let mut acc = PresentedModule::zero(self.ring.clone());
        for p in pieces {
            acc = acc.direct_sum(&p.module);
        }
        acc
    }

    pub fn summands(&self) -> &[PresentedComplex] {
        &self.summands
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str]) -> Arc<RingSpec> {
        Arc::new(RingSpec::poly_ring_q(vars))
    }

    #[test]
    fn periodic_tail_forces_infinite_sup() {
        // coproduct over n >= 0 of Sigma^n k over Q[x]
        let r = qring(&["x"]);
        let k = PresentedModule::residue_field(r.clone());
        let rc = RuleComplex {
            ring: r.clone(),
            lo: 0,
            modules: vec![k.clone()],
            up: Tail::Periodic(vec![k]),
            down: Tail::Zero,
        };
        let ev = EvalComplex::from_handle(&ComplexHandle::Rule(rc));
        let sup = ev.sup();
        assert_eq!(sup.value, ExtInt::PosInf);
        assert!(sup.exact);
        let inf = ev.inf();
        assert_eq!(inf.value, ExtInt::Int(0));
        assert!(inf.exact);
    }

    #[test]
    fn parametric_tail_instantiates_and_marks_conditional() {
        // modules R/(t - n) at degree n over Q[t]
        let r = qring(&["t"]);
        let ext = Arc::new(ModuleTemplate::ext_ring(&r, "n"));
        let rel = ext.parse_poly("t - n").unwrap();
        let template = ModuleTemplate {
            base: r.clone(),
            ext: ext.clone(),
            gens: 1,
            weights: None,
            rels: vec![vec![rel]],
        };
        let m3 = template.instantiate(3);
        let expect = r.parse_poly("t - 3").unwrap();
        assert_eq!(m3.rels[0][0], expect);

        let rc = RuleComplex {
            ring: r.clone(),
            lo: 0,
            modules: vec![template.instantiate(0)],
            up: Tail::Parametric(template),
            down: Tail::Zero,
        };
        let ev = EvalComplex::from_handle(&ComplexHandle::Rule(rc));
        let sup = ev.sup();
        assert_eq!(sup.value, ExtInt::PosInf);
        assert!(!sup.exact);
        // homology at a tail degree is the instantiated module
        let h5 = ev.homology_at(5);
        assert!(!h5.is_zero());
    }

    #[test]
    fn zero_tail_keeps_window_answers_exact() {
        let r = qring(&["x"]);
        let m = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        let rc = RuleComplex::bounded(r.clone(), 2, vec![m]);
        let ev = EvalComplex::from_handle(&ComplexHandle::Rule(rc));
        assert_eq!(ev.sup(), ExtValue::exact(ExtInt::Int(2)));
        assert_eq!(ev.inf(), ExtValue::exact(ExtInt::Int(2)));
        assert!(ev.homology_at(0).is_zero());
    }
}
