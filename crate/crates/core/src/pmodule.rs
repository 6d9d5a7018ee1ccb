//! Finitely presented modules over R: cokernels of relation matrices, with
//! optional grading, plus the module-level operations the homology and
//! invariant layers consume (vanishing, Hilbert functions, annihilators,
//! colon and saturation, socles, tensor and Hom of modules).

use crate::groebner::{kernel_cols, vec_zero, PolyVec, RSubmodule, SubmoduleGens};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingSpec;
use once_cell::sync::OnceCell;
use std::sync::Arc;

/// A finitely generated module given as the cokernel of a relation matrix.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub ring: Arc<RingSpec>,
    pub gens: usize,
    /// Generator weights when the module is graded.
    pub weights: Option<Vec<i64>>,
    /// Relation columns, each of length `gens`.
    pub rels: Vec<PolyVec>,
    rel_gb: OnceCell<Arc<RSubmodule>>,
}

impl PresentedModule {
    pub fn new(
        ring: Arc<RingSpec>,
        gens: usize,
        weights: Option<Vec<i64>>,
        rels: Vec<PolyVec>,
    ) -> Self {
        for r in &rels {
            assert_eq!(r.len(), gens, "relation column length must equal generator count");
        }
        if let Some(w) = &weights {
            assert_eq!(w.len(), gens);
        }
        PresentedModule { ring, gens, weights, rels, rel_gb: OnceCell::new() }
    }

    /// Free module of the given rank.
    pub fn free(ring: Arc<RingSpec>, rank: usize, weights: Option<Vec<i64>>) -> Self {
        PresentedModule::new(ring, rank, weights, Vec::new())
    }

    /// Cyclic module R/a.
    pub fn cyclic(ring: Arc<RingSpec>, ideal: Vec<Polynomial>) -> Self {
        let rels = ideal.into_iter().filter(|p| !p.is_zero()).map(|p| vec![p]).collect();
        PresentedModule::new(ring, 1, Some(vec![0]), rels)
    }

    /// The residue field k = R/m, m the irrelevant maximal ideal.
    pub fn residue_field(ring: Arc<RingSpec>) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        PresentedModule::cyclic(ring, vars)
    }

    pub fn zero(ring: Arc<RingSpec>) -> Self {
        PresentedModule::new(ring, 0, Some(vec![]), Vec::new())
    }

    pub fn rel_gb(&self) -> &Arc<RSubmodule> {
        self.rel_gb.get_or_init(|| {
            Arc::new(RSubmodule::new(&self.ring, self.gens, &self.rels))
        })
    }

    pub fn is_zero(&self) -> bool {
        if self.gens == 0 {
            return true;
        }
        let gb = self.rel_gb();
        (0..self.gens).all(|c| {
            let mut e = vec_zero(self.gens);
            e[c] = self.ring.one();
            gb.contains(&self.ring, &e)
        })
    }

    /// Graded iff the ring is graded, weights are assigned, and every relation
    /// column is homogeneous of one degree relative to the weights.
    pub fn is_graded(&self) -> bool {
        if !self.ring.is_graded() {
            return false;
        }
        let Some(w) = &self.weights else { return false };
        self.rels.iter().all(|col| column_degree(col, w).is_some())
    }

    /// Hilbert function: k-dimension of the degree-d piece (graded modules).
    pub fn hilbert(&self, d: i64) -> usize {
        let w = self.weights.as_ref().expect("hilbert needs weights");
        let lts = self.rel_gb().lead_terms(&self.ring);
        let mut count = 0;
        for c in 0..self.gens {
            let rel_deg = d - w[c];
            if rel_deg < 0 {
                continue;
            }
            for m in self.ring.monomials_of_degree(rel_deg as u32) {
                let standard = !lts
                    .iter()
                    .any(|(lc, lm)| *lc == c && lm.divides(&m));
                if standard {
                    count += 1;
                }
            }
        }
        count
    }

    /// Hilbert function over a degree window.
    pub fn hilbert_table(&self, lo: i64, hi: i64) -> Vec<(i64, usize)> {
        (lo..=hi).map(|d| (d, self.hilbert(d))).collect()
    }

    /// Standard monomial basis (component, monomial) when the module has
    /// finite k-dimension; None when infinite-dimensional.
    pub fn k_basis(&self) -> Option<Vec<(usize, Monomial)>> {
        let lts = self.rel_gb().lead_terms(&self.ring);
        let n = self.ring.nvars();
        let mut basis = Vec::new();
        for c in 0..self.gens {
            // the component is finite iff some pure power of each variable
            // leads a relation in it (or the component dies entirely)
            let mut bounds: Vec<Option<u32>> = vec![None; n];
            let mut dead = false;
            for (lc, lm) in &lts {
                if *lc != c {
                    continue;
                }
                if lm.is_one() {
                    dead = true;
                    break;
                }
                let nz: Vec<usize> =
                    (0..n).filter(|i| lm.exps()[*i] > 0).collect();
                if nz.len() == 1 {
                    let i = nz[0];
                    let e = lm.exps()[i];
                    bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
                }
            }
            if dead {
                continue;
            }
            if bounds.iter().any(|b| b.is_none()) {
                return None;
            }
            let bounds: Vec<u32> = bounds.into_iter().map(|b| b.unwrap()).collect();
            let mut exps = vec![0u32; n];
            enumerate_bounded(&mut exps, 0, &bounds, &mut |m: &Monomial| {
                let standard =
                    !lts.iter().any(|(lc, lm)| *lc == c && lm.divides(m));
                if standard {
                    basis.push((c, m.clone()));
                }
            });
        }
        Some(basis)
    }

    /// Total k-dimension when finite.
    pub fn dim_k(&self) -> Option<usize> {
        self.k_basis().map(|b| b.len())
    }

    /// Annihilator ideal of the module.
    pub fn annihilator(&self) -> Vec<Polynomial> {
        if self.gens == 0 {
            return vec![self.ring.one()];
        }
        let mut acc: Option<Vec<Polynomial>> = None;
        for c in 0..self.gens {
            let mut e = vec_zero(self.gens);
            e[c] = self.ring.one();
            let ker = kernel_cols(&self.ring, self.gens, &[e], &self.rels);
            let colon: Vec<Polynomial> =
                ker.into_iter().map(|v| v[0].clone()).filter(|p| !p.is_zero()).collect();
            acc = Some(match acc {
                None => colon,
                Some(prev) => intersect_ideals(&self.ring, &prev, &colon),
            });
        }
        acc.unwrap_or_else(|| vec![self.ring.one()])
    }

    /// M/aM.
    pub fn mod_out(&self, ideal: &[Polynomial]) -> PresentedModule {
        let mut rels = self.rels.clone();
        for f in ideal {
            for c in 0..self.gens {
                let mut v = vec_zero(self.gens);
                v[c] = f.clone();
                rels.push(v);
            }
        }
        PresentedModule::new(self.ring.clone(), self.gens, self.weights.clone(), rels)
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        assert_eq!(self.ring, other.ring);
        let gens = self.gens + other.gens;
        let weights = match (&self.weights, &other.weights) {
            (Some(a), Some(b)) => {
                let mut w = a.clone();
                w.extend(b.iter().copied());
                Some(w)
            }
            _ => None,
        };
        let mut rels = Vec::new();
        for r in &self.rels {
            let mut v = r.clone();
            v.extend(vec_zero(other.gens));
            rels.push(v);
        }
        for r in &other.rels {
            let mut v = vec_zero(self.gens);
            v.extend(r.clone());
            rels.push(v);
        }
        PresentedModule::new(self.ring.clone(), gens, weights, rels)
    }
}

fn enumerate_bounded(
    exps: &mut Vec<u32>,
    i: usize,
    bounds: &[u32],
    f: &mut impl FnMut(&Monomial),
) {
    if i == exps.len() {
        f(&Monomial::new(exps.clone()));
        return;
    }
    for e in 0..bounds[i] {
        exps[i] = e;
        enumerate_bounded(exps, i + 1, bounds, f);
    }
    exps[i] = 0;
}

/// Degree of a homogeneous relation column relative to generator weights.
pub fn column_degree(col: &PolyVec, weights: &[i64]) -> Option<i64> {
    let mut deg: Option<i64> = None;
    for (i, p) in col.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree()? as i64 + weights[i];
        match deg {
            None => deg = Some(d),
            Some(e) if e == d => {}
            _ => return None,
        }
    }
    deg.or(Some(0))
}

/// Intersection of two ideals given by generator lists.
pub fn intersect_ideals(
    ring: &RingSpec,
    a: &[Polynomial],
    b: &[Polynomial],
) -> Vec<Polynomial> {
    use crate::groebner::{ideal_arith, IdealOp};
    let ia = SubmoduleGens::ideal(a.to_vec());
    let ib = SubmoduleGens::ideal(b.to_vec());
    ideal_arith(ring, &ia, &ib, IdealOp::Intersection).ideal_gens()
}

/// Present the subquotient span(sub)/span(denom) of R^rank: generators are the
/// given subgenerators, relations are every coefficient vector carrying a
/// combination of them into the denominator span.
pub fn present_subquotient(
    ring: &Arc<RingSpec>,
    rank: usize,
    ambient_weights: Option<&[i64]>,
    sub: &[PolyVec],
    denom: &[PolyVec],
) -> PresentedModule {
    let rels = kernel_cols(ring, rank, sub, denom);
    let weights = ambient_weights.and_then(|w| {
        let mut out = Vec::with_capacity(sub.len());
        for v in sub {
            out.push(column_degree(v, w)?);
        }
        Some(out)
    });
    PresentedModule::new(ring.clone(), sub.len(), weights, rels)
}

/// A map of presented modules, given by its matrix on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    /// Columns: images of the source generators, each of length target.gens.
    pub matrix: Vec<PolyVec>,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Vec<PolyVec>) -> Self {
        assert_eq!(matrix.len(), source.gens);
        for c in &matrix {
            assert_eq!(c.len(), target.gens);
        }
        ModuleMap { source, target, matrix }
    }

    /// Maps relations into relations.
    pub fn is_well_defined(&self) -> bool {
        let gb = self.target.rel_gb();
        self.source.rels.iter().all(|r| {
            let img = apply_cols(&self.matrix, r, &self.source.ring);
            gb.contains(&self.source.ring, &img)
        })
    }

    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target.gens, then.source.gens);
        let matrix: Vec<PolyVec> = self
            .matrix
            .iter()
            .map(|col| apply_cols(&then.matrix, col, &self.source.ring))
            .collect();
        ModuleMap::new(self.source.clone(), then.target.clone(), matrix)
    }

    /// Zero map test: every generator image lies in the target relations.
    pub fn is_zero_map(&self) -> bool {
        let gb = self.target.rel_gb();
        self.matrix.iter().all(|col| gb.contains(&self.source.ring, col))
    }

    /// The cokernel target/(image + relations).
    pub fn cokernel(&self) -> PresentedModule {
        let mut rels = self.target.rels.clone();
        rels.extend(self.matrix.iter().cloned());
        PresentedModule::new(
            self.target.ring.clone(),
            self.target.gens,
            self.target.weights.clone(),
            rels,
        )
    }

    /// Hilbert function of the image submodule of the target, per degree.
    pub fn image_hilbert(&self, lo: i64, hi: i64) -> Vec<usize> {
        let coker = self.cokernel();
        (lo..=hi)
            .map(|d| self.target.hilbert(d) - coker.hilbert(d))
            .collect()
    }

    /// Total k-dimension of the image, when target is finite-dimensional.
    pub fn image_dim(&self) -> Option<usize> {
        let t = self.target.dim_k()?;
        let c = self.cokernel().dim_k()?;
        Some(t - c)
    }
}

pub use crate::groebner::{apply_cols_raw as apply_cols, compose_cols_raw as compose_cols};

/// (0 :_M a): the submodule killed by the ideal, presented abstractly.
pub fn colon_module(m: &PresentedModule, a: &[Polynomial]) -> PresentedModule {
    let sub = colon_submodule_gens(m, a);
    present_subquotient(
        &m.ring,
        m.gens,
        m.weights.as_deref(),
        &sub,
        &m.rels,
    )
}

/// Generators (in R^gens) of the colon submodule {v : a v inside relations}.
pub fn colon_submodule_gens(m: &PresentedModule, a: &[Polynomial]) -> Vec<PolyVec> {
    let ring = &m.ring;
    if a.is_empty() {
        // (0 : (0)) is all of M
        return (0..m.gens)
            .map(|c| {
                let mut e = vec_zero(m.gens);
                e[c] = ring.one();
                e
            })
            .collect();
    }
    // kernel of M -> M^(#a), v |-> (a_i v): stacked matrix with relation blocks
    let k = a.len();
    let stacked_rank = m.gens * k;
    let mut cols: Vec<PolyVec> = Vec::with_capacity(m.gens);
    for c in 0..m.gens {
        let mut col = vec_zero(stacked_rank);
        for (bi, f) in a.iter().enumerate() {
            col[bi * m.gens + c] = f.clone();
        }
        cols.push(col);
    }
    let mut denom: Vec<PolyVec> = Vec::new();
    for bi in 0..k {
        for r in &m.rels {
            let mut v = vec_zero(stacked_rank);
            v[bi * m.gens..(bi + 1) * m.gens].clone_from_slice(r);
            denom.push(v);
        }
    }
    kernel_cols(ring, stacked_rank, &cols, &denom)
}

/// Outcome of a saturation run.
pub struct SaturationResult {
    pub module: PresentedModule,
    /// Generators of the stabilized torsion submodule inside R^gens.
    pub submodule: Vec<PolyVec>,
    pub steps: usize,
}

pub const SATURATION_CAP: usize = 64;

/// Gamma_a(M) = (0 :_M a^infinity), by iterating colon to a fixed point.
pub fn saturate_module(m: &PresentedModule, a: &[Polynomial]) -> SaturationResult {
    let ring = &m.ring;
    // V_j = (rels : a^j) ascending; start from the relations themselves
    let mut current: Vec<PolyVec> = m.rels.clone();
    let mut steps = 0;
    loop {
        assert!(steps < SATURATION_CAP, "saturation exceeded {} iterations", SATURATION_CAP);
        let stage = PresentedModule::new(ring.clone(), m.gens, m.weights.clone(), current.clone());
        let next = colon_submodule_gens(&stage, a);
        // fixed point: next adds nothing beyond current
        let cur_gb = RSubmodule::new(ring, m.gens, &current);
        let stable = next.iter().all(|v| cur_gb.contains(ring, v));
        if stable && steps > 0 {
            break;
        }
        if stable && steps == 0 {
            // no torsion at all: still report the fixed point (the relations)
            break;
        }
        current = next;
        steps += 1;
    }
    let module = present_subquotient(ring, m.gens, m.weights.as_deref(), &current, &m.rels);
    SaturationResult { module, submodule: current, steps }
}

/// True when a power of the ideal kills the whole module.
pub fn is_torsion(m: &PresentedModule, a: &[Polynomial]) -> bool {
    let sat = saturate_module(m, a);
    let gb = RSubmodule::new(&m.ring, m.gens, &sat.submodule);
    (0..m.gens).all(|c| {
        let mut e = vec_zero(m.gens);
        e[c] = m.ring.one();
        gb.contains(&m.ring, &e)
    })
}

/// Socle test: (0 :_M m) != 0 for the given maximal-ideal generators.
pub fn socle_test(m: &PresentedModule, max_ideal: &[Polynomial]) -> bool {
    let sub = colon_submodule_gens(m, max_ideal);
    let gb = m.rel_gb();
    sub.iter().any(|v| !gb.contains(&m.ring, v))
}

/// Tensor product of presented modules.
pub fn tensor_modules(m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    assert_eq!(m.ring, n.ring);
    let ring = &m.ring;
    let gens = m.gens * n.gens;
    let weights = match (&m.weights, &n.weights) {
        (Some(a), Some(b)) => {
            let mut w = Vec::with_capacity(gens);
            for x in a {
                for y in b {
                    w.push(x + y);
                }
            }
            Some(w)
        }
        _ => None,
    };
    // index (i, j) -> i * n.gens + j
    let mut rels = Vec::new();
    for r in &m.rels {
        for j in 0..n.gens {
            let mut v = vec_zero(gens);
            for (i, p) in r.iter().enumerate() {
                v[i * n.gens + j] = p.clone();
            }
            rels.push(v);
        }
    }
    for r in &n.rels {
        for i in 0..m.gens {
            let mut v = vec_zero(gens);
            for (j, p) in r.iter().enumerate() {
                v[i * n.gens + j] = p.clone();
            }
            rels.push(v);
        }
    }
    PresentedModule::new(ring.clone(), gens, weights, rels)
}

/// Hom(M, N) of presented modules, presented abstractly.
pub fn hom_modules(m: &PresentedModule, n: &PresentedModule) -> PresentedModule {
    assert_eq!(m.ring, n.ring);
    let ring = &m.ring;
    // a homomorphism is a target.gens x source.gens matrix phi with
    // phi(rel) inside N's relations for every relation of M
    let amb = m.gens * n.gens; // vec(phi), phi[j*n.gens + q] = entry (q, j)
    let mut cols: Vec<PolyVec> = Vec::with_capacity(amb);
    let stacked = n.gens * m.rels.len().max(1);
    if m.rels.is_empty() {
        // Hom(R^g, N) = N^g
        let mut hom = PresentedModule::free(ring.clone(), 0, Some(vec![]));
        for _ in 0..m.gens {
            hom = hom.direct_sum(n);
        }
        if m.gens == 0 {
            return PresentedModule::zero(ring.clone());
        }
        return hom;
    }
    for j in 0..m.gens {
        for q in 0..n.gens {
            // condition vector: for each relation r of M, the image column
            // sum_j phi(-, j) r_j must lie in N's relations
            let mut cond = vec_zero(stacked);
            for (ri, r) in m.rels.iter().enumerate() {
                cond[ri * n.gens + q] = r[j].clone();
            }
            cols.push(cond);
        }
    }
    let mut denom: Vec<PolyVec> = Vec::new();
    for ri in 0..m.rels.len() {
        for r in &n.rels {
            let mut v = vec_zero(stacked);
            v[ri * n.gens..(ri + 1) * n.gens].clone_from_slice(r);
            denom.push(v);
        }
    }
    let homs = kernel_cols(ring, stacked, &cols, &denom);
    // quotient by maps landing in the relations of N
    let mut trivial: Vec<PolyVec> = Vec::new();
    for j in 0..m.gens {
        for r in &n.rels {
            let mut v = vec_zero(amb);
            v[j * n.gens..(j + 1) * n.gens].clone_from_slice(r);
            trivial.push(v);
        }
    }
    present_subquotient(ring, amb, None, &homs, &trivial)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qring(vars: &[&str]) -> Arc<RingSpec> {
        Arc::new(RingSpec::poly_ring_q(vars))
    }

    #[test]
    fn zero_detection() {
        let r = qring(&["x"]);
        // coker of identity
        let m = PresentedModule::new(r.clone(), 1, None, vec![vec![r.one()]]);
        assert!(m.is_zero());
        // R/(x) is not zero
        let m = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        assert!(!m.is_zero());
        // (x, 1-x) spans 1
        let one_minus_x = r.sub(&r.one(), &r.var(0));
        let m = PresentedModule::new(r.clone(), 1, None, vec![vec![r.var(0)], vec![one_minus_x]]);
        assert!(m.is_zero());
    }

    #[test]
    fn hilbert_of_quotients() {
        let r = qring(&["x", "y"]);
        let free = PresentedModule::free(r.clone(), 1, Some(vec![0]));
        assert_eq!(free.hilbert(0), 1);
        assert_eq!(free.hilbert(3), 4);
        let k = PresentedModule::residue_field(r.clone());
        assert_eq!(k.hilbert(0), 1);
        assert_eq!(k.hilbert(1), 0);
        assert_eq!(k.dim_k(), Some(1));
        let m = PresentedModule::cyclic(r.clone(), vec![r.parse_poly("x^2").unwrap(), r.var(1)]);
        assert_eq!(m.dim_k(), Some(2));
    }

    #[test]
    fn saturation_examples() {
        // M = R/(x^2) over Q[x], a = (x): torsion, fixed point after two colons
        let r = qring(&["x"]);
        let m = PresentedModule::cyclic(r.clone(), vec![r.parse_poly("x^2").unwrap()]);
        let sat = saturate_module(&m, &[r.var(0)]);
        assert_eq!(sat.steps, 2);
        assert!(is_torsion(&m, &[r.var(0)]));
        // free module: no torsion
        let free = PresentedModule::free(r.clone(), 1, Some(vec![0]));
        let sat = saturate_module(&free, &[r.var(0)]);
        assert!(sat.module.is_zero());
        // R/(x) + R: torsion part is R/(x)
        let sum = PresentedModule::cyclic(r.clone(), vec![r.var(0)])
            .direct_sum(&PresentedModule::free(r.clone(), 1, Some(vec![0])));
        let sat = saturate_module(&sum, &[r.var(0)]);
        assert!(!sat.module.is_zero());
        assert_eq!(sat.module.hilbert(0), 1);
        assert_eq!(sat.module.hilbert(1), 0);
    }

    #[test]
    fn socle_examples() {
        let r = qring(&["x"]);
        let mgens = vec![r.var(0)];
        let k = PresentedModule::residue_field(r.clone());
        assert!(socle_test(&k, &mgens));
        let free = PresentedModule::free(r.clone(), 1, Some(vec![0]));
        assert!(!socle_test(&free, &mgens));
        let m = PresentedModule::cyclic(r.clone(), vec![r.parse_poly("x^2").unwrap()]);
        assert!(socle_test(&m, &mgens));
    }

    #[test]
    fn annihilator_of_cyclic() {
        let r = qring(&["x", "y"]);
        let m = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        let ann = m.annihilator();
        let gb = RSubmodule::new(&r, 1, &[vec![r.var(0)]]);
        for f in &ann {
            assert!(gb.contains(&r, &vec![f.clone()]));
        }
        assert!(ann.iter().any(|f| !f.is_zero()));
    }

    #[test]
    fn hom_and_tensor_of_cyclics() {
        let r = qring(&["x"]);
        let rx = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        // Hom(R/(x), R/(x)) is R/(x): one generator, nonzero, killed by x
        let h = hom_modules(&rx, &rx);
        assert!(!h.is_zero());
        assert_eq!(h.dim_k(), Some(1));
        // R/(x) (x) R/(x) = R/(x)
        let t = tensor_modules(&rx, &rx);
        assert_eq!(t.dim_k(), Some(1));
        // Hom(R/(x), R) = 0
        let free = PresentedModule::free(r.clone(), 1, Some(vec![0]));
        let h0 = hom_modules(&rx, &free);
        assert!(h0.is_zero());
    }
}
