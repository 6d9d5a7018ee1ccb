//! Bounded complexes whose terms are quotients of free modules by relation
//! submodules. Free complexes, a free complex tensored with a presented
//! module, and Hom from a free complex into such terms all land here, and
//! homology presentations come out.

use crate::complex::FreeComplex;
use crate::groebner::{compose_cols_raw, kernel_cols, vec_zero, PolyVec, RSubmodule};
use crate::pmodule::{present_subquotient, PresentedModule};
use crate::ring::RingSpec;
use std::sync::Arc;

/// A presentation of a homology module together with the cycle vectors its
/// generators map to, inside the ambient free term of the complex.
#[derive(Clone, Debug)]
pub struct HomologyAt {
    pub module: PresentedModule,
    /// cycles[l] in R^rank realizes generator l of the module.
    pub cycles: Vec<PolyVec>,
    pub ambient_rank: usize,
}

/// A complex of presented modules on a finite window. Term at degree d is
/// R^{rank_d} / span(rels_d); differentials are matrices on the free covers
/// carrying relations into relations.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub ring: Arc<RingSpec>,
    lo: i64,
    ranks: Vec<usize>,
    rels: Vec<Vec<PolyVec>>,
    /// diffs[k]: matrix from degree lo+k+1 to degree lo+k.
    diffs: Vec<Vec<PolyVec>>,
    weights: Option<Vec<Vec<i64>>>,
}

impl PresentedComplex {
    pub fn zero(ring: Arc<RingSpec>) -> Self {
        PresentedComplex { ring, lo: 0, ranks: vec![], rels: vec![], diffs: vec![], weights: None }
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    pub fn rank(&self, d: i64) -> usize {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.ranks.len() {
            0
        } else {
            self.ranks[k as usize]
        }
    }

    pub fn rels_at(&self, d: i64) -> Vec<PolyVec> {
        let k = d - self.lo;
        if k < 0 || k as usize >= self.ranks.len() {
            Vec::new()
        } else {
            self.rels[k as usize].clone()
        }
    }

    pub fn diff(&self, d: i64) -> Vec<PolyVec> {
        let k = d - self.lo;
        if k >= 1 && (k as usize) < self.ranks.len() {
            self.diffs[k as usize - 1].clone()
        } else {
            vec![vec_zero(self.rank(d - 1)); self.rank(d)]
        }
    }

    pub fn weights_at(&self, d: i64) -> Option<Vec<i64>> {
        match &self.weights {
            None => None,
            Some(w) => {
                let k = d - self.lo;
                if k < 0 || k as usize >= w.len() {
                    Some(vec![])
                } else {
                    Some(w[k as usize].clone())
                }
            }
        }
    }

    pub fn from_free(f: &FreeComplex) -> Self {
        match f.window() {
            None => PresentedComplex::zero(f.ring.clone()),
            Some((lo, hi)) => {
                let ranks: Vec<usize> = (lo..=hi).map(|d| f.rank(d)).collect();
                let rels = vec![Vec::new(); ranks.len()];
                let diffs: Vec<Vec<PolyVec>> = (lo + 1..=hi).map(|d| f.diff(d)).collect();
                let weights = if f.is_weighted() {
                    Some((lo..=hi).map(|d| f.weights_at(d).unwrap()).collect())
                } else {
                    None
                };
                PresentedComplex { ring: f.ring.clone(), lo, ranks, rels, diffs, weights }
            }
        }
    }

    /// A presented module placed in a single degree.
    pub fn from_module(m: &PresentedModule, degree: i64) -> Self {
        PresentedComplex {
            ring: m.ring.clone(),
            lo: degree,
            ranks: vec![m.gens],
            rels: vec![m.rels.clone()],
            diffs: vec![],
            weights: m.weights.clone().map(|w| vec![w]),
        }
    }

    pub fn shift(&self, n: i64) -> Self {
        let mut out = self.clone();
        out.lo += n;
        if n.rem_euclid(2) == 1 {
            out.diffs = out
                .diffs
                .iter()
                .map(|m| m.iter().map(|c| c.iter().map(|p| p.neg()).collect()).collect())
                .collect();
        }
        out
    }

    /// Tensor with a presented module on the right: ranks multiply by the
    /// module's generator count and its relations join every degree.
    pub fn tensor_module(&self, n: &PresentedModule) -> Self {
        assert_eq!(self.ring, n.ring);
        let g = n.gens;
        if g == 0 || self.ranks.is_empty() {
            return PresentedComplex::zero(self.ring.clone());
        }
        let ranks: Vec<usize> = self.ranks.iter().map(|r| r * g).collect();
        let weights = match (&self.weights, &n.weights) {
            (Some(sw), Some(nw)) => Some(
                sw.iter()
                    .map(|wd| {
                        let mut out = Vec::with_capacity(wd.len() * g);
                        for wp in wd {
                            for wq in nw {
                                out.push(wp + wq);
                            }
                        }
                        out
                    })
                    .collect(),
            ),
            _ => None,
        };
        let mut rels: Vec<Vec<PolyVec>> = Vec::with_capacity(self.ranks.len());
        for (k, r) in self.ranks.iter().enumerate() {
            let mut wd: Vec<PolyVec> = Vec::new();
            // e_p (x) rel(N) for every p
            for p in 0..*r {
                for rel in &n.rels {
                    let mut v = vec_zero(r * g);
                    v[p * g..(p + 1) * g].clone_from_slice(rel);
                    wd.push(v);
                }
            }
            // rel(self) (x) e_q for every q
            for rel in &self.rels[k] {
                for q in 0..g {
                    let mut v = vec_zero(r * g);
                    for (p, e) in rel.iter().enumerate() {
                        v[p * g + q] = e.clone();
                    }
                    wd.push(v);
                }
            }
            rels.push(wd);
        }
        let diffs: Vec<Vec<PolyVec>> = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let tgt = self.ranks[k] * g;
                let mut out: Vec<PolyVec> = Vec::with_capacity(m.len() * g);
                for col in m {
                    for q in 0..g {
                        let mut v = vec_zero(tgt);
                        for (p, e) in col.iter().enumerate() {
                            v[p * g + q] = e.clone();
                        }
                        out.push(v);
                    }
                }
                out
            })
            .collect();
        PresentedComplex { ring: self.ring.clone(), lo: self.lo, ranks, rels, diffs, weights }
    }

    /// F (x) self for a bounded free complex F, with the Koszul sign on the
    /// right factor's differential.
    pub fn free_tensor(f: &FreeComplex, x: &PresentedComplex) -> Self {
        assert_eq!(f.ring, x.ring);
        let ring = x.ring.clone();
        let (Some((alo, ahi)), Some((blo, bhi))) = (f.window(), x.window()) else {
            return PresentedComplex::zero(ring);
        };
        let (lo, hi) = (alo + blo, ahi + bhi);
        let blocks_at = |n: i64| -> Vec<(i64, usize, usize)> {
            (alo.max(n - bhi)..=ahi.min(n - blo))
                .filter_map(|i| {
                    let (ra, rb) = (f.rank(i), x.rank(n - i));
                    if ra > 0 && rb > 0 {
                        Some((i, ra, rb))
                    } else {
                        None
                    }
                })
                .collect()
        };
        let offset_of = |blocks: &[(i64, usize, usize)], i: i64| -> Option<usize> {
            let mut off = 0;
            for (bi, ra, rb) in blocks {
                if *bi == i {
                    return Some(off);
                }
                off += ra * rb;
            }
            None
        };
        let mut ranks = Vec::new();
        let mut rels: Vec<Vec<PolyVec>> = Vec::new();
        let mut diffs: Vec<Vec<PolyVec>> = Vec::new();
        let want_weights = f.is_weighted() && x.weights.is_some();
        let mut weights: Option<Vec<Vec<i64>>> = if want_weights { Some(Vec::new()) } else { None };
        for n in lo..=hi {
            let blocks = blocks_at(n);
            let rank_n: usize = blocks.iter().map(|(_, a, b)| a * b).sum();
            ranks.push(rank_n);
            // relations: e_p (x) rels(x at j)
            let mut wn: Vec<PolyVec> = Vec::new();
            let mut weight_row: Vec<i64> = Vec::new();
            let mut off = 0;
            for (i, ra, rb) in &blocks {
                let j = n - i;
                for rel in x.rels_at(j) {
                    for p in 0..*ra {
                        let mut v = vec_zero(rank_n);
                        for (q, e) in rel.iter().enumerate() {
                            v[off + p * rb + q] = e.clone();
                        }
                        wn.push(v);
                    }
                }
                if want_weights {
                    let wa = f.weights_at(*i).unwrap();
                    let wb = x.weights_at(j).unwrap();
                    for p in 0..*ra {
                        for q in 0..*rb {
                            weight_row.push(wa[p] + wb[q]);
                        }
                    }
                }
                off += ra * rb;
            }
            rels.push(wn);
            if let Some(w) = &mut weights {
                w.push(weight_row);
            }
            if n > lo {
                let tgt_blocks = blocks_at(n - 1);
                let tgt_rank: usize = tgt_blocks.iter().map(|(_, a, b)| a * b).sum();
                let mut mat: Vec<PolyVec> = Vec::with_capacity(rank_n);
                for (i, ra, rb) in &blocks {
                    let j = n - i;
                    let da = f.diff(*i);
                    let db = x.diff(j);
                    let neg = i.rem_euclid(2) == 1;
                    for p in 0..*ra {
                        for q in 0..*rb {
                            let mut col = vec_zero(tgt_rank);
                            if let Some(o) = offset_of(&tgt_blocks, i - 1) {
                                let rb_t = x.rank(j);
                                for (pp, e) in da[p].iter().enumerate() {
                                    if !e.is_zero() {
                                        col[o + pp * rb_t + q] =
                                            ring.add(&col[o + pp * rb_t + q], e);
                                    }
                                }
                            }
                            if let Some(o) = offset_of(&tgt_blocks, *i) {
                                let rb_t = x.rank(j - 1);
                                for (qq, e) in db[q].iter().enumerate() {
                                    if !e.is_zero() {
                                        let e = if neg { e.neg() } else { e.clone() };
                                        col[o + p * rb_t + qq] =
                                            ring.add(&col[o + p * rb_t + qq], &e);
                                    }
                                }
                            }
                            mat.push(col);
                        }
                    }
                }
                diffs.push(mat);
            }
        }
        PresentedComplex { ring, lo, ranks, rels, diffs, weights }
    }

    /// Hom(F, self) for a bounded free complex F, with the standard sign
    /// d(f) = d.f - (-1)^{|f|} f.d.
    pub fn hom_from_free(f: &FreeComplex, x: &PresentedComplex) -> Self {
        assert_eq!(f.ring, x.ring);
        let ring = x.ring.clone();
        let (Some((alo, ahi)), Some((blo, bhi))) = (f.window(), x.window()) else {
            return PresentedComplex::zero(ring);
        };
        let (lo, hi) = (blo - ahi, bhi - alo);
        let blocks_at = |n: i64| -> Vec<(i64, usize, usize)> {
            (alo.max(blo - n)..=ahi.min(bhi - n))
                .filter_map(|i| {
                    let (ra, rb) = (f.rank(i), x.rank(i + n));
                    if ra > 0 && rb > 0 {
                        Some((i, ra, rb))
                    } else {
                        None
                    }
                })
                .collect()
        };
        let offset_of = |blocks: &[(i64, usize, usize)], i: i64| -> Option<usize> {
            let mut off = 0;
            for (bi, ra, rb) in blocks {
                if *bi == i {
                    return Some(off);
                }
                off += ra * rb;
            }
            None
        };
        let mut ranks = Vec::new();
        let mut rels: Vec<Vec<PolyVec>> = Vec::new();
        let mut diffs: Vec<Vec<PolyVec>> = Vec::new();
        let want_weights = f.is_weighted() && x.weights.is_some();
        let mut weights: Option<Vec<Vec<i64>>> = if want_weights { Some(Vec::new()) } else { None };
        for n in lo..=hi {
            let blocks = blocks_at(n);
            let rank_n: usize = blocks.iter().map(|(_, a, b)| a * b).sum();
            ranks.push(rank_n);
            let mut wn: Vec<PolyVec> = Vec::new();
            let mut weight_row: Vec<i64> = Vec::new();
            let mut off = 0;
            for (i, ra, rb) in &blocks {
                for rel in x.rels_at(i + n) {
                    for p in 0..*ra {
                        let mut v = vec_zero(rank_n);
                        for (q, e) in rel.iter().enumerate() {
                            v[off + p * rb + q] = e.clone();
                        }
                        wn.push(v);
                    }
                }
                if want_weights {
                    let wa = f.weights_at(*i).unwrap();
                    let wb = x.weights_at(i + n).unwrap();
                    for p in 0..*ra {
                        for q in 0..*rb {
                            weight_row.push(wb[q] - wa[p]);
                        }
                    }
                }
                off += ra * rb;
            }
            rels.push(wn);
            if let Some(w) = &mut weights {
                w.push(weight_row);
            }
            if n > lo {
                let tgt_blocks = blocks_at(n - 1);
                let tgt_rank: usize = tgt_blocks.iter().map(|(_, a, b)| a * b).sum();
                let neg = n.rem_euclid(2) == 0; // -(-1)^n
                let mut mat: Vec<PolyVec> = Vec::with_capacity(rank_n);
                for (i, ra, rb) in &blocks {
                    let db = x.diff(i + n);
                    let da_up = f.diff(i + 1);
                    for p in 0..*ra {
                        for q in 0..*rb {
                            let mut col = vec_zero(tgt_rank);
                            if let Some(o) = offset_of(&tgt_blocks, *i) {
                                let rb_t = x.rank(i + n - 1);
                                for (qq, e) in db[q].iter().enumerate() {
                                    if !e.is_zero() {
                                        col[o + p * rb_t + qq] =
                                            ring.add(&col[o + p * rb_t + qq], e);
                                    }
                                }
                            }
                            if let Some(o) = offset_of(&tgt_blocks, i + 1) {
                                let rb_t = x.rank(i + n);
                                let ra_up = f.rank(i + 1);
                                for pp in 0..ra_up {
                                    let e = &da_up[pp][p];
                                    if !e.is_zero() {
                                        let e = if neg { e.neg() } else { e.clone() };
                                        col[o + pp * rb_t + q] =
                                            ring.add(&col[o + pp * rb_t + q], &e);
                                    }
                                }
                            }
                            mat.push(col);
                        }
                    }
                }
                diffs.push(mat);
            }
        }
        PresentedComplex { ring, lo, ranks, rels, diffs, weights }
    }

    /// Block layout of Hom(F, X) at one degree: triples (i, rank F_i,
    /// rank X_{i+n}) in ascending i, as `hom_from_free` enumerates them.
    pub fn hom_block_layout(f: &FreeComplex, x: &PresentedComplex, n: i64) -> Vec<(i64, usize, usize)> {
        let (Some((alo, ahi)), Some((blo, bhi))) = (f.window(), x.window()) else {
            return vec![];
        };
        (alo.max(blo - n)..=ahi.min(bhi - n))
            .filter_map(|i| {
                let (ra, rb) = (f.rank(i), x.rank(i + n));
                if ra > 0 && rb > 0 {
                    Some((i, ra, rb))
                } else {
                    None
                }
            })
            .collect()
    }

    /// The differential squares to zero modulo the term relations and carries
    /// relations into relations.
    pub fn validate(&self) -> bool {
        let ring = &self.ring;
        let Some((lo, hi)) = self.window() else { return true };
        for d in lo..=hi {
            if d + 2 <= hi {
                let sq = compose_cols_raw(&self.diff(d + 1), &self.diff(d + 2), ring);
                let w = RSubmodule::new(ring, self.rank(d), &self.rels_at(d));
                for col in &sq {
                    if !w.contains(ring, col) {
                        return false;
                    }
                }
            }
            if d + 1 <= hi {
                let w = RSubmodule::new(ring, self.rank(d), &self.rels_at(d));
                for rel in self.rels_at(d + 1) {
                    let img = crate::groebner::apply_cols_raw(&self.diff(d + 1), &rel, ring);
                    if !w.contains(ring, &img) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Presentation of H_d = Ker(d_d) / Im(d_{d+1}).
    pub fn homology_at(&self, d: i64) -> HomologyAt {
        let rd = self.rank(d);
        if rd == 0 {
            return HomologyAt {
                module: PresentedModule::zero(self.ring.clone()),
                cycles: vec![],
                ambient_rank: 0,
            };
        }
        let rdm1 = self.rank(d - 1);
        let cycles: Vec<PolyVec> = if rdm1 == 0 {
            (0..rd)
                .map(|c| {
                    let mut e = vec_zero(rd);
                    e[c] = self.ring.one();
                    e
                })
                .collect()
        } else {
            kernel_cols(&self.ring, rdm1, &self.diff(d), &self.rels_at(d - 1))
        };
        let mut denom = self.diff(d + 1);
        denom.extend(self.rels_at(d));
        let weights = self.weights_at(d);
        let module =
            present_subquotient(&self.ring, rd, weights.as_deref(), &cycles, &denom);
        HomologyAt { module, cycles, ambient_rank: rd }
    }

    /// Scan the window for the largest degree with nonzero homology.
    pub fn sup(&self) -> crate::extint::ExtInt {
        use crate::extint::ExtInt;
        let Some((lo, hi)) = self.window() else { return ExtInt::NegInf };
        for d in (lo..=hi).rev() {
            if !self.homology_at(d).module.is_zero() {
                return ExtInt::Int(d);
            }
        }
        ExtInt::NegInf
    }

    pub fn inf(&self) -> crate::extint::ExtInt {
        use crate::extint::ExtInt;
        let Some((lo, hi)) = self.window() else { return ExtInt::PosInf };
        for d in lo..=hi {
            if !self.homology_at(d).module.is_zero() {
                return ExtInt::Int(d);
            }
        }
        ExtInt::PosInf
    }

    pub fn has_nonzero_homology(&self) -> bool {
        self.sup() != crate::extint::ExtInt::NegInf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extint::ExtInt;

    fn qring(vars: &[&str]) -> Arc<RingSpec> {
        Arc::new(RingSpec::poly_ring_q(vars))
    }

    #[test]
    fn koszul_homology_regular_sequence() {
        // H_0(K(x,y)) = R/(x,y) = k, H_1 = H_2 = 0 over Q[x,y]
        let r = qring(&["x", "y"]);
        let k = FreeComplex::koszul(r.clone(), &[r.var(0), r.var(1)]);
        let pc = PresentedComplex::from_free(&k);
        assert!(pc.validate());
        let h0 = pc.homology_at(0);
        assert!(!h0.module.is_zero());
        assert_eq!(h0.module.dim_k(), Some(1));
        assert!(pc.homology_at(1).module.is_zero());
        assert!(pc.homology_at(2).module.is_zero());
        assert_eq!(pc.sup(), ExtInt::Int(0));
        assert_eq!(pc.inf(), ExtInt::Int(0));
    }

    #[test]
    fn koszul_on_zero_divisor() {
        // over R = Q[x]/(x^2), K(x) has H_0 = R/(x) and H_1 = (0 : x) = xR
        let base = RingSpec::poly_ring_q(&["x"]);
        let x = base.var(0);
        let r = Arc::new(base.quotient(&[base.parse_poly("x^2").unwrap()]));
        let k = FreeComplex::koszul(r.clone(), &[x]);
        let pc = PresentedComplex::from_free(&k);
        let h0 = pc.homology_at(0);
        let h1 = pc.homology_at(1);
        assert_eq!(h0.module.dim_k(), Some(1));
        assert_eq!(h1.module.dim_k(), Some(1));
    }

    #[test]
    fn tensor_module_computes_tor_style_homology() {
        // K(x) (x) R/(x) over Q[x]: H_1 = R/(x) (the x-torsion), H_0 = R/(x)
        let r = qring(&["x"]);
        let k = FreeComplex::koszul(r.clone(), &[r.var(0)]);
        let m = PresentedModule::cyclic(r.clone(), vec![r.var(0)]);
        let pc = PresentedComplex::from_free(&k).tensor_module(&m);
        assert!(pc.validate());
        let h1 = pc.homology_at(1);
        assert_eq!(h1.module.dim_k(), Some(1));
        let h0 = pc.homology_at(0);
        assert_eq!(h0.module.dim_k(), Some(1));
    }

    #[test]
    fn hom_from_free_self_duality_shift() {
        // Hom(K, R) has homology equal to that of K shifted by -n (up to sign)
        let r = qring(&["x", "y"]);
        let k = FreeComplex::koszul(r.clone(), &[r.var(0), r.var(1)]);
        let unit = PresentedComplex::from_free(&FreeComplex::unit(r.clone()));
        let hom = PresentedComplex::hom_from_free(&k, &unit);
        assert!(hom.validate());
        // K detects (x,y)-depth of R: homology of Hom(K,R) concentrated at -2
        assert_eq!(hom.sup(), ExtInt::Int(-2));
        assert_eq!(hom.inf(), ExtInt::Int(-2));
        let h = hom.homology_at(-2);
        assert_eq!(h.module.dim_k(), Some(1));
    }

    #[test]
    fn zero_complex_conventions() {
        let r = qring(&["x"]);
        let z = PresentedComplex::zero(r);
        assert_eq!(z.sup(), ExtInt::NegInf);
        assert_eq!(z.inf(), ExtInt::PosInf);
    }
}
