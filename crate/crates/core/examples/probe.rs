use koszul_core::complex::FreeComplex;
use koszul_core::derived::{resolve_module, Caps};
use koszul_core::invariants::*;
use koszul_core::pmodule::PresentedModule;
use koszul_core::ring::RingSpec;
use koszul_core::rule::ComplexHandle;
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let r = Arc::new(RingSpec::poly_ring_q(&["x", "y", "z"]));
    let m: Vec<_> = (0..3).map(|i| r.var(i)).collect();
    let c = ComplexHandle::Free(FreeComplex::unit(r.clone()));
    let caps = Caps::default();

    let t = Instant::now();
    let dk = depth_koszul(&m, &c, &caps).unwrap();
    println!("koszul: {} ({:?})", dk.value, t.elapsed());

    let t = Instant::now();
    let dc = depth_koszul_coh(&m, &c, &caps).unwrap();
    println!("koszul-coh: {} ({:?})", dc.value, t.elapsed());

    let t = Instant::now();
    let k = PresentedModule::residue_field(r.clone());
    let res = resolve_module(&k, 10, true).unwrap();
    println!("res k: len {} complete {} ({:?})", res.length(), res.complete, t.elapsed());

    let t = Instant::now();
    let de = depth_ext(&m, &c, None, &caps).unwrap();
    println!("ext: {} ({:?})", de.value, t.elapsed());

    let t = Instant::now();
    let dl = depth_lc(&m, &c, &caps).unwrap();
    println!("lc: {} ({:?})", dl.value, t.elapsed());
}
