use moebius4::construction::{canonical_map_check, generate_configuration, pair_audit};
use moebius4::coxeter::*;
use moebius4::cubical::{CubicalCell, CubicalComplex2};
use moebius4::inversive::PointOrInfinity;
use moebius4::rat::vec4_from_i64;
use std::time::Instant;

fn main() {
    let k = CubicalComplex2::build_complex(&[CubicalCell::square([0, 0, 0, 0], 0, 1)]).unwrap();
    let conf = generate_configuration(&k).unwrap();
    let spheres = conf.spheres();
    let pairs = pair_audit(&spheres).unwrap();
    let pres = GroupPresentation::from_pair_audit(&pairs).unwrap();

    let t = Instant::now();
    let g = enumerate_growth(&spheres, 4, 1_000_000, 0);
    println!("matrix growth L4: {:?} {:?}", t.elapsed(), g.growth);
    let t = Instant::now();
    let a = abstract_growth(&pres, 4, 1_000_000);
    println!("abstract growth L4: {:?} {:?}", t.elapsed(), a.growth);

    let t = Instant::now();
    let q = congruence_quotient(&spheres, &pres, 5, 100_000, 0).unwrap();
    println!("quotient p=5: {:?} relations_ok {} order {:?}", t.elapsed(), q.relations_ok, q.order_bound);

    let t = Instant::now();
    let torsion = torsion_survival_check(&spheres, &q, 4, 1_000_000, 60);
    println!(
        "torsion L4: {:?} checked {} finite {} ok {}",
        t.elapsed(),
        torsion.elements_checked,
        torsion.finite_order_elements,
        torsion.ok()
    );

    let t = Instant::now();
    let orbit = orbit_tiling(&spheres, 3, 1_000_000, &PointOrInfinity::finite(vec4_from_i64([5, 5, 5, 5]))).unwrap();
    println!("orbit L3: {:?} points {} distinct {} escapes {}", t.elapsed(), orbit.points.len(), orbit.all_distinct, orbit.escapes_ok);

    let t = Instant::now();
    let check = canonical_map_check(&conf, &k);
    println!("canonical map: {:?} iso {}", t.elapsed(), check.isomorphic);
}
