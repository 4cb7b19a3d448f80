use moebius4::construction::{audit, generate_configuration, pair_audit};
use moebius4::coxeter::{abstract_growth, enumerate_growth, GroupPresentation};
use moebius4::cubical::CubicalComplex2;
use std::time::Instant;

fn main() {
    let k = CubicalComplex2::unit_4cube_2_skeleton();
    let conf = generate_configuration(&k).unwrap();
    let spheres = conf.spheres();

    let t = Instant::now();
    let pairs = pair_audit(&spheres).unwrap();
    println!("pair_audit: {:?} ({} pairs)", t.elapsed(), pairs.pair_table.len());

    let t = Instant::now();
    let report = audit(&conf);
    println!(
        "full audit: {:?} (nerve f {:?}, iso {})",
        t.elapsed(),
        report.nerve_iso.nerve_f_vector,
        report.nerve_iso.isomorphic
    );

    let pres = GroupPresentation::from_pair_audit(&pairs).unwrap();
    let t = Instant::now();
    let a = abstract_growth(&pres, 3, 1_000_000);
    println!("abstract growth L3: {:?} {:?} (truncated {})", t.elapsed(), a.growth, a.truncated);

    let t = Instant::now();
    let g = enumerate_growth(&spheres, 3, 1_000_000, 0);
    println!(
        "matrix growth L3: {:?} {:?} (truncated {}, lorentz {} ok {})",
        t.elapsed(),
        g.growth,
        g.truncated,
        g.lorentz_checked,
        g.lorentz_ok
    );
}
