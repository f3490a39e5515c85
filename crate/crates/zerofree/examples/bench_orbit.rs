//! Quick timing probe for the hull iteration and a raster strip.

use num_complex::Complex64;
use std::time::Instant;
use zerofree::orbit::{classify_membership_detailed, OrbitConfig};
use zerofree::raster::{raster, RasterConfig};

fn main() {
    let cfg = OrbitConfig::default();
    for &(re, im) in &[
        (1.0, 0.0),
        (0.5, 0.3),
        (1.0, 1.0),
        (2.0, 0.5),
        (2.55, 0.128), // near the curve endpoint
        (2.66, 0.13),
        (1.9, 1.0),
        (-0.3, 0.1),
        (0.0, 1.8),
        (0.0, 2.1),
    ] {
        let l = Complex64::new(re, im);
        let t = Instant::now();
        let (m, h) = classify_membership_detailed(l, &cfg);
        let dt = t.elapsed();
        let h = h.unwrap();
        println!(
            "{re:+.3}{im:+.3}i -> {m:?} iters={} verts={} clearance={:.3e} diam={:.3} in {dt:?}",
            h.iterations,
            h.polygon.vertices().len(),
            h.origin_clearance,
            h.diameter
        );
    }

    // a horizontal strip of the default window at raster scale
    let mut rcfg = RasterConfig::default_window(600, 8);
    rcfg.im_min = 0.55;
    rcfg.im_max = 0.65;
    let t = Instant::now();
    let grid = raster(&rcfg).unwrap();
    let dt = t.elapsed();
    let mut counts = std::collections::BTreeMap::new();
    for o in &grid.outcomes {
        *counts.entry(o.class.name()).or_insert(0usize) += 1;
    }
    println!("strip 600x8 in {dt:?}: {counts:?}");
}
