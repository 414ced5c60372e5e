//! Minimal end-to-end run: assemble a two-block spec with triple-coupled
//! off-diagonal entries, stabilize its spectrum across two truncations,
//! fit the enclosure region, and print the result.
//!
//! Run with `cargo run -p gribov-core --example enclosure`.

use gribov_core::block::{assemble, BlockSpec, EntryParams};
use gribov_core::eigen::stabilized_spectrum;
use gribov_core::spectral::gribov_region;

fn main() {
    let entry = EntryParams { lambda: 0.5, ..EntryParams::default() };
    let spec = BlockSpec::new(2, vec![1.0, 1.0])
        .with_entry(1, 2, entry)
        .with_entry(2, 1, entry);

    let spectrum = stabilized_spectrum(|n| assemble(&spec, n), 60, 2.0, 1e-6)
        .expect("spectrum");
    let region = gribov_region(&spec, 0.1, &spectrum).expect("region");
    assert!(spectrum.eigenvalues.iter().all(|z| region.contains(*z)));

    let stabilized = spectrum.stabilized.iter().filter(|&&s| s).count();
    println!(
        "stabilized {}/{} eigenvalues; sector alpha = {:.4}, ball radius r0 = {:.4}",
        stabilized,
        spectrum.eigenvalues.len(),
        region.alpha,
        region.r0
    );
    for (z, s) in spectrum.eigenvalues.iter().zip(&spectrum.stabilized).take(6) {
        println!("  {:>12.6} {:+.6}i  stabilized: {s}", z.re, z.im);
    }
}
