//! Vietoris-Rips barcodes of a clean and a noisy circle, and the bottleneck
//! distance between them.

use reebdeco::persistence::{bottleneck, reduce_and_extract, vr_filtration};
use reebdeco::synthetic::cycle;
use reebdeco::Barcode;

fn barcode(noise: f64) -> reebdeco::Result<Barcode> {
    let cloud = cycle(60, noise, 1)?;
    let complex = vr_filtration(&cloud, 2.5, 2)?;
    println!("noise {noise}: {} simplices", complex.len());
    Ok(reduce_and_extract(&complex, 1))
}

fn main() -> reebdeco::Result<()> {
    let clean = barcode(0.0)?;
    let noisy = barcode(0.1)?;
    for (name, b) in [("clean", &clean), ("noisy", &noisy)] {
        let mut bars: Vec<_> = b
            .intervals()
            .iter()
            .map(|i| (i.birth, i.death.value()))
            .collect();
        bars.sort_by(|a, b| (b.1 - b.0).total_cmp(&(a.1 - a.0)));
        bars.truncate(3);
        println!("{name} H1, longest bars: {bars:.3?}");
    }
    println!("bottleneck distance {:.4}", bottleneck(&clean, &noisy)?);
    Ok(())
}
