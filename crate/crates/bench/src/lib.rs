//! Shared fixtures for the criterion benchmarks in `benches/`.

use hypermoment_core::families::Family;
use hypermoment_core::WeightSpec;

/// Sample weight of every catalogued family, labelled by its CLI name.
pub fn catalog() -> Vec<(&'static str, WeightSpec)> {
    Family::ALL
        .iter()
        .map(|f| {
            let instance = f.build(&f.sample_params()).expect("sample parameters are valid");
            (f.name(), instance.spec)
        })
        .collect()
}
