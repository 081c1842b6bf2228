//! Convergence of the calibrated integral of H over SU(2).

use gerbes::lienum::{integrate_h_su2, Pairing};

fn main() {
    let pairing = Pairing::calibrated(1.0);
    let mut prev: Option<f64> = None;
    for res in [4, 8, 16, 32, 64] {
        let int = integrate_h_su2(res, &pairing);
        let err = (int.value - 1.0).abs();
        let rate = prev.map(|p| format!("{:.2}", (p / err).log2())).unwrap_or_default();
        println!("resolution {res:>3}: {:.10}  error {err:.2e}  order {rate}", int.value);
        if let Some(w) = int.warning {
            println!("  note: {w}");
        }
        prev = Some(err);
    }
}
