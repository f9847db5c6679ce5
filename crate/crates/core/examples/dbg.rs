use besselint_core::families::*;
use besselint_core::quad::{integrate_finite, QuadConfig};
use besselint_core::series::SumConfig;

fn main() {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut uni = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for fam in 1..=9u8 {
        for draw in 0..3 {
            let k = draw % 2;
            let spec = sample_safe(fam, k as u32, &mut uni);
            let series = eval_series(&spec, &SumConfig::default());
            let b = spec.bound().re;
            let quad = integrate_finite(|x| eval_integrand(&spec, x), b, &QuadConfig::default());
            match (series, quad) {
                (Ok(s), Ok(q)) => {
                    let d = (s.value - q.value).norm() / q.value.norm().max(1.0);
                    println!(
                        "T{fam} draw {draw} k={k}: rel {d:.3e} (shells {} terms {})",
                        s.shells_used, s.terms_evaluated
                    );
                }
                (se, qe) => println!("T{fam} draw {draw} k={k}: series {se:?} quad {qe:?}"),
            }
        }
    }
}
