use statrs::function::gamma::ln_gamma;

/// ln(n!) for nonnegative integers.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

pub fn ln_gamma_pos(x: f64) -> f64 {
    ln_gamma(x)
}
