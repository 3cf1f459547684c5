use super::{Candidate, PaSolution, SolveMethod};
use crate::error::{Error, Result};

/// `(sqrt(5) - 1) / 2`, the per-iteration shrink factor.
pub const INV_GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Upper bound on iterations needed to shrink `len` to `eps`.
pub fn golden_iteration_bound(len: f64, eps: f64) -> usize {
    if len <= eps {
        return 0;
    }
    ((eps / len).ln() / INV_GOLDEN.ln()).ceil() as usize + 1
}

/// Minimise a unimodal `f` on `[lo, hi]`; returns the midpoint of the final
/// bracket, whose length is at most `eps`.
pub fn golden_section<F: FnMut(f64) -> f64>(f: F, lo: f64, hi: f64, eps: f64) -> Result<PaSolution> {
    golden_section_traced(f, lo, hi, eps).map(|(s, _)| s)
}

/// As [`golden_section`], also returning the bracket after every iteration
/// (the initial bracket first).
pub fn golden_section_traced<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    eps: f64,
) -> Result<(PaSolution, Vec<(f64, f64)>)> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || !(eps > 0.0) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_GOLDEN * (b - a);
    let mut d = a + INV_GOLDEN * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut trace = vec![(a, b)];
    let mut iterations = 0;

    while b - a > eps {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_GOLDEN * (b - a);
            fd = f(d);
        }
        iterations += 1;
        trace.push((a, b));
    }

    let alpha = 0.5 * (a + b);
    let objective = f(alpha);
    let sol = PaSolution {
        alpha_star: alpha,
        objective,
        candidates: vec![Candidate::new("golden", alpha, Some(objective), true)],
        method: SolveMethod::GoldenSection,
        iterations,
    };
    Ok((sol, trace))
}
