//! Adaptive Simpson quadrature with Richardson extrapolation.

fn simpson(a: f64, b: f64, fa: f64, fc: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fc + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fc: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d);
    let fe = f(e);
    let left = simpson(a, c, fa, fd, fc);
    let right = simpson(c, b, fc, fe, fb);
    let s2 = left + right;
    if depth == 0 || (s2 - whole).abs() <= 15.0 * tol {
        return s2 + (s2 - whole) / 15.0;
    }
    adaptive(f, a, c, fa, fd, fc, left, 0.5 * tol, depth - 1)
        + adaptive(f, c, b, fc, fe, fb, right, 0.5 * tol, depth - 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fc = f(c);
    let whole = simpson(a, b, fa, fc, fb);
    adaptive(&f, a, b, fa, fc, fb, whole, tol, 60)
}

/// Integrate a Gaussian-decaying integrand centred near `center` with scale
/// `width`, using a window wide enough that the truncation error is far below
/// `tol` for any integrand bounded by a constant times `exp(-(t-center)^2 /
/// (2 width^2))`.
pub fn integrate_gaussian_tail<F: Fn(f64) -> f64>(f: F, center: f64, width: f64, tol: f64) -> f64 {
    let half = 12.0 * width;
    integrate(f, center - half, center + half, tol)
}
