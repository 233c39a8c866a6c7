//! Shared oracles for the integration tests: floating quadrature of the
//! regularized products, and the convergent test cases it is compared on.

#![allow(dead_code)]

use krein_osc::oned::{inner_1d, ladder_state_1d, State1D, DEFAULT_DEPTH_LIMIT};
use krein_osc::rat::{int, rat};
use krein_osc::twod::{apply_2d, build_op_2d, inner_2d, omega, psi0, Op2DName, State2D};

/// Upper cut-off; `exp(-x^2)` is below 1e-60 past it.
const CUTOFF: f64 = 12.0;
const ANGLES: usize = 64;

fn de(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, 1e-14).integral
}

/// `integral_0^inf f g dx` by tanh-sinh on `[0, 1]` and `[1, CUTOFF]`.
pub fn quad_1d(f: &State1D, g: &State1D) -> f64 {
    let h = |x: f64| f.eval_f64(x) * g.eval_f64(x);
    de(h, 0.0, 1.0) + de(h, 1.0, CUTOFF)
}

/// `integral conj(f) g dx dy` in polar form: trapezoid in the angle, which is
/// exact for the integer angular frequencies left after conjugation, and
/// tanh-sinh in the radius. Returns the real part; the imaginary part is
/// returned alongside so callers can check it vanishes.
pub fn quad_2d(f: &State2D, g: &State2D) -> (f64, f64) {
    let step = 2.0 * std::f64::consts::PI / ANGLES as f64;
    let radial = |phi: f64, part: usize| {
        let h = move |r: f64| {
            let (fr, fi) = f.eval_polar(r, phi, 0.0);
            let (gr, gi) = g.eval_polar(r, phi, 0.0);
            let v = if part == 0 { fr * gr + fi * gi } else { fr * gi - fi * gr };
            v * r
        };
        de(h, 0.0, 1.0) + de(h, 1.0, CUTOFF)
    };
    let (mut re, mut im) = (0.0, 0.0);
    for k in 0..ANGLES {
        let phi = (k as f64 + 0.5) * step;
        re += radial(phi, 0) * step;
        im += radial(phi, 1) * step;
    }
    (re, im)
}

pub enum Case {
    OneD(String, State1D, State1D),
    TwoD(String, State2D, State2D),
}

impl Case {
    pub fn label(&self) -> &str {
        match self {
            Case::OneD(l, ..) | Case::TwoD(l, ..) => l,
        }
    }

    /// `(exact, numeric, scale)`; scale is `sqrt(|f|^2 |g|^2)` computed
    /// numerically, so that exact zeros are judged against the size of the states.
    pub fn evaluate(&self) -> (f64, f64, f64) {
        match self {
            Case::OneD(_, f, g) => {
                let exact = inner_1d(f, g).unwrap().to_f64();
                let scale = (quad_1d(f, f) * quad_1d(g, g)).abs().sqrt();
                (exact, quad_1d(f, g), scale)
            }
            Case::TwoD(_, f, g) => {
                let exact = inner_2d(f, g).unwrap().finite_f64();
                let (re, im) = quad_2d(f, g);
                let scale = (quad_2d(f, f).0 * quad_2d(g, g).0).abs().sqrt();
                assert!(im.abs() <= 1e-9 * scale.max(1.0), "imaginary part {im}");
                (exact, re, scale)
            }
        }
    }

    pub fn agrees(&self, rel: f64) -> bool {
        let (exact, numeric, scale) = self.evaluate();
        (exact - numeric).abs() <= rel * exact.abs().max(scale)
    }
}

fn psi(alpha: i64, n: usize) -> State1D {
    ladder_state_1d(&int(alpha), n, DEFAULT_DEPTH_LIMIT).unwrap().0
}

fn om(l: (i64, i64), m: (i64, i64)) -> State2D {
    omega(rat(l.0, l.1), rat(m.0, m.1), 0, 0).unwrap()
}

fn b(name: Op2DName, s: &State2D) -> State2D {
    apply_2d(&build_op_2d(name), s)
}

/// Twenty-five convergent products: fifteen on the half-line, ten in the plane.
pub fn convergent_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 0..4 {
        for m in n..4 {
            cases.push(Case::OneD(format!("(Psi(-2)_{n}, Psi(-2)_{m})"), psi(-2, n), psi(-2, m)));
        }
    }
    for (n, m) in [(0, 0), (1, 0), (0, 2), (2, 1), (3, 3)] {
        cases.push(Case::OneD(format!("(Psi(1)_{n}, Psi(-2)_{m})"), psi(1, n), psi(-2, m)));
    }
    let h = om((1, 2), (0, 1));
    let pairs = vec![
        ("(Psi0, Psi0)", psi0(), psi0()),
        ("(Omega[1/2,0], Omega[1/2,0])", h.clone(), h.clone()),
        ("(Omega[-1/2,0], Omega[-1/2,0])", om((-1, 2), (0, 1)), om((-1, 2), (0, 1))),
        ("(Omega[0,1/2], Omega[-1/2,0])", om((0, 1), (1, 2)), om((-1, 2), (0, 1))),
        ("(Omega[1,1], Psi0)", om((1, 1), (1, 1)), psi0()),
        ("(Omega[1,0], Omega[0,1])", om((1, 1), (0, 1)), om((0, 1), (1, 1))),
        ("(b++ Omega[1/2,0], b++ Omega[1/2,0])", b(Op2DName::BPlusPlus, &h), b(Op2DName::BPlusPlus, &h)),
        ("(b+- b++ Psi0, Psi0)", b(Op2DName::BPlusMinus, &b(Op2DName::BPlusPlus, &psi0())), psi0()),
        ("(Omega[-1/2,0], b++ Omega[1/2,0])", om((-1, 2), (0, 1)), b(Op2DName::BPlusPlus, &h)),
        ("(Omega[3/2,1/2], Omega[1,0])", om((3, 2), (1, 2)), om((1, 1), (0, 1))),
    ];
    for (label, f, g) in pairs {
        cases.push(Case::TwoD(label.into(), f, g));
    }
    cases
}
