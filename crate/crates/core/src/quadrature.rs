//! Vector-valued global adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! All components of an integrand share the same abscissae, so one pass over
//! a panel yields every density derivative at once. The panel with the worst
//! error relative to its component tolerance is bisected until every
//! component meets `max(abs, rel·|I|, roundoff floor)`.

/// Kronrod abscissae on [-1, 1], ascending.
pub(crate) const NODES: [f64; 15] = [
    -0.991_455_371_120_812_6,
    -0.949_107_912_342_758_5,
    -0.864_864_423_359_769_1,
    -0.741_531_185_599_394_4,
    -0.586_087_235_467_691_1,
    -0.405_845_151_377_397_2,
    -0.207_784_955_007_898_5,
    0.0,
    0.207_784_955_007_898_5,
    0.405_845_151_377_397_2,
    0.586_087_235_467_691_1,
    0.741_531_185_599_394_4,
    0.864_864_423_359_769_1,
    0.949_107_912_342_758_5,
    0.991_455_371_120_812_6,
];

pub(crate) const KRONROD_WEIGHTS: [f64; 15] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
    0.204_432_940_075_298_9,
    0.190_350_578_064_785_4,
    0.169_004_726_639_267_9,
    0.140_653_259_715_525_92,
    0.104_790_010_322_250_18,
    0.063_092_092_629_978_55,
    0.022_935_322_010_529_225,
];

/// Gauss weights aligned with [`NODES`]; zero where the node is Kronrod-only.
pub(crate) const GAUSS_WEIGHTS: [f64; 15] = [
    0.0,
    0.129_484_966_168_869_7,
    0.0,
    0.279_705_391_489_276_67,
    0.0,
    0.381_830_050_505_118_94,
    0.0,
    0.417_959_183_673_469_4,
    0.0,
    0.381_830_050_505_118_94,
    0.0,
    0.279_705_391_489_276_67,
    0.0,
    0.129_484_966_168_869_7,
    0.0,
];

const ROUNDOFF_FACTOR: f64 = 50.0 * f64::EPSILON;

/// Absolute and relative accuracy goals applied per component.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

/// Outcome of [`integrate`]; also returned on failure as a best effort.
#[derive(Debug, Clone)]
pub(crate) struct Integral {
    pub value: Vec<f64>,
    pub err: Vec<f64>,
    /// Final partition, sorted by left endpoint.
    pub panels: Vec<(f64, f64)>,
}

impl Integral {
    pub fn max_err(&self) -> f64 {
        self.err.iter().fold(0.0, |m, &e| m.max(e))
    }
}

struct Panel {
    a: f64,
    b: f64,
    val: Vec<f64>,
    err: Vec<f64>,
    abs: Vec<f64>,
    frozen: bool,
}

fn eval_panel(f: &mut dyn FnMut(f64, &mut [f64]), dim: usize, a: f64, b: f64, buf: &mut [f64]) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = vec![0.0; dim];
    let mut g = vec![0.0; dim];
    let mut abs = vec![0.0; dim];
    for j in 0..15 {
        f(c + h * NODES[j], buf);
        for d in 0..dim {
            let v = buf[d];
            k[d] += KRONROD_WEIGHTS[j] * v;
            g[d] += GAUSS_WEIGHTS[j] * v;
            abs[d] += KRONROD_WEIGHTS[j] * v.abs();
        }
    }
    let err = (0..dim).map(|d| (h * (k[d] - g[d])).abs()).collect();
    for d in 0..dim {
        k[d] *= h;
        abs[d] *= h.abs();
    }
    Panel {
        a,
        b,
        val: k,
        err,
        abs,
        frozen: false,
    }
}

/// Integrates the `dim`-component function `f` over the partition given by
/// `breaks` (at least two sorted points).
///
/// `f(x, out)` writes all components at `x`. On failure the best available
/// estimate is returned in the `Err` variant.
pub(crate) fn integrate(
    f: &mut dyn FnMut(f64, &mut [f64]),
    dim: usize,
    breaks: &[f64],
    tol: Tolerance,
    max_panels: usize,
) -> Result<Integral, Integral> {
    assert!(breaks.len() >= 2, "need at least one panel");
    let mut buf = vec![0.0; dim];
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| eval_panel(f, dim, w[0], w[1], &mut buf))
        .collect();
    let mut value = vec![0.0; dim];
    let mut err = vec![0.0; dim];
    let mut tols = vec![0.0; dim];
    loop {
        value.iter_mut().for_each(|v| *v = 0.0);
        err.iter_mut().for_each(|v| *v = 0.0);
        let mut abs = vec![0.0; dim];
        for p in &panels {
            for d in 0..dim {
                value[d] += p.val[d];
                err[d] += p.err[d];
                abs[d] += p.abs[d];
            }
        }
        let mut done = true;
        for d in 0..dim {
            tols[d] = tol.abs.max(tol.rel * value[d].abs()).max(ROUNDOFF_FACTOR * abs[d]);
            if err[d] > tols[d] {
                done = false;
            }
        }
        let finish = |panels: &mut Vec<Panel>, value: &[f64], err: &[f64]| {
            panels.sort_by(|x, y| x.a.total_cmp(&y.a));
            Integral {
                value: value.to_vec(),
                err: err.to_vec(),
                panels: panels.iter().map(|p| (p.a, p.b)).collect(),
            }
        };
        if done {
            return Ok(finish(&mut panels, &value, &err));
        }
        if panels.len() >= max_panels {
            return Err(finish(&mut panels, &value, &err));
        }
        // worst unfrozen panel by error relative to its component tolerance
        let mut worst = None;
        let mut worst_score = 0.0;
        for (i, p) in panels.iter().enumerate() {
            if p.frozen {
                continue;
            }
            let score = (0..dim).fold(0.0f64, |m, d| m.max(p.err[d] / tols[d]));
            if score > worst_score {
                worst_score = score;
                worst = Some(i);
            }
        }
        let Some(i) = worst else {
            return Err(finish(&mut panels, &value, &err));
        };
        let (a, b) = (panels[i].a, panels[i].b);
        let m = 0.5 * (a + b);
        if !(m > a && m < b) || (b - a) <= 1e-13 * a.abs().max(b.abs()) {
            panels[i].frozen = true;
            continue;
        }
        let left = eval_panel(f, dim, a, m, &mut buf);
        let right = eval_panel(f, dim, m, b, &mut buf);
        panels[i] = left;
        panels.push(right);
    }
}
