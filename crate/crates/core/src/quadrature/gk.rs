//! Adaptive Gauss–Kronrod (7/15) integration in one variable.

use std::collections::BinaryHeap;

use rayon::prelude::*;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// The fifteen Kronrod abscissae of `[a, b]`, in increasing order.
pub fn nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for j in 0..7 {
        x[j] = c - h * XGK[j];
        x[14 - j] = c + h * XGK[j];
    }
    x[7] = c;
    x
}

/// Kronrod value and QUADPACK error estimate from integrand values at [`nodes`].
pub fn rule(a: f64, b: f64, f: &[f64; 15]) -> (f64, f64) {
    let h = 0.5 * (b - a);
    let fc = f[7];
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    for j in 0..7 {
        let s = f[j] + f[14 - j];
        resk += WGK[j] * s;
        resabs += WGK[j] * (f[j].abs() + f[14 - j].abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * s;
        }
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((f[j] - mean).abs() + (f[14 - j] - mean).abs());
    }
    let value = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Adaptive {
    pub value: f64,
    pub abs_error: f64,
    pub n_evals: usize,
    pub converged: bool,
    pub panels: Vec<Panel>,
}

/// Neumaier-compensated sum.
pub fn neumaier<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in it {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn panel<E, F>(f: &F, a: f64, b: f64, parallel: bool) -> Result<Panel, E>
where
    F: Fn(f64) -> Result<f64, E> + Sync,
    E: Send,
{
    let x = nodes(a, b);
    let mut fx = [0.0; 15];
    if parallel {
        let vals: Vec<Result<f64, E>> = x.par_iter().map(|&t| f(t)).collect();
        for (slot, v) in fx.iter_mut().zip(vals) {
            *slot = v?;
        }
    } else {
        for (slot, &t) in fx.iter_mut().zip(&x) {
            *slot = f(t)?;
        }
    }
    let (value, error) = rule(a, b, &fx);
    Ok(Panel { a, b, value, error })
}

/// Adaptive bisection of the panel with the largest error estimate.
///
/// `breaks` must be increasing and include both endpoints. Integration stops
/// when the summed error estimate is below `max(abs_tol, rel_tol·|value|)` or
/// when the evaluation budget is exhausted (`converged = false`). Nodes are
/// evaluated concurrently when `parallel` is set; the result does not depend
/// on the number of workers.
pub fn integrate<E, F>(f: &F, breaks: &[f64], rel_tol: f64, abs_tol: f64, max_evals: usize, parallel: bool) -> Result<Adaptive, E>
where
    F: Fn(f64) -> Result<f64, E> + Sync,
    E: Send,
{
    let mut panels = Vec::with_capacity(breaks.len().saturating_sub(1));
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            panels.push(panel(f, w[0], w[1], parallel)?);
        }
    }
    let mut n_evals = 15 * panels.len();
    let mut heap: BinaryHeap<ByError> = panels.into_iter().map(ByError).collect();
    let mut value = neumaier(heap.iter().map(|p| p.0.value));
    let mut err = neumaier(heap.iter().map(|p| p.0.error));
    let mut settled = Vec::new();
    let mut splits = 0usize;
    let mut converged = err <= abs_tol.max(rel_tol * value.abs());
    while !converged && n_evals + 30 <= max_evals {
        let Some(ByError(p)) = heap.pop() else { break };
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            // cannot be split further in floating point; keep its error on the books
            settled.push(p);
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let (left, right) = if parallel {
            rayon::join(|| panel(f, p.a, mid, false), || panel(f, mid, p.b, false))
        } else {
            (panel(f, p.a, mid, false), panel(f, mid, p.b, false))
        };
        let (left, right) = (left?, right?);
        value += left.value + right.value - p.value;
        err += left.error + right.error - p.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        n_evals += 30;
        converged = err <= abs_tol.max(rel_tol * value.abs());
        splits += 1;
        if splits.is_multiple_of(128) {
            // refresh running sums to stop drift
            value = neumaier(heap.iter().map(|p| &p.0).chain(&settled).map(|p| p.value));
            err = neumaier(heap.iter().map(|p| &p.0).chain(&settled).map(|p| p.error));
        }
    }
    let mut panels: Vec<Panel> = heap.into_iter().map(|p| p.0).chain(settled).collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = neumaier(panels.iter().map(|q| q.value));
    let abs_error = neumaier(panels.iter().map(|q| q.error));
    let converged = converged || abs_error <= abs_tol.max(rel_tol * value.abs());
    Ok(Adaptive { value, abs_error, n_evals, converged, panels })
}

/// Max-heap ordering by error, ties broken by position for determinism.
struct ByError(Panel);

impl PartialEq for ByError {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == std::cmp::Ordering::Equal
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for ByError {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.error.total_cmp(&o.0.error).then(o.0.a.total_cmp(&self.0.a))
    }
}
