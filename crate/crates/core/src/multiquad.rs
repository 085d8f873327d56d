//! Iterated integration over boxes and the ordered simplex (n ≤ 3), and the
//! symmetric divided-difference double integral.

use alloc::vec::Vec;
use core::cell::{Cell, RefCell};


use crate::kernels::{divided_difference2, DDConfig};
use crate::quad::{adaptive_with_budget, de_with_budget, Budget, Fn1D, QuadResult};
use crate::{Error, Result};

pub const DEFAULT_BOX_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    GaussKronrod,
    DoubleExponential,
}

#[derive(Debug, Clone)]
pub struct BoxSpec {
    pub axes: Vec<(f64, f64)>,
    /// Inner tolerance = outer tolerance × this factor (divided by the outer length).
    pub inner_tol_factor: f64,
    pub budget: usize,
    pub rules: Vec<Rule>,
}

impl BoxSpec {
    pub fn new(axes: &[(f64, f64)]) -> Self {
        BoxSpec {
            axes: axes.to_vec(),
            inner_tol_factor: 0.25,
            budget: DEFAULT_BOX_BUDGET,
            rules: alloc::vec![Rule::GaussKronrod; axes.len()],
        }
    }

    pub fn cube(n: usize, a: f64, b: f64) -> Self {
        Self::new(&alloc::vec![(a, b); n])
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_rule(mut self, axis: usize, rule: Rule) -> Self {
        self.rules[axis] = rule;
        self
    }
}

struct Iterated<'a> {
    f: &'a dyn Fn(&[f64]) -> f64,
    bounds: &'a dyn Fn(usize, &[f64; 3]) -> (f64, f64),
    rules: &'a [Rule],
    n: usize,
    factor: f64,
    budget: Budget,
    point: Cell<[f64; 3]>,
    // coordinates handed to f, possibly reordered
    order: [usize; 3],
    converged: Cell<bool>,
    inner_err: Vec<Cell<f64>>,
    failure: RefCell<Option<Error>>,
}

impl Iterated<'_> {
    fn integrate(&self, depth: usize, tol: f64) -> Result<QuadResult> {
        let (a, b) = (self.bounds)(depth, &self.point.get());
        let len = (b - a).abs();
        let inner_tol = tol * self.factor / len.max(1.0);
        let g = |x: f64| -> f64 {
            let mut p = self.point.get();
            p[depth] = x;
            self.point.set(p);
            if depth + 1 == self.n {
                let mut args = [0.0; 3];
                for (k, &src) in self.order[..self.n].iter().enumerate() {
                    args[k] = p[src];
                }
                return (self.f)(&args[..self.n]);
            }
            match self.integrate(depth + 1, inner_tol) {
                Ok(r) => {
                    if !r.converged {
                        self.converged.set(false);
                    }
                    let c = &self.inner_err[depth + 1];
                    c.set(c.get().max(r.err_est));
                    r.value
                }
                Err(e) => {
                    let mut slot = self.failure.borrow_mut();
                    if slot.is_none() {
                        *slot = Some(e);
                    }
                    0.0
                }
            }
        };
        let res = match self.rules[depth] {
            Rule::GaussKronrod => adaptive_with_budget(&g, a, b, tol, &self.budget),
            Rule::DoubleExponential => {
                let f1 = Fn1D::new(&g, a, b).singular_at(true, true);
                de_with_budget(&f1, tol, &self.budget)
            }
        };
        if let Some(e) = self.failure.borrow_mut().take() {
            return Err(e);
        }
        res
    }

    fn run(&self, tol: f64) -> Result<QuadResult> {
        let r = self.integrate(0, tol)?;
        let (a, b) = (self.bounds)(0, &[0.0; 3]);
        let mut err = r.err_est;
        let mut len = (b - a).abs();
        for d in 1..self.n {
            err += len * self.inner_err[d].get();
            len *= len.max(1.0);
        }
        Ok(QuadResult {
            value: r.value,
            err_est: err,
            n_evals: self.budget.used(),
            converged: r.converged && self.converged.get() && !self.budget.exhausted(),
        })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("dimension {n} not supported (1..=3)")))
    }
}

/// Iterated adaptive integration over a box, innermost axis evaluated first.
pub fn integrate_box(f: &dyn Fn(&[f64]) -> f64, spec: &BoxSpec, tol: f64) -> Result<QuadResult> {
    let n = spec.axes.len();
    check_dim(n)?;
    if spec.rules.len() != n {
        return Err(Error::Domain("one rule per axis required".into()));
    }
    let axes = spec.axes.clone();
    let bounds = move |d: usize, _p: &[f64; 3]| axes[d];
    let it = Iterated {
        f,
        bounds: &bounds,
        rules: &spec.rules,
        n,
        factor: spec.inner_tol_factor,
        budget: Budget::new(spec.budget),
        point: Cell::new([0.0; 3]),
        order: [0, 1, 2],
        converged: Cell::new(true),
        inner_err: (0..n).map(|_| Cell::new(0.0)).collect(),
        failure: RefCell::new(None),
    };
    it.run(tol)
}

/// ∫ over 0 < x₁ < … < xₙ < 1 of f(x₁, …, xₙ); DE rule on every axis.
pub fn integrate_simplex_ordered(f: &dyn Fn(&[f64]) -> f64, n: usize, tol: f64) -> Result<QuadResult> {
    check_dim(n)?;
    // p[0] = x_n over [0,1], p[d] over [0, p[d-1]]
    let bounds = |d: usize, p: &[f64; 3]| if d == 0 { (0.0, 1.0) } else { (0.0, p[d - 1]) };
    let rules = alloc::vec![Rule::DoubleExponential; n];
    let mut order = [0usize; 3];
    for (k, o) in order[..n].iter_mut().enumerate() {
        *o = n - 1 - k;
    }
    let it = Iterated {
        f,
        bounds: &bounds,
        rules: &rules,
        n,
        factor: 0.25,
        budget: Budget::new(DEFAULT_BOX_BUDGET),
        point: Cell::new([0.0; 3]),
        order,
        converged: Cell::new(true),
        inner_err: (0..n).map(|_| Cell::new(0.0)).collect(),
        failure: RefCell::new(None),
    };
    it.run(tol)
}

fn check_monotone(h: &Fn1D, a: f64, b: f64) -> Result<()> {
    let m = 32;
    let vals: Vec<f64> = (0..=m).map(|k| h.eval(a + (b - a) * k as f64 / m as f64)).collect();
    let up = vals.windows(2).all(|w| w[1] > w[0]);
    let down = vals.windows(2).all(|w| w[1] < w[0]);
    if up || down {
        Ok(())
    } else {
        Err(Error::Contract("node map H must be strictly monotone".into()))
    }
}

/// ∫∫_{[a,b]²} (F(H(θ₁)) − F(H(θ₂)))/(H(θ₁) − H(θ₂)) dθ₁dθ₂, computed on the
/// triangle θ₁ < θ₂ and doubled.
pub fn symmetric_double_integral(
    f: &Fn1D,
    h: &Fn1D,
    interval: (f64, f64),
    tol: f64,
    cfg: &DDConfig,
) -> Result<QuadResult> {
    symmetric_double_integral_budget(f, h, interval, tol, cfg, DEFAULT_BOX_BUDGET, Rule::GaussKronrod)
}

/// As [`symmetric_double_integral`] with an explicit evaluation budget and
/// rule on both axes. `Rule::DoubleExponential` copes with endpoint log
/// singularities of F∘H.
pub fn symmetric_double_integral_budget(
    f: &Fn1D,
    h: &Fn1D,
    interval: (f64, f64),
    tol: f64,
    cfg: &DDConfig,
    budget: usize,
    rule: Rule,
) -> Result<QuadResult> {
    let (a, b) = interval;
    check_monotone(h, a, b)?;
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let kernel = |args: &[f64]| -> f64 {
        match divided_difference2(f, h.eval(args[0]), h.eval(args[1]), cfg) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    // outer θ₂ over [a,b], inner θ₁ over [a,θ₂]
    let bounds = |d: usize, p: &[f64; 3]| if d == 0 { (a, b) } else { (a, p[0]) };
    let rules = [rule, rule];
    let it = Iterated {
        f: &kernel,
        bounds: &bounds,
        rules: &rules,
        n: 2,
        factor: 0.25,
        budget: Budget::new(budget),
        point: Cell::new([0.0; 3]),
        order: [1, 0, 2],
        converged: Cell::new(true),
        inner_err: (0..2).map(|_| Cell::new(0.0)).collect(),
        failure: RefCell::new(None),
    };
    let r = it.run(0.5 * tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(QuadResult { value: 2.0 * r.value, err_est: 2.0 * r.err_est, ..r })
}
