//! Replicator dynamics on the simplex: fixed-step RK4 integration, simplex
//! diagnostics, phase portraits and their CSV/SVG export.
//!
//! Fields are built symbolically with exact coefficients and then compiled to
//! flat `f64` monomial tables for time stepping. By default a system is
//! integrated through its zero-sum form `diag(x) A(x) x`, whose coordinate sum
//! is conserved identically on ℝⁿ, not only on the hyperplane.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::games::{payoff_bracket, phi, PayoffMatrix};
use crate::poly::Polynomial;
use crate::polymat::{PolyMatrix, PolyVector, SkewPolyMatrix};

const SIMPLEX_TOL: f64 = 1e-12;

/// `coefficient * Π x_v^e` over the listed `(variable, exponent)` pairs.
type CompiledTerm = (f64, Vec<(usize, i32)>);

/// A polynomial vector field lowered to `f64` monomial tables.
#[derive(Debug, Clone)]
pub struct CompiledField {
    n: usize,
    entries: Vec<Vec<CompiledTerm>>,
}

impl CompiledField {
    pub fn new(field: &PolyVector) -> Self {
        let entries = field
            .entries()
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(alpha, c)| {
                        let powers = alpha
                            .exponents()
                            .iter()
                            .enumerate()
                            .filter(|(_, &e)| e > 0)
                            .map(|(v, &e)| (v, e as i32))
                            .collect();
                        (c.to_f64().unwrap_or(f64::NAN), powers)
                    })
                    .collect()
            })
            .collect();
        CompiledField { n: field.dimension(), entries }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        for (slot, terms) in out.iter_mut().zip(&self.entries) {
            *slot = terms.iter().map(|(c, powers)| powers.iter().fold(*c, |acc, &(v, e)| acc * x[v].powi(e))).sum();
        }
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.eval_into(x, &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payoff {
    General(PayoffMatrix),
    ZeroSum(SkewPolyMatrix),
}

/// Which symbolic field the integrator steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FieldForm {
    /// `diag(x) A(x) x` with `A` skew.
    #[default]
    ZeroSum,
    /// `diag(x)(H x - (x^T H x) 1)` straight from the payoff.
    Replicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegrateOptions {
    /// Divide by `Σ x_i` after every step.
    pub renormalize: bool,
    pub form: FieldForm,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions { renormalize: true, form: FieldForm::ZeroSum }
    }
}

/// Replicator system `ẋ_i = x_i (p_i(x) - p̄(x))` with `p = H(x) x`.
#[derive(Debug, Clone)]
pub struct ReplicatorSystem {
    n: usize,
    payoff: Payoff,
    field: PolyVector,
    zero_sum: SkewPolyMatrix,
    replicator_flow: CompiledField,
    zero_sum_flow: CompiledField,
}

impl ReplicatorSystem {
    /// Builds the field of a general payoff together with a skew representation
    /// of it; a payoff that is already skew is used as is.
    pub fn new(payoff: PayoffMatrix) -> Result<Self> {
        if payoff.matrix().skew_check()? {
            let skew = SkewPolyMatrix::new(payoff.matrix().clone())?;
            return Self::from_skew(skew);
        }
        let n = payoff.dimension();
        let field = phi(&payoff);
        let report = decompose(&payoff_bracket(payoff.matrix())?)?;
        let zero_sum = report.a;
        let zero_sum_field = zero_sum.apply_to_symbols()?.times_diag_symbols();
        if !zero_sum_field.sub(&field).vanishes_on_simplex_hyperplane() {
            return Err(Error::Internal("zero-sum field disagrees with the replicator field".into()));
        }
        Ok(ReplicatorSystem {
            n,
            replicator_flow: CompiledField::new(&field),
            zero_sum_flow: CompiledField::new(&zero_sum_field),
            payoff: Payoff::General(payoff),
            field,
            zero_sum,
        })
    }

    /// Zero-sum system; the average payoff `x^T A x` vanishes identically.
    pub fn from_skew(a: SkewPolyMatrix) -> Result<Self> {
        let n = a.dimension();
        if a.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.rows() });
        }
        let field = a.apply_to_symbols()?.times_diag_symbols();
        let flow = CompiledField::new(&field);
        Ok(ReplicatorSystem {
            n,
            payoff: Payoff::ZeroSum(a.clone()),
            replicator_flow: flow.clone(),
            zero_sum_flow: flow,
            field,
            zero_sum: a,
        })
    }

    /// System for `ẋ = diag(x) g(x)` given a field `g` with `x^T g = 0` on the hyperplane.
    pub fn from_field(g: &PolyVector) -> Result<Self> {
        Self::from_skew(decompose(g)?.a)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn payoff(&self) -> &Payoff {
        &self.payoff
    }

    /// The exact replicator field.
    pub fn field(&self) -> &PolyVector {
        &self.field
    }

    /// The skew payoff inducing the same dynamics on the simplex.
    pub fn zero_sum_payoff(&self) -> &SkewPolyMatrix {
        &self.zero_sum
    }

    pub fn velocity(&self, x: &[f64], form: FieldForm) -> Vec<f64> {
        self.flow(form).eval(x)
    }

    fn flow(&self, form: FieldForm) -> &CompiledField {
        match form {
            FieldForm::ZeroSum => &self.zero_sum_flow,
            FieldForm::Replicator => &self.replicator_flow,
        }
    }

    /// Fixed-step classical RK4 from `x0` over `[0, horizon]`.
    ///
    /// The last step is shortened when `horizon` is not a multiple of `dt`.
    pub fn integrate(&self, x0: &[f64], horizon: f64, dt: f64, options: IntegrateOptions) -> Result<Trajectory> {
        if x0.len() != self.n {
            return Err(Error::InvalidInitialCondition(format!("expected {} coordinates, got {}", self.n, x0.len())));
        }
        if x0.iter().any(|v| !v.is_finite() || *v < -SIMPLEX_TOL) || (x0.iter().sum::<f64>() - 1.0).abs() > SIMPLEX_TOL
        {
            return Err(Error::InvalidInitialCondition(format!("{x0:?} is not on the simplex")));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::StepSizeNonpositive(dt));
        }
        if !(horizon >= 0.0 && horizon.is_finite()) {
            return Err(Error::InvalidHorizon(horizon));
        }

        let flow = self.flow(options.form);
        let n = self.n;
        let full = (horizon / dt).floor() as usize;
        let tail = horizon - full as f64 * dt;
        let steps = if tail > dt * 1e-9 { full + 1 } else { full };

        let mut traj = Trajectory::with_capacity(n, dt, steps + 1);
        let mut x = x0.to_vec();
        traj.push(0.0, &x);

        let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        let mut stage = vec![0.0; n];
        for step in 1..=steps {
            let h = if step > full { tail } else { dt };
            flow.eval_into(&x, &mut k1);
            for i in 0..n {
                stage[i] = x[i] + 0.5 * h * k1[i];
            }
            flow.eval_into(&stage, &mut k2);
            for i in 0..n {
                stage[i] = x[i] + 0.5 * h * k2[i];
            }
            flow.eval_into(&stage, &mut k3);
            for i in 0..n {
                stage[i] = x[i] + h * k3[i];
            }
            flow.eval_into(&stage, &mut k4);
            for i in 0..n {
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            if options.renormalize {
                let s: f64 = x.iter().sum();
                x.iter_mut().for_each(|v| *v /= s);
            }
            let t = if step > full { horizon } else { step as f64 * dt };
            traj.push(t, &x);
        }
        Ok(traj)
    }

    /// Trajectories from the interior barycentric lattice `(i/k, j/k, (k-i-j)/k)`,
    /// all parts at least `1/k`, ordered by `(i, j)`.
    pub fn phase_portrait(
        &self,
        density: usize,
        horizon: f64,
        dt: f64,
        options: IntegrateOptions,
    ) -> Result<PhasePortrait> {
        if self.n != 3 {
            return Err(Error::UnsupportedDimension(self.n));
        }
        let starts = interior_grid(density);
        let trajectories =
            starts.par_iter().map(|s| self.integrate(&s.point, horizon, dt, options)).collect::<Result<Vec<_>>>()?;
        Ok(PhasePortrait { density, starts, trajectories })
    }
}

/// Time-stamped simplex states with per-step diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    n: usize,
    dt: f64,
    times: Vec<f64>,
    states: Vec<Vec<f64>>,
    sum_error: Vec<f64>,
    min_coordinate: Vec<f64>,
}

impl Trajectory {
    fn with_capacity(n: usize, dt: f64, cap: usize) -> Self {
        Trajectory {
            n,
            dt,
            times: Vec::with_capacity(cap),
            states: Vec::with_capacity(cap),
            sum_error: Vec::with_capacity(cap),
            min_coordinate: Vec::with_capacity(cap),
        }
    }

    fn push(&mut self, t: f64, x: &[f64]) {
        self.times.push(t);
        self.sum_error.push((x.iter().sum::<f64>() - 1.0).abs());
        self.min_coordinate.push(x.iter().copied().fold(f64::INFINITY, f64::min));
        self.states.push(x.to_vec());
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[Vec<f64>] {
        &self.states
    }

    /// Per-step `|Σ x_i - 1|`.
    pub fn sum_errors(&self) -> &[f64] {
        &self.sum_error
    }

    /// Per-step `min_i x_i`.
    pub fn min_coordinates(&self) -> &[f64] {
        &self.min_coordinate
    }

    pub fn max_sum_error(&self) -> f64 {
        self.sum_error.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_coordinate(&self) -> f64 {
        self.min_coordinate.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectories hold the initial state")
    }

    /// Values of a scalar polynomial along the trajectory.
    pub fn observe(&self, p: &Polynomial) -> Vec<f64> {
        self.states.iter().map(|x| p.eval_f64(x)).collect()
    }

    /// CSV with header `t,x1,...,xn,sum_err`; floats use shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for i in 1..=self.n {
            let _ = write!(out, ",x{i}");
        }
        out.push_str(",sum_err\n");
        for ((t, x), e) in self.times.iter().zip(&self.states).zip(&self.sum_error) {
            let _ = write!(out, "{t}");
            for v in x {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{e}");
        }
        out
    }
}

/// Grid position and barycentric coordinates of a portrait start.
#[derive(Debug, Clone, PartialEq)]
pub struct GridStart {
    pub i: usize,
    pub j: usize,
    pub point: Vec<f64>,
}

pub fn interior_grid(density: usize) -> Vec<GridStart> {
    let k = density as f64;
    let mut out = Vec::new();
    for i in 1..density {
        for j in 1..density.saturating_sub(i) {
            let l = density - i - j;
            out.push(GridStart { i, j, point: vec![i as f64 / k, j as f64 / k, l as f64 / k] });
        }
    }
    out
}

/// Planar equilateral embedding of the 2-simplex: `e1 → (0, 0)`, `e2 → (1, 0)`, `e3 → (1/2, √3/2)`.
pub fn project(x: &[f64]) -> (f64, f64) {
    (x[1] + 0.5 * x[2], x[2] * 3f64.sqrt() / 2.0)
}

#[derive(Debug, Clone)]
pub struct PhasePortrait {
    pub density: usize,
    pub starts: Vec<GridStart>,
    pub trajectories: Vec<Trajectory>,
}

const SVG_SIZE: f64 = 600.0;
const SVG_MARGIN: f64 = 40.0;
const ARROW_SPACING: f64 = 0.15;
const MIN_SEGMENT: f64 = 0.002;

fn to_svg_coords((px, py): (f64, f64)) -> (f64, f64) {
    let w = SVG_SIZE - 2.0 * SVG_MARGIN;
    (SVG_MARGIN + px * w, SVG_MARGIN + (3f64.sqrt() / 2.0 - py) * w)
}

impl PhasePortrait {
    /// Planar coordinates of every trajectory, in grid order.
    pub fn projections(&self) -> Vec<Vec<(f64, f64)>> {
        self.trajectories.iter().map(|t| t.states().iter().map(|x| project(x)).collect()).collect()
    }

    /// One CSV for all trajectories: `trajectory,i,j,t,x1,x2,x3,px,py`, every `stride`-th sample
    /// plus the final one.
    pub fn to_csv(&self, stride: usize) -> String {
        let stride = stride.max(1);
        let mut out = String::from("trajectory,i,j,t,x1,x2,x3,px,py\n");
        for (k, (start, traj)) in self.starts.iter().zip(&self.trajectories).enumerate() {
            let last = traj.len() - 1;
            for (s, (t, x)) in traj.times().iter().zip(traj.states()).enumerate() {
                if s % stride != 0 && s != last {
                    continue;
                }
                let (px, py) = project(x);
                let _ = writeln!(out, "{k},{},{},{t},{},{},{},{px},{py}", start.i, start.j, x[0], x[1], x[2]);
            }
        }
        out
    }

    /// Standalone SVG: triangle outline, one polyline per trajectory and
    /// arrowheads every fixed arc length along it.
    pub fn to_svg(&self) -> String {
        let height = SVG_SIZE - 2.0 * SVG_MARGIN * 0.5;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{height:.0}" viewBox="0 0 {SVG_SIZE} {height:.0}">"#
        );
        out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

        let corners = [(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)].map(to_svg_coords);
        let _ = writeln!(
            out,
            r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            corners[0].0, corners[0].1, corners[1].0, corners[1].1, corners[2].0, corners[2].1
        );
        for (label, (cx, cy), (dx, dy)) in
            [("x1", corners[0], (-22.0, 16.0)), ("x2", corners[1], (8.0, 16.0)), ("x3", corners[2], (-8.0, -10.0))]
        {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14">{label}</text>"#,
                cx + dx,
                cy + dy
            );
        }

        for traj in &self.trajectories {
            let pts = decimate(&traj.states().iter().map(|x| project(x)).collect::<Vec<_>>());
            out.push_str(r#"<polyline fill="none" stroke="steelblue" stroke-width="1" points=""#);
            for (k, p) in pts.iter().enumerate() {
                let (sx, sy) = to_svg_coords(*p);
                if k > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{sx:.2},{sy:.2}");
            }
            out.push_str("\"/>\n");
            for (tip, dir) in arrow_sites(&pts) {
                let _ = writeln!(out, "{}", arrowhead(tip, dir));
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn decimate(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (k, &p) in pts.iter().enumerate() {
        let keep = match out.last() {
            None => true,
            Some(&q) => k + 1 == pts.len() || dist(p, q) >= MIN_SEGMENT,
        };
        if keep {
            out.push(p);
        }
    }
    out
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

/// Points at arc lengths `ARROW_SPACING, 2*ARROW_SPACING, ...` with the local unit direction.
fn arrow_sites(pts: &[(f64, f64)]) -> Vec<((f64, f64), (f64, f64))> {
    let mut out = Vec::new();
    let mut travelled = 0.0;
    let mut next = ARROW_SPACING;
    for w in pts.windows(2) {
        let len = dist(w[0], w[1]);
        if len == 0.0 {
            continue;
        }
        while travelled + len >= next {
            let f = (next - travelled) / len;
            let at = (w[0].0 + f * (w[1].0 - w[0].0), w[0].1 + f * (w[1].1 - w[0].1));
            out.push((at, ((w[1].0 - w[0].0) / len, (w[1].1 - w[0].1) / len)));
            next += ARROW_SPACING;
        }
        travelled += len;
    }
    out
}

fn arrowhead(tip: (f64, f64), dir: (f64, f64)) -> String {
    let (tx, ty) = to_svg_coords(tip);
    // svg y axis points down
    let (dx, dy) = (dir.0, -dir.1);
    let (len, half) = (8.0, 3.5);
    let (bx, by) = (tx - len * dx, ty - len * dy);
    let (nx, ny) = (-dy, dx);
    format!(
        r#"<polygon points="{tx:.2},{ty:.2} {:.2},{:.2} {:.2},{:.2}" fill="steelblue"/>"#,
        bx + half * nx,
        by + half * ny,
        bx - half * nx,
        by - half * ny
    )
}

/// `x^T H x` as a scalar polynomial, for monotonicity checks.
pub fn average_payoff(h: &PolyMatrix) -> Result<Polynomial> {
    h.quadratic_form()
}
