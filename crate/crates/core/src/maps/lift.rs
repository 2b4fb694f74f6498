use std::sync::Arc;

use super::MapExpr;
use crate::error::{Error, Result};
use crate::geometry::{centered_turns, wrap_turns, SampleGrid, Space};

/// A lift `f̃ : ℝ → ℝ` of an orientation-preserving circle homeomorphism,
/// with `f̃(x + 1) = f̃(x) + 1`.
///
/// The table holds `f̃(k/N)` for `k = 0..=N`. Evaluation is exact: the map
/// itself is evaluated and the table only selects the integer branch.
#[derive(Debug, Clone)]
pub struct Lift {
    map: MapExpr,
    table: Arc<Vec<f64>>,
    /// Integer added on top of the table's branch.
    shift: i64,
}

/// Tabulate a lift of `f` with base value `f̃(0) ∈ [0, 1)`.
pub fn lift_circle_map(f: &MapExpr, table_size: usize) -> Result<Lift> {
    if f.space()? != Space::Circle {
        return Err(Error::SpaceMismatch { expected: Space::Circle, found: f.space()? });
    }
    if table_size < 1024 {
        return Err(Error::Precondition(format!("table size {table_size} below 1024")));
    }
    if f.orientation() < 0 {
        return Err(Error::Precondition("orientation-reversing circle map".into()));
    }
    let n = table_size;
    let mut table = Vec::with_capacity(n + 1);
    let mut prev = f.eval_circle(0.0);
    table.push(prev);
    for k in 1..=n {
        let y = f.eval_circle(k as f64 / n as f64);
        let step = centered_turns(y - prev);
        if !(step > 0.0 && step < 0.5) {
            return Err(Error::UnwrapFailure { index: k, step });
        }
        let last = table[k - 1];
        table.push(last + step);
        prev = y;
    }
    let total = table[n] - table[0];
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::UnwrapFailure { index: n, step: total });
    }
    // Close the period exactly.
    table[n] = table[0] + 1.0;
    Ok(Lift { map: f.clone(), table: Arc::new(table), shift: 0 })
}

impl Lift {
    pub fn map(&self) -> &MapExpr {
        &self.map
    }

    /// `f̃(0)`.
    pub fn base(&self) -> f64 {
        self.table[0] + self.shift as f64
    }

    pub fn table_size(&self) -> usize {
        self.table.len() - 1
    }

    /// Tabulated values `f̃(k/N)`, `k = 0..=N`.
    pub fn table(&self) -> Vec<f64> {
        self.table.iter().map(|v| v + self.shift as f64).collect()
    }

    /// The same map lifted with `f̃ + k`.
    pub fn shifted(&self, k: i64) -> Lift {
        Lift { shift: self.shift + k, ..self.clone() }
    }

    fn interpolate(&self, frac: f64) -> f64 {
        let n = self.table_size();
        let s = frac * n as f64;
        let i = (s.floor() as usize).min(n - 1);
        let w = s - i as f64;
        self.table[i] * (1.0 - w) + self.table[i + 1] * w
    }

    /// `f̃(x)` for any real `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let whole = x.floor();
        let frac = x - whole;
        let approx = self.interpolate(frac);
        let y = self.map.eval_circle(frac);
        let k = (approx - y).round();
        y + k + whole + self.shift as f64
    }

    /// `f̃ⁿ(x)` for `n ≥ 0`.
    pub fn iterate(&self, x: f64, n: usize) -> f64 {
        let mut y = x;
        for _ in 0..n {
            y = self.eval(y);
        }
        y
    }
}

/// `φ(x) = f̃(x̃) − x̃`, independent of the representative `x̃`.
pub fn cocycle_value(lift: &Lift, x: f64) -> f64 {
    let x = wrap_turns(x);
    lift.eval(x) - x
}

/// Maximum over the grid of `|φ_{f̃∘g̃}(x) − φ_f̃(g(x)) − φ_g̃(x)|`.
///
/// The lift of the composition is tabulated independently from `f ∘ g` and
/// only its integer branch is matched to `f̃ ∘ g̃`.
pub fn check_cocycle_relation(f: &Lift, g: &Lift, grid: &SampleGrid) -> Result<f64> {
    if grid.space() != Space::Circle {
        return Err(Error::SpaceMismatch { expected: Space::Circle, found: grid.space() });
    }
    let fg = lift_circle_map(&MapExpr::compose(f.map.clone(), g.map.clone()), f.table_size().max(1024))?;
    let target = f.eval(g.eval(0.0));
    let fg = fg.shifted((target - fg.base()).round() as i64);
    let mut worst: f64 = 0.0;
    for p in &grid.points {
        let x = p.as_circle().unwrap_or(0.0);
        let gx = g.map.eval_circle(x);
        let r = cocycle_value(&fg, x) - cocycle_value(f, gx) - cocycle_value(g, x);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn rotation_lift() {
        let l = lift_circle_map(&MapExpr::circle_rotation(0.3), 1024).unwrap();
        assert!((l.base() - 0.3).abs() < 1e-15);
        for k in 0..50 {
            let x = k as f64 * 0.173 - 3.0;
            assert!((l.eval(x) - (x + 0.3)).abs() < 1e-12);
        }
        assert!((cocycle_value(&l, 0.77) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn warp_lift_matches_closed_form() {
        let f = MapExpr::circle_warp(vec![0.5]).unwrap();
        let l = lift_circle_map(&f, 4096).unwrap();
        for (k, v) in l.table().iter().enumerate() {
            let x = k as f64 / 4096.0;
            assert!((v - (x + 0.5 * (TAU * x).sin() / TAU)).abs() < 1e-12);
        }
        assert!((cocycle_value(&l, 0.25) - 1.0 / (4.0 * PI)).abs() < 1e-12);
        let id = lift_circle_map(&MapExpr::identity(Space::Circle), 1024).unwrap();
        assert_eq!(cocycle_value(&id, 0.4), 0.0);
    }

    #[test]
    fn periodicity_and_integer_ambiguity() {
        let f = MapExpr::conj(MapExpr::circle_warp(vec![0.4, 0.2]).unwrap(), MapExpr::circle_rotation(0.45));
        let l = lift_circle_map(&f, 2048).unwrap();
        let m = l.shifted(3);
        for k in 0..200 {
            let x = k as f64 * 0.0371;
            assert!((l.eval(x + 1.0) - l.eval(x) - 1.0).abs() < 1e-12);
            assert!((m.eval(x) - l.eval(x) - 3.0).abs() < 1e-12);
        }
        for w in l.table().windows(2) {
            assert!((w[1] - w[0]).abs() < 0.5);
        }
    }

    #[test]
    fn reversing_and_coarse_inputs_fail() {
        let r = MapExpr::Power(Arc::new(MapExpr::circle_rotation(0.1)), 3);
        assert!(lift_circle_map(&r, 1024).is_ok());
        assert!(lift_circle_map(&r, 100).is_err());
        let fold = MapExpr::Power(Arc::new(MapExpr::circle_warp(vec![0.9]).unwrap()), 40);
        // A homeomorphism, but far too steep for this table.
        assert!(matches!(lift_circle_map(&fold, 1024), Err(Error::UnwrapFailure { .. })));
        assert!(lift_circle_map(&MapExpr::disk_rotation(0.1), 1024).is_err());
    }

    #[test]
    fn cocycle_relation_residuals() {
        let grid = SampleGrid::circle(4096);
        let a = lift_circle_map(&MapExpr::circle_rotation(0.2), 1024).unwrap();
        let b = lift_circle_map(&MapExpr::circle_rotation(0.7), 1024).unwrap();
        assert!(check_cocycle_relation(&a, &b, &grid).unwrap() < 1e-12);
        let w = MapExpr::circle_warp(vec![0.5, 0.3]).unwrap();
        let c = lift_circle_map(&w, 4096).unwrap();
        assert!(check_cocycle_relation(&a, &c, &grid).unwrap() < 1e-9);
        assert!(check_cocycle_relation(&c, &a, &grid).unwrap() < 1e-9);
        let ci = lift_circle_map(&w.inverse(), 4096).unwrap();
        assert!(check_cocycle_relation(&c, &ci, &grid).unwrap() < 1e-9);
    }
}
