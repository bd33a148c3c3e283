use std::str::FromStr;

use num_complex::Complex64;

/// Largest accepted number of steps per axis.
pub const MAX_STEPS: usize = 4096;

/// A `steps × steps` grid over `[re0, re1] × [im0, im1]`, written on the
/// command line as `re0,re1,im0,im1,steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub re0: f64,
    pub re1: f64,
    pub im0: f64,
    pub im1: f64,
    pub steps: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(format!("expected re0,re1,im0,im1,steps, got `{s}`"));
        }
        let mut bounds = [0.0; 4];
        for (slot, text) in bounds.iter_mut().zip(&parts) {
            *slot = text
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{text}` is not a finite number"))?;
        }
        let steps: usize = parts[4]
            .parse()
            .map_err(|_| format!("`{}` is not a step count", parts[4]))?;
        if steps == 0 {
            return Err("the grid is empty (steps = 0)".into());
        }
        if steps > MAX_STEPS {
            return Err(format!("at most {MAX_STEPS} steps per axis"));
        }
        let [re0, re1, im0, im1] = bounds;
        Ok(Grid { re0, re1, im0, im1, steps })
    }
}

fn axis(lo: f64, hi: f64, k: usize, steps: usize) -> f64 {
    if steps == 1 {
        lo
    } else {
        lo + (hi - lo) * k as f64 / (steps - 1) as f64
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        self.steps * self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps == 0
    }

    /// Points with `im` ascending in the outer loop and `re` ascending inside.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.steps).flat_map(move |j| {
            let im = axis(self.im0, self.im1, j, self.steps);
            (0..self.steps).map(move |k| Complex64::new(axis(self.re0, self.re1, k, self.steps), im))
        })
    }

    /// The point under image pixel `(col, row)`, row 0 being the top (`im1`).
    pub fn pixel(&self, col: usize, row: usize) -> Complex64 {
        Complex64::new(
            axis(self.re0, self.re1, col, self.steps),
            axis(self.im1, self.im0, row, self.steps),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orders() {
        let g: Grid = "-1,1,0,2,3".parse().unwrap();
        let pts: Vec<_> = g.points().collect();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], Complex64::new(-1.0, 0.0));
        assert_eq!(pts[1], Complex64::new(0.0, 0.0));
        assert_eq!(pts[8], Complex64::new(1.0, 2.0));
        assert_eq!(g.pixel(0, 0), Complex64::new(-1.0, 2.0));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!("0,1,0,1,0".parse::<Grid>().is_err());
        assert!("0,1,0,1".parse::<Grid>().is_err());
        assert!("0,nan,0,1,2".parse::<Grid>().is_err());
        assert!("0,1,0,1,x".parse::<Grid>().is_err());
    }

    #[test]
    fn single_point_grid() {
        let g: Grid = "0.5,9,0.25,9,1".parse().unwrap();
        assert_eq!(g.points().collect::<Vec<_>>(), vec![Complex64::new(0.5, 0.25)]);
    }
}
