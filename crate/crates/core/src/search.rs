//! One-dimensional maximization: uniform grid scan followed by golden-section
//! refinement of the most promising cells.

use std::cmp::Ordering;

use crate::scalar::Scalar;

/// Number of grid peaks refined by golden-section.
pub const REFINED_PEAKS: usize = 8;
/// Golden-section iterations per refined cell.
pub const GOLDEN_ITERATIONS: usize = 60;

/// An argument together with the objective value found there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak<T> {
    pub arg: T,
    pub value: T,
}

impl<T: Scalar> Peak<T> {
    /// Keeps the larger value; exact ties go to the smaller argument.
    fn merge(self, other: Peak<T>) -> Peak<T> {
        if other.value > self.value || (other.value == self.value && other.arg < self.arg) {
            other
        } else {
            self
        }
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Returns the best point evaluated, so the result never gets worse than
/// any probe, even when `f` is not unimodal on the bracket.
pub fn golden_section_max<T: Scalar>(f: impl Fn(T) -> T, mut a: T, mut b: T, iterations: usize) -> Peak<T> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = Peak { arg: x1, value: f1 }.merge(Peak { arg: x2, value: f2 });
    for _ in 0..iterations {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            best = best.merge(Peak { arg: x1, value: f1 });
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            best = best.merge(Peak { arg: x2, value: f2 });
        }
    }
    best
}

/// A uniform grid `start + k * step` for `k in 0..len`.
#[derive(Debug, Clone, Copy)]
pub struct UniformGrid<T> {
    pub start: T,
    pub step: T,
    pub len: usize,
    /// Whether the grid wraps around (angles on the circle).
    pub periodic: bool,
}

impl<T: Scalar> UniformGrid<T> {
    /// `len` points covering `[0, 2π)`.
    pub fn circle(len: usize) -> Self {
        Self { start: T::zero(), step: T::TAU() / T::of_usize(len), len, periodic: true }
    }

    /// `len` points covering `[a, b]` including both ends.
    pub fn closed(a: T, b: T, len: usize) -> Self {
        assert!(len >= 2, "closed grid needs at least two nodes");
        Self { start: a, step: (b - a) / T::of_usize(len - 1), len, periodic: false }
    }

    #[inline]
    pub fn node(&self, k: usize) -> T {
        self.start + self.step * T::of_usize(k)
    }

    /// Scans the grid, then refines the best local maxima with golden-section.
    pub fn maximize(&self, f: impl Fn(T) -> T) -> Peak<T> {
        let values: Vec<T> = (0..self.len).map(|k| f(self.node(k))).collect();
        self.refine(&values, f, REFINED_PEAKS, GOLDEN_ITERATIONS)
    }

    /// Refines precomputed grid values `values[k] ≈ f(node(k))` and returns
    /// the overall best point.
    pub fn refine(&self, values: &[T], f: impl Fn(T) -> T, top: usize, iterations: usize) -> Peak<T> {
        let grid_best = (0..self.len)
            .map(|k| Peak { arg: self.node(k), value: values[k] })
            .reduce(|a, b| a.merge(b))
            .expect("non-empty grid");
        self.refine_peaks(values, f, top, iterations).into_iter().fold(grid_best, |best, p| best.merge(p))
    }

    /// The `top` highest local maxima of the grid, each bracketed by its two
    /// neighbouring cells and searched with golden-section on the exact `f`.
    /// Sorted by decreasing value, ties by increasing argument.
    pub fn refine_peaks(&self, values: &[T], f: impl Fn(T) -> T, top: usize, iterations: usize) -> Vec<Peak<T>> {
        debug_assert_eq!(values.len(), self.len);
        let n = self.len;
        let neighbour = |k: usize, forward: bool| -> Option<usize> {
            match (forward, self.periodic) {
                (true, true) => Some((k + 1) % n),
                (false, true) => Some((k + n - 1) % n),
                (true, false) => (k + 1 < n).then_some(k + 1),
                (false, false) => k.checked_sub(1),
            }
        };
        let mut peaks: Vec<usize> = (0..n)
            .filter(|&k| {
                let v = values[k];
                [neighbour(k, false), neighbour(k, true)].into_iter().flatten().all(|j| values[j] <= v)
            })
            .collect();
        peaks.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(Ordering::Equal).then(i.cmp(&j)));
        peaks.truncate(top);

        let mut refined: Vec<Peak<T>> = peaks
            .into_iter()
            .map(|k| {
                let lo = if k == 0 && !self.periodic { self.node(0) } else { self.node(k) - self.step };
                let hi = if k + 1 == n && !self.periodic { self.node(k) } else { self.node(k) + self.step };
                let grid_peak = Peak { arg: self.node(k), value: values[k] };
                let mut peak = golden_section_max(&f, lo, hi, iterations);
                if self.periodic {
                    peak.arg = self.wrap(peak.arg);
                }
                grid_peak.merge(peak)
            })
            .collect();
        refined.sort_by(|a, b| {
            b.value
                .partial_cmp(&a.value)
                .unwrap_or(Ordering::Equal)
                .then(a.arg.partial_cmp(&b.arg).unwrap_or(Ordering::Equal))
        });
        refined
    }

    fn wrap(&self, x: T) -> T {
        let period = self.step * T::of_usize(self.len);
        let mut y = x - self.start;
        y = y - (y / period).floor() * period;
        if y >= period {
            y = y - period;
        }
        self.start + y
    }
}
