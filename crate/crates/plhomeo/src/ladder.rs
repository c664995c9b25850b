//! Shared machinery for the gamma class function over a geometric ladder of
//! monitor intervals `I_n = [b^-n-1, b^-n]`, `J_n = [1-b^-n, 1-b^-n-1]` for a
//! rational base `b > 1` (`b = 2` for Thompson's group, `b = a` for `P^a`).
//!
//! The affine monitor maps `phi_n : [0,1] -> I_n` and `psi_n : [0,1] -> J_n`
//! automatically share the slope `b^-n (1 - b^-1)` because the two intervals
//! have that exact common length.

use alloc::format;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{pow_rat, xi_decompose, Rational};
use crate::plmap::{orbit_enter, power_fragment, transport_fragment, Interval, PLHomeo, ORBIT_CAP};

const LEVEL_CAP: u32 = 10_000;

pub(crate) struct Ladder {
    base: Rational,
}

impl Ladder {
    pub(crate) fn new(base: Rational) -> Self {
        debug_assert!(base > Rational::one());
        Ladder { base }
    }

    fn scale(&self, n: u32) -> Rational {
        pow_rat(&self.base, -(n as i64))
    }

    pub(crate) fn lower_interval(&self, n: u32) -> Interval {
        Interval::new(self.scale(n + 1), self.scale(n)).unwrap()
    }

    pub(crate) fn upper_interval(&self, n: u32) -> Interval {
        Interval::new(Rational::one() - self.scale(n), Rational::one() - self.scale(n + 1)).unwrap()
    }

    /// The smallest admissible level: `n >= 1` with `[0, b^-n]` and
    /// `[1-b^-n, 1]` inside the maximal end linear zones of `g`, and `n` at
    /// least the exponent at which the orbit enters the right zone (below
    /// that the orbit jumps over `1 - b^-n` instead of hitting it).
    pub(crate) fn min_level(&self, g: &PLHomeo) -> Result<u32> {
        if g.is_identity() {
            return Ok(1);
        }
        let zones = g.end_zones();
        let bound = zones.left.hi().min(&(Rational::one() - zones.right.lo())).clone();
        let mut n = 1u32;
        let mut s = self.scale(1);
        while s > bound {
            s /= &self.base;
            n += 1;
            if n > LEVEL_CAP {
                return Err(Error::IterationCap("ladder level search"));
            }
        }
        let (entry, _) = orbit_enter(g, &self.scale(n + 1), zones.right.lo(), "ladder entry")?;
        let (xi, j0) = xi_decompose(&self.base, &(Rational::one() - &entry))?;
        if !xi.is_one() {
            return Err(Error::Precondition(format!(
                "orbit enters the right zone at {entry}: beta is not 1"
            )));
        }
        Ok(n.max(j0 as u32))
    }

    /// The exponent `N` with `g^N(I_n) = J_n`, found by iterating the orbit of
    /// `b^-n-1` until it hits `1 - b^-n` exactly. Missing the point means the
    /// orbit invariant beta(g) is not 1.
    pub(crate) fn exponent_at(&self, g: &PLHomeo, n: u32) -> Result<u64> {
        let target = Rational::one() - self.scale(n);
        let mut x = self.scale(n + 1);
        let mut steps = 0u64;
        while x < target {
            let next = g.value_at(&x);
            if next <= x {
                return Err(Error::Precondition(format!(
                    "element is not strictly above the diagonal at {x}"
                )));
            }
            x = next;
            steps += 1;
            if steps > ORBIT_CAP {
                return Err(Error::IterationCap("ladder orbit"));
            }
        }
        if x != target {
            return Err(Error::Precondition(format!(
                "orbit misses 1 - {}^-{n}: beta is not 1",
                self.base
            )));
        }
        Ok(steps)
    }

    /// `psi_n^-1 o g^N o phi_n` at a given admissible level.
    pub(crate) fn gamma_at(&self, g: &PLHomeo, n: u32) -> Result<PLHomeo> {
        let min = self.min_level(g)?;
        if n < min {
            return Err(Error::Precondition(format!(
                "level {n} below minimal admissible level {min}"
            )));
        }
        let i_n = self.lower_interval(n);
        let j_n = self.upper_interval(n);
        let steps = self.exponent_at(g, n)?;
        let frag = power_fragment(g, &i_n, steps);
        transport_fragment(&frag, &i_n, &j_n)
    }

    /// gamma at the canonical (minimal admissible) level.
    pub(crate) fn gamma(&self, g: &PLHomeo) -> Result<PLHomeo> {
        let n = self.min_level(g)?;
        self.gamma_at(g, n)
    }

    /// The surjectivity construction: modifies `base_elt` on `J_{n-1}` so that
    /// the resulting element has gamma equal to `target`.
    ///
    /// `base_elt` must be strictly above the diagonal with orbit invariant 1
    /// (e.g. the output of the beta realizer at 1). The caller re-verifies the
    /// group membership and the gamma round trip of the returned element.
    pub(crate) fn realize_gamma(&self, base_elt: &PLHomeo, target: &PLHomeo) -> Result<PLHomeo> {
        // One level below n must also sit inside the right end zone, since the
        // modification lives on J_{n-1}.
        let n = self.min_level(base_elt)? + 1;
        let f0 = self.gamma_at(base_elt, n)?;
        let f = target.compose(&f0.invert());
        if f.is_identity() {
            return Ok(base_elt.clone());
        }
        let j_n = self.upper_interval(n);
        let j_prev = self.upper_interval(n - 1);
        let psi = crate::plmap::AffineMap::unit_to(j_n.clone());
        // hat f = psi_n o f o psi_n^-1, a homeomorphism of J_n; the new element
        // is hat_f o base_elt on J_{n-1} and base_elt elsewhere.
        let mut pts: alloc::vec::Vec<(Rational, Rational)> = alloc::vec::Vec::new();
        for (x, y) in base_elt.points() {
            if *x <= *j_prev.lo() || *x >= *j_prev.hi() {
                pts.push((x.clone(), y.clone()));
            }
        }
        pts.push((j_prev.lo().clone(), base_elt.value_at(j_prev.lo())));
        pts.push((j_prev.hi().clone(), base_elt.value_at(j_prev.hi())));
        // base_elt is linear on J_{n-1} (inside its right end zone), so the only
        // interior cuts come from the breaks of hat f pulled back through it.
        for u in f.breaks() {
            let b = psi.apply(u);
            let x = base_elt.invert().value_at(&b);
            if x > *j_prev.lo() && x < *j_prev.hi() {
                pts.push((x, Rational::one())); // y filled below
            }
        }
        pts.sort_by(|p, q| p.0.cmp(&q.0));
        pts.dedup_by(|p, q| p.0 == q.0);
        let hat_f = |y: &Rational| psi.apply(&f.value_at(&psi.apply_inv(y)));
        let pts = pts
            .into_iter()
            .map(|(x, _)| {
                let gy = base_elt.value_at(&x);
                let y = if x > *j_prev.lo() && x < *j_prev.hi() { hat_f(&gy) } else { gy };
                (x, y)
            })
            .collect();
        PLHomeo::from_points(pts)
    }
}
