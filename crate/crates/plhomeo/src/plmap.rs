//! Breakpoint algebra for orientation-preserving PL homeomorphisms of `[0,1]`:
//! the group operations, identity prefixes and supports, end linear zones,
//! affine interval maps, embedding/extraction and interval transport.
//!
//! Every element is held in canonical form (no interior breakpoint collinear
//! with its neighbours), so group equality is structural equality of the
//! breakpoint sequences.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

pub(crate) const ORBIT_CAP: u64 = 1_000_000;

/// A closed subinterval of `[0,1]` with rational endpoints, `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < Rational::zero() || hi > Rational::one() || lo >= hi {
            return Err(Error::Precondition(format!(
                "[{lo}, {hi}] is not a valid subinterval of [0,1]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: Rational::zero(), hi: Rational::one() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        *x >= self.lo && *x <= self.hi
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The orientation-preserving linear bijection from `source` onto `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    source: Interval,
    target: Interval,
    slope: Rational,
    offset: Rational,
}

impl AffineMap {
    pub fn new(source: Interval, target: Interval) -> Self {
        let slope = target.len() / source.len();
        let offset = target.lo() - &slope * source.lo();
        AffineMap { source, target, slope, offset }
    }

    /// `phi_I : [0,1] -> I`, the map written `phi_I` in interval transport.
    pub fn unit_to(target: Interval) -> Self {
        AffineMap::new(Interval::unit(), target)
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn source(&self) -> &Interval {
        &self.source
    }

    pub fn target(&self) -> &Interval {
        &self.target
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.offset + &self.slope * x
    }

    pub fn apply_inv(&self, y: &Rational) -> Rational {
        (y - &self.offset) / &self.slope
    }
}

/// A strictly increasing PL graph fragment, mapping one interval onto another.
///
/// Fragments are the splice-ready pieces produced by the dyadic bridge and the
/// `PL^a` connector; `splice` assembles a chain of them into a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pts: Vec<(Rational, Rational)>,
}

impl Fragment {
    pub fn new(pts: Vec<(Rational, Rational)>) -> Result<Self> {
        if pts.len() < 2 {
            return Err(Error::Precondition("fragment needs at least two points".into()));
        }
        for i in 1..pts.len() {
            if pts[i].0 <= pts[i - 1].0 || pts[i].1 <= pts[i - 1].1 {
                return Err(Error::BadBreakpoint {
                    index: i,
                    reason: "fragment coordinates must be strictly increasing".into(),
                });
            }
        }
        Ok(Fragment { pts: trim_collinear(pts) })
    }

    pub fn identity_on(i: &Interval) -> Self {
        Fragment { pts: vec![(i.lo().clone(), i.lo().clone()), (i.hi().clone(), i.hi().clone())] }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.pts
    }

    pub fn source(&self) -> Interval {
        Interval {
            lo: self.pts.first().unwrap().0.clone(),
            hi: self.pts.last().unwrap().0.clone(),
        }
    }

    pub fn target(&self) -> Interval {
        Interval {
            lo: self.pts.first().unwrap().1.clone(),
            hi: self.pts.last().unwrap().1.clone(),
        }
    }

    pub fn value_at(&self, x: &Rational) -> Result<Rational> {
        if *x < self.pts[0].0 || *x > self.pts.last().unwrap().0 {
            return Err(Error::OutOfDomain(format!("{x}")));
        }
        Ok(interpolate(&self.pts, x))
    }

    /// Slopes of the fragment's segments, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        segment_slopes(&self.pts)
    }

    /// Assembles contiguous fragments covering `[0,1] -> [0,1]` into an element.
    pub fn splice(fragments: &[Fragment]) -> Result<PLHomeo> {
        if fragments.is_empty() {
            return Err(Error::Precondition("cannot splice zero fragments".into()));
        }
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        for (k, frag) in fragments.iter().enumerate() {
            match pts.last() {
                None => pts.extend_from_slice(&frag.pts),
                Some(last) => {
                    if *last != frag.pts[0] {
                        return Err(Error::Precondition(format!(
                            "fragment {k} does not continue the chain at ({}, {})",
                            last.0, last.1
                        )));
                    }
                    pts.extend_from_slice(&frag.pts[1..]);
                }
            }
        }
        PLHomeo::from_points(pts)
    }
}

/// The maximal end intervals on which an element is linear, with the slopes
/// at 0 and at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndZones {
    pub left: Interval,
    pub right: Interval,
    pub left_slope: Rational,
    pub right_slope: Rational,
}

/// An orientation-preserving PL homeomorphism of `[0,1]` in canonical
/// breakpoint form. First point `(0,0)`, last `(1,1)`, both coordinate
/// sequences strictly increasing, no interior point collinear with its
/// neighbours.
#[derive(Clone, PartialEq, Eq)]
pub struct PLHomeo {
    pts: Vec<(Rational, Rational)>,
}

impl fmt::Debug for PLHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLHomeo{self}")
    }
}

impl fmt::Display for PLHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (x, y)) in self.pts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

fn validate_points(pts: &[(Rational, Rational)]) -> Result<()> {
    if pts.len() < 2 {
        return Err(Error::BadBreakpoint {
            index: 0,
            reason: "need at least the two endpoint pairs".into(),
        });
    }
    if !pts[0].0.is_zero() || !pts[0].1.is_zero() {
        return Err(Error::BadBreakpoint { index: 0, reason: "first pair must be (0, 0)".into() });
    }
    let last = pts.len() - 1;
    if !pts[last].0.is_one() || !pts[last].1.is_one() {
        return Err(Error::BadBreakpoint { index: last, reason: "last pair must be (1, 1)".into() });
    }
    for i in 1..pts.len() {
        if pts[i].0 <= pts[i - 1].0 {
            return Err(Error::BadBreakpoint {
                index: i,
                reason: "x coordinates must be strictly increasing".into(),
            });
        }
        if pts[i].1 <= pts[i - 1].1 {
            return Err(Error::BadBreakpoint {
                index: i,
                reason: "y coordinates must be strictly increasing".into(),
            });
        }
    }
    Ok(())
}

fn collinear(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

fn trim_collinear(pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
    for p in pts {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

fn interpolate(pts: &[(Rational, Rational)], x: &Rational) -> Rational {
    let i = pts.partition_point(|p| p.0 < *x);
    if i < pts.len() && pts[i].0 == *x {
        return pts[i].1.clone();
    }
    let (x0, y0) = &pts[i - 1];
    let (x1, y1) = &pts[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn segment_slopes(pts: &[(Rational, Rational)]) -> Vec<Rational> {
    pts.windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect()
}

impl PLHomeo {
    pub fn identity() -> Self {
        PLHomeo {
            pts: vec![
                (Rational::zero(), Rational::zero()),
                (Rational::one(), Rational::one()),
            ],
        }
    }

    /// Builds an element, canonicalizing collinear interior breakpoints away.
    pub fn from_points(pts: Vec<(Rational, Rational)>) -> Result<Self> {
        validate_points(&pts)?;
        Ok(PLHomeo { pts: trim_collinear(pts) })
    }

    /// Strict constructor for external input: rejects non-canonical sequences
    /// instead of repairing them, naming the first offending index.
    pub fn from_canonical_points(pts: Vec<(Rational, Rational)>) -> Result<Self> {
        validate_points(&pts)?;
        for i in 1..pts.len() - 1 {
            if collinear(&pts[i - 1], &pts[i], &pts[i + 1]) {
                return Err(Error::BadBreakpoint {
                    index: i,
                    reason: "breakpoint is collinear with its neighbours (non-canonical)".into(),
                });
            }
        }
        Ok(PLHomeo { pts })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.pts
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2
    }

    /// Interior break x-coordinates.
    pub fn breaks(&self) -> impl Iterator<Item = &Rational> {
        self.pts[1..self.pts.len() - 1].iter().map(|p| &p.0)
    }

    /// Slopes of the linear segments, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        segment_slopes(&self.pts)
    }

    /// Exact image of `x` under the PL interpolation of the breakpoints.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        if *x < Rational::zero() || *x > Rational::one() {
            return Err(Error::OutOfDomain(format!("{x}")));
        }
        Ok(self.value_at(x))
    }

    pub(crate) fn value_at(&self, x: &Rational) -> Rational {
        interpolate(&self.pts, x)
    }

    /// `self o g`, i.e. the map `x -> self(g(x))`.
    pub fn compose(&self, g: &PLHomeo) -> PLHomeo {
        let g_inv = g.invert();
        let mut xs: Vec<Rational> = g.pts.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.breaks().map(|b| g_inv.value_at(b)));
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.value_at(&g.value_at(&x));
                (x, y)
            })
            .collect();
        PLHomeo { pts: trim_collinear(pts) }
    }

    pub fn invert(&self) -> PLHomeo {
        PLHomeo { pts: self.pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    /// `self^g = g o self o g^-1` (the paper's conjugation convention).
    pub fn conjugate(&self, g: &PLHomeo) -> PLHomeo {
        g.compose(self).compose(&g.invert())
    }

    /// `self^n` by repeated composition; negative exponents invert first.
    pub fn pow(&self, n: i64) -> PLHomeo {
        let base = if n >= 0 { self.clone() } else { self.invert() };
        let mut acc = PLHomeo::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// `[self, f] = self o f o self^-1 o f^-1`.
    pub fn commutator(&self, f: &PLHomeo) -> PLHomeo {
        self.compose(f).compose(&self.invert()).compose(&f.invert())
    }

    /// The largest `s` with `self = id` on `[0, s]`; 1 iff `self` is the identity.
    pub fn s_left(&self) -> Rational {
        let mut s = Rational::zero();
        for (x, y) in &self.pts {
            if x == y {
                s = x.clone();
            } else {
                break;
            }
        }
        s
    }

    /// The smallest `r` with `self = id` on `[r, 1]`; 0 iff `self` is the identity.
    pub fn s_right(&self) -> Rational {
        let mut r = Rational::one();
        for (x, y) in self.pts.iter().rev() {
            if x == y {
                r = x.clone();
            } else {
                break;
            }
        }
        r
    }

    /// True iff `self` is the identity outside `i`.
    pub fn support_within(&self, i: &Interval) -> bool {
        self.s_left() >= *i.lo() && self.s_right() <= *i.hi()
    }

    /// True iff `self(x) > x` for every `x` in `(0,1)`.
    pub fn above_diagonal(&self) -> bool {
        !self.is_identity() && self.pts[1..self.pts.len() - 1].iter().all(|(x, y)| y > x)
    }

    /// Maximal end linear zones and the end slopes `(f'(0), f'(1))`.
    pub fn end_zones(&self) -> EndZones {
        if self.is_identity() {
            return EndZones {
                left: Interval::unit(),
                right: Interval::unit(),
                left_slope: Rational::one(),
                right_slope: Rational::one(),
            };
        }
        let (x1, y1) = &self.pts[1];
        let (xm, ym) = &self.pts[self.pts.len() - 2];
        EndZones {
            left: Interval { lo: Rational::zero(), hi: x1.clone() },
            left_slope: y1 / x1,
            right: Interval { lo: xm.clone(), hi: Rational::one() },
            right_slope: (Rational::one() - ym) / (Rational::one() - xm),
        }
    }

    /// `phi_I o self o phi_I^-1` extended by the identity outside `i`.
    pub fn embed(&self, i: &Interval) -> PLHomeo {
        let phi = AffineMap::unit_to(i.clone());
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        if !i.lo().is_zero() {
            pts.push((Rational::zero(), Rational::zero()));
        }
        for (x, y) in &self.pts {
            pts.push((phi.apply(x), phi.apply(y)));
        }
        if !i.hi().is_one() {
            pts.push((Rational::one(), Rational::one()));
        }
        PLHomeo { pts: trim_collinear(pts) }
    }

    /// `phi_I^-1 o (self restricted to i) o phi_I`; requires `self(i) = i`.
    pub fn extract(&self, i: &Interval) -> Result<PLHomeo> {
        if self.value_at(i.lo()) != *i.lo() || self.value_at(i.hi()) != *i.hi() {
            return Err(Error::IntervalNotMapped(format!(
                "extract needs g({i}) = {i}"
            )));
        }
        let phi = AffineMap::unit_to(i.clone());
        let mut xs: Vec<Rational> = vec![i.lo().clone()];
        xs.extend(self.breaks().filter(|b| **b > *i.lo() && **b < *i.hi()).cloned());
        xs.push(i.hi().clone());
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.value_at(&x);
                (phi.apply_inv(&x), phi.apply_inv(&y))
            })
            .collect();
        Ok(PLHomeo { pts: trim_collinear(pts) })
    }

    /// `psi_J^-1 o self o phi_I` as an element of the group; requires
    /// `self(I) = J`. This is the rescaling that extracts monitored
    /// information and the class function gamma.
    pub fn transport(&self, i: &Interval, j: &Interval) -> Result<PLHomeo> {
        if self.value_at(i.lo()) != *j.lo() || self.value_at(i.hi()) != *j.hi() {
            return Err(Error::IntervalNotMapped(format!(
                "transport needs g({i}) = {j}"
            )));
        }
        let phi = AffineMap::unit_to(i.clone());
        let psi = AffineMap::unit_to(j.clone());
        let mut xs: Vec<Rational> = vec![i.lo().clone()];
        xs.extend(self.breaks().filter(|b| **b > *i.lo() && **b < *i.hi()).cloned());
        xs.push(i.hi().clone());
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.value_at(&x);
                (phi.apply_inv(&x), psi.apply_inv(&y))
            })
            .collect();
        Ok(PLHomeo { pts: trim_collinear(pts) })
    }
}

/// The restriction of `g^n` to `i` as a fragment, without composing `g` with
/// itself globally. Breakpoint growth stays proportional to the breaks the
/// orbit actually crosses.
pub(crate) fn power_fragment(g: &PLHomeo, i: &Interval, n: u64) -> Fragment {
    let mut pts: Vec<(Rational, Rational)> =
        vec![(i.lo().clone(), i.lo().clone()), (i.hi().clone(), i.hi().clone())];
    for _ in 0..n {
        let lo = &pts.first().unwrap().1;
        let hi = &pts.last().unwrap().1;
        // Refine at preimages of g's breaks inside the current image.
        let mut cuts: Vec<Rational> = Vec::new();
        for b in g.breaks() {
            if b > lo && b < hi {
                cuts.push(frag_preimage(&pts, b));
            }
        }
        let mut xs: Vec<Rational> = pts.iter().map(|p| p.0.clone()).collect();
        xs.extend(cuts);
        xs.sort();
        xs.dedup();
        let next: Vec<(Rational, Rational)> = xs
            .into_iter()
            .map(|x| {
                let y = g.value_at(&interpolate(&pts, &x));
                (x, y)
            })
            .collect();
        pts = trim_collinear(next);
    }
    Fragment { pts }
}

fn frag_preimage(pts: &[(Rational, Rational)], y: &Rational) -> Rational {
    let i = pts.partition_point(|p| p.1 < *y);
    if pts[i].1 == *y {
        return pts[i].0.clone();
    }
    let (x0, y0) = &pts[i - 1];
    let (x1, y1) = &pts[i];
    x0 + (x1 - x0) * (y - y0) / (y1 - y0)
}

/// Normalizes a fragment mapping `I` onto `J` to an element of the group:
/// `psi_J^-1 o frag o phi_I`.
pub(crate) fn transport_fragment(frag: &Fragment, i: &Interval, j: &Interval) -> Result<PLHomeo> {
    if frag.source() != *i || frag.target() != *j {
        return Err(Error::IntervalNotMapped(format!(
            "fragment maps {} onto {}, wanted {i} onto {j}",
            frag.source(),
            frag.target()
        )));
    }
    let phi = AffineMap::unit_to(i.clone());
    let psi = AffineMap::unit_to(j.clone());
    let pts = frag
        .pts
        .iter()
        .map(|(x, y)| (phi.apply_inv(x), psi.apply_inv(y)))
        .collect();
    PLHomeo::from_points(pts)
}

/// Iterates `x <- g(x)` until the value reaches `threshold`; returns the
/// landing point and the step count.
pub(crate) fn orbit_enter(
    g: &PLHomeo,
    start: &Rational,
    threshold: &Rational,
    what: &'static str,
) -> Result<(Rational, u64)> {
    let mut x = start.clone();
    let mut steps = 0u64;
    while x < *threshold {
        let next = g.value_at(&x);
        if next <= x {
            return Err(Error::Precondition(format!(
                "orbit of {start} is not strictly increasing at {x}"
            )));
        }
        x = next;
        steps += 1;
        if steps > ORBIT_CAP {
            return Err(Error::IterationCap(what));
        }
    }
    Ok((x, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};

    pub(crate) fn x0() -> PLHomeo {
        PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(1, 4)),
            (rat(3, 4), rat(1, 2)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap()
    }

    pub(crate) fn g_star() -> PLHomeo {
        PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 4), rat(1, 2)),
            (rat(1, 2), rat(3, 4)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = x0();
        assert_eq!(f.evaluate(&rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(PLHomeo::identity().evaluate(&rat(17, 31)).unwrap(), rat(17, 31));
        assert_eq!(f.evaluate(&rat(7, 8)).unwrap(), rat(3, 4));
        assert!(f.evaluate(&rat(9, 8)).is_err());
    }

    #[test]
    fn compose_and_invert() {
        let f = x0();
        assert_eq!(f.compose(&f.invert()), PLHomeo::identity());
        assert_eq!(PLHomeo::identity().compose(&f), f);
        let ff = f.compose(&f);
        let zones = ff.end_zones();
        assert_eq!(zones.right_slope, rat_int(4));
        assert_eq!(
            f.invert().points(),
            g_star().points(),
            "invert swaps coordinate pairs"
        );
        assert_eq!(f.invert().invert(), f);
    }

    #[test]
    fn conjugate_follows_paper_convention() {
        let f = x0();
        let g = g_star();
        assert_eq!(f.conjugate(&PLHomeo::identity()), f);
        assert_eq!(PLHomeo::identity().conjugate(&g), PLHomeo::identity());
        // h^g = g h g^-1, so fixed points move forward through g.
        let h = f.conjugate(&g);
        let p = rat(1, 2); // not fixed, but check the defining relation instead
        assert_eq!(h.evaluate(&g.evaluate(&p).unwrap()).unwrap(), g.evaluate(&f.evaluate(&p).unwrap()).unwrap());
    }

    #[test]
    fn s_left_examples() {
        let f = PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(1, 2)),
            (rat(5, 8), rat(11, 16)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap();
        assert_eq!(f.s_left(), rat(1, 2));
        assert_eq!(PLHomeo::identity().s_left(), rat_int(1));
        assert_eq!(x0().s_left(), rat_int(0));
    }

    #[test]
    fn support_examples() {
        let any = Interval::new(rat(1, 8), rat(1, 2)).unwrap();
        assert!(PLHomeo::identity().support_within(&any));
        assert!(!x0().support_within(&Interval::new(rat_int(0), rat(3, 4)).unwrap()));
        let bump = x0().embed(&Interval::new(rat(1, 4), rat(1, 2)).unwrap());
        assert!(bump.support_within(&Interval::new(rat(1, 8), rat(1, 2)).unwrap()));
        assert!(!bump.support_within(&Interval::new(rat(1, 8), rat(3, 8)).unwrap()));
    }

    #[test]
    fn end_zone_examples() {
        let z = x0().end_zones();
        assert_eq!(z.left, Interval::new(rat_int(0), rat(1, 2)).unwrap());
        assert_eq!(z.left_slope, rat(1, 2));
        assert_eq!(z.right, Interval::new(rat(3, 4), rat_int(1)).unwrap());
        assert_eq!(z.right_slope, rat_int(2));

        let zi = PLHomeo::identity().end_zones();
        assert_eq!(zi.left, Interval::unit());
        assert_eq!(zi.left_slope, rat_int(1));

        let zg = g_star().end_zones();
        assert_eq!(zg.left, Interval::new(rat_int(0), rat(1, 4)).unwrap());
        assert_eq!(zg.left_slope, rat_int(2));
        assert_eq!(zg.right, Interval::new(rat(1, 2), rat_int(1)).unwrap());
        assert_eq!(zg.right_slope, rat(1, 2));
    }

    #[test]
    fn affine_examples() {
        let i = Interval::new(rat(1, 16), rat(1, 8)).unwrap();
        let phi = AffineMap::unit_to(i.clone());
        assert_eq!(*phi.slope(), rat(1, 16));
        assert_eq!(*phi.offset(), rat(1, 16));
        assert_eq!(phi.apply(&rat(1, 2)), rat(3, 32));
        let unit = AffineMap::unit_to(Interval::unit());
        assert_eq!(unit.apply(&rat(2, 7)), rat(2, 7));
    }

    #[test]
    fn embed_extract_round_trip() {
        let i = Interval::new(rat(1, 4), rat(1, 2)).unwrap();
        assert_eq!(PLHomeo::identity().embed(&i), PLHomeo::identity());
        let e = x0().embed(&i);
        assert_eq!(e.extract(&i).unwrap(), x0());
        assert_eq!(x0().embed(&Interval::unit()), x0());
        assert!(x0().extract(&i).is_err());
    }

    #[test]
    fn transport_examples() {
        // g affine on I: transport is the identity.
        let g = g_star();
        let i = Interval::new(rat(1, 16), rat(1, 8)).unwrap();
        let j = Interval::new(rat(1, 2), rat(3, 4)).unwrap();
        let g3 = g.pow(3);
        assert_eq!(g3.transport(&i, &j).unwrap(), PLHomeo::identity());
        // Same through the fragment path.
        let frag = power_fragment(&g, &i, 3);
        assert_eq!(transport_fragment(&frag, &i, &j).unwrap(), PLHomeo::identity());
        assert!(g3.transport(&i, &Interval::new(rat(1, 2), rat(7, 8)).unwrap()).is_err());
    }

    #[test]
    fn commutator_examples() {
        let g = g_star();
        assert_eq!(g.commutator(&g), PLHomeo::identity());
        assert_eq!(PLHomeo::identity().commutator(&x0()), PLHomeo::identity());
        let c = x0().commutator(&x0().compose(&x0()));
        let z = c.end_zones();
        assert_eq!(z.left_slope, rat_int(1));
        assert_eq!(z.right_slope, rat_int(1));
    }

    #[test]
    fn canonical_form_is_strict_for_external_input() {
        let noncanonical = vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 4), rat(1, 4)),
            (rat_int(1), rat_int(1)),
        ];
        assert_eq!(PLHomeo::from_points(noncanonical.clone()).unwrap(), PLHomeo::identity());
        match PLHomeo::from_canonical_points(noncanonical) {
            Err(Error::BadBreakpoint { index: 1, .. }) => {}
            other => panic!("expected index-1 canonicality error, got {other:?}"),
        }
        let nonmonotone = vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(3, 4)),
            (rat(1, 4), rat(7, 8)),
            (rat_int(1), rat_int(1)),
        ];
        assert!(matches!(
            PLHomeo::from_points(nonmonotone),
            Err(Error::BadBreakpoint { index: 2, .. })
        ));
    }

    #[test]
    fn splice_rejects_gaps() {
        let a = Fragment::new(vec![(rat_int(0), rat_int(0)), (rat(1, 2), rat(1, 4))]).unwrap();
        let bad = Fragment::new(vec![(rat(1, 2), rat(1, 2)), (rat_int(1), rat_int(1))]).unwrap();
        assert!(Fragment::splice(&[a.clone(), bad]).is_err());
        let good = Fragment::new(vec![(rat(1, 2), rat(1, 4)), (rat_int(1), rat_int(1))]).unwrap();
        let f = Fragment::splice(&[a, good]).unwrap();
        assert_eq!(f.evaluate(&rat(1, 2)).unwrap(), rat(1, 4));
    }
}
