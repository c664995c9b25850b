//! The full group P and its rational cousin P^Q: monitoring intervals,
//! monitored information, conjugation invariance of the information set, and
//! the h2-alignment word identity.
//!
//! The information set of `g` is infinite, so it is represented lazily: every
//! operation takes a basepoint `a` (monitoring from `I = [a, 2a]`) instead of
//! materializing the set.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat_int, Rational};
use crate::plmap::{power_fragment, transport_fragment, AffineMap, Interval, PLHomeo};
use crate::thompson::{evaluate_word, Word};

const SHIFT_CAP: u32 = 4_096;

/// Monitoring intervals `I = [a, 2a]`, `J = [1-2b, 1-b]` with `g^n(I) = J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorPair {
    pub i: Interval,
    pub j: Interval,
    pub n: u64,
}

/// A monitoring pair together with the information it monitors,
/// `info = phi_J^-1 o g^N o phi_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitoredInfo {
    pub pair: MonitorPair,
    pub info: PLHomeo,
}

/// Membership in `P_{1,-1}`: above the diagonal with end slopes `2` and `1/2`.
pub fn is_p11(g: &PLHomeo) -> bool {
    if !g.above_diagonal() {
        return false;
    }
    let zones = g.end_zones();
    zones.left_slope == rat_int(2) && zones.right_slope == rat_int(1) / rat_int(2)
}

/// Monitors `g` from `I = [a, 2a]`: iterates the orbit of `a` until it enters
/// the maximal right end zone at `x_N`, sets `J = [x_N, x_N+1]` and returns
/// the transported restriction of `g^N`.
pub fn monitored_info(g: &PLHomeo, basepoint: &Rational) -> Result<MonitoredInfo> {
    if !is_p11(g) {
        return Err(Error::Precondition("element is not in P_{1,-1}".into()));
    }
    let zones = g.end_zones();
    let a = basepoint;
    if !a.is_positive() || a + a > *zones.left.hi() {
        return Err(Error::Precondition(format!(
            "[{a}, 2*{a}] does not fit in the left end linear zone {}",
            zones.left
        )));
    }
    let i = Interval::new(a.clone(), a + a)?;
    let (entry, n) = crate::plmap::orbit_enter(g, a, zones.right.lo(), "monitored_info")?;
    let j = Interval::new(entry.clone(), g.value_at(&entry))?;
    let frag = power_fragment(g, &i, n);
    let info = transport_fragment(&frag, &i, &j)?;
    Ok(MonitoredInfo { pair: MonitorPair { i, j, n }, info })
}

/// Produces `g` in `P_{1,-1}` and a basepoint whose monitored information is
/// exactly `f`: the basic shift modified on the preimage of its monitor
/// target `J = [1/2, 3/4]` by the rescaled copy of `f`.
pub fn realize_info(f: &PLHomeo) -> Result<(PLHomeo, Rational)> {
    let basepoint = Rational::new(1.into(), 16.into());
    let base = basic_shift();
    if f.is_identity() {
        return Ok((base, basepoint));
    }
    let j = Interval::new(Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into()))?;
    let pre = Interval::new(Rational::new(1.into(), 4.into()), Rational::new(1.into(), 2.into()))?;
    let phi = AffineMap::unit_to(j.clone());
    let hat_f = |y: &Rational| phi.apply(&f.value_at(&phi.apply_inv(y)));
    // base is linear on pre with base(pre) = J, so the modified element is
    // hat_f o base there and base elsewhere.
    let mut pts: Vec<(Rational, Rational)> = Vec::new();
    for (x, y) in base.points() {
        if *x <= *pre.lo() || *x >= *pre.hi() {
            pts.push((x.clone(), y.clone()));
        }
    }
    let base_inv = base.invert();
    pts.push((pre.lo().clone(), hat_f(&base.value_at(pre.lo()))));
    for u in f.breaks() {
        let x = base_inv.value_at(&phi.apply(u));
        pts.push((x.clone(), hat_f(&base.value_at(&x))));
    }
    pts.push((pre.hi().clone(), hat_f(&base.value_at(pre.hi()))));
    pts.sort_by(|p, q| p.0.cmp(&q.0));
    pts.dedup_by(|p, q| p.0 == q.0);
    let g = PLHomeo::from_points(pts)?;
    let got = monitored_info(&g, &basepoint)?;
    if got.info != *f {
        return Err(Error::Postcondition(format!(
            "realize_info round trip failed: expected {f}, got {}",
            got.info
        )));
    }
    Ok((g, basepoint))
}

fn basic_shift() -> PLHomeo {
    PLHomeo::from_points(vec![
        (Rational::zero(), Rational::zero()),
        (Rational::new(1.into(), 4.into()), Rational::new(1.into(), 2.into())),
        (Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())),
        (Rational::one(), Rational::one()),
    ])
    .unwrap()
}

/// Shifts a basepoint of `g` deep enough that `I = [a, 2a]` sits well inside
/// the left end zones of both `g` and `g1`, so that `g1` carries it to a
/// monitoring interval of the conjugate. (The right-side interval never
/// depends on the basepoint: the monitor target can always be pushed deeper
/// along the orbit inside the right zone without changing the information.)
pub fn shifted_basepoint(g: &PLHomeo, g1: &PLHomeo, basepoint: &Rational) -> Result<Rational> {
    if !is_p11(g) {
        return Err(Error::Precondition("element is not in P_{1,-1}".into()));
    }
    let zg = g.end_zones();
    let z1 = g1.end_zones();
    let mut a = basepoint.clone();
    if !a.is_positive() || &a + &a > *zg.left.hi() {
        return Err(Error::Precondition(format!("{a} is not a valid basepoint")));
    }
    let four = rat_int(4);
    let u = zg.left.hi().min(z1.left.hi()).clone();
    let mut guard = 0u32;
    // Halving a basepoint inside the slope-2 zone is applying g^-1, which
    // keeps the monitored information fixed while deepening the interval.
    while &four * &a > u {
        a /= rat_int(2);
        guard += 1;
        if guard > SHIFT_CAP {
            return Err(Error::IterationCap("basepoint shift"));
        }
    }
    Ok(a)
}

/// Lemma-level invariance: the information of `g^g1` monitored from the
/// `g1`-image of a (sufficiently shifted) basepoint equals that of `g`.
pub fn info_conjugation_invariance(
    g: &PLHomeo,
    g1: &PLHomeo,
    basepoint: &Rational,
) -> Result<bool> {
    let a = shifted_basepoint(g, g1, basepoint)?;
    let mi_g = monitored_info(g, &a)?;
    let s = g1.end_zones().left_slope;
    let gc = g.conjugate(g1);
    let mi_c = monitored_info(&gc, &(s * &a))?;
    Ok(mi_c.info == mi_g.info)
}

/// An element of P with exact end slopes `(s0, s1)`: a slope-`s0` segment, a
/// single middle connector, a slope-`s1` segment into 1.
pub fn realize_end_slopes(s0: &Rational, s1: &Rational) -> Result<PLHomeo> {
    if !s0.is_positive() || !s1.is_positive() {
        return Err(Error::Precondition(format!("end slopes must be positive, got ({s0}, {s1})")));
    }
    let two = rat_int(2);
    let mut t = two.recip();
    loop {
        // Shrink the end pieces until both fit: s0 t + s1 t < 1 and t < 1 - t.
        if s0 * &t + s1 * &t < Rational::one() && &t + &t < Rational::one() {
            break;
        }
        t /= &two;
    }
    let g = PLHomeo::from_points(vec![
        (Rational::zero(), Rational::zero()),
        (t.clone(), s0 * &t),
        (Rational::one() - &t, Rational::one() - s1 * &t),
        (Rational::one(), Rational::one()),
    ])?;
    let zones = g.end_zones();
    if zones.left_slope != *s0 || zones.right_slope != *s1 {
        return Err(Error::Postcondition(format!(
            "end slopes came out as ({}, {})",
            zones.left_slope, zones.right_slope
        )));
    }
    Ok(g)
}

/// The h2-alignment word identity: expresses `hatf` (supported in `I_0`) as
/// `h0^{-N0-n} h2^-1 h1^{N1+2n} h2 h0^{-n}` restricted to `I_0`, where
/// `(h1, c)` realizes the extracted information and `h2` aligns end slopes.
/// The two conjugation-diagram edges are asserted exactly before the word is
/// assembled.
pub fn word_identity_p(
    hatf: &PLHomeo,
    h0: &PLHomeo,
    basepoint: &Rational,
) -> Result<(Word, bool)> {
    let mi0 = monitored_info(h0, basepoint)?;
    if !mi0.info.is_identity() {
        return Err(Error::Precondition("h0 must monitor the identity information".into()));
    }
    let i0 = &mi0.pair.i;
    let j0 = &mi0.pair.j;
    if !hatf.support_within(i0) {
        return Err(Error::Precondition(format!("hatf must be supported in {i0}")));
    }
    let f = hatf.extract(i0)?;
    let (h1, c) = realize_info(&f)?;
    let mi1 = monitored_info(&h1, &c)?;
    let a = i0.lo();
    let b = Rational::one() - j0.hi();
    let d = Rational::one() - mi1.pair.j.hi();
    let h2 = realize_end_slopes(&(&c / a), &(&d / &b))?;
    let z2 = h2.end_zones();
    // Minimal n pushing both intervals inside h2's end zones; inside the end
    // zones of h0 and h1 the push is exact scaling by 2^-n.
    let two = rat_int(2);
    let mut n = 1u32;
    let mut scale = two.recip();
    loop {
        let lo_ok = rat_int(2) * a * &scale <= *z2.left.hi();
        let hi_ok = Rational::one() - rat_int(2) * &b * &scale >= *z2.right.lo();
        if lo_ok && hi_ok {
            break;
        }
        n += 1;
        scale /= &two;
        if n > SHIFT_CAP {
            return Err(Error::IterationCap("word alignment level"));
        }
    }
    let i0n = Interval::new(a * &scale, rat_int(2) * a * &scale)?;
    let j0n = Interval::new(
        Rational::one() - rat_int(2) * &b * &scale,
        Rational::one() - &b * &scale,
    )?;
    let i1n = Interval::new(&c * &scale, rat_int(2) * &c * &scale)?;
    let j1n = Interval::new(
        Rational::one() - rat_int(2) * &d * &scale,
        Rational::one() - &d * &scale,
    )?;
    let maps_to = |x: &Rational, y: &Rational| h2.value_at(x) == *y;
    if !maps_to(i0n.lo(), i1n.lo()) || !maps_to(i0n.hi(), i1n.hi()) {
        return Err(Error::DiagramEdge(format!("h2(h0^-{n}(I0)) = h1^-{n}(I1)")));
    }
    if !maps_to(j0n.lo(), j1n.lo()) || !maps_to(j0n.hi(), j1n.hi()) {
        return Err(Error::DiagramEdge(format!("h2(h0^{n}(J0)) = h1^{n}(J1)")));
    }
    let n = n as i64;
    let n0 = mi0.pair.n as i64;
    let n1 = mi1.pair.n as i64;
    let word: Word = vec![
        (h0.clone(), -n0 - n),
        (h2.invert(), 1),
        (h1, n1 + 2 * n),
        (h2, 1),
        (h0.clone(), -n),
    ];
    let w = evaluate_word(&word);
    let check = match w.extract(i0) {
        Ok(restriction) => restriction == f,
        Err(_) => false,
    };
    Ok((word, check))
}

/// Representation-level rationality gate for P^Q pipelines. The breakpoint
/// representation is rational by construction, so this always holds; it is
/// kept explicit so mode-gated pipelines state their membership checks.
pub fn member_pq(f: &PLHomeo) -> bool {
    crate::thompson::GroupKind::PQ.member(f)
}
