//! Thompson's group F: membership, the dyadic bridge, the class functions
//! alpha, beta and gamma with their realizer constructions, and the word
//! identity that expresses an arbitrary element supported in a monitor
//! interval through an element with trivial gamma.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_dyadic, log_exact, odd_part, pow_rat, rat_int, Rational};
use crate::ladder::Ladder;
use crate::plmap::{orbit_enter, Fragment, Interval, PLHomeo};

/// The ambient group a pipeline runs in, with its membership predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// Slopes in `2^Z`, breaks dyadic.
    F,
    /// Slopes in `a^Z` for a fixed rational `a > 1`; breaks unconstrained.
    Pa(Rational),
    /// Slopes and breaks rational; coincides with the whole representable set.
    PQ,
    /// All orientation-preserving PL homeomorphisms of `[0,1]`.
    P,
}

impl GroupKind {
    pub fn member(&self, f: &PLHomeo) -> bool {
        match self {
            GroupKind::F => {
                let two = rat_int(2);
                f.slopes().iter().all(|s| log_exact(&two, s).is_some())
                    && f.points().iter().all(|(x, y)| is_dyadic(x) && is_dyadic(y))
            }
            GroupKind::Pa(a) => f.slopes().iter().all(|s| log_exact(a, s).is_some()),
            // The breakpoint representation is rational by construction, so
            // these predicates are verification gates, not filters.
            GroupKind::PQ | GroupKind::P => true,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::F => write!(f, "F"),
            GroupKind::Pa(a) => write!(f, "Pa({a})"),
            GroupKind::PQ => write!(f, "PQ"),
            GroupKind::P => write!(f, "P"),
        }
    }
}

/// The pair of end-slope exponents `(log f'(0), log f'(1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaPair {
    pub at0: i64,
    pub at1: i64,
}

impl Add for AlphaPair {
    type Output = AlphaPair;
    fn add(self, o: AlphaPair) -> AlphaPair {
        AlphaPair { at0: self.at0 + o.at0, at1: self.at1 + o.at1 }
    }
}

impl fmt::Display for AlphaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.at0, self.at1)
    }
}

/// A formal word: letters with integer exponents, leftmost applied last.
pub type Word = Vec<(PLHomeo, i64)>;

/// Multiplies a word out into a single group element.
pub fn evaluate_word(word: &Word) -> PLHomeo {
    word.iter().fold(PLHomeo::identity(), |acc, (letter, e)| acc.compose(&letter.pow(*e)))
}

fn ladder2() -> Ladder {
    Ladder::new(rat_int(2))
}

/// The monitor interval `I_n = [2^-n-1, 2^-n]`.
pub fn monitor_interval(n: u32) -> Interval {
    ladder2().lower_interval(n)
}

/// `alpha(f) = (log_2 f'(0), log_2 f'(1))`, a homomorphism and class function.
pub fn alpha(f: &PLHomeo) -> Result<AlphaPair> {
    let two = rat_int(2);
    let zones = f.end_zones();
    let at0 = log_exact(&two, &zones.left_slope)
        .ok_or_else(|| Error::NotAMember(format!("slope {} at 0 is not a power of 2", zones.left_slope)))?;
    let at1 = log_exact(&two, &zones.right_slope)
        .ok_or_else(|| Error::NotAMember(format!("slope {} at 1 is not a power of 2", zones.right_slope)))?;
    Ok(AlphaPair { at0, at1 })
}

/// Membership in `F_{1,-1}`: in F, strictly above the diagonal on `(0,1)`,
/// alpha equal to `(1,-1)`.
pub fn is_f11(f: &PLHomeo) -> bool {
    GroupKind::F.member(f)
        && f.above_diagonal()
        && alpha(f).map_or(false, |a| a == AlphaPair { at0: 1, at1: -1 })
}

/// The greedy standard dyadic partition of an interval with dyadic endpoints:
/// at each point take the largest aligned standard dyadic piece that fits.
fn std_dyadic_partition(i: &Interval) -> Result<Vec<Rational>> {
    let mut lens = Vec::new();
    let mut x = i.lo().clone();
    while x < *i.hi() {
        let e = dyadic_exponent(&x)?;
        let room = i.hi() - &x;
        let mut k = e;
        let mut piece = pow_rat(&rat_int(2), -(k as i64));
        while piece > room {
            k += 1;
            piece /= rat_int(2);
            if k > 4096 {
                return Err(Error::IterationCap("standard dyadic partition"));
            }
        }
        x += &piece;
        lens.push(piece);
    }
    Ok(lens)
}

fn dyadic_exponent(x: &Rational) -> Result<u64> {
    if x.is_zero() {
        return Ok(0);
    }
    if !is_dyadic(x) {
        return Err(Error::NotDyadic(format!("{x}")));
    }
    Ok(x.denom().magnitude().trailing_zeros().unwrap_or(0))
}

/// An exact PL bijection `I -> J` with slopes in `2^Z` and dyadic breaks,
/// built by refining both intervals into standard dyadic partitions of equal
/// piece counts and mapping piece to piece.
pub fn dyadic_bridge(i: &Interval, j: &Interval) -> Result<Fragment> {
    for p in [i.lo(), i.hi(), j.lo(), j.hi()] {
        if !is_dyadic(p) {
            return Err(Error::NotDyadic(format!("{p}")));
        }
    }
    let mut src = std_dyadic_partition(i)?;
    let mut dst = std_dyadic_partition(j)?;
    // Halving any piece keeps it standard dyadic; split the largest piece of
    // the shorter list until the counts agree.
    while src.len() != dst.len() {
        let shorter = if src.len() < dst.len() { &mut src } else { &mut dst };
        let idx = shorter
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1))
            .map(|(k, _)| k)
            .unwrap();
        let half = shorter[idx].clone() / rat_int(2);
        shorter[idx] = half.clone();
        shorter.insert(idx + 1, half);
    }
    let mut pts = vec![(i.lo().clone(), j.lo().clone())];
    let (mut x, mut y) = (i.lo().clone(), j.lo().clone());
    for (u, v) in src.iter().zip(dst.iter()) {
        x += u;
        y += v;
        pts.push((x.clone(), y.clone()));
    }
    Fragment::new(pts)
}

/// The odd integer locating the far-end orbit representative `1 - k 2^-j`.
pub fn beta(g: &PLHomeo) -> Result<BigInt> {
    let zones = end_zone_check(g)?;
    let mut i = 1u32;
    while pow_rat(&rat_int(2), -(i as i64)) > *zones.left.hi() {
        i += 1;
        if i > 4096 {
            return Err(Error::IterationCap("beta start point"));
        }
    }
    beta_from_start(g, i)
}

/// beta computed from the specific orbit start `2^-i`; exposed so suites can
/// confirm independence of the start point.
pub fn beta_from_start(g: &PLHomeo, i: u32) -> Result<BigInt> {
    let zones = end_zone_check(g)?;
    let start = pow_rat(&rat_int(2), -(i as i64));
    if start > *zones.left.hi() {
        return Err(Error::Precondition(format!(
            "2^-{i} lies outside the left end linear zone {}",
            zones.left
        )));
    }
    let (landing, _) = orbit_enter(g, &start, zones.right.lo(), "beta")?;
    let (k, _) = odd_part(&(Rational::one() - landing))?;
    Ok(k)
}

fn end_zone_check(g: &PLHomeo) -> Result<crate::plmap::EndZones> {
    if !is_f11(g) {
        return Err(Error::Precondition("element is not in F_{1,-1}".into()));
    }
    Ok(g.end_zones())
}

/// Builds `g` in `F_{1,-1}` with `beta(g) = k`: slope 2 near 0, slope 1/2
/// near 1, and two dyadic bridges carrying the orbit across the middle.
pub fn realize_beta(k: u64) -> Result<PLHomeo> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::Precondition(format!("k must be odd and positive, got {k}")));
    }
    let mut j = 1i64;
    while BigInt::from(k) + 2 >= BigInt::from(2).pow(j as u32) {
        j += 1;
    }
    let two = rat_int(2);
    let p = pow_rat(&two, -j); // 2^-j
    let q = &p * &two; // 2^-j+1
    let r = Rational::one() - rat_int(k as i64) * &p; // 1 - k 2^-j
    let r_mid = Rational::one() - rat_int(k as i64) * &p / &two; // 1 - k 2^-j-1
    let left = Fragment::new(vec![(Rational::zero(), Rational::zero()), (p.clone(), q.clone())])?;
    let lift = dyadic_bridge(
        &Interval::new(p.clone(), q.clone())?,
        &Interval::new(q.clone(), r.clone())?,
    )?;
    let carry = dyadic_bridge(
        &Interval::new(q.clone(), r.clone())?,
        &Interval::new(r.clone(), r_mid.clone())?,
    )?;
    let right = Fragment::new(vec![(r, r_mid), (Rational::one(), Rational::one())])?;
    let g = Fragment::splice(&[left, lift, carry, right])?;
    if !is_f11(&g) {
        return Err(Error::Postcondition("realize_beta output is not in F_{1,-1}".into()));
    }
    Ok(g)
}

/// The class function gamma on `F_{1,-1,1}`: the rescaled return map
/// `psi_n^-1 o g^N o phi_n` at the minimal admissible level.
pub fn gamma(g: &PLHomeo) -> Result<PLHomeo> {
    require_f111_entry(g)?;
    ladder2().gamma(g)
}

/// gamma computed at an explicit admissible level, for n-independence checks.
pub fn gamma_at_level(g: &PLHomeo, n: u32) -> Result<PLHomeo> {
    require_f111_entry(g)?;
    ladder2().gamma_at(g, n)
}

/// The minimal admissible monitor level of `g`.
pub fn min_level(g: &PLHomeo) -> Result<u32> {
    ladder2().min_level(g)
}

/// The return exponent `N` with `g^N(I_n) = J_n`.
pub fn level_exponent(g: &PLHomeo, n: u32) -> Result<u64> {
    ladder2().exponent_at(g, n)
}

fn require_f111_entry(g: &PLHomeo) -> Result<()> {
    if !is_f11(g) {
        return Err(Error::Precondition("element is not in F_{1,-1}".into()));
    }
    Ok(())
}

/// Builds `g` in `F_{1,-1,1}` with `gamma(g) = target`, following the
/// surjectivity construction, and verifies the round trip before returning.
pub fn realize_gamma(target: &PLHomeo) -> Result<PLHomeo> {
    if !GroupKind::F.member(target) {
        return Err(Error::Precondition("target is not in F".into()));
    }
    let base = realize_beta(1)?;
    let g1 = ladder2().realize_gamma(&base, target)?;
    if !is_f11(&g1) || beta(&g1)? != BigInt::one() {
        return Err(Error::Postcondition("realized element left F_{1,-1,1}".into()));
    }
    let back = gamma(&g1)?;
    if back != *target {
        return Err(Error::Postcondition(format!(
            "gamma round trip failed: expected {target}, got {back}"
        )));
    }
    Ok(g1)
}

/// Expresses `hatf` (supported in `I_n` for `h0`'s level `n`) as the word
/// `h0^{m-n} h0^{-N0'} h1^{N} h0^{n-m}` restricted to `I_n`, returning the
/// word and whether the restriction equals `hatf` exactly.
pub fn word_identity_f(hatf: &PLHomeo, h0: &PLHomeo) -> Result<(Word, bool)> {
    let ladder = ladder2();
    if !GroupKind::F.member(hatf) {
        return Err(Error::Precondition("hatf is not in F".into()));
    }
    let n = ladder.min_level(h0)?;
    let trivial = ladder.gamma_at(h0, n)?;
    if !is_f11(h0) || !trivial.is_identity() {
        return Err(Error::Precondition("h0 must lie in F_{1,-1,1} with gamma = id".into()));
    }
    let i_n = ladder.lower_interval(n);
    if !hatf.support_within(&i_n) {
        return Err(Error::Precondition(format!("hatf must be supported in {i_n}")));
    }
    let f = hatf.extract(&i_n)?;
    let h1 = realize_gamma(&f)?;
    let m = ladder.min_level(&h1)?.max(n + 1);
    let exp1 = ladder.exponent_at(&h1, m)? as i64;
    let exp0 = ladder.exponent_at(h0, m)? as i64;
    let span = (m - n) as i64;
    let word: Word = vec![
        (h0.clone(), span),
        (h0.clone(), -exp0),
        (h1, exp1),
        (h0.clone(), -span),
    ];
    let w = evaluate_word(&word);
    let check = match w.extract(&i_n) {
        Ok(restriction) => restriction == f,
        Err(_) => false,
    };
    Ok((word, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn x0() -> PLHomeo {
        PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 2), rat(1, 4)),
            (rat(3, 4), rat(1, 2)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap()
    }

    fn g_star() -> PLHomeo {
        PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 4), rat(1, 2)),
            (rat(1, 2), rat(3, 4)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(GroupKind::F.member(&x0()));
        let thirds = PLHomeo::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 3), rat(2, 3)),
            (rat_int(1), rat_int(1)),
        ])
        .unwrap();
        assert!(!GroupKind::F.member(&thirds));
        assert!(GroupKind::Pa(rat_int(2)).member(&thirds));
        assert!(GroupKind::PQ.member(&thirds) && GroupKind::P.member(&thirds));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&x0()).unwrap(), AlphaPair { at0: -1, at1: 1 });
        assert_eq!(alpha(&PLHomeo::identity()).unwrap(), AlphaPair { at0: 0, at1: 0 });
        assert_eq!(alpha(&g_star()).unwrap(), AlphaPair { at0: 1, at1: -1 });
    }

    #[test]
    fn f11_examples() {
        assert!(is_f11(&g_star()));
        assert!(!is_f11(&x0()));
        assert!(!is_f11(&PLHomeo::identity()));
    }

    #[test]
    fn dyadic_bridge_examples() {
        let i = Interval::new(rat_int(0), rat(1, 2)).unwrap();
        let same = dyadic_bridge(&i, &i).unwrap();
        assert_eq!(same.points(), Fragment::identity_on(&i).points());

        let j = Interval::new(rat_int(0), rat(3, 4)).unwrap();
        let two = rat_int(2);
        let b = dyadic_bridge(&i, &j).unwrap();
        assert_eq!(b.source(), i);
        assert_eq!(b.target(), j);
        assert!(b.slopes().iter().all(|s| log_exact(&two, s).is_some()));

        let thirds = Interval::new(rat(1, 3), rat(1, 2)).unwrap();
        assert!(matches!(dyadic_bridge(&thirds, &i), Err(Error::NotDyadic(_))));

        // Bridge spliced against a complement bridge stays in F.
        let i1 = Interval::new(rat(1, 8), rat(1, 4)).unwrap();
        let j1 = Interval::new(rat(1, 4), rat(5, 8)).unwrap();
        let head = dyadic_bridge(&Interval::new(rat_int(0), rat(1, 8)).unwrap(), &Interval::new(rat_int(0), rat(1, 4)).unwrap()).unwrap();
        let mid = dyadic_bridge(&i1, &j1).unwrap();
        let tail = dyadic_bridge(&Interval::new(rat(1, 4), rat_int(1)).unwrap(), &Interval::new(rat(5, 8), rat_int(1)).unwrap()).unwrap();
        let spliced = Fragment::splice(&[head, mid, tail]).unwrap();
        assert!(GroupKind::F.member(&spliced));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&g_star()).unwrap(), BigInt::from(1));
        // The surjectivity construction at k = 3 (j = 3).
        let g = realize_beta(3).unwrap();
        assert_eq!(g.end_zones().left_slope, rat_int(2));
        assert_eq!(beta(&g).unwrap(), BigInt::from(3));
        // Start-point independence on the same element.
        assert_eq!(beta_from_start(&g, 3).unwrap(), BigInt::from(3));
        assert_eq!(beta_from_start(&g, 4).unwrap(), BigInt::from(3));
    }

    #[test]
    fn realize_beta_surjectivity_witnesses() {
        for k in [1u64, 5, 99] {
            let g = realize_beta(k).unwrap();
            assert!(is_f11(&g));
            assert_eq!(beta(&g).unwrap(), BigInt::from(k));
        }
        assert!(realize_beta(4).is_err());
    }

    #[test]
    fn realize_beta_one_is_the_basic_shift() {
        assert_eq!(realize_beta(1).unwrap(), g_star());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&g_star()).unwrap(), PLHomeo::identity());
        assert_eq!(min_level(&g_star()).unwrap(), 2);
        assert_eq!(level_exponent(&g_star(), 2).unwrap(), 3);
        // Level independence on the basic shift.
        for n in 2..=5 {
            assert_eq!(gamma_at_level(&g_star(), n).unwrap(), PLHomeo::identity());
        }
        assert!(gamma(&realize_beta(3).unwrap()).is_err(), "beta 3 has no gamma");
    }

    #[test]
    fn realize_gamma_round_trip() {
        let g = realize_gamma(&PLHomeo::identity()).unwrap();
        assert_eq!(gamma(&g).unwrap(), PLHomeo::identity());
        let g = realize_gamma(&x0()).unwrap();
        assert_eq!(gamma(&g).unwrap(), x0());
        assert!(GroupKind::F.member(&g));
    }

    #[test]
    fn word_identity_examples() {
        let h0 = g_star();
        let i_n = monitor_interval(2);
        let (_, check) = word_identity_f(&PLHomeo::identity(), &h0).unwrap();
        assert!(check);
        let hatf = x0().embed(&i_n);
        let (word, check) = word_identity_f(&hatf, &h0).unwrap();
        assert!(check);
        // The word really is built from h0 and one realized element.
        assert_eq!(word.len(), 4);
        let w = evaluate_word(&word);
        assert_eq!(w.extract(&i_n).unwrap().embed(&i_n), hatf);
    }
}
