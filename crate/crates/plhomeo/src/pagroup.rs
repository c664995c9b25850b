//! The group `P^a` for exact rational `a > 1`: the two-segment `PL^a(I, J)`
//! connector, membership, and the beta/gamma analogues over the monitor
//! ladder `I_n = [a^-n-1, a^-n]`, `J_n = [1-a^-n, 1-a^-n-1]`.
//!
//! The monitor maps `phi_n`, `psi_n` share the slope `a^-n (1 - a^-1)`; both
//! intervals have exactly that length, so the unit-domain affine maps used in
//! interval transport coincide with them.

use alloc::format;
use alloc::vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{pow_rat, xi_decompose, Rational};
use crate::ladder::Ladder;
use crate::plmap::{orbit_enter, Fragment, Interval, PLHomeo};
use crate::thompson::{AlphaPair, GroupKind};

const CONNECT_CAP: i64 = 10_000;

/// The fixed base carried through every `P^a` operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaContext {
    a: Rational,
}

impl PaContext {
    pub fn new(a: Rational) -> Result<Self> {
        if a <= Rational::one() {
            return Err(Error::Precondition(format!("base must exceed 1, got {a}")));
        }
        Ok(PaContext { a })
    }

    pub fn base(&self) -> &Rational {
        &self.a
    }

    pub fn kind(&self) -> GroupKind {
        GroupKind::Pa(self.a.clone())
    }

    fn ladder(&self) -> Ladder {
        Ladder::new(self.a.clone())
    }
}

/// A two-segment map `I -> J` with slopes `a^n` then `a^-m`, through the
/// exact intersection of the line of slope `a^n` through `(I.lo, J.lo)` and
/// the line of slope `a^-m` through `(I.hi, J.hi)`. `(n, m)` is minimal by
/// `n + m`, then by `n`.
pub fn pa_connect(ctx: &PaContext, i: &Interval, j: &Interval) -> Result<Fragment> {
    let a = &ctx.a;
    let (p, q) = (i.lo(), i.hi());
    let (r, s) = (j.lo(), j.hi());
    for total in 2..=CONNECT_CAP {
        for n in 1..total {
            let m = total - n;
            let steep = pow_rat(a, n);
            let shallow = pow_rat(a, -m);
            let x = (s - r + &steep * p - &shallow * q) / (&steep - &shallow);
            if x <= *p || x >= *q {
                continue;
            }
            let y = r + steep * (&x - p);
            if y <= *r || y >= *s {
                continue;
            }
            return Fragment::new(vec![
                (p.clone(), r.clone()),
                (x, y),
                (q.clone(), s.clone()),
            ]);
        }
    }
    Err(Error::IterationCap("pa_connect slope search"))
}

/// `alpha_a(f) = (log_a f'(0), log_a f'(1))`.
pub fn alpha_a(ctx: &PaContext, f: &PLHomeo) -> Result<AlphaPair> {
    let zones = f.end_zones();
    let exact = |slope: &Rational, end: &str| {
        crate::exactnum::log_exact(&ctx.a, slope).ok_or_else(|| {
            Error::NotAMember(format!("slope {slope} at {end} is not a power of {}", ctx.a))
        })
    };
    Ok(AlphaPair {
        at0: exact(&zones.left_slope, "0")?,
        at1: exact(&zones.right_slope, "1")?,
    })
}

/// Membership in `P^a_{1,-1}`.
pub fn is_pa11(ctx: &PaContext, g: &PLHomeo) -> bool {
    ctx.kind().member(g)
        && g.above_diagonal()
        && alpha_a(ctx, g).map_or(false, |al| al == AlphaPair { at0: 1, at1: -1 })
}

/// `beta_a(g)`: the unique `xi` in `(a^-1, 1]` with the orbit of a left-zone
/// point `a^-i` entering the right zone at `1 - xi a^-j`.
pub fn beta_a(ctx: &PaContext, g: &PLHomeo) -> Result<Rational> {
    let zones = pa11_zones(ctx, g)?;
    let mut i = 1u32;
    while pow_rat(&ctx.a, -(i as i64)) > *zones.left.hi() {
        i += 1;
        if i as i64 > CONNECT_CAP {
            return Err(Error::IterationCap("beta_a start point"));
        }
    }
    beta_a_from_start(ctx, g, i)
}

/// beta_a from the explicit orbit start `a^-i`, for independence checks.
pub fn beta_a_from_start(ctx: &PaContext, g: &PLHomeo, i: u32) -> Result<Rational> {
    let zones = pa11_zones(ctx, g)?;
    let start = pow_rat(&ctx.a, -(i as i64));
    if start > *zones.left.hi() {
        return Err(Error::Precondition(format!(
            "{}^-{i} lies outside the left end linear zone {}",
            ctx.a, zones.left
        )));
    }
    let (landing, _) = orbit_enter(g, &start, zones.right.lo(), "beta_a")?;
    let (xi, _) = xi_decompose(&ctx.a, &(Rational::one() - landing))?;
    Ok(xi)
}

fn pa11_zones(ctx: &PaContext, g: &PLHomeo) -> Result<crate::plmap::EndZones> {
    if !is_pa11(ctx, g) {
        return Err(Error::Precondition(format!("element is not in P^{}_{{1,-1}}", ctx.a)));
    }
    Ok(g.end_zones())
}

/// Builds `g` in `P^a_{1,-1}` with `beta_a(g) = xi`: slope `a` near 0, slope
/// `a^-1` near 1, with two `pa_connect` pieces carrying the orbit across.
pub fn realize_beta_a(ctx: &PaContext, xi: &Rational) -> Result<PLHomeo> {
    let a = &ctx.a;
    if *xi <= a.recip() || *xi > Rational::one() {
        return Err(Error::Precondition(format!(
            "xi must lie in ({}^-1, 1], got {xi}",
            a
        )));
    }
    // Minimal j with a^-j (xi + a) < 1, so the middle intervals are nonempty.
    let mut j = 1i64;
    while pow_rat(a, -j) * (xi + a) >= Rational::one() {
        j += 1;
        if j > CONNECT_CAP {
            return Err(Error::IterationCap("realize_beta_a level search"));
        }
    }
    let p = pow_rat(a, -j);
    let q = &p * a;
    let r = Rational::one() - xi * &p;
    let r_mid = Rational::one() - xi * &p / a;
    let left = Fragment::new(vec![(Rational::zero(), Rational::zero()), (p.clone(), q.clone())])?;
    let lift = pa_connect(
        ctx,
        &Interval::new(p.clone(), q.clone())?,
        &Interval::new(q.clone(), r.clone())?,
    )?;
    let carry = pa_connect(
        ctx,
        &Interval::new(q.clone(), r.clone())?,
        &Interval::new(r.clone(), r_mid.clone())?,
    )?;
    let right = Fragment::new(vec![(r, r_mid), (Rational::one(), Rational::one())])?;
    let g = Fragment::splice(&[left, lift, carry, right])?;
    if !is_pa11(ctx, &g) || beta_a(ctx, &g)? != *xi {
        return Err(Error::Postcondition("realize_beta_a round trip failed".into()));
    }
    Ok(g)
}

/// The class function gamma on `P^a_{1,-1,1}` at the minimal admissible level.
pub fn gamma_a(ctx: &PaContext, g: &PLHomeo) -> Result<PLHomeo> {
    require_pa11(ctx, g)?;
    ctx.ladder().gamma(g)
}

/// gamma_a at an explicit admissible level, for n-independence checks.
pub fn gamma_a_at_level(ctx: &PaContext, g: &PLHomeo, n: u32) -> Result<PLHomeo> {
    require_pa11(ctx, g)?;
    ctx.ladder().gamma_at(g, n)
}

/// The minimal admissible monitor level of `g` in base `a`.
pub fn min_level_a(ctx: &PaContext, g: &PLHomeo) -> Result<u32> {
    ctx.ladder().min_level(g)
}

fn require_pa11(ctx: &PaContext, g: &PLHomeo) -> Result<()> {
    if !is_pa11(ctx, g) {
        return Err(Error::Precondition(format!("element is not in P^{}_{{1,-1}}", ctx.a)));
    }
    Ok(())
}

/// Builds `g` in `P^a_{1,-1,1}` with `gamma_a(g) = target` and verifies the
/// round trip before returning.
pub fn realize_gamma_a(ctx: &PaContext, target: &PLHomeo) -> Result<PLHomeo> {
    if !ctx.kind().member(target) {
        return Err(Error::Precondition(format!("target is not in P^{}", ctx.a)));
    }
    let base = realize_beta_a(ctx, &Rational::one())?;
    let g1 = ctx.ladder().realize_gamma(&base, target)?;
    if !is_pa11(ctx, &g1) || beta_a(ctx, &g1)? != Rational::one() {
        return Err(Error::Postcondition(format!("realized element left P^{}_{{1,-1,1}}", ctx.a)));
    }
    let back = gamma_a(ctx, &g1)?;
    if back != *target {
        return Err(Error::Postcondition(format!(
            "gamma_a round trip failed: expected {target}, got {back}"
        )));
    }
    Ok(g1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{log_exact, rat, rat_int};
    use crate::thompson;

    fn ctx2() -> PaContext {
        PaContext::new(rat_int(2)).unwrap()
    }

    fn ctx32() -> PaContext {
        PaContext::new(rat(3, 2)).unwrap()
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
    fn context_rejects_small_bases() {
        assert!(PaContext::new(rat_int(1)).is_err());
        assert!(PaContext::new(rat(2, 3)).is_err());
    }

    #[test]
    fn pa_connect_examples() {
        let unit = Interval::unit();
        let b = pa_connect(&ctx2(), &unit, &unit).unwrap();
        assert_eq!(
            b.points(),
            &[
                (rat_int(0), rat_int(0)),
                (rat(1, 3), rat(2, 3)),
                (rat_int(1), rat_int(1))
            ]
        );
        // I = J never yields the identity: the connector is two-segment.
        assert_eq!(b.points().len(), 3);

        let ctx = ctx32();
        let i = Interval::new(rat(1, 4), rat(1, 2)).unwrap();
        let j = Interval::new(rat(1, 3), rat(3, 4)).unwrap();
        let b = pa_connect(&ctx, &i, &j).unwrap();
        assert_eq!(b.source(), i);
        assert_eq!(b.target(), j);
        for s in b.slopes() {
            assert!(log_exact(ctx.base(), &s).is_some(), "slope {s} not in (3/2)^Z");
        }
    }

    #[test]
    fn alpha_a_examples() {
        let ctx = ctx2();
        assert_eq!(alpha_a(&ctx, &PLHomeo::identity()).unwrap(), AlphaPair { at0: 0, at1: 0 });
        let full = Fragment::splice(&[pa_connect(&ctx, &Interval::unit(), &Interval::unit()).unwrap()]).unwrap();
        assert_eq!(alpha_a(&ctx, &full).unwrap(), AlphaPair { at0: 1, at1: -1 });
        // Base 3/2, end slopes 9/4 and 2/3.
        let ctx = ctx32();
        let f = realize_beta_a(&ctx, &Rational::one()).unwrap();
        let sq = f.compose(&f);
        assert_eq!(alpha_a(&ctx, &sq).unwrap(), AlphaPair { at0: 2, at1: -2 });
        assert_eq!(sq.end_zones().left_slope, rat(9, 4));
    }

    #[test]
    fn beta_a_examples() {
        let ctx = ctx2();
        assert_eq!(beta_a(&ctx, &g_star()).unwrap(), rat_int(1));
        let g = realize_beta_a(&ctx, &rat(3, 4)).unwrap();
        assert_eq!(beta_a(&ctx, &g).unwrap(), rat(3, 4));
        // Start-point independence.
        assert_eq!(beta_a_from_start(&ctx, &g, 3).unwrap(), rat(3, 4));
        assert_eq!(beta_a_from_start(&ctx, &g, 5).unwrap(), rat(3, 4));
    }

    #[test]
    fn beta_a_range_and_rejections() {
        let ctx = ctx32();
        for num in 1..=6i64 {
            // Grid points of (2/3, 1].
            let xi = rat(2, 3) + rat(num, 18);
            let g = realize_beta_a(&ctx, &xi).unwrap();
            let out = beta_a(&ctx, &g).unwrap();
            assert_eq!(out, xi);
            assert!(out > ctx.base().recip() && out <= rat_int(1));
        }
        assert!(realize_beta_a(&ctx, &rat(1, 2)).is_err());
        assert!(realize_beta_a(&ctx, &rat(5, 4)).is_err());
    }

    #[test]
    fn base_two_coherence_with_thompson_beta() {
        // For F-elements, beta = k odd and beta_a(2) = k / 2^bits(k).
        for k in [1u64, 3, 5, 7, 9, 11] {
            let g = thompson::realize_beta(k).unwrap();
            let xi = beta_a(&ctx2(), &g).unwrap();
            let ceil_log2 = if k == 1 { 0 } else { 64 - k.leading_zeros() };
            assert_eq!(xi, rat(k as i64, 1 << ceil_log2));
        }
    }

    #[test]
    fn gamma_a_examples() {
        let ctx = ctx2();
        assert_eq!(gamma_a(&ctx, &g_star()).unwrap(), PLHomeo::identity());
        assert_eq!(gamma_a(&ctx, &g_star()).unwrap(), thompson::gamma(&g_star()).unwrap());
        // n-independence.
        let n0 = min_level_a(&ctx, &g_star()).unwrap();
        for n in n0..n0 + 3 {
            assert_eq!(gamma_a_at_level(&ctx, &g_star(), n).unwrap(), PLHomeo::identity());
        }
        let bad = realize_beta_a(&ctx, &rat(3, 4)).unwrap();
        assert!(gamma_a(&ctx, &bad).is_err(), "beta_a 3/4 has no gamma_a");
    }

    #[test]
    fn realize_gamma_a_round_trip() {
        let ctx = ctx2();
        let g = realize_gamma_a(&ctx, &PLHomeo::identity()).unwrap();
        assert_eq!(gamma_a(&ctx, &g).unwrap(), PLHomeo::identity());

        let ctx = ctx32();
        let t = Fragment::splice(&[pa_connect(&ctx, &Interval::unit(), &Interval::unit()).unwrap()]).unwrap();
        let g = realize_gamma_a(&ctx, &t).unwrap();
        assert_eq!(gamma_a(&ctx, &g).unwrap(), t);
        assert!(ctx.kind().member(&g));
    }

    #[test]
    fn monitor_maps_have_the_stated_common_slope() {
        // |I_n| = |J_n| = a^-n (1 - a^-1), so the unit-domain monitor maps
        // have exactly the slope the definition requires.
        for ctx in [ctx2(), ctx32()] {
            let a = ctx.base();
            for n in 1u32..6 {
                let want = pow_rat(a, -(n as i64)) * (Rational::one() - a.recip());
                let ladder = Ladder::new(a.clone());
                assert_eq!(ladder.lower_interval(n).len(), want);
                assert_eq!(ladder.upper_interval(n).len(), want);
            }
        }
    }
}
