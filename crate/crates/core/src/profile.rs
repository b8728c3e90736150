//! Where the double locus of a non-normal cover meets the residual branch
//! curve.
//!
//! For a branch sextic g^2 h the surface is non-normal along the double
//! cover of g; the local structure at a point of g is decided by the germ
//! pair (g, h) there. This module enumerates all intersection points of g
//! and h as Galois orbits, attaches the local intersection multiplicity and
//! the non-normal germ class to each, and certifies completeness: the orbit
//! sizes weighted by intersection multiplicities must add up to the Bezout
//! number deg g * deg h, so no point can have been missed.

use crate::coeff::Coeff;
use crate::gcd::gcd;
use crate::germ::{classify_nonnormal_germ, shift_to_origin, SingularityClass};
use crate::localalg::intersection_multiplicity;
use crate::locus::{line_zeros, solve_system, Ambient, LocusError, Search};
use crate::poly::{MultiPoly, VarSet};
use crate::unipoly::UPoly;
use std::fmt;

/// One Galois orbit of intersection points of the double locus with the
/// residual curve.
#[derive(Debug, Clone)]
pub struct ProfilePoint {
    /// Index into `Ambient::P2.charts()`.
    pub chart: usize,
    pub min_poly: Option<UPoly>,
    /// Chart coordinates of a representative.
    pub point: [Coeff; 2],
    pub orbit_size: u32,
    /// Local intersection multiplicity of the two curves there.
    pub intersection: u32,
    /// The non-normal surface germ over the point.
    pub class: SingularityClass,
}

#[derive(Debug, Clone)]
pub struct IntersectionProfile {
    pub points: Vec<ProfilePoint>,
    /// deg g * deg h; equals the sum of orbit_size * intersection over all
    /// points (checked, which is the completeness certificate).
    pub total: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileError {
    /// The two curves share a component.
    CommonComponent,
    Locus(LocusError),
    /// An intersection multiplicity failed to certify within the truncation
    /// budget.
    Certification(String),
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::CommonComponent => {
                write!(f, "double locus and residual curve share a component")
            }
            ProfileError::Locus(e) => write!(f, "{}", e),
            ProfileError::Certification(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for ProfileError {}

impl From<LocusError> for ProfileError {
    fn from(e: LocusError) -> Self {
        ProfileError::Locus(e)
    }
}

/// All intersection points of two plane curves without common components,
/// with non-normal germ classes, certified complete by Bezout count.
pub fn intersection_profile(
    g: &MultiPoly,
    h: &MultiPoly,
) -> Result<IntersectionProfile, ProfileError> {
    let p2 = VarSet::p2();
    assert_eq!(g.vars().as_ref(), p2.as_ref());
    assert_eq!(h.vars().as_ref(), p2.as_ref());
    assert!(!g.is_zero() && !h.is_zero(), "profile of a zero curve");
    assert!(
        g.is_weighted_homogeneous() && h.is_weighted_homogeneous(),
        "profile needs projective curves"
    );
    if !gcd(g, h).is_constant() {
        return Err(ProfileError::CommonComponent);
    }
    let dg = g.weighted_degree().unwrap() as u32;
    let dh = h.weighted_degree().unwrap() as u32;
    let total = dg * dh;
    let mut points = Vec::new();
    if total == 0 {
        return Ok(IntersectionProfile { points, total });
    }
    for (ci, chart) in Ambient::P2.charts().iter().enumerate() {
        let gc = chart.restrict(g);
        let hc = chart.restrict(h);
        let orbits = match chart.search {
            Search::Full => solve_system(&|k| vec![shear(&gc, k), shear(&hc, k)])?,
            Search::Line { pinned } => line_zeros(&[gc.clone(), hc.clone()], pinned)?,
            Search::Origin => {
                let origin = [Coeff::zero(), Coeff::zero()];
                if gc.eval(&origin).is_zero() && hc.eval(&origin).is_zero() {
                    vec![crate::locus::PointOrbit {
                        min_poly: None,
                        point: origin,
                        size: 1,
                    }]
                } else {
                    Vec::new()
                }
            }
        };
        for o in orbits {
            let gs = shift_to_origin(&gc, &o.point);
            let hs = shift_to_origin(&hc, &o.point);
            let intersection = intersection_multiplicity(&gs, &hs)
                .map_err(|e| ProfileError::Certification(e.to_string()))?;
            let class = classify_nonnormal_germ(&gs, &hs).expect("point verified on both curves");
            points.push(ProfilePoint {
                chart: ci,
                min_poly: o.min_poly,
                point: o.point,
                orbit_size: o.size,
                intersection,
                class,
            });
        }
    }
    let counted: u32 = points.iter().map(|p| p.orbit_size * p.intersection).sum();
    assert_eq!(
        counted, total,
        "intersection count disagrees with the Bezout number"
    );
    Ok(IntersectionProfile { points, total })
}

fn shear(f: &MultiPoly, k: i64) -> MultiPoly {
    if k == 0 {
        return f.clone();
    }
    let vars = f.vars().clone();
    let a = MultiPoly::var(&vars, 0);
    let b = MultiPoly::var(&vars, 1).add(&a.scale(&Coeff::from_int(k)));
    f.map_vars(&vars, &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2(terms: &[(i64, [u32; 3])]) -> MultiPoly {
        let vars = VarSet::p2();
        MultiPoly::from_terms(
            &vars,
            terms
                .iter()
                .map(|(c, e)| (e.to_vec(), Coeff::Rat(rat_int(*c))))
                .collect(),
        )
    }

    #[test]
    fn transverse_line_meets_quartic_in_pinches() {
        let g = p2(&[(1, [1, 0, 0])]);
        let h = p2(&[(1, [0, 4, 0]), (-1, [0, 0, 4])]);
        let prof = intersection_profile(&g, &h).unwrap();
        assert_eq!(prof.total, 4);
        assert!(prof
            .points
            .iter()
            .all(|p| p.class == SingularityClass::Pinch && p.intersection == 1));
        // Two rational points and one conjugate pair, all in the main chart.
        let sizes: Vec<u32> = {
            let mut s: Vec<u32> = prof.points.iter().map(|p| p.orbit_size).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn tangencies_and_residual_singularities_are_graded() {
        // x2 against x2*x3 - x1^2: single contact point of order two.
        let g = p2(&[(1, [0, 1, 0])]);
        let h = p2(&[(1, [0, 1, 1]), (-1, [2, 0, 0])]);
        let prof = intersection_profile(&g, &h).unwrap();
        assert_eq!(prof.total, 2);
        assert_eq!(prof.points.len(), 1);
        assert_eq!(prof.points[0].intersection, 2);
        assert_eq!(prof.points[0].class, SingularityClass::DegCuspB(1));

        // A residual curve with a node and a tacnode sitting on the line:
        // contact 2 each, classes graded by the Milnor number there.
        let g = p2(&[(1, [0, 1, 0])]);
        let h = p2(&[(1, [2, 0, 2]), (1, [0, 4, 0]), (-1, [0, 2, 2])]);
        let prof = intersection_profile(&g, &h).unwrap();
        assert_eq!(prof.total, 4);
        let mut classes: Vec<SingularityClass> =
            prof.points.iter().map(|p| p.class.clone()).collect();
        classes.sort_by_key(|c| format!("{:?}", c));
        assert_eq!(
            classes,
            vec![SingularityClass::DegCuspB(2), SingularityClass::DegCuspB(4)]
        );
    }

    #[test]
    fn conic_against_conic_in_one_quartic_orbit() {
        // x1*x3 - x2^2 meets x1^2 + x2^2 - x3^2 in four points forming a
        // single Galois orbit (the parameter satisfies t^4 + t^2 - 1).
        let g = p2(&[(1, [1, 0, 1]), (-1, [0, 2, 0])]);
        let h = p2(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
        let prof = intersection_profile(&g, &h).unwrap();
        assert_eq!(prof.total, 4);
        assert_eq!(prof.points.len(), 1);
        let p = &prof.points[0];
        assert_eq!(p.orbit_size, 4);
        assert_eq!(p.intersection, 1);
        assert_eq!(p.class, SingularityClass::Pinch);
    }

    #[test]
    fn line_pair_meets_conic_transversally() {
        let g = p2(&[(1, [1, 1, 0])]);
        let h = p2(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (-1, [0, 0, 2])]);
        let prof = intersection_profile(&g, &h).unwrap();
        assert_eq!(prof.total, 4);
        let n: u32 = prof.points.iter().map(|p| p.orbit_size).sum();
        assert_eq!(n, 4);
        assert!(prof.points.iter().all(|p| p.class == SingularityClass::Pinch));
    }

    #[test]
    fn shared_components_are_refused() {
        let g = p2(&[(1, [1, 0, 0])]);
        let h = p2(&[(1, [1, 1, 0]), (1, [1, 0, 1])]);
        assert_eq!(
            intersection_profile(&g, &h).unwrap_err(),
            ProfileError::CommonComponent
        );
    }

    #[test]
    fn random_pairs_meet_in_the_bezout_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x62657a);
        let vars = VarSet::p2();
        let mut done = 0;
        while done < 12 {
            let rand_form = |rng: &mut ChaCha8Rng, d: u32| -> MultiPoly {
                let mut terms = Vec::new();
                for _ in 0..4 {
                    let i = rng.gen_range(0..=d);
                    let j = rng.gen_range(0..=(d - i));
                    terms.push((vec![i, j, d - i - j], Coeff::from_int(rng.gen_range(-3..=3))));
                }
                MultiPoly::from_terms(&vars, terms)
            };
            let dg = rng.gen_range(1..=2);
            let g = rand_form(&mut rng, dg);
            let dh = rng.gen_range(1..=3);
            let h = rand_form(&mut rng, dh);
            if g.is_zero() || h.is_zero() || !gcd(&g, &h).is_constant() {
                continue;
            }
            let prof = intersection_profile(&g, &h).unwrap();
            let counted: u32 = prof
                .points
                .iter()
                .map(|p| p.orbit_size * p.intersection)
                .sum();
            assert_eq!(counted, prof.total);
            assert_eq!(
                prof.total,
                (g.weighted_degree().unwrap() * h.weighted_degree().unwrap()) as u32
            );
            done += 1;
        }
    }
}
