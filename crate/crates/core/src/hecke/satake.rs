//! Inverse spherical map.
//!
//! The spherical map is triangular with respect to a monomial order on
//! the non-`z0` exponents: the image of a generator monomial
//! `T^a T1^b P^c` has a unique maximal term, and distinct generator
//! monomials of equal weight have distinct maximal terms.  Solving
//! greedily from the top therefore reconstructs the unique preimage —
//! fraction-free, with exact Laurent coefficients in `p` throughout.
//!
//! For tensor squares the same idea nests: pick the maximal left-side
//! projection, collect everything sitting at it (a function of the
//! right-side variables and `p` alone), solve that with the single-ring
//! solver, subtract, repeat.  This never materialises a tensor basis.

use std::collections::HashMap;

use num_traits::One;

use crate::poly::{MultiPoly, Rat};
use crate::ratfn::RationalFn;
use crate::spherical::SphericalContext;
use crate::vars::{Monomial, VarTable};

use super::{generator_images, lift_prime_poly, Alphabet, HeckeElement, HeckeError};

/// Powers of generator images, memoised per generator and exponent.
struct PowCache<'a> {
    images: &'a [MultiPoly],
    pows: HashMap<(usize, u8), MultiPoly>,
}

impl<'a> PowCache<'a> {
    fn new(images: &'a [MultiPoly]) -> Self {
        PowCache {
            images,
            pows: HashMap::new(),
        }
    }

    fn get(&mut self, gen: usize, exp: u8) -> &MultiPoly {
        let images = self.images;
        self.pows
            .entry((gen, exp))
            .or_insert_with(|| images[gen].pow(i32::from(exp)).expect("positive power"))
    }
}

/// Exponents of the unique generator monomial whose image leads at the
/// projection `(e1, e2)` for the given genus and `z0`-weight, together
/// with the power of `p` that clears its leading coefficient.
fn recover_exponents(
    genus: usize,
    weight: u32,
    e1: i32,
    e2: i32,
) -> Result<(Vec<u8>, i32), HeckeError> {
    let e0 = i64::from(weight);
    let (exps, shift) = if genus == 2 {
        let a = 2 * i64::from(e2) - e0;
        let b = i64::from(e1) - i64::from(e2);
        let c = e0 - i64::from(e1);
        if a < 0 || b < 0 || c < 0 || a > 255 || b > 255 || c > 255 {
            return Err(HeckeError::NotInImage);
        }
        (vec![a as u8, b as u8, c as u8], b + 3 * c)
    } else {
        let a = 2 * i64::from(e1) - e0;
        let c = e0 - i64::from(e1);
        if a < 0 || c < 0 || a > 255 || c > 255 {
            return Err(HeckeError::NotInImage);
        }
        (vec![a as u8, c as u8], c)
    };
    Ok((exps, shift as i32))
}

/// Greedy triangular solve for a single ring.  `poly` may live in any
/// table containing the context's variables; slots other than `p` and
/// the context's `z`-slots must be unused.  Homogeneity in `z0` is
/// checked here; invariance is the caller's concern.
fn solve_single_core(
    ctx: &SphericalContext,
    poly: &MultiPoly,
    weight: u32,
    cache: &mut PowCache<'_>,
) -> Result<HeckeElement, HeckeError> {
    let genus = ctx.genus();
    let alphabet = Alphabet::single(genus).ok_or(HeckeError::AlphabetMismatch)?;
    if poly.is_zero() {
        return Ok(HeckeElement::zero(alphabet));
    }
    let table = poly.table();
    let z0 = ctx.z(0);
    let z1 = ctx.z(1);
    let z2 = if genus == 2 { ctx.z(2) } else { z1 };
    for (m, _) in poly.terms() {
        if i32::from(m.exp(z0)) != weight as i32 {
            return Err(HeckeError::NotHomogeneous);
        }
        for idx in 0..table.len() {
            if m.exp(idx) != 0 && idx != 0 && idx != z0 && idx != z1 && idx != z2 {
                return Err(HeckeError::NotInImage);
            }
        }
    }
    let prime = VarTable::prime_only();
    let mut rest = poly.clone();
    let mut acc = HeckeElement::zero(alphabet);
    while !rest.is_zero() {
        let mut best: Option<(i32, i32)> = None;
        for (m, _) in rest.terms() {
            let e1 = i32::from(m.exp(z1));
            let key = if genus == 2 {
                let e2 = i32::from(m.exp(z2));
                (e1 + e2, e1)
            } else {
                (e1, 0)
            };
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        let (total, second) = best.expect("nonzero polynomial has a maximal term");
        let (e1, e2) = if genus == 2 {
            (second, total - second)
        } else {
            (total, 0)
        };
        let (exps, shift) = recover_exponents(genus, weight, e1, e2)?;
        let gathered: Vec<(Monomial, Rat)> = rest
            .terms()
            .iter()
            .filter(|(m, _)| {
                i32::from(m.exp(z1)) == e1 && (genus == 1 || i32::from(m.exp(z2)) == e2)
            })
            .map(|(m, r)| (Monomial::var_pow(0, m.exp(0)), r.clone()))
            .collect();
        let coef = MultiPoly::from_terms(&prime, gathered)
            .mul_monomial(&Monomial::var_pow(0, shift as i16), &Rat::one());
        let mut image = lift_prime_poly(&coef, table);
        for (gen, e) in exps.iter().enumerate() {
            if *e > 0 {
                image = image.mul(cache.get(gen, *e));
            }
        }
        rest = rest.sub(&image);
        acc = acc.add(&HeckeElement::monomial(alphabet, &exps, coef))?;
    }
    Ok(acc)
}

/// Reconstruct the Hecke element of the given `z0`-weight whose
/// spherical image through `ctx` is `f`.
pub fn inverse_satake(
    ctx: &SphericalContext,
    f: &RationalFn,
    weight: u32,
) -> Result<HeckeElement, HeckeError> {
    if !ctx.is_weyl_invariant(f) {
        return Err(HeckeError::NotInvariant);
    }
    let poly = f.as_poly().ok_or(HeckeError::NotInImage)?.clone();
    let images = generator_images(ctx)?;
    let mut cache = PowCache::new(&images);
    solve_single_core(ctx, &poly, weight, &mut cache)
}

/// Reconstruct the tensor-square element of bi-weight `weight` whose
/// image through the `(cx, cy)` pair of spherical maps is `f`.
///
/// Tensor products are never materialised: the solve peels off one
/// left-side leading projection at a time and hands what sits under it
/// to the single-ring solver for the right side.
pub fn inverse_satake_tensor(
    cx: &SphericalContext,
    cy: &SphericalContext,
    f: &RationalFn,
    weight: (u32, u32),
) -> Result<HeckeElement, HeckeError> {
    let genus = cx.genus();
    if cy.genus() != genus || cx.group() == cy.group() {
        return Err(HeckeError::AlphabetMismatch);
    }
    let alphabet = Alphabet::tensor(genus).ok_or(HeckeError::AlphabetMismatch)?;
    if !cx.is_weyl_invariant(f) || !cy.is_weyl_invariant(f) {
        return Err(HeckeError::NotInvariant);
    }
    let poly = f.as_poly().ok_or(HeckeError::NotInImage)?.clone();
    if poly.is_zero() {
        return Ok(HeckeElement::zero(alphabet));
    }
    let table = poly.table().clone();
    let zx: Vec<usize> = (0..genus + 1).map(|i| cx.z(i)).collect();
    let zy: Vec<usize> = (0..genus + 1).map(|i| cy.z(i)).collect();
    for (m, _) in poly.terms() {
        if i32::from(m.exp(zx[0])) != weight.0 as i32
            || i32::from(m.exp(zy[0])) != weight.1 as i32
        {
            return Err(HeckeError::NotHomogeneous);
        }
        for idx in 0..table.len() {
            if m.exp(idx) != 0 && idx != 0 && !zx.contains(&idx) && !zy.contains(&idx) {
                return Err(HeckeError::NotInImage);
            }
        }
    }
    let ix = generator_images(cx)?;
    let iy = generator_images(cy)?;
    let mut xcache = PowCache::new(&ix);
    let mut ycache = PowCache::new(&iy);
    let mut rest = poly;
    let mut acc = HeckeElement::zero(alphabet);
    while !rest.is_zero() {
        let mut best: Option<(i32, i32)> = None;
        for (m, _) in rest.terms() {
            let e1 = i32::from(m.exp(zx[1]));
            let key = if genus == 2 {
                let e2 = i32::from(m.exp(zx[2]));
                (e1 + e2, e1)
            } else {
                (e1, 0)
            };
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        let (total, second) = best.expect("nonzero polynomial has a maximal term");
        let (e1, e2) = if genus == 2 {
            (second, total - second)
        } else {
            (total, 0)
        };
        let (xexps, shift) = recover_exponents(genus, weight.0, e1, e2)?;
        let gathered: Vec<(Monomial, Rat)> = rest
            .terms()
            .iter()
            .filter(|(m, _)| {
                i32::from(m.exp(zx[1])) == e1
                    && (genus == 1 || i32::from(m.exp(zx[2])) == e2)
            })
            .map(|(m, r)| {
                let mut mm = Monomial::one();
                for idx in 0..table.len() {
                    if zx.contains(&idx) {
                        continue;
                    }
                    let e = m.exp(idx);
                    if e != 0 {
                        mm = mm.mul(&Monomial::var_pow(idx, e));
                    }
                }
                (mm.mul(&Monomial::var_pow(0, shift as i16)), r.clone())
            })
            .collect();
        let under = MultiPoly::from_terms(&table, gathered);
        let ysol = solve_single_core(cy, &under, weight.1, &mut ycache)?;
        let mut ximage = MultiPoly::one(&table);
        for (gen, e) in xexps.iter().enumerate() {
            if *e > 0 {
                ximage = ximage.mul(xcache.get(gen, *e));
            }
        }
        rest = rest.sub(&ximage.mul(&under));
        for (yexps, coef) in ysol.terms() {
            let mut full = xexps.clone();
            full.extend_from_slice(yexps);
            acc = acc.add(&HeckeElement::monomial(alphabet, &full, coef.clone()))?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rf};
    use crate::spherical::VarGroup;
    use crate::vars::VarTable;

    fn pc(s: &str) -> MultiPoly {
        parse_poly(&VarTable::prime_only(), s).unwrap()
    }

    fn gen(a: Alphabet, i: usize) -> HeckeElement {
        HeckeElement::generator(a, i)
    }

    #[test]
    fn image_of_t_comes_back_as_t() {
        for genus in [1usize, 2] {
            let ctx = SphericalContext::new(genus, VarGroup::X).unwrap();
            let a = Alphabet::single(genus).unwrap();
            let t = gen(a, 0);
            let img = t.omega_apply(&ctx).unwrap();
            assert_eq!(inverse_satake(&ctx, &img, 1).unwrap(), t);
        }
    }

    #[test]
    fn normalised_p_image_comes_back_as_p() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let f = parse_rf(ctx.table(), "x0^2*x1*x2/p^3").unwrap();
        let p = gen(Alphabet::Genus2, 2);
        assert_eq!(inverse_satake(&ctx, &f, 2).unwrap(), p);
    }

    #[test]
    fn quadratic_coefficient_of_spinor_denominator() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let den = ctx
            .spinor_denominator()
            .into_iter()
            .fold(MultiPoly::one(ctx.table()), |a, b| a.mul(&b));
        let coeff = den.coeff_of_power(ctx.series_var(), 2);
        let got = inverse_satake(&ctx, &RationalFn::from_poly(coeff), 2).unwrap();
        let expect = gen(Alphabet::Genus2, 1)
            .scale(&pc("p"))
            .add(&gen(Alphabet::Genus2, 2).scale(&pc("p^3+p")))
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn genus_one_quadratic_coefficient() {
        let ctx = SphericalContext::new(1, VarGroup::X).unwrap();
        let den = ctx
            .spinor_denominator()
            .into_iter()
            .fold(MultiPoly::one(ctx.table()), |a, b| a.mul(&b));
        let coeff = den.coeff_of_power(ctx.series_var(), 2);
        let got = inverse_satake(&ctx, &RationalFn::from_poly(coeff), 2).unwrap();
        assert_eq!(got, gen(Alphabet::Genus1, 1).scale(&pc("p")));
    }

    #[test]
    fn non_invariant_input_is_rejected() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let f = parse_rf(ctx.table(), "x0*x1").unwrap();
        assert_eq!(
            inverse_satake(&ctx, &f, 1).unwrap_err(),
            HeckeError::NotInvariant
        );
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let t = gen(Alphabet::Genus2, 0);
        let p = gen(Alphabet::Genus2, 2);
        let f = t
            .omega_apply(&ctx)
            .unwrap()
            .add(&p.omega_apply(&ctx).unwrap());
        assert_eq!(
            inverse_satake(&ctx, &f, 1).unwrap_err(),
            HeckeError::NotHomogeneous
        );
    }

    #[test]
    fn tensor_image_of_tt_comes_back() {
        let cx = SphericalContext::new(2, VarGroup::X).unwrap();
        let cy = SphericalContext::new(2, VarGroup::Y).unwrap();
        let t = gen(Alphabet::Genus2, 0);
        let tt = HeckeElement::tensor(&t, &t).unwrap();
        let img = tt.omega_apply_tensor(&cx, &cy).unwrap();
        assert_eq!(inverse_satake_tensor(&cx, &cy, &img, (1, 1)).unwrap(), tt);
    }

    #[test]
    fn random_elements_round_trip() {
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let a = Alphabet::Genus2;
        for _ in 0..12 {
            // Random homogeneous element of weight 6: T^a T1^b P^c with
            // a + 2b + 2c = 6, random small coefficients in p.
            let mut e = HeckeElement::zero(a);
            for b in 0..=3u8 {
                for c in 0..=(3 - b) {
                    let aa = 6 - 2 * b - 2 * c;
                    let k = (next() % 7) as i64 - 3;
                    if k == 0 {
                        continue;
                    }
                    let pe = (next() % 4) as i32 - 1;
                    let coef = pc(&format!("{}", k))
                        .mul_monomial(&Monomial::var_pow(0, pe as i16), &Rat::one());
                    e = e
                        .add(&HeckeElement::monomial(a, &[aa, b, c], coef))
                        .unwrap();
                }
            }
            if e.is_zero() {
                continue;
            }
            let img = e.omega_apply(&ctx).unwrap();
            assert_eq!(inverse_satake(&ctx, &img, 6).unwrap(), e);
        }
    }

    #[test]
    fn random_tensor_elements_round_trip() {
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        let cx = SphericalContext::new(2, VarGroup::X).unwrap();
        let cy = SphericalContext::new(2, VarGroup::Y).unwrap();
        let a = Alphabet::Genus2;
        let ta = Alphabet::tensor(2).unwrap();
        for _ in 0..4 {
            // Random bi-homogeneous element of bi-weight (4, 4).
            let mut e = HeckeElement::zero(ta);
            let sides: Vec<[u8; 3]> = vec![[4, 0, 0], [2, 1, 0], [2, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
            for l in &sides {
                for r in &sides {
                    let k = (next() % 5) as i64 - 2;
                    if k == 0 {
                        continue;
                    }
                    let exps = [l[0], l[1], l[2], r[0], r[1], r[2]];
                    e = e
                        .add(&HeckeElement::monomial(ta, &exps, pc(&format!("{}", k))))
                        .unwrap();
                }
            }
            if e.is_zero() {
                continue;
            }
            let img = e.omega_apply_tensor(&cx, &cy).unwrap();
            assert_eq!(inverse_satake_tensor(&cx, &cy, &img, (4, 4)).unwrap(), e);
            let _ = a;
        }
    }
}
