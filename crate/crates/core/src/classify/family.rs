//! `SL2(8) x D_2x` with `x = (2^a + 9)/29`, a `(2, 7x, 18)`-group.

use serde::Serialize;

use super::{enumerate_triangle_pairs, ClassificationRecord};
use crate::classical::GroupSpec;
use crate::error::{Error, Result};
use crate::euler::{euler_characteristic, validate_triple};
use crate::group::DEFAULT_CAP;
use crate::perm::Point;

pub const GOURSAT_TAG: &str = "subdirect product of a simple and a solvable group is the full direct product";

/// The same construction with a small dihedral factor, built and checked
/// element by element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurrogateCheck {
    pub group: String,
    pub x: u64,
    pub order: u64,
    pub m: u64,
    pub n: u64,
    pub chi: i64,
    /// `144 - 448x`.
    pub euler_form: i64,
    /// `-58x + 18`.
    pub closed_form: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub a: u32,
    pub x: u64,
    pub order: u64,
    pub m: u64,
    pub n: u64,
    pub seven_divides_x: bool,
    /// `-58x + 18`.
    pub chi_closed_form: i64,
    pub closed_form_is_target: bool,
    /// `|G|(1/7x + 1/18 - 1/2)` evaluated exactly.
    pub chi: i64,
    pub chi_factored: String,
    /// Whether `chi = -2^(a+1)`.
    pub chi_is_target: bool,
    pub base_case: ClassificationRecord,
    pub dihedral: String,
    pub generation: String,
    pub surrogate: SurrogateCheck,
}

fn surrogate() -> Result<SurrogateCheck> {
    let x = 5u64;
    let sl = "SL2:8".parse::<GroupSpec>()?.build(DEFAULT_CAP)?;
    let base = enumerate_triangle_pairs(&sl, 7, 9, 1)?;
    let (g1, h1) = base.witness.ok_or_else(|| Error::Witness("SL2(8) has no (2,7,9) pair".into()))?;
    let spec: GroupSpec = format!("SL2:8xD:{}", 2 * x).parse()?;
    let prod = spec.build(DEFAULT_CAP)?;
    let d = sl.degree();
    let shift = |v: Vec<usize>| v.into_iter().map(|i| (i + d) as Point);
    let rot = shift((0..x as usize).map(|i| (i + 1) % x as usize).collect());
    let refl = shift((0..x as usize).map(|i| (x as usize - i) % x as usize).collect());
    let g: Vec<Point> = sl.elem(g1).iter().copied().chain(rot).collect();
    let h: Vec<Point> = sl.elem(h1).iter().copied().chain(refl).collect();
    let (g, h) = (
        prod.id_of(&g).ok_or(Error::NotInGroup)?,
        prod.id_of(&h).ok_or(Error::NotInGroup)?,
    );
    let pair = validate_triple(&prod, g, h)?;
    let xi = x as i64;
    Ok(SurrogateCheck {
        group: spec.to_string(),
        x,
        order: prod.order(),
        m: pair.m,
        n: pair.n,
        chi: pair.euler.chi,
        euler_form: 144 - 448 * xi,
        closed_form: -58 * xi + 18,
    })
}

pub fn infinite_family(a: u32) -> Result<FamilyCertificate> {
    if a > 60 {
        return Err(Error::FamilyTooLarge(a));
    }
    let top = (1u64 << a) + 9;
    if !top.is_multiple_of(29) {
        return Err(Error::FamilyExponent { a, floor: top / 29 });
    }
    let x = top / 29;
    let target = -(1i64 << (a + 1));
    let order = 504 * 2 * x;
    let (m, n) = (7 * x, 18);
    let e = euler_characteristic(order, m, n)?;
    let chi_closed_form = -58 * x as i64 + 18;
    let sl = "SL2:8".parse::<GroupSpec>()?.build(DEFAULT_CAP)?;
    let base_case = enumerate_triangle_pairs(&sl, 7, 9, 1)?;
    if base_case.count == 0 {
        return Err(Error::Witness("SL2(8) has no (2,7,9) pair".into()));
    }
    Ok(FamilyCertificate {
        a,
        x,
        order,
        m,
        n,
        seven_divides_x: x.is_multiple_of(7),
        chi_closed_form,
        closed_form_is_target: chi_closed_form == target,
        chi: e.chi,
        chi_factored: e.factored(),
        chi_is_target: e.chi == target,
        base_case,
        dihedral: format!("D{}: rotation of order {x} times a reflection is a reflection", 2 * x),
        generation: GOURSAT_TAG.into(),
        surrogate: surrogate()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a24() {
        let c = infinite_family(24).unwrap();
        assert_eq!(c.x, 578525);
        assert!(!c.seven_divides_x);
        assert_eq!(c.chi_closed_form, -(1 << 25));
        assert!(c.closed_form_is_target);
        assert_eq!(c.chi, 144 - 448 * 578525);
        assert!(!c.chi_is_target);
        assert!(c.base_case.count > 0);
    }

    #[test]
    fn surrogate_uses_the_euler_form() {
        let s = surrogate().unwrap();
        assert_eq!((s.order, s.m, s.n), (5040, 35, 18));
        assert_eq!(s.chi, s.euler_form);
        assert_ne!(s.chi, s.closed_form);
    }

    #[test]
    fn rejects_other_exponents() {
        assert_eq!(infinite_family(10).unwrap_err(), Error::FamilyExponent { a: 10, floor: 35 });
        assert_eq!(infinite_family(80).unwrap_err(), Error::FamilyTooLarge(80));
        let c = infinite_family(52).unwrap();
        assert_eq!(29 * c.x, (1 << 52) + 9);
        assert_eq!(c.chi_closed_form, -(1 << 53));
    }
}
