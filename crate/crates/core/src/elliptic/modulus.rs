use rug::Float;

use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Elliptic modulus `k` in (0, 1) together with `k' = sqrt(1 - k^2)`.
///
/// Both halves are stored so that a modulus close to 1 can be built from
/// its (small) complement without losing relative precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Modulus {
    k: Float,
    kprime: Float,
}

impl Modulus {
    pub fn from_k(k: &Float, ctx: &PrecisionContext) -> Result<Self> {
        let k = Float::with_val(ctx.bits(), k);
        check_open_unit(&k, "k")?;
        let kprime = (ctx.one() - k.clone().square()).sqrt();
        Ok(Self { k, kprime })
    }

    pub fn from_kprime(kprime: &Float, ctx: &PrecisionContext) -> Result<Self> {
        let kprime = Float::with_val(ctx.bits(), kprime);
        check_open_unit(&kprime, "k'")?;
        let k = (ctx.one() - kprime.clone().square()).sqrt();
        Ok(Self { k, kprime })
    }

    pub fn from_f64(k: f64, ctx: &PrecisionContext) -> Result<Self> {
        Self::from_k(&ctx.float(k), ctx)
    }

    /// Both halves already known (e.g. from theta quotients); only the
    /// range is checked.
    pub fn from_pair(k: Float, kprime: Float) -> Result<Self> {
        check_open_unit(&k, "k")?;
        check_open_unit(&kprime, "k'")?;
        Ok(Self { k, kprime })
    }

    /// The modulus `1/sqrt(2)`, fixed point of `k <-> k'`.
    pub fn self_dual(ctx: &PrecisionContext) -> Self {
        let k = ctx.float(0.5).sqrt();
        Self { kprime: k.clone(), k }
    }

    pub fn k(&self) -> &Float {
        &self.k
    }

    pub fn kprime(&self) -> &Float {
        &self.kprime
    }

    /// Swaps `k` and `k'`.
    pub fn complement(&self) -> Self {
        Self {
            k: self.kprime.clone(),
            kprime: self.k.clone(),
        }
    }

    /// `|k^2 + k'^2 - 1|`.
    pub fn pythagorean_defect(&self) -> Float {
        let s = self.k.clone().square() + self.kprime.clone().square();
        (s - 1u32).abs()
    }
}

fn check_open_unit(x: &Float, name: &str) -> Result<()> {
    if !x.is_finite() || *x <= 0 || *x >= 1 {
        return domain(format!("{name} must lie in (0, 1), got {}", x.to_f64()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_agree() {
        let ctx = PrecisionContext::new(50).unwrap();
        let a = Modulus::from_f64(0.6, &ctx).unwrap();
        let b = Modulus::from_kprime(a.kprime(), &ctx).unwrap();
        let diff = (a.k().clone() - b.k()).abs();
        assert!(diff < ctx.tolerance(0));
        assert!(a.pythagorean_defect() < ctx.tolerance(0));
    }

    #[test]
    fn endpoints_rejected() {
        let ctx = PrecisionContext::new(20).unwrap();
        assert!(Modulus::from_f64(0.0, &ctx).is_err());
        assert!(Modulus::from_f64(1.0, &ctx).is_err());
        assert!(Modulus::from_f64(-0.5, &ctx).is_err());
        assert!(Modulus::from_kprime(&ctx.float(1.0), &ctx).is_err());
    }
}
