//! Sampling check that the presentation ideal is saturated with respect to
//! t: for `Q` over O in the presentation variables, `Q(alpha)/t` lies in B
//! exactly when `Q mod t` lies in `(fbar)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{reduce_mod_t, verify_conditions, Curve, KPoly, MemberBounds};
use crate::coefficients::DvrElement;
use crate::error::{Error, Result};
use crate::groebner;
use crate::poly::Namespace;
use crate::sample;

#[derive(Clone, Debug, PartialEq)]
pub struct SaturationVerdict {
    pub trials: usize,
    /// Trials where `Q(alpha)/t` was expected to lie in B.
    pub expected_members: usize,
    /// First sample whose membership verdict disagreed with the residue test.
    pub counterexample: Option<(String, bool)>,
}

impl SaturationVerdict {
    pub fn is_ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs `trials` samples, half built to lie in `tO[T] + (f)` and half
/// arbitrary. Refuses curves failing the conditions.
pub fn saturation_sample_check(
    curve: &Curve,
    trials: usize,
    seed: u64,
    bounds: &MemberBounds,
) -> Result<SaturationVerdict> {
    let data = curve.data();
    let report = verify_conditions(data);
    if !report.all_hold() {
        return Err(Error::ConditionsNotMet("saturation sampling needs a curve satisfying the conditions".into()));
    }
    let n = data.n();
    let f = data.field();
    let ns = Namespace::presentation(n + 1);
    let embed: Vec<usize> = (0..n).collect();
    let f_t: Vec<KPoly> = data.f().iter().map(|fi| fi.embed(&ns, &embed)).collect();
    let fbar: Vec<_> = report.reduced.iter().map(|fi| fi.embed(&ns, &embed)).collect();
    let k = crate::coefficients::ResidueField::of(data.config());
    let basis = groebner::buchberger(&k, &ns, &fbar);
    let t = f.uniformizer();
    let t_inv = DvrElement::t_pow(data.config(), -1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdict = SaturationVerdict { trials, expected_members: 0, counterexample: None };
    for trial in 0..trials {
        let q = if trial % 2 == 0 {
            let mut q = sample::poly(&mut rng, f, &ns, 2, 3, (0, 2)).scale(&t);
            for fi in &f_t {
                q = &q + &(&sample::poly(&mut rng, f, &ns, 1, 2, (0, 2)) * fi);
            }
            q
        } else {
            sample::poly(&mut rng, f, &ns, 2, 4, (0, 2))
        };
        let expected = basis.contains(&reduce_mod_t(&q).expect("samples lie in O[T]"));
        verdict.expected_members += expected as usize;
        let g = curve.evaluate(&q)?.scale(&t_inv);
        let found = curve.member(&g, bounds)?.is_member();
        if found != expected {
            verdict.counterexample = Some((q.to_string(), expected));
            break;
        }
    }
    Ok(verdict)
}
