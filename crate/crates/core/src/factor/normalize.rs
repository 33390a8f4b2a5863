//! Random affine coordinate changes that establish the lifting precondition.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_precondition, require_bivariate, FactorError};
use crate::gf::{Code, FieldCtx};
use crate::mpoly::MPoly;

/// Default seed for [`normalize_for_lifting`].
pub const NORMALIZE_SEED: u64 = 0x4e0a_11ce;
/// Random attempts per field before the field is enlarged.
const ATTEMPTS_PER_FIELD: usize = 16;
/// Enlargement stops once the working field would exceed this order.
const MAX_FIELD_ORDER: u64 = 1 << 16;

/// `g(X, Y) = scale * f(a (X, Y)^T + b)` over `field`, an extension of the field of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChange {
    pub field: FieldCtx,
    pub a: [[Code; 2]; 2],
    pub b: [Code; 2],
    pub scale: Code,
}

impl AffineChange {
    pub fn identity(field: &FieldCtx) -> AffineChange {
        AffineChange {
            field: field.clone(),
            a: [[1, 0], [0, 1]],
            b: [0, 0],
            scale: 1,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a == [[1, 0], [0, 1]] && self.b == [0, 0]
    }

    /// `scale * f(a (X, Y) + b)` over `self.field`.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        let rows = vec![self.a[0].to_vec(), self.a[1].to_vec()];
        f.embed(&self.field)
            .affine_substitute(&rows, &self.b)
            .expect("bivariate substitution")
            .scale(self.scale)
    }

    /// Maps a factor `G` of the transformed polynomial to the factor `G(a^{-1}((X, Y) - b))` of
    /// the original one, made monic. `G` may live over an extension or a subfield of
    /// `self.field`.
    pub fn pull_back(&self, g: &MPoly) -> MPoly {
        let k = &self.field;
        let [[a00, a01], [a10, a11]] = self.a;
        let det_inv = k.inv(k.sub(k.mul(a00, a11), k.mul(a01, a10)));
        let inv = [
            [k.mul(a11, det_inv), k.neg(k.mul(a01, det_inv))],
            [k.neg(k.mul(a10, det_inv)), k.mul(a00, det_inv)],
        ];
        let shift: Vec<Code> = (0..2)
            .map(|i| k.neg(k.add(k.mul(inv[i][0], self.b[0]), k.mul(inv[i][1], self.b[1]))))
            .collect();
        let rows = vec![inv[0].to_vec(), inv[1].to_vec()];
        // The search may return `G` over a subfield of `self.field`.
        let g = if g.ctx().is_subfield_of(k) {
            g.embed(k)
        } else {
            g.clone()
        };
        g.affine_substitute(&rows, &shift)
            .expect("bivariate substitution")
            .make_monic()
    }
}

/// [`normalize_for_lifting_with`] using [`NORMALIZE_SEED`].
pub fn normalize_for_lifting(f: &MPoly) -> Result<(MPoly, AffineChange), FactorError> {
    normalize_for_lifting_with(f, NORMALIZE_SEED)
}

/// Finds an invertible affine change after which `f` is monic in `X` and `f(X, 0)` is
/// squarefree of degree `deg f`.
///
/// The identity is tried first, then 16 seeded random changes over the coefficient field.
/// If all fail, the field is enlarged to `F_{q^2}`, `F_{q^4}`, ... (16 attempts each) while its
/// order stays at most `2^16`. A polynomial with a repeated factor never qualifies.
pub fn normalize_for_lifting_with(
    f: &MPoly,
    seed: u64,
) -> Result<(MPoly, AffineChange), FactorError> {
    let delta = require_bivariate(f)?;
    let base = f.ctx().clone();
    if let Some(g) = try_change(f, &AffineChange::identity(&base), delta) {
        return Ok(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut field = base.clone();
    let mut ext = 1;
    loop {
        for _ in 0..ATTEMPTS_PER_FIELD {
            let change = random_change(&field, &mut rng);
            if let Some(g) = try_change(f, &change, delta) {
                return Ok(g);
            }
        }
        ext *= 2;
        if (base.order() as u64).pow(ext) > MAX_FIELD_ORDER {
            return Err(FactorError::NormalizationFailed { seed });
        }
        field = base.extension(ext, seed)?;
    }
}

fn random_change(k: &FieldCtx, rng: &mut ChaCha8Rng) -> AffineChange {
    loop {
        let a = [
            [k.random(rng), k.random(rng)],
            [k.random(rng), k.random(rng)],
        ];
        if k.mul(a[0][0], a[1][1]) != k.mul(a[0][1], a[1][0]) {
            let b = [k.random(rng), k.random(rng)];
            return AffineChange {
                field: k.clone(),
                a,
                b,
                scale: 1,
            };
        }
    }
}

fn try_change(f: &MPoly, change: &AffineChange, delta: u32) -> Option<(MPoly, AffineChange)> {
    let g = change.apply(f);
    let lead = g.coeff(&[delta, 0]);
    if lead == 0 {
        return None;
    }
    let scale = change.field.inv(lead);
    let g = g.scale(scale);
    if check_precondition(&g).ok()? {
        Some((
            g,
            AffineChange {
                scale: change.field.mul(change.scale, scale),
                ..change.clone()
            },
        ))
    } else {
        None
    }
}
