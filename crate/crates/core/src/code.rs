//! The cyclic code C_E, its extension, duals, membership tests, and the
//! affine coordinate convention used by design extraction.
//!
//! Coordinate convention for codes of length 2^m: position i < n carries the
//! field element alpha^i and the appended parity position carries 0. Under
//! that labelling the extended code is invariant under every map
//! x -> a*x + b with a != 0, and membership of a support reduces to power
//! sums over its points.

use crate::bits::{BitVec, Echelon};
use crate::cyclotomic::{defining_set, DefiningSet};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::polyring::{generator_poly, BinPoly};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    Cyclic,
    Extended,
    Dual,
}

impl CodeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CodeKind::Cyclic => "cyclic",
            CodeKind::Extended => "extended",
            CodeKind::Dual => "dual",
        }
    }
}

/// A binary linear code with a reduced-echelon generator basis.
///
/// `coordinate_map` is present on extended codes (and their duals): it sends
/// each position to the field element labelling it.
#[derive(Clone, Debug)]
pub struct LinearCode {
    kind: CodeKind,
    m: u32,
    e: u32,
    length: usize,
    basis: Echelon,
    coordinate_map: Option<Vec<FieldElement>>,
    generator_poly: BinPoly,
}

impl LinearCode {
    /// The cyclic code of length 2^m - 1 with generator polynomial
    /// M_alpha * M_{alpha^{1+2^e}}.
    pub fn build_cyclic(ctx: &FieldCtx, e: u32) -> Result<LinearCode> {
        let g = generator_poly(ctx, e)?;
        let n = ctx.n() as usize;
        let k = n - g.degree().expect("generator is nonzero");
        let mut basis = Echelon::new(n);
        for shift in 0..k {
            let mut row = BitVec::zeros(n);
            for i in 0..=g.degree().unwrap() {
                if g.coeff(i) {
                    row.set(i + shift, true);
                }
            }
            basis.insert(row);
        }
        if basis.rank() != k {
            return Err(Error::Inconsistency(format!(
                "cyclic shifts of g_E span rank {} != {k}",
                basis.rank()
            )));
        }
        Ok(LinearCode {
            kind: CodeKind::Cyclic,
            m: ctx.m(),
            e,
            length: n,
            basis,
            coordinate_map: None,
            generator_poly: g,
        })
    }

    /// Appends the overall parity coordinate and installs the coordinate
    /// labelling (position i -> alpha^i, parity position -> 0).
    pub fn extend(&self, ctx: &FieldCtx) -> Result<LinearCode> {
        if self.kind != CodeKind::Cyclic {
            return Err(Error::HypothesisNotMet(
                "extend expects the cyclic code".to_string(),
            ));
        }
        if ctx.m() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.length,
                got: ctx.n() as usize,
            });
        }
        let n = self.length;
        let mut basis = Echelon::new(n + 1);
        for row in self.basis.rows() {
            let mut ext = BitVec::zeros(n + 1);
            for i in row.iter_ones() {
                ext.set(i, true);
            }
            ext.set(n, row.weight() % 2 == 1);
            basis.insert(ext);
        }
        if basis.rank() != self.dimension() {
            return Err(Error::Inconsistency(
                "extension changed the dimension".to_string(),
            ));
        }
        let mut map: Vec<FieldElement> = (0..n as u64).map(|i| ctx.antilog(i)).collect();
        map.push(0);
        Ok(LinearCode {
            kind: CodeKind::Extended,
            m: self.m,
            e: self.e,
            length: n + 1,
            basis,
            coordinate_map: Some(map),
            generator_poly: self.generator_poly.clone(),
        })
    }

    /// The dual code: a basis of the null space of the generator matrix.
    /// The coordinate labelling carries over.
    pub fn dual(&self) -> LinearCode {
        let ns = self.basis.nullspace();
        let basis = Echelon::from_rows(self.length, ns);
        assert_eq!(basis.rank(), self.length - self.dimension());
        LinearCode {
            kind: CodeKind::Dual,
            m: self.m,
            e: self.e,
            length: self.length,
            basis,
            coordinate_map: self.coordinate_map.clone(),
            generator_poly: self.generator_poly.clone(),
        }
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.basis.rank()
    }

    pub fn generator_rows(&self) -> &[BitVec] {
        self.basis.rows()
    }

    /// The generator polynomial of the underlying cyclic code.
    pub fn cyclic_generator(&self) -> &BinPoly {
        &self.generator_poly
    }

    pub fn coordinate_map(&self) -> Option<&[FieldElement]> {
        self.coordinate_map.as_deref()
    }

    /// Field element labelling a position, under the extended convention.
    pub fn element_at(&self, pos: usize) -> Option<FieldElement> {
        self.coordinate_map.as_ref().map(|m| m[pos])
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, word: &BitVec) -> Result<bool> {
        if word.len() != self.length {
            return Err(Error::LengthMismatch {
                expected: self.length,
                got: word.len(),
            });
        }
        Ok(self.basis.contains(word))
    }

    /// The codeword for a message, combining basis rows by message bits.
    /// Only meaningful for dimensions <= 64.
    pub fn codeword(&self, msg: u64) -> BitVec {
        assert!(self.dimension() <= 64, "message does not fit in u64");
        self.codeword_from_bits(&[msg])
    }

    /// The codeword for a message given as packed words (bit i selects
    /// basis row i); bits beyond the dimension are ignored.
    pub fn codeword_from_bits(&self, bits: &[u64]) -> BitVec {
        let mut w = BitVec::zeros(self.length);
        for (i, row) in self.basis.rows().iter().enumerate() {
            let word = bits.get(i / 64).copied().unwrap_or(0);
            if (word >> (i % 64)) & 1 == 1 {
                w.xor_assign(row);
            }
        }
        w
    }

    /// JSON descriptor: {m, e, kind, length, dimension, generator_poly_hex}.
    pub fn descriptor_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "e": self.e,
            "kind": self.kind.as_str(),
            "length": self.length,
            "dimension": self.dimension(),
            "generator_poly_hex": self.generator_poly.hex(),
        })
    }

    /// The defining set T = C_1 ∪ C_{1+2^e} of the underlying cyclic code.
    pub fn defining_set(&self) -> Result<DefiningSet> {
        defining_set(self.m, self.e)
    }
}

/// Membership of a support in the extended code, checked spectrally: the
/// characteristic vector of `support` (a set of field elements) lies in the
/// extended code iff |support| is even and both power sums
/// sum(x) and sum(x^{1+2^e}) vanish. Conjugate exponents follow by
/// Frobenius, so these three checks cover the whole defining set.
pub fn spectral_member(ctx: &FieldCtx, e: u32, support: &[FieldElement]) -> bool {
    debug_assert!(support.iter().all(|&x| x < ctx.size()));
    debug_assert!(
        {
            let mut s = support.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        },
        "support must be a set"
    );
    if support.len() % 2 != 0 {
        return false;
    }
    let u = 1 + (1u64 << e);
    let mut s1: FieldElement = 0;
    let mut su: FieldElement = 0;
    for &x in support {
        s1 ^= x;
        su ^= ctx.pow(x, u);
    }
    s1 == 0 && su == 0
}

/// Applies the coordinate permutation x -> a*x + b (a != 0) to a word of
/// length 2^m under the extended convention: the output bit at the position
/// labelled a*x+b is the input bit at the position labelled x.
pub fn affine_permute(
    ctx: &FieldCtx,
    word: &BitVec,
    a: FieldElement,
    b: FieldElement,
) -> Result<BitVec> {
    if a == 0 {
        return Err(Error::ZeroScale);
    }
    let v = ctx.size() as usize;
    if word.len() != v {
        return Err(Error::LengthMismatch {
            expected: v,
            got: word.len(),
        });
    }
    let n = v - 1;
    let pos_of = |x: FieldElement| -> usize {
        match ctx.log(x) {
            Some(i) => i as usize,
            None => n,
        }
    };
    let mut out = BitVec::zeros(v);
    for p in word.iter_ones() {
        let x = if p == n { 0 } else { ctx.antilog(p as u64) };
        let y = ctx.add(ctx.mul(a, x), b);
        out.set(pos_of(y), true);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triple(m: u32, e: u32) -> (FieldCtx, LinearCode, LinearCode, LinearCode) {
        let ctx = FieldCtx::new(m).unwrap();
        let cyclic = LinearCode::build_cyclic(&ctx, e).unwrap();
        let ext = cyclic.extend(&ctx).unwrap();
        let dual = ext.dual();
        (ctx, cyclic, ext, dual)
    }

    #[test]
    fn parameters_m4() {
        let (_, cyclic, ext, dual) = triple(4, 2);
        assert_eq!((cyclic.length(), cyclic.dimension()), (15, 9));
        assert_eq!((ext.length(), ext.dimension()), (16, 9));
        assert_eq!((dual.length(), dual.dimension()), (16, 7));
        assert_eq!(ext.kind(), CodeKind::Extended);
    }

    #[test]
    fn parameters_m6_and_m8() {
        let (_, cyclic, ext, dual) = triple(6, 3);
        assert_eq!((cyclic.length(), cyclic.dimension()), (63, 54));
        assert_eq!((ext.length(), ext.dimension()), (64, 54));
        assert_eq!((dual.length(), dual.dimension()), (64, 10));

        let (_, cyclic, ext, dual) = triple(8, 2);
        assert_eq!((cyclic.length(), cyclic.dimension()), (255, 239));
        assert_eq!((ext.length(), ext.dimension()), (256, 239));
        assert_eq!((dual.length(), dual.dimension()), (256, 17));
    }

    #[test]
    fn generator_rows_have_even_weight_after_extension() {
        let (_, _, ext, dual) = triple(4, 2);
        for row in ext.generator_rows() {
            assert_eq!(row.weight() % 2, 0);
        }
        // G * H^T = 0
        for g in ext.generator_rows() {
            for h in dual.generator_rows() {
                assert!(!g.dot(h));
            }
        }
    }

    #[test]
    fn dual_of_dual_is_identity_on_row_spaces() {
        let (_, _, ext, dual) = triple(4, 2);
        let dd = dual.dual();
        // Reduced echelon form is canonical, so row equality is space equality.
        assert_eq!(dd.generator_rows(), ext.generator_rows());
    }

    #[test]
    fn membership_basics() {
        let (_, _, ext, _) = triple(4, 2);
        assert!(ext.contains(&BitVec::zeros(16)).unwrap());
        for row in ext.generator_rows() {
            assert!(ext.contains(row).unwrap());
        }
        // Minimum distance 4: no weight-1 word is a member.
        for i in 0..16 {
            let w = BitVec::from_ones(16, &[i]);
            assert!(!ext.contains(&w).unwrap());
        }
        assert!(matches!(
            ext.contains(&BitVec::zeros(15)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn spectral_member_examples() {
        let ctx = FieldCtx::new(4).unwrap();
        assert!(spectral_member(&ctx, 2, &[]));
        // The F_4 subfield {0, 1, alpha^5, alpha^10}.
        let sub = [0, 1, ctx.antilog(5), ctx.antilog(10)];
        assert!(spectral_member(&ctx, 2, &sub));
        // Odd supports always fail the parity check.
        assert!(!spectral_member(&ctx, 2, &[0]));
        assert!(!spectral_member(&ctx, 2, &[1, 2, 3]));
    }

    #[test]
    fn spectral_member_agrees_with_matrix_membership() {
        for (m, e) in [(4u32, 2u32), (6, 3)] {
            let (ctx, _, ext, _) = triple(m, e);
            let v = ext.length();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for trial in 0..300 {
                // Half random even-weight vectors, half true codewords.
                let w = if trial % 2 == 0 {
                    let mut w = BitVec::zeros(v);
                    for i in 0..v {
                        w.set(i, rng.random());
                    }
                    if w.weight() % 2 == 1 {
                        let i = rng.random_range(0..v);
                        w.set(i, !w.get(i));
                    }
                    w
                } else {
                    ext.codeword(rng.random_range(0..1u64 << ext.dimension()))
                };
                let support: Vec<FieldElement> =
                    w.iter_ones().map(|p| ext.element_at(p).unwrap()).collect();
                assert_eq!(
                    spectral_member(&ctx, e, &support),
                    ext.contains(&w).unwrap(),
                    "disagreement at m={m}, e={e}"
                );
            }
        }
    }

    #[test]
    fn affine_identity_and_group_law() {
        let ctx = FieldCtx::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut w = BitVec::zeros(16);
        for i in 0..16 {
            w.set(i, rng.random());
        }
        assert_eq!(affine_permute(&ctx, &w, 1, 0).unwrap(), w);
        let a = ctx.alpha();
        let once = affine_permute(&ctx, &w, a, 0).unwrap();
        let twice = affine_permute(&ctx, &once, a, 0).unwrap();
        assert_eq!(twice, affine_permute(&ctx, &w, ctx.mul(a, a), 0).unwrap());
        assert!(matches!(
            affine_permute(&ctx, &w, 0, 1),
            Err(Error::ZeroScale)
        ));
    }

    #[test]
    fn affine_maps_preserve_membership() {
        let (ctx, _, ext, _) = triple(4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let a = rng.random_range(1..ctx.size());
            let b = rng.random_range(0..ctx.size());
            for _ in 0..8 {
                let w = ext.codeword(rng.random_range(0..1u64 << ext.dimension()));
                let img = affine_permute(&ctx, &w, a, b).unwrap();
                assert_eq!(img.weight(), w.weight());
                assert!(ext.contains(&img).unwrap());
            }
        }
    }

    #[test]
    fn descriptor_json_shape() {
        let (_, _, ext, _) = triple(4, 2);
        let d = ext.descriptor_json();
        assert_eq!(d["m"], 4);
        assert_eq!(d["e"], 2);
        assert_eq!(d["kind"], "extended");
        assert_eq!(d["length"], 16);
        assert_eq!(d["dimension"], 9);
        assert_eq!(d["generator_poly_hex"], "79");
    }

    #[test]
    fn extend_requires_cyclic_kind() {
        let (ctx, _, ext, _) = triple(4, 2);
        assert!(ext.extend(&ctx).is_err());
    }
}
