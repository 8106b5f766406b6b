//! Seeded random superelliptic covers.
//!
//! A cover is drawn by picking a squarefree `H` of degree between 2 and
//! `max_degree` uniformly among monic polynomials (rejection on
//! squarefreeness), then sending each irreducible factor of `H` to a uniform
//! part index `1..n-1`. Parts are therefore squarefree and coprime by
//! construction, and `m >= 2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cover::{check_n, SECover};
use crate::error::{domain, Result};
use crate::poly_fq::{factor, is_squarefree, FieldSpec, MonicPoly};

pub fn random_cover<R: Rng>(
    field: &FieldSpec,
    n: u32,
    max_degree: usize,
    rng: &mut R,
) -> Result<SECover> {
    check_n(n)?;
    if max_degree < 2 {
        return domain("random covers need max_degree >= 2");
    }
    if field.p() == n {
        return domain(format!("n = {n} equals the characteristic"));
    }
    let q = field.q();
    let h = loop {
        let d = rng.gen_range(2..=max_degree);
        let low = (0..d)
            .map(|_| field.element(rng.gen_range(0..q)).expect("below q"))
            .collect();
        let h = MonicPoly::from_low_coeffs(low);
        if is_squarefree(&h, field) {
            break h;
        }
    };
    let mut parts = vec![MonicPoly::one(); n as usize - 1];
    for (place, _) in factor(&h, field) {
        let i = rng.gen_range(0..parts.len());
        parts[i] = parts[i].mul(place.poly(), field);
    }
    Ok(SECover::new_unchecked(field.clone(), n, parts))
}

/// `count` covers from a ChaCha8 stream seeded with `seed`.
pub fn random_covers(
    field: &FieldSpec,
    n: u32,
    max_degree: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<SECover>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_cover(field, n, max_degree, &mut rng))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_are_valid_and_deterministic() {
        let f4 = FieldSpec::from_q(4).unwrap();
        let a = random_covers(&f4, 5, 8, 40, 7).unwrap();
        let b = random_covers(&f4, 5, 8, 40, 7).unwrap();
        assert_eq!(a, b);
        for c in &a {
            let checked = SECover::new(f4.clone(), 5, c.parts().to_vec()).unwrap();
            assert!(checked.m() >= 2);
        }
        let c = random_covers(&f4, 5, 8, 40, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_arguments() {
        let f2 = FieldSpec::from_q(2).unwrap();
        assert!(random_covers(&f2, 5, 1, 1, 0).is_err());
        assert!(random_covers(&f2, 2, 4, 1, 0).is_err());
    }
}
