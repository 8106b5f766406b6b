//! Superelliptic covers `y^n = prod_{i=1}^{n-1} f_i^i` and their invariants.
//!
//! Everything except the field arithmetic depends only on the degree tuple
//! `(deg f_1, ..., deg f_{n-1})`, so the invariants are exposed both on
//! [`SECover`] and as functions of a degree slice.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invariant, Error, Result};
use crate::poly_fq::field::is_prime;
use crate::poly_fq::{is_squarefree, FieldSpec, MonicPoly};

pub(crate) fn check_n(n: u32) -> Result<()> {
    if n < 3 || !is_prime(n as u64) {
        return domain(format!("n = {n} is not an odd prime"));
    }
    Ok(())
}

/// `(N, n_inf, epsilon)` for a degree tuple indexed from `i = 1`.
pub fn infinity_data(n: u32, degs: &[usize]) -> (u64, u32, u32) {
    let big_n: u64 = degs
        .iter()
        .enumerate()
        .map(|(i, &d)| (i as u64 + 1) * d as u64)
        .sum();
    let r = (big_n % n as u64) as u32;
    let n_inf = (n - r) % n;
    (big_n, n_inf, (n_inf != 0) as u32)
}

/// `m = sum deg f_i + epsilon`, the number of branch points.
pub fn branch_count(n: u32, degs: &[usize]) -> u64 {
    let (_, _, eps) = infinity_data(n, degs);
    degs.iter().map(|&d| d as u64).sum::<u64>() + eps as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Genus via both Riemann-Hurwitz forms; errors if they disagree or `m < 2`.
pub fn genus_from_degrees(n: u32, degs: &[usize]) -> Result<u64> {
    check_n(n)?;
    if degs.len() != n as usize - 1 {
        return domain(format!("expected {} degrees, got {}", n - 1, degs.len()));
    }
    let m = branch_count(n, degs);
    if m < 2 {
        return domain(format!("cover has m = {m} < 2 branch points"));
    }
    let nn = n as i64;
    let (_, n_inf, eps) = infinity_data(n, degs);
    // 2g = 2(1 - n) + sum deg_i (n - (n, i)) + eps (n - (n, n_inf))
    let mut twice: i64 = 2 * (1 - nn);
    for (i, &d) in degs.iter().enumerate() {
        twice += d as i64 * (nn - gcd(n as u64, i as u64 + 1) as i64);
    }
    twice += eps as i64 * (nn - gcd(n as u64, n_inf as u64) as i64);
    let collapsed = (nn - 1) * (m as i64 - 2);
    if twice != collapsed || twice < 0 || twice % 2 != 0 {
        return invariant(format!(
            "genus formulas disagree for n={n}, degrees {degs:?}: {twice} vs {collapsed}"
        ));
    }
    Ok((twice / 2) as u64)
}

/// Dimensions `d_1..d_{n-1}` of the eigenspaces of the `mu_n` action on
/// regular differentials:
/// `d_i = sum_j deg f_j <ij/n> + <i n_inf / n> - 1`.
pub fn eigen_degrees_from(n: u32, degs: &[usize]) -> Result<EigenDegrees> {
    let g = genus_from_degrees(n, degs)?;
    let (_, n_inf, _) = infinity_data(n, degs);
    let nn = n as i64;
    let mut d = Vec::with_capacity(degs.len());
    for i in 1..n as i64 {
        let mut num: i64 = degs
            .iter()
            .enumerate()
            .map(|(j, &e)| e as i64 * ((i * (j as i64 + 1)) % nn))
            .sum();
        num += (i * n_inf as i64) % nn;
        num -= nn;
        if num % nn != 0 {
            return invariant(format!(
                "eigenspace dimension d_{i} = {num}/{nn} is not an integer (degrees {degs:?})"
            ));
        }
        let di = num / nn;
        if di < 0 {
            return invariant(format!("negative eigenspace dimension d_{i} = {di}"));
        }
        d.push(di as u64);
    }
    let total: u64 = d.iter().sum();
    if total != g {
        return invariant(format!("sum of d_i = {total} differs from genus {g}"));
    }
    Ok(EigenDegrees { d })
}

/// `d_1..d_{n-1}`; `d[0]` is `d_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenDegrees {
    pub d: Vec<u64>,
}

impl EigenDegrees {
    pub fn get(&self, i: u32) -> u64 {
        self.d[i as usize - 1]
    }

    pub fn sum(&self) -> u64 {
        self.d.iter().sum()
    }
}

/// `sigma(i) = i p^{-1} mod n` on `{1, ..., n-1}`; `perm[i-1] = sigma(i)`.
pub fn sigma_permutation(n: u32, p: u32) -> Result<Vec<u32>> {
    check_n(n)?;
    if p % n == 0 {
        return domain(format!("p = {p} is not coprime to n = {n}"));
    }
    let pinv = (1..n).find(|&x| (x as u64 * p as u64) % n as u64 == 1).expect("unit");
    Ok((1..n).map(|i| (i as u64 * pinv as u64 % n as u64) as u32).collect())
}

/// `a = g - sum_i min(d_i, d_{sigma(i)})`, characteristic 2 only.
pub fn a_number_from(n: u32, p: u32, degs: &[usize]) -> Result<u64> {
    if p != 2 {
        return domain("a-number formula is implemented for characteristic 2 only");
    }
    let g = genus_from_degrees(n, degs)?;
    let d = eigen_degrees_from(n, degs)?;
    let sigma = sigma_permutation(n, p)?;
    let s: u64 = (1..n)
        .map(|i| d.get(i).min(d.get(sigma[i as usize - 1])))
        .sum();
    if s > g {
        return invariant("eigenspace minima exceed the genus");
    }
    Ok(g - s)
}

/// Whether `-1` is a power of `p` modulo `n`. Exactly then does every
/// `sigma`-orbit contain `n - i` along with `i`, and exactly then does
/// [`ordinary_by_degrees`] agree with `a_number == 0` on every degree tuple.
pub fn symmetry_criterion_exact(n: u32, p: u32) -> bool {
    let mut x = p as u64 % n as u64;
    for _ in 0..n {
        if x == n as u64 - 1 {
            return true;
        }
        x = x * p as u64 % n as u64;
    }
    false
}

/// Degree-symmetry criterion. With `n_inf = 0`: `deg f_i = deg f_{n-i}` for
/// all `i`. With `n_inf = i`: `deg f_i + 1 = deg f_{n-i}` and the remaining
/// pairs symmetric.
///
/// When `-1` is not a power of 2 modulo `n` (`n = 7, 17, 23, ...`) this is
/// sufficient but not necessary: `a = 0` only needs `d` constant on the
/// `sigma`-orbits. See [`symmetry_criterion_exact`].
pub fn ordinary_by_degrees(n: u32, degs: &[usize]) -> bool {
    let (_, n_inf, _) = infinity_data(n, degs);
    let mut e: Vec<usize> = degs.to_vec();
    if n_inf != 0 {
        e[n_inf as usize - 1] += 1;
    }
    (1..n as usize).all(|i| e[i - 1] == e[n as usize - i - 1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SECover {
    field: FieldSpec,
    n: u32,
    parts: Vec<MonicPoly>,
}

impl SECover {
    /// `parts[i-1] = f_i`. Checks squarefreeness and pairwise coprimality.
    pub fn new(field: FieldSpec, n: u32, parts: Vec<MonicPoly>) -> Result<Self> {
        check_n(n)?;
        if field.p() == n {
            return domain(format!("n = {n} equals the characteristic"));
        }
        if parts.len() != n as usize - 1 {
            return domain(format!("expected {} parts, got {}", n - 1, parts.len()));
        }
        for (i, f) in parts.iter().enumerate() {
            if !is_squarefree(f, &field) {
                return domain(format!("f_{} = {f} is not squarefree", i + 1));
            }
            for (j, g) in parts.iter().enumerate().skip(i + 1) {
                if !f.gcd(g, &field).is_one() {
                    return domain(format!("f_{} and f_{} are not coprime", i + 1, j + 1));
                }
            }
        }
        Ok(SECover { field, n, parts })
    }

    pub(crate) fn new_unchecked(field: FieldSpec, n: u32, parts: Vec<MonicPoly>) -> Self {
        SECover { field, n, parts }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[MonicPoly] {
        &self.parts
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.parts.iter().map(MonicPoly::degree).collect()
    }

    /// `N = sum i deg f_i`.
    pub fn big_n(&self) -> u64 {
        infinity_data(self.n, &self.degrees()).0
    }

    pub fn n_infinity(&self) -> u32 {
        infinity_data(self.n, &self.degrees()).1
    }

    pub fn epsilon(&self) -> u32 {
        infinity_data(self.n, &self.degrees()).2
    }

    /// Number of branch points.
    pub fn m(&self) -> u64 {
        branch_count(self.n, &self.degrees())
    }

    /// `f = prod f_i^i`.
    pub fn f(&self) -> MonicPoly {
        self.parts
            .iter()
            .enumerate()
            .fold(MonicPoly::one(), |acc, (i, fi)| {
                acc.mul(&fi.pow(i as u32 + 1, &self.field), &self.field)
            })
    }

    pub fn genus(&self) -> Result<u64> {
        genus_from_degrees(self.n, &self.degrees())
    }

    pub fn eigen_degrees(&self) -> Result<EigenDegrees> {
        eigen_degrees_from(self.n, &self.degrees())
    }

    pub fn a_number(&self) -> Result<u64> {
        a_number_from(self.n, self.field.p(), &self.degrees())
    }

    /// Degree-symmetry criterion; characteristic 2 only.
    pub fn is_ordinary(&self) -> Result<bool> {
        if self.field.p() != 2 {
            return domain("ordinarity criterion is implemented for characteristic 2 only");
        }
        Ok(ordinary_by_degrees(self.n, &self.degrees()))
    }

    pub fn to_file(&self) -> SECoverFile {
        SECoverFile {
            q: self.field.q() as u64,
            n: self.n,
            parts: self.parts.iter().map(MonicPoly::to_text).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<SECover> {
        let file: SECoverFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("cover file: {e}")))?;
        file.into_cover()
    }
}

/// JSON layout: `{"q":2,"n":3,"parts":["0,1","1,1"]}`, `parts[i-1] = f_i`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SECoverFile {
    pub q: u64,
    pub n: u32,
    pub parts: Vec<String>,
}

impl SECoverFile {
    pub fn into_cover(self) -> Result<SECover> {
        let field = FieldSpec::from_q(self.q)?;
        let parts = self
            .parts
            .iter()
            .map(|s| MonicPoly::parse(s, &field))
            .collect::<Result<Vec<_>>>()?;
        SECover::new(field, self.n, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(genus_from_degrees(3, &[2, 2]).unwrap(), 2);
        assert_eq!(branch_count(3, &[2, 2]), 4);
        assert_eq!(genus_from_degrees(3, &[1, 0]).unwrap(), 0);
        assert_eq!(infinity_data(3, &[1, 0]), (1, 2, 1));
        assert_eq!(genus_from_degrees(5, &[1, 1, 1, 1]).unwrap(), 4);
        assert!(genus_from_degrees(3, &[0, 0]).is_err());
    }

    #[test]
    fn eigen_examples() {
        assert_eq!(eigen_degrees_from(3, &[2, 2]).unwrap().d, vec![1, 1]);
        // N = 5 forces n_inf = 1, so m = 4 and g = 2.
        let d = eigen_degrees_from(3, &[1, 2]).unwrap();
        assert_eq!(d.d, vec![1, 1]);
        let d = eigen_degrees_from(3, &[0, 1]).unwrap();
        assert_eq!(infinity_data(3, &[0, 1]).1, 1);
        assert_eq!(d.sum(), 0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_permutation(3, 2).unwrap(), vec![2, 1]);
        assert_eq!(sigma_permutation(5, 2).unwrap(), vec![3, 1, 4, 2]);
        for n in [3u32, 5, 7, 11, 13] {
            let s = sigma_permutation(n, 2).unwrap();
            for i in 1..n {
                assert_eq!(s[i as usize - 1], (i * (n + 1) / 2) % n);
            }
            let involution = (1..n).all(|i| s[s[i as usize - 1] as usize - 1] == i);
            assert_eq!(involution, 4 % n == 1);
        }
    }

    #[test]
    fn a_number_examples() {
        assert_eq!(a_number_from(3, 2, &[2, 2]).unwrap(), 0);
        let (_, n_inf, _) = infinity_data(3, &[2, 0]);
        assert_eq!(n_inf, 1);
        assert!(a_number_from(3, 2, &[2, 0]).unwrap() > 0);
        assert!(!ordinary_by_degrees(3, &[2, 0]));
        assert_eq!(a_number_from(3, 2, &[1, 0]).unwrap(), 0);
        assert!(a_number_from(3, 3, &[2, 2]).is_err());
    }

    #[test]
    fn criterion_examples() {
        assert!(ordinary_by_degrees(3, &[2, 2]));
        assert_eq!(infinity_data(3, &[1, 2]).1, 1);
        assert!(ordinary_by_degrees(3, &[1, 2]));
        assert!(ordinary_by_degrees(5, &[1, 2, 2, 1]));
        assert!(!ordinary_by_degrees(5, &[2, 1, 2, 1]));
        for degs in [[1usize, 2, 2, 1], [2, 1, 2, 1]] {
            let a = a_number_from(5, 2, &degs).unwrap();
            assert_eq!(a == 0, ordinary_by_degrees(5, &degs));
        }
    }

    fn degree_grid(r: usize, max: usize) -> impl Iterator<Item = Vec<usize>> {
        (0..(max + 1).pow(r as u32)).map(move |mut c| {
            (0..r)
                .map(|_| {
                    let d = c % (max + 1);
                    c /= max + 1;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn criterion_matches_a_number_when_minus_one_is_a_power_of_two() {
        for (n, max) in [(3u32, 6usize), (5, 3), (11, 1), (13, 1)] {
            assert!(symmetry_criterion_exact(n, 2));
            for degs in degree_grid(n as usize - 1, max).filter(|e| branch_count(n, e) >= 2) {
                let a = a_number_from(n, 2, &degs).unwrap();
                assert_eq!(a == 0, ordinary_by_degrees(n, &degs), "n={n} {degs:?}");
            }
        }
    }

    #[test]
    fn criterion_is_only_sufficient_for_n7() {
        assert!(!symmetry_criterion_exact(7, 2));
        let mut missed = 0;
        for degs in degree_grid(6, 2).filter(|e| branch_count(7, e) >= 2) {
            let a = a_number_from(7, 2, &degs).unwrap();
            if ordinary_by_degrees(7, &degs) {
                assert_eq!(a, 0, "{degs:?}");
            } else if a == 0 {
                missed += 1;
            }
        }
        assert!(missed > 0);
        // d = (0,0,1,0,1,1) is constant on the orbits {1,2,4} and {3,5,6}
        assert_eq!(eigen_degrees_from(7, &[1, 1, 0, 1, 0, 0]).unwrap().d, vec![0, 0, 1, 0, 1, 1]);
        assert_eq!(a_number_from(7, 2, &[1, 1, 0, 1, 0, 0]).unwrap(), 0);
        assert!(!ordinary_by_degrees(7, &[1, 1, 0, 1, 0, 0]));
    }

    #[test]
    fn cover_validation_and_json() {
        let f2 = FieldSpec::from_q(2).unwrap();
        let x = MonicPoly::parse("0,1", &f2).unwrap();
        let x1 = MonicPoly::parse("1,1", &f2).unwrap();
        let c = SECover::new(f2.clone(), 3, vec![x.clone(), x1.clone()]).unwrap();
        assert_eq!(c.big_n(), 3);
        assert_eq!(c.epsilon(), 0);
        assert_eq!(c.f().to_text(), "0,1,0,1");
        let back = SECover::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(SECover::new(f2.clone(), 3, vec![x.clone(), x.clone()]).is_err());
        let x2 = MonicPoly::parse("0,0,1", &f2).unwrap();
        assert!(SECover::new(f2.clone(), 3, vec![x2, MonicPoly::one()]).is_err());
        assert!(SECover::new(f2, 4, vec![x.clone(), x1, MonicPoly::one()]).is_err());
    }
}

