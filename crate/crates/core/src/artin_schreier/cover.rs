//! Branch data of Artin-Schreier covers `y^p - y = f(x)`.
//!
//! `f` is kept in normal form as
//! `f = g(x) + sum_Q sum_{i=1}^{d_Q} r_{Q,i} / Q^i`, `deg r_{Q,i} < deg Q`,
//! with `r_{Q,d_Q} != 0` and `r_{Q,i} = 0` whenever `p | i`. This forces
//! `p` not to divide `d_Q`. The polynomial part `g` is present only for covers
//! ramified at infinity; it has no constant term, no monomials of degree
//! divisible by `p`, and degree `d_inf >= 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly_fq::{FieldElement, FieldSpec, Place, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASCover {
    field: FieldSpec,
    branch: BTreeMap<Place, Vec<Poly>>,
    infinity: Option<Poly>,
}

impl ASCover {
    pub fn new(
        field: FieldSpec,
        branch: BTreeMap<Place, Vec<Poly>>,
        infinity: Option<Poly>,
    ) -> Result<Self> {
        let p = field.p() as usize;
        for (place, local) in &branch {
            let d = local.len();
            if d == 0 {
                return domain(format!("empty local part at {place}"));
            }
            for (idx, r) in local.iter().enumerate() {
                let i = idx + 1;
                if r.degree().is_some_and(|dr| dr >= place.degree()) {
                    return domain(format!("local coefficient {i} at {place} has degree >= deg Q"));
                }
                if i % p == 0 && !r.is_zero() {
                    return domain(format!("local coefficient {i} at {place} must vanish"));
                }
            }
            if local[d - 1].is_zero() {
                return domain(format!("top local coefficient at {place} is zero"));
            }
        }
        if let Some(g) = &infinity {
            if g.is_zero() {
                return domain("polynomial part at infinity must be nonzero");
            }
            for (i, c) in g.coeffs().iter().enumerate() {
                if i % p == 0 && !c.is_zero() {
                    return domain(format!("coefficient of x^{i} at infinity must vanish"));
                }
            }
        } else if branch.is_empty() {
            return domain("cover has no branch points");
        }
        Ok(ASCover {
            field,
            branch,
            infinity,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn branch(&self) -> &BTreeMap<Place, Vec<Poly>> {
        &self.branch
    }

    pub fn infinity(&self) -> Option<&Poly> {
        self.infinity.as_ref()
    }

    /// `d_Q` per place.
    pub fn pole_orders(&self) -> impl Iterator<Item = (&Place, usize)> + '_ {
        self.branch.iter().map(|(q, r)| (q, r.len()))
    }

    /// `d_inf`, the degree of the polynomial part, if ramified at infinity.
    pub fn pole_order_at_infinity(&self) -> Option<usize> {
        self.infinity.as_ref().and_then(Poly::degree)
    }

    /// `sum_Q deg(Q)(d_Q + 1)`, plus `d_inf + 1` when ramified at infinity.
    pub fn m_invariant(&self) -> u64 {
        let finite: usize = self.pole_orders().map(|(q, d)| q.degree() * (d + 1)).sum();
        let inf = self.pole_order_at_infinity().map_or(0, |d| d + 1);
        (finite + inf) as u64
    }

    /// `((p - 1)/2)(m - 2)`.
    pub fn genus(&self) -> u64 {
        let m = self.m_invariant();
        let g2 = (self.p() as u64 - 1) * (m - 2);
        debug_assert!(g2 % 2 == 0);
        g2 / 2
    }

    /// Ordinary iff every pole is simple.
    pub fn is_ordinary(&self) -> bool {
        self.pole_orders().all(|(_, d)| d == 1)
            && self.pole_order_at_infinity().map_or(true, |d| d == 1)
    }

    /// `f` as `numerator / prod_Q Q^{d_Q}`.
    pub fn rational_function(&self) -> (Poly, Poly) {
        let f = &self.field;
        let den = self.branch.iter().fold(Poly::one(), |acc, (q, r)| {
            acc.mul(&q.poly().as_poly().pow(r.len() as u32, f), f)
        });
        let mut num = self
            .infinity
            .as_ref()
            .map_or(Poly::zero(), |g| g.mul(&den, f));
        for (q, rs) in &self.branch {
            let qp = q.poly().as_poly();
            let d = rs.len() as u32;
            let cofactor = den.div_exact(&qp.pow(d, f), f).expect("divides");
            for (i, r) in rs.iter().enumerate() {
                let term = r.mul(&qp.pow(d - 1 - i as u32, f), f).mul(&cofactor, f);
                num = num.add(&term, f);
            }
        }
        (num, den)
    }

    pub fn to_file(&self) -> ASCoverFile {
        let q = self.field.q() as u64;
        ASCoverFile {
            q,
            p: self.p(),
            branch: self
                .branch
                .iter()
                .map(|(place, local)| BranchEntry {
                    place: place.to_string(),
                    local: local.iter().map(|r| pack(r, q)).collect(),
                })
                .collect(),
            infinity: self
                .infinity
                .as_ref()
                .map(|g| g.coeffs().iter().map(|c| c.repr()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<ASCover> {
        let file: ASCoverFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("cover file: {e}")))?;
        file.into_cover()
    }
}

fn pack(r: &Poly, q: u64) -> u64 {
    r.coeffs().iter().rev().fold(0, |acc, c| acc * q + c.repr() as u64)
}

fn unpack(mut v: u64, q: u64, f: &FieldSpec) -> Result<Poly> {
    let mut coeffs: Vec<FieldElement> = Vec::new();
    while v > 0 {
        coeffs.push(f.element((v % q) as u32)?);
        v /= q;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// One branch place in a cover file. `local[i-1]` packs `r_i` as
/// `sum_j c_j q^j` over its coefficients `c_j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BranchEntry {
    pub place: String,
    pub local: Vec<u64>,
}

/// JSON layout of an Artin-Schreier cover, e.g.
/// `{"q":2,"p":2,"branch":[{"place":"0,1","local":[1]}],"infinity":null}`.
/// `infinity` lists the coefficients of the polynomial part from degree 0.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ASCoverFile {
    pub q: u64,
    pub p: u32,
    pub branch: Vec<BranchEntry>,
    #[serde(default)]
    pub infinity: Option<Vec<u32>>,
}

impl ASCoverFile {
    pub fn into_cover(self) -> Result<ASCover> {
        let field = FieldSpec::from_q(self.q)?;
        if field.p() != self.p {
            return domain(format!("q = {} is not a power of p = {}", self.q, self.p));
        }
        let mut branch = BTreeMap::new();
        for entry in self.branch {
            let place = Place::parse(&entry.place, &field)?;
            let local = entry
                .local
                .iter()
                .map(|&v| unpack(v, self.q, &field))
                .collect::<Result<Vec<_>>>()?;
            if branch.insert(place, local).is_some() {
                return domain(format!("place {} listed twice", entry.place));
            }
        }
        let infinity = match self.infinity {
            None => None,
            Some(cs) => Some(Poly::from_coeffs(
                cs.into_iter()
                    .map(|c| field.element(c))
                    .collect::<Result<Vec<_>>>()?,
            )),
        };
        ASCover::new(field, branch, infinity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(q: u64, places: &[(&str, Vec<u64>)], inf: Option<Vec<u32>>) -> ASCover {
        let field = FieldSpec::from_q(q).unwrap();
        ASCoverFile {
            q,
            p: field.p(),
            branch: places
                .iter()
                .map(|(p, l)| BranchEntry {
                    place: p.to_string(),
                    local: l.clone(),
                })
                .collect(),
            infinity: inf,
        }
        .into_cover()
        .unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(simple(2, &[("0,1", vec![1])], None).genus(), 0);
        assert_eq!(simple(2, &[("0,1", vec![1]), ("1,1", vec![1])], None).genus(), 1);
        assert_eq!(simple(3, &[("0,1", vec![1, 1])], None).genus(), 1);
    }

    #[test]
    fn m_examples() {
        assert_eq!(simple(2, &[("0,1", vec![1])], None).m_invariant(), 2);
        assert_eq!(simple(2, &[("1,1,1", vec![1, 0, 1])], None).m_invariant(), 8);
        let c = simple(5, &[("0,1", vec![1, 2, 3]), ("1,1", vec![4, 1])], None);
        assert_eq!(c.m_invariant(), 7);
        assert_eq!(c.m_invariant(), 2 * c.genus() / (c.p() as u64 - 1) + 2);
    }

    #[test]
    fn ordinarity_examples() {
        assert!(simple(2, &[("0,1", vec![1]), ("1,1", vec![1])], None).is_ordinary());
        assert!(!simple(2, &[("0,1", vec![1, 0, 1])], None).is_ordinary());
        assert!(simple(2, &[("1,1,1", vec![3])], None).is_ordinary());
        assert!(!simple(2, &[("0,1", vec![1])], Some(vec![0, 1, 0, 1])).is_ordinary());
        assert!(simple(2, &[], Some(vec![0, 1])).is_ordinary());
    }

    #[test]
    fn normal_form_enforced() {
        let field = FieldSpec::from_q(2).unwrap();
        let file = |local: Vec<u64>, inf: Option<Vec<u32>>| ASCoverFile {
            q: 2,
            p: 2,
            branch: vec![BranchEntry {
                place: "0,1".into(),
                local,
            }],
            infinity: inf,
        };
        assert!(file(vec![1, 1], None).into_cover().is_err());
        assert!(file(vec![1, 0], None).into_cover().is_err());
        assert!(file(vec![2], None).into_cover().is_err());
        assert!(file(vec![1], Some(vec![1, 1])).into_cover().is_err());
        assert!(file(vec![1], Some(vec![0, 1, 1])).into_cover().is_err());
        assert!(ASCover::new(field, BTreeMap::new(), None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = simple(4, &[("2,1,1", vec![5]), ("0,1", vec![3, 0, 2])], Some(vec![0, 1]));
        let s = c.to_json();
        assert_eq!(ASCover::from_json(&s).unwrap(), c);
        let parsed: ASCoverFile =
            serde_json::from_str(r#"{"q":2,"p":2,"branch":[{"place":"0,1","local":[1]}],"infinity":null}"#)
                .unwrap();
        assert_eq!(parsed.into_cover().unwrap().m_invariant(), 2);
    }

    #[test]
    fn rational_function_matches_partial_fractions() {
        let c = simple(2, &[("1,1,1", vec![1, 0, 3]), ("0,1", vec![1])], None);
        let f = c.field().clone();
        let (num, den) = c.rational_function();
        let den = crate::poly_fq::MonicPoly::new(den).unwrap();
        let pf = crate::poly_fq::partial_fractions(&num, &den, &f).unwrap();
        assert_eq!(&pf.parts, c.branch());
        assert!(pf.polynomial_part.is_zero());
    }
}
