//! Exhaustive enumeration of normalized Artin-Schreier branch data.
//!
//! A cover of invariant `m` is a choice of places `Q` with multiplicities
//! `k_Q = d_Q + 1 >= 2`, `k_Q != 1 mod p`, `sum deg(Q) k_Q = m` (plus a
//! multiplicity at infinity, which behaves like a degree-1 place, in the
//! ramified family), followed by a local part for every chosen place.
//!
//! Order: places by (degree, polynomial order); shapes lexicographically by
//! the multiplicity vector over that place order with infinity last; local
//! parts by packed coefficient index, lowest coefficient varying fastest.

use std::collections::BTreeMap;

use crate::poly_fq::{places_up_to, FieldElement, FieldSpec, Place, Poly};

use super::cover::ASCover;

type ShapeSink<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

/// A multiset of `(place index, k)` plus the multiplicity at infinity (0 if
/// unramified there).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub finite: Vec<(usize, usize)>,
    pub infinity: usize,
}

/// Admissible multiplicities: `k >= 2`, `k != 1 mod p`.
pub fn admissible_k(k: usize, p: usize) -> bool {
    k >= 2 && k % p != 1
}

/// Enumeration context: the places that can occur below a given `m`.
pub struct AsEnumerator {
    field: FieldSpec,
    places: Vec<Place>,
}

impl AsEnumerator {
    pub fn new(field: &FieldSpec, m_max: u32) -> Self {
        let places = places_up_to(field, (m_max / 2) as usize)
            .into_iter()
            .flatten()
            .collect();
        AsEnumerator {
            field: field.clone(),
            places,
        }
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// All shapes with invariant exactly `m`.
    pub fn shapes(&self, m: u32, include_infinity: bool) -> Vec<Shape> {
        let p = self.field.p() as usize;
        let m = m as usize;
        let mut out = Vec::new();
        let inf_choices: Vec<usize> = if include_infinity {
            std::iter::once(0)
                .chain((2..=m).filter(|&k| admissible_k(k, p)))
                .collect()
        } else {
            vec![0]
        };
        for k_inf in inf_choices {
            let mut cur = Vec::new();
            self.shapes_rec(0, m - k_inf, p, &mut cur, &mut |finite| {
                if !finite.is_empty() || k_inf > 0 {
                    out.push(Shape {
                        finite: finite.to_vec(),
                        infinity: k_inf,
                    });
                }
            });
        }
        out.sort_by(|a, b| {
            let key = |s: &Shape| {
                let mut v = vec![0usize; self.places.len()];
                for &(i, k) in &s.finite {
                    v[i] = k;
                }
                v.push(s.infinity);
                v
            };
            key(a).cmp(&key(b))
        });
        out
    }

    fn shapes_rec(
        &self,
        start: usize,
        remaining: usize,
        p: usize,
        cur: &mut Vec<(usize, usize)>,
        emit: &mut ShapeSink<'_>,
    ) {
        if remaining == 0 {
            emit(cur);
            return;
        }
        for idx in start..self.places.len() {
            let deg = self.places[idx].degree();
            if 2 * deg > remaining {
                break;
            }
            for k in (2..=remaining / deg).filter(|&k| admissible_k(k, p)) {
                cur.push((idx, k));
                self.shapes_rec(idx + 1, remaining - deg * k, p, cur, emit);
                cur.pop();
            }
        }
    }

    /// Number of covers of a shape.
    pub fn shape_size(&self, shape: &Shape) -> u128 {
        let q = self.field.q() as u128;
        let p = self.field.p() as usize;
        let local = |norm: u128, k: usize| {
            let d = k - 1;
            let free = (d - 1) - (d - 1) / p;
            (norm - 1) * norm.pow(free as u32)
        };
        let finite: u128 = shape
            .finite
            .iter()
            .map(|&(i, k)| local(self.places[i].norm(q as u32), k))
            .product();
        if shape.infinity > 0 {
            finite * local(q, shape.infinity)
        } else {
            finite
        }
    }

    /// All covers of a shape, in local-part order.
    pub fn covers_of_shape<'a>(&'a self, shape: &'a Shape) -> impl Iterator<Item = ASCover> + 'a {
        let f = &self.field;
        let p = f.p() as usize;
        // One slot per free coefficient: (owner, i, choices), owner None = infinity.
        let mut slots: Vec<(Option<usize>, usize, u32, bool)> = Vec::new();
        let q = f.q();
        for &(pi, k) in &shape.finite {
            let deg = self.places[pi].degree() as u32;
            let d = k - 1;
            for i in (1..=d).filter(|i| i % p != 0) {
                slots.push((Some(pi), i, q.pow(deg), i == d));
            }
        }
        if shape.infinity > 0 {
            let d = shape.infinity - 1;
            for i in (1..=d).filter(|i| i % p != 0) {
                slots.push((None, i, q, i == d));
            }
        }
        let radices: Vec<u64> = slots
            .iter()
            .map(|&(_, _, n, top)| if top { n as u64 - 1 } else { n as u64 })
            .collect();
        let total: u64 = radices.iter().product();
        (0..total).map(move |mut idx| {
            let mut branch: BTreeMap<Place, Vec<Poly>> = BTreeMap::new();
            for &(pi, k) in &shape.finite {
                branch.insert(self.places[pi].clone(), vec![Poly::zero(); k - 1]);
            }
            let mut inf = vec![FieldElement::ZERO; shape.infinity];
            for (slot, &radix) in slots.iter().zip(&radices) {
                let (owner, i, _, top) = *slot;
                let mut digit = (idx % radix) as u32;
                idx /= radix;
                if top {
                    digit += 1;
                }
                match owner {
                    Some(pi) => {
                        let place = &self.places[pi];
                        let r = unpack_digit(digit, place.degree(), f);
                        branch.get_mut(place).expect("inserted")[i - 1] = r;
                    }
                    None => inf[i] = f.element(digit).expect("below q"),
                }
            }
            let infinity = (shape.infinity > 0).then(|| Poly::from_coeffs(inf));
            ASCover::new(f.clone(), branch, infinity).expect("enumerated data is normalized")
        })
    }

    /// Every cover with invariant exactly `m`.
    pub fn covers(&self, m: u32, include_infinity: bool) -> Vec<ASCover> {
        self.shapes(m, include_infinity)
            .iter()
            .flat_map(|s| self.covers_of_shape(s).collect::<Vec<_>>())
            .collect()
    }
}

fn unpack_digit(mut v: u32, deg: usize, f: &FieldSpec) -> Poly {
    let q = f.q();
    let coeffs = (0..deg)
        .map(|_| {
            let c = v % q;
            v /= q;
            f.element(c).expect("below q")
        })
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Every cover over `field` with invariant exactly `m`, in enumeration order.
/// Empty for `m < 2`.
pub fn enumerate_covers(field: &FieldSpec, m: u32, include_infinity: bool) -> Vec<ASCover> {
    if m < 2 {
        return Vec::new();
    }
    AsEnumerator::new(field, m).covers(m, include_infinity)
}
