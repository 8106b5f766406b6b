//! Counting squarefree coprime tuples and superelliptic covers.
//!
//! `F_e` is the set of tuples `(F_1, ..., F_r)` of monic squarefree pairwise
//! coprime polynomials with `deg F_i = e_i`. The Dirichlet coefficients
//! `a(m) = sum_{|e| = m} |F_e|` are computed three ways:
//!
//! 1. walking the tuples directly,
//! 2. summing `(n-1)^{omega(H)}` over squarefree `H` of degree `m`,
//! 3. reading coefficients off `prod_d (1 + (n-1) T^d)^{N_d}`.
//!
//! Cover tables are indexed by the number of branch points
//! `m = |e| + epsilon(e)` instead, and are built from the individual `|F_e|`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::cover::{a_number_from, branch_count, check_n, ordinary_by_degrees, SECover};
use crate::census::{CensusRow, CensusSource, CensusTable};
use crate::dirichlet::{l_constant, zeta2, CoeffSeries, Real};
use crate::error::{domain, guard, invariant, Result};
use crate::poly_fq::{
    count_irreducibles, enumerate_monic, is_squarefree, omega, prime_power, FieldSpec, MonicPoly,
};

/// Largest number of tuples the enumeration routes will visit.
pub const TUPLE_LIMIT: u128 = 1 << 24;

const FAMILY: &str = "superelliptic";

/// Counts `|F_e|` keyed by the degree tuple.
pub type TupleCounts = BTreeMap<Vec<usize>, BigUint>;

fn check_q(q: u64, n: u32) -> Result<u32> {
    let (p, _) = prime_power(q).ok_or_else(|| crate::Error::Domain(format!("bad q = {q}")))?;
    check_n(n)?;
    if p == n {
        return domain(format!("n = {n} equals the characteristic"));
    }
    Ok(p)
}

fn squarefree_by_degree(f: &FieldSpec, d_max: usize) -> Vec<Vec<MonicPoly>> {
    (0..=d_max)
        .map(|d| enumerate_monic(f, d).filter(|m| is_squarefree(m, f)).collect())
        .collect()
}

/// Total number of tuples with `|e| <= total`, from route 3. Used to size
/// the enumeration guards.
fn enumeration_size(q: u64, n: u32, total: u32) -> Result<u128> {
    let a = dirichlet_coefficients(q, n, total)?;
    let s: BigUint = a.iter().sum();
    Ok(s.to_u128().unwrap_or(u128::MAX))
}

struct TupleWalk<'a> {
    f: &'a FieldSpec,
    sf: &'a [Vec<MonicPoly>],
    r: usize,
}

impl TupleWalk<'_> {
    fn walk(
        &self,
        i: usize,
        remaining: usize,
        product: &MonicPoly,
        degs: &mut Vec<usize>,
        out: &mut BTreeMap<Vec<usize>, u64>,
    ) {
        if i == self.r {
            *out.entry(degs.clone()).or_default() += 1;
            return;
        }
        for d in 0..=remaining {
            degs.push(d);
            for g in &self.sf[d] {
                if product.gcd(g, self.f).is_one() {
                    let next = product.mul(g, self.f);
                    self.walk(i + 1, remaining - d, &next, degs, out);
                }
            }
            degs.pop();
        }
    }
}

/// `|F_e|` for every `e` with `|e| <= total`, by enumeration; `r = n - 1`
/// parts. Parallel over the choice of `F_1`.
pub fn enumerate_tuple_counts(f: &FieldSpec, r: usize, total: u32) -> Result<TupleCounts> {
    if r == 0 {
        return domain("tuple families need at least one part");
    }
    let total = total as usize;
    let sf = squarefree_by_degree(f, total);
    let walk = TupleWalk { f, sf: &sf, r };
    let firsts: Vec<(usize, &MonicPoly)> = (0..=total)
        .flat_map(|d| sf[d].iter().map(move |g| (d, g)))
        .collect();
    let merged = firsts
        .par_iter()
        .map(|&(d, g)| {
            let mut out = BTreeMap::new();
            let mut degs = vec![d];
            walk.walk(1, total - d, g, &mut degs, &mut out);
            out
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(merged.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect())
}

/// Every cover `y^n = prod f_i^i` over `f` with `2 <= m <= m_max` branch
/// points, ordered by `F_1`'s degree and index first.
pub fn enumerate_se_covers(f: &FieldSpec, n: u32, m_max: u32) -> Result<Vec<SECover>> {
    check_q(f.q() as u64, n)?;
    guard(
        "tuple enumeration size",
        enumeration_size(f.q() as u64, n, m_max)?,
        TUPLE_LIMIT,
    )?;
    let r = n as usize - 1;
    let sf = squarefree_by_degree(f, m_max as usize);
    fn rec(
        f: &FieldSpec,
        sf: &[Vec<MonicPoly>],
        r: usize,
        remaining: usize,
        product: &MonicPoly,
        parts: &mut Vec<MonicPoly>,
        out: &mut Vec<Vec<MonicPoly>>,
    ) {
        if parts.len() == r {
            out.push(parts.clone());
            return;
        }
        for d in 0..=remaining {
            for g in &sf[d] {
                if product.gcd(g, f).is_one() {
                    parts.push(g.clone());
                    rec(f, sf, r, remaining - d, &product.mul(g, f), parts, out);
                    parts.pop();
                }
            }
        }
    }
    let mut tuples = Vec::new();
    rec(f, &sf, r, m_max as usize, &MonicPoly::one(), &mut vec![], &mut tuples);
    Ok(tuples
        .into_iter()
        .map(|parts| SECover::new_unchecked(f.clone(), n, parts))
        .filter(|c| (2..=m_max as u64).contains(&c.m()))
        .collect())
}

/// `|F_e|` by enumeration of tuples with exactly these degrees.
pub fn count_tuple_family(f: &FieldSpec, e: &[usize]) -> Result<BigUint> {
    if e.is_empty() {
        return domain("tuple families need at least one part");
    }
    let total: usize = e.iter().sum();
    let q = f.q() as u128;
    let requested = e.iter().fold(1u128, |acc, &d| {
        acc.saturating_mul(q.saturating_pow(d as u32))
    });
    guard("tuple enumeration size prod q^e_i", requested, TUPLE_LIMIT)?;
    let sf = squarefree_by_degree(f, total);
    fn rec(f: &FieldSpec, sf: &[Vec<MonicPoly>], e: &[usize], product: &MonicPoly) -> u64 {
        match e.split_first() {
            None => 1,
            Some((&d, rest)) => sf[d]
                .iter()
                .filter(|g| product.gcd(g, f).is_one())
                .map(|g| rec(f, sf, rest, &product.mul(g, f)))
                .sum(),
        }
    }
    Ok(BigUint::from(rec(f, &sf, e, &MonicPoly::one())))
}

/// `|F_e|` for every `e` with `r` parts and `|e| <= total`, from the
/// multivariate product `prod_Q (1 + sum_i x_i^{deg Q})`.
pub fn tuple_counts_gf(q: u64, r: usize, total: u32) -> Result<TupleCounts> {
    prime_power(q).ok_or_else(|| crate::Error::Domain(format!("bad q = {q}")))?;
    if r == 0 {
        return domain("tuple families need at least one part");
    }
    let total = total as usize;
    let mut acc: TupleCounts = BTreeMap::new();
    acc.insert(vec![0; r], BigUint::one());
    for d in 1..=total {
        let places = count_irreducibles(q, d as u64);
        let max_s = total / d;
        // C(N_d, s) for s <= max_s
        let mut binom = vec![BigUint::one()];
        for s in 1..=max_s {
            let prev = binom[s - 1].clone();
            let top = if places >= BigUint::from(s) {
                &places - BigUint::from(s - 1)
            } else {
                BigUint::zero()
            };
            binom.push(prev * top / BigUint::from(s));
        }
        // Vectors c with sum s and their multinomial s!/prod c_i!
        let mut by_sum: Vec<Vec<(Vec<usize>, BigUint)>> = vec![Vec::new(); max_s + 1];
        compositions(r, max_s, &mut vec![], &mut by_sum);
        let mut next: TupleCounts = BTreeMap::new();
        for (e, cnt) in &acc {
            let used: usize = e.iter().sum();
            let room = (total - used) / d;
            for (s, terms) in by_sum.iter().enumerate().take(room + 1) {
                if binom[s].is_zero() {
                    continue;
                }
                for (c, multi) in terms {
                    let key: Vec<usize> = e.iter().zip(c).map(|(a, b)| a + d * b).collect();
                    *next.entry(key).or_default() += cnt * &binom[s] * multi;
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

fn compositions(
    r: usize,
    max_s: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<(Vec<usize>, BigUint)>>,
) {
    let used: usize = cur.iter().sum();
    if cur.len() == r {
        let multi = factorial(used) / cur.iter().map(|&c| factorial(c)).product::<BigUint>();
        out[used].push((cur.clone(), multi));
        return;
    }
    for c in 0..=(max_s - used) {
        cur.push(c);
        compositions(r, max_s, cur, out);
        cur.pop();
    }
}

/// Route 3: `a(m)` for `0 <= m <= m_max` from `prod_Q (1 + (n-1)|Q|^{-s})`.
pub fn dirichlet_coefficients(q: u64, n: u32, m_max: u32) -> Result<Vec<BigUint>> {
    check_q(q, n)?;
    let order = m_max as usize;
    let weight = BigRational::from_integer((n as i64 - 1).into());
    let mut z = CoeffSeries::one(q, order);
    for d in 1..=order {
        let local = CoeffSeries::one(q, order)
            .add(&CoeffSeries::monomial(q, weight.clone(), d, order))?;
        z = z.multiply(&local.pow_big(&count_irreducibles(q, d as u64))?, order)?;
    }
    z.to_integers()?
        .into_iter()
        .map(|c| {
            c.to_biguint()
                .ok_or_else(|| crate::Error::Invariant("negative Dirichlet coefficient".into()))
        })
        .collect()
}

/// Route 2: `sum_{H squarefree, deg H = m} (n-1)^{omega(H)}` for `m <= m_max`.
pub fn omega_route(f: &FieldSpec, n: u32, m_max: u32) -> Result<Vec<BigUint>> {
    check_q(f.q() as u64, n)?;
    let monics: u128 = (0..=m_max).map(|m| (f.q() as u128).saturating_pow(m)).sum();
    guard("squarefree sweep size sum q^m", monics, TUPLE_LIMIT)?;
    Ok((0..=m_max as usize)
        .map(|m| {
            enumerate_monic(f, m)
                .collect::<Vec<_>>()
                .par_iter()
                .filter(|h| is_squarefree(h, f))
                .map(|h| BigUint::from(n - 1).pow(omega(h, f) as u32))
                .sum()
        })
        .collect())
}

/// Route 1: `a(m)` by walking the tuples.
pub fn tuple_route(f: &FieldSpec, n: u32, m_max: u32) -> Result<Vec<BigUint>> {
    check_q(f.q() as u64, n)?;
    guard(
        "tuple enumeration size",
        enumeration_size(f.q() as u64, n, m_max)?,
        TUPLE_LIMIT,
    )?;
    let counts = enumerate_tuple_counts(f, n as usize - 1, m_max)?;
    let mut a = vec![BigUint::zero(); m_max as usize + 1];
    for (e, c) in counts {
        a[e.iter().sum::<usize>()] += c;
    }
    Ok(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteRow {
    pub m: u32,
    #[serde(serialize_with = "decimal")]
    pub tuples: BigUint,
    #[serde(serialize_with = "decimal")]
    pub omega: BigUint,
    #[serde(serialize_with = "decimal")]
    pub euler: BigUint,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteComparison {
    pub q: u64,
    pub n: u32,
    pub rows: Vec<RouteRow>,
    pub agree: bool,
}

/// All three `a(m)` routes side by side.
pub fn compare_routes(f: &FieldSpec, n: u32, m_max: u32) -> Result<RouteComparison> {
    let q = f.q() as u64;
    let t = tuple_route(f, n, m_max)?;
    let w = omega_route(f, n, m_max)?;
    let e = dirichlet_coefficients(q, n, m_max)?;
    let rows: Vec<RouteRow> = (0..=m_max as usize)
        .map(|m| RouteRow {
            m: m as u32,
            tuples: t[m].clone(),
            omega: w[m].clone(),
            euler: e[m].clone(),
        })
        .collect();
    let agree = rows.iter().all(|r| r.tuples == r.omega && r.omega == r.euler);
    Ok(RouteComparison { q, n, rows, agree })
}

/// Covers and ordinary covers per branch-point count from per-tuple counts.
fn cover_rows(
    n: u32,
    m_max: u32,
    counts: &TupleCounts,
    ordinary: impl Fn(&[usize]) -> Result<bool>,
) -> Result<Vec<CensusRow>> {
    let mut a = vec![BigUint::zero(); m_max as usize + 1];
    let mut b = vec![BigUint::zero(); m_max as usize + 1];
    for (e, c) in counts {
        let m = branch_count(n, e) as usize;
        if m > m_max as usize {
            continue;
        }
        a[m] += c;
        if ordinary(e)? {
            b[m] += c;
        }
    }
    Ok((0..=m_max as usize)
        .map(|m| CensusRow {
            m: m as u32,
            a: a[m].clone(),
            b: b[m].clone(),
        })
        .collect())
}

/// Cover census for `0 <= m <= m_max` branch points. Counts come from the
/// generating function and ordinarity from the degree-symmetry criterion.
/// The `m = 0` row is the empty tuple, counted as ordinary.
pub fn census_se_analytic(q: u64, n: u32, m_max: u32) -> Result<CensusTable> {
    check_q(q, n)?;
    let counts = tuple_counts_gf(q, n as usize - 1, m_max)?;
    let rows = cover_rows(n, m_max, &counts, |e| Ok(ordinary_by_degrees(n, e)))?;
    CensusTable::new(FAMILY, q, n, CensusSource::Analytic, rows)
}

/// Same table from enumerated tuples, with ordinarity decided by the
/// a-number in characteristic 2 and by the degree criterion otherwise.
pub fn census_se_enumerated(f: &FieldSpec, n: u32, m_max: u32) -> Result<CensusTable> {
    let q = f.q() as u64;
    let p = check_q(q, n)?;
    guard(
        "tuple enumeration size",
        enumeration_size(q, n, m_max)?,
        TUPLE_LIMIT,
    )?;
    let counts = enumerate_tuple_counts(f, n as usize - 1, m_max)?;
    let rows = cover_rows(n, m_max, &counts, |e| {
        if branch_count(n, e) < 2 || p != 2 {
            Ok(ordinary_by_degrees(n, e))
        } else {
            Ok(a_number_from(n, p, e)? == 0)
        }
    })?;
    CensusTable::new(FAMILY, q, n, CensusSource::Enumerated, rows)
}

/// Ordinary counts built constructively: symmetric tuples plus, for each
/// `i`, the tuples with `e_{n-i} = e_i + 1` and all other pairs symmetric.
pub fn ordinary_counts_constructive(q: u64, n: u32, m_max: u32) -> Result<Vec<BigUint>> {
    check_q(q, n)?;
    let counts = tuple_counts_gf(q, n as usize - 1, m_max)?;
    let half = (n as usize - 1) / 2;
    let mut b = vec![BigUint::zero(); m_max as usize + 1];
    let get = |e: &[usize]| counts.get(e).cloned().unwrap_or_default();
    let mut halves: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..half {
        halves = halves
            .into_iter()
            .flat_map(|h| {
                (0..=m_max as usize).map(move |v| {
                    let mut h = h.clone();
                    h.push(v);
                    h
                })
            })
            .filter(|h| 2 * h.iter().sum::<usize>() <= m_max as usize + 1)
            .collect();
    }
    let full = |h: &[usize]| -> Vec<usize> {
        let mut e = h.to_vec();
        e.extend(h.iter().rev());
        e
    };
    for h in &halves {
        let base = full(h);
        let m = 2 * h.iter().sum::<usize>();
        if m <= m_max as usize {
            b[m] += get(&base);
        }
        // Ramified at infinity with n_inf = i: e_{n-i} = e_i + 1; m = |e| + 1.
        if m + 2 <= m_max as usize {
            for i in 1..n as usize {
                let mut e = base.clone();
                e[n as usize - i - 1] += 1;
                b[m + 2] += get(&e);
            }
        }
    }
    Ok(b)
}

/// Cumulative ordinary share `sum_{m' <= m} b / sum_{m' <= m} a` for every
/// `m` from 2 to `m_max`.
pub fn ordinary_ratio_se(q: u64, n: u32, m_max: u32) -> Result<Vec<(u32, f64)>> {
    let t = census_se_analytic(q, n, m_max)?;
    (2..=m_max)
        .map(|m| {
            t.cumulative_ratio(m)
                .map(|r| (m, r))
                .ok_or_else(|| crate::Error::Domain(format!("no covers up to m = {m}")))
        })
        .collect()
}

/// Scaled trend `ratio * log(q^m)^{(n-1)/2}` alongside the raw ratios.
#[derive(Clone, Debug, Serialize)]
pub struct TrendPoint {
    pub m: u32,
    pub ratio: f64,
    pub scaled: f64,
}

pub fn ordinary_trend_se(q: u64, n: u32, m_max: u32) -> Result<Vec<TrendPoint>> {
    let power = (n as i32 - 1) / 2;
    Ok(ordinary_ratio_se(q, n, m_max)?
        .into_iter()
        .map(|(m, ratio)| TrendPoint {
            m,
            ratio,
            scaled: ratio * (m as f64 * (q as f64).ln()).powi(power),
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct BdflReport {
    pub q: u64,
    pub e1: usize,
    pub e2: usize,
    pub count: String,
    pub ratio: f64,
}

/// `|F_{e1,e2}| zeta(2)^2 / (L_1 q^{e1+e2})`, reported without a tolerance.
pub fn bdfl_ratio_report(q: u64, e1: usize, e2: usize) -> Result<BdflReport> {
    check_q(q, 3)?;
    let counts = tuple_counts_gf(q, 2, (e1 + e2) as u32)?;
    let count = counts
        .get(&vec![e1, e2])
        .cloned()
        .ok_or_else(|| crate::Error::Invariant(format!("missing tuple ({e1},{e2})")))?;
    let z = zeta2(q);
    let l1 = l_constant(q, 3)?;
    let num = Real::from_biguint(&count).mul(&z).mul(&z);
    let den = l1.value.mul(&Real::from_u64(q).powi(e1 + e2));
    Ok(BdflReport {
        q,
        e1,
        e2,
        count: count.to_string(),
        ratio: num.div(&den).to_f64(),
    })
}

/// Number of ordered factorizations `H = F_1 ... F_r` into pairwise coprime
/// monic parts, by walking divisor assignments of the factorization.
pub fn ordered_coprime_factorizations(h: &MonicPoly, r: usize, f: &FieldSpec) -> Result<u64> {
    if !is_squarefree(h, f) {
        return domain(format!("{h} is not squarefree"));
    }
    let d = h.degree();
    fn rec(h: &MonicPoly, left: usize, d: usize, f: &FieldSpec) -> u64 {
        if left == 1 {
            return 1;
        }
        let mut total = 0;
        for k in 0..=d {
            for g in enumerate_monic(f, k) {
                let prod_ok = h.as_poly().rem(g.as_poly(), f).expect("monic").is_zero();
                if prod_ok {
                    let rest = MonicPoly::new(h.as_poly().div_exact(g.as_poly(), f).expect("divides"))
                        .expect("monic quotient");
                    total += rec(&rest, left - 1, d - k, f);
                }
            }
        }
        total
    }
    if r == 0 {
        return invariant("no parts");
    }
    Ok(rec(h, r, d, f))
}
