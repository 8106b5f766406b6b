//! Factorization over `F_q` and squarefree tests.
//!
//! Squarefree decomposition, then distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a fixed-seed RNG.
//! The output is sorted, so it does not depend on the random choices.

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FieldSpec;
use super::irreducible::Place;
use super::poly::{MonicPoly, Poly};

/// Factors a monic polynomial into places with multiplicities, sorted by place.
pub fn factor(m: &MonicPoly, f: &FieldSpec) -> Vec<(Place, u32)> {
    let mut out: Vec<(Place, u32)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    for (part, mult) in squarefree_decomposition(m.as_poly(), f) {
        for (block, d) in distinct_degree(&part, f) {
            for irr in equal_degree(&block, d, f, &mut rng) {
                out.push((Place::new_unchecked(MonicPoly::new(irr).expect("monic")), mult));
            }
        }
    }
    out.sort();
    // Squarefree parts are pairwise coprime, so places never repeat.
    debug_assert!(out.windows(2).all(|w| w[0].0 != w[1].0));
    out
}

/// Number of distinct places dividing `m`.
pub fn omega(m: &MonicPoly, f: &FieldSpec) -> usize {
    factor(m, f).len()
}

/// Authoritative squarefree test through the factorization.
pub fn is_squarefree(m: &MonicPoly, f: &FieldSpec) -> bool {
    factor(m, f).iter().all(|&(_, e)| e < 2)
}

/// The `gcd(f, f')` shortcut. Agrees with [`is_squarefree`]: in
/// characteristic `p` a vanishing derivative gives `gcd = f`, which is
/// non-trivial for positive degree.
pub fn is_squarefree_gcd(m: &MonicPoly, f: &FieldSpec) -> bool {
    let p = m.as_poly();
    p.gcd(&p.derivative(f), f).is_one()
}

/// No place divides `m` with multiplicity `>= n`.
pub fn is_nth_power_free(m: &MonicPoly, n: u32, f: &FieldSpec) -> bool {
    factor(m, f).iter().all(|&(_, e)| e < n)
}

/// Writes a monic `g` as `prod s_i^{e_i}` with squarefree, pairwise coprime
/// `s_i`. Returns `(s_i, e_i)` with `s_i != 1`.
pub fn squarefree_decomposition(g: &Poly, f: &FieldSpec) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sff(g, 1, f, &mut out);
    out
}

fn sff(g: &Poly, scale: u32, f: &FieldSpec, out: &mut Vec<(Poly, u32)>) {
    if g.degree().unwrap_or(0) == 0 {
        return;
    }
    let mut c = g.gcd(&g.derivative(f), f);
    let mut w = g.div_exact(&c, f).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, f);
        let fac = w.div_exact(&y, f).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w, f).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: take the root coefficientwise.
        let p = f.p() as usize;
        let root = Poly::from_coeffs(
            c.coeffs()
                .iter()
                .step_by(p)
                .map(|&a| f.pth_root(a))
                .collect(),
        );
        sff(&root, scale * f.p(), f, out);
    }
}

/// Splits a squarefree monic polynomial into `(product of all its
/// irreducible factors of degree d, d)`.
fn distinct_degree(g: &Poly, f: &FieldSpec) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let q = BigUint::from(f.q());
    let x = Poly::x();
    let mut rest = g.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&q, &rest, f).expect("nonzero modulus");
        let t = h.sub(&x, f).gcd(&rest, f);
        if !t.is_one() {
            rest = rest.div_exact(&t, f).expect("gcd divides");
            h = h.rem(&rest, f).expect("nonzero modulus");
            out.push((t, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    out
}

fn random_poly(deg_bound: usize, f: &FieldSpec, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs(
        (0..deg_bound)
            .map(|_| f.element(rng.next_u32() % f.q()).expect("below q"))
            .collect(),
    )
}

/// Splits a product of distinct irreducibles of degree `d` into its factors.
fn equal_degree(g: &Poly, d: usize, f: &FieldSpec, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = g.degree().expect("nonzero");
    if n == d {
        return vec![g.clone()];
    }
    let qd = BigUint::from(f.q()).pow(d as u32);
    loop {
        let a = random_poly(n, f, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // Trace to F_2 of a in F_q[x]/(g) restricted to F_{q^d}.
            let mut acc = Poly::zero();
            let mut cur = a.rem(g, f).expect("nonzero");
            for _ in 0..(f.k() as usize * d) {
                acc = acc.add(&cur, f);
                cur = cur.mul(&cur, f).rem(g, f).expect("nonzero");
            }
            acc
        } else {
            let e: BigUint = (&qd - 1u32) / 2u32;
            a.pow_mod(&e, g, f)
                .expect("nonzero")
                .sub(&Poly::one(), f)
        };
        let h = b.gcd(g, f);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = g.div_exact(&h, f).expect("gcd divides");
            let mut out = equal_degree(&h, d, f, rng);
            out.extend(equal_degree(&other, d, f, rng));
            return out;
        }
    }
}

/// `prod Q^e` for a factor list.
pub fn expand(factors: &[(Place, u32)], f: &FieldSpec) -> MonicPoly {
    factors
        .iter()
        .fold(MonicPoly::one(), |acc, (q, e)| acc.mul(&q.poly().pow(*e, f), f))
}
