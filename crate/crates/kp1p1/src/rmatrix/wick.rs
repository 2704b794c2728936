//! Gaussian-moment expansion of the oscillatory integral around a critical point.
//!
//! Work in the scaled variables `x_i = x_i^c (1 + eta_i)`, `i = 0, 1, 2`, with `x_3`, `x_4`
//! eliminated through the charge relations. Then every Taylor coefficient
//! `x^I d^I W` is a polynomial in `M`, `L`:
//!
//! `x^I d^I W = x3 prod (a_i)_(m_i) + x4 prod (b_i)_(m_i) + [single index] c_i (-1)^(m-1) (m-1)!`
//!
//! with `a = (1, 1, -1)`, `b = (1/2, 1/2, 0)`, `c = (lambda - mu, -lambda - mu, 2 mu)`,
//! `x3 = L + mu`, `x4 = -2 (M + L)` and `(a)_(m)` the falling factorial. The covariance is
//! the inverse scaled Hessian, whose determinant is `-2 N`, so moments are
//! polynomials in `M`, `L` over powers of `N`.

use crate::canonical::SectorFn;
use crate::error::{Error, Result};
use crate::exactseries::scalar::{factorial, int, Scalar};
use crate::exactseries::Poly2;
use crate::frobenius::Params;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};

type Mono = [u32; 3];
/// Polynomial in `eta_0, eta_1, eta_2` with coefficients in `Q[M, L]`.
type EtaPoly = BTreeMap<Mono, Poly2>;

fn add_into(p: &mut EtaPoly, k: Mono, c: Poly2) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(k).or_insert_with(Poly2::zero);
    *e = &*e + &c;
    if e.is_zero() {
        p.remove(&k);
    }
}

fn mul(a: &EtaPoly, b: &EtaPoly) -> EtaPoly {
    let mut out = EtaPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_into(&mut out, [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]], ca * cb);
        }
    }
    out
}

fn falling(a: &Scalar, m: u32) -> Scalar {
    (0..m).fold(Scalar::one(), |acc, j| acc * (a - int(j as i64)))
}

/// The restricted potential in scaled coordinates, with its critical point in a sector
/// left symbolic through `M`, `L`.
#[derive(Clone, Debug)]
pub struct LgPotential {
    pub params: Params,
    a: [Scalar; 3],
    b: [Scalar; 3],
    c: [Scalar; 3],
    x3: Poly2,
    x4: Poly2,
}

impl LgPotential {
    pub fn new(p: &Params) -> Self {
        let (l, m) = (p.lambda.clone(), p.mu.clone());
        let half = Scalar::new(1.into(), 2.into());
        LgPotential {
            params: p.clone(),
            a: [int(1), int(1), int(-1)],
            b: [half.clone(), half, int(0)],
            c: [&l - &m, -&l - &m, &m * int(2)],
            x3: Poly2::linear(int(0), int(1), m.clone()),
            x4: Poly2::linear(int(-2), int(-2), int(0)),
        }
    }

    /// Critical values of all five coordinates as polynomials in `M`, `L`.
    pub fn critical_point(&self) -> [Poly2; 5] {
        let p = &self.params;
        [
            Poly2::linear(int(1), int(0), -p.lambda.clone()),
            Poly2::linear(int(1), int(0), p.lambda.clone()),
            Poly2::linear(int(0), int(1), -p.mu.clone()),
            self.x3.clone(),
            self.x4.clone(),
        ]
    }

    /// `x_i d_i W` at the critical point, which must vanish identically.
    pub fn gradient(&self) -> [Poly2; 3] {
        let x = self.critical_point();
        std::array::from_fn(|i| {
            let mut g = &x[i] + &self.x3.scale(&self.a[i]);
            g = &g + &self.x4.scale(&self.b[i]);
            &g + &Poly2::constant(self.c[i].clone())
        })
    }

    /// `x^m d^m W` for a multi-index with `|m| >= 2`.
    pub fn derivative(&self, m: Mono) -> Poly2 {
        let fa = m.iter().zip(&self.a).fold(Scalar::one(), |acc, (&k, a)| acc * falling(a, k));
        let fb = m.iter().zip(&self.b).fold(Scalar::one(), |acc, (&k, b)| acc * falling(b, k));
        let mut w = &self.x3.scale(&fa) + &self.x4.scale(&fb);
        let nz: Vec<usize> = (0..3).filter(|&i| m[i] > 0).collect();
        if nz.len() == 1 {
            let i = nz[0];
            let k = m[i];
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            let v = &self.c[i] * sign * Scalar::from_integer(factorial(k - 1));
            w = &w + &Poly2::constant(v);
        }
        w
    }

    pub fn hessian(&self) -> [[Poly2; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut m = [0; 3];
                m[i] += 1;
                m[j] += 1;
                self.derivative(m)
            })
        })
    }
}

fn det3(h: &[[Poly2; 3]; 3]) -> Poly2 {
    let t0 = &h[0][0] * &(&(&h[1][1] * &h[2][2]) - &(&h[1][2] * &h[2][1]));
    let t1 = &h[0][1] * &(&(&h[1][0] * &h[2][2]) - &(&h[1][2] * &h[2][0]));
    let t2 = &h[0][2] * &(&(&h[1][0] * &h[2][1]) - &(&h[1][1] * &h[2][0]));
    &(&t0 - &t1) + &t2
}

fn adjugate(h: &[[Poly2; 3]; 3]) -> [[Poly2; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // Cofactor of (j, i).
            let r: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let minor = &(&h[r[0]][c[0]] * &h[r[1]][c[1]]) - &(&h[r[0]][c[1]] * &h[r[1]][c[0]]);
            if (i + j) % 2 == 0 { minor } else { -&minor }
        })
    })
}

/// Gaussian moments scaled by `det^(|m|/2)`: polynomials in the adjugate entries.
struct Moments {
    adj: [[Poly2; 3]; 3],
    memo: HashMap<Mono, Poly2>,
}

impl Moments {
    fn get(&mut self, m: Mono) -> Poly2 {
        let total: u32 = m.iter().sum();
        if total % 2 == 1 {
            return Poly2::zero();
        }
        if total == 0 {
            return Poly2::one();
        }
        if let Some(v) = self.memo.get(&m) {
            return v.clone();
        }
        // Peel one factor eta_i and pair it with every remaining factor.
        let i = (0..3).find(|&i| m[i] > 0).unwrap();
        let mut rest = m;
        rest[i] -= 1;
        let mut acc = Poly2::zero();
        for j in 0..3 {
            if rest[j] == 0 {
                continue;
            }
            let mut r = rest;
            r[j] -= 1;
            let sub = self.get(r);
            acc = &acc + &(&self.adj[i][j] * &sub).scale(&int(rest[j] as i64));
        }
        self.memo.insert(m, acc.clone());
        acc
    }
}

/// `(R_k)_1` for `k = 0..=kmax`, exact in `M`, `L`; entry `k` has denominator `N^(3k)`.
pub fn wick_r1(p: &Params, kmax: u32) -> Result<Vec<SectorFn>> {
    let w = LgPotential::new(p);
    let h = w.hessian();
    let det = det3(&h);
    let n_poly = crate::canonical::sectorfn::n_poly(p);
    if det != n_poly.scale(&int(-2)) {
        return Err(Error::Other("scaled Hessian determinant differs from -2 N".into()));
    }
    let tmax = 2 * kmax;
    // S_j: coefficient of t^j in sum_{k>=3} t^(k-2) V_k / k!, i.e. degree j + 2 Taylor terms.
    let mut s: Vec<EtaPoly> = vec![EtaPoly::new(); tmax as usize + 1];
    for j in 1..=tmax {
        let k = j + 2;
        for a in 0..=k {
            for b in 0..=(k - a) {
                let m = [a, b, k - a - b];
                let denom: Scalar = m.iter().fold(Scalar::one(), |acc, &x| acc * Scalar::from_integer(factorial(x)));
                add_into(&mut s[j as usize], m, w.derivative(m).scale(&denom.recip()));
            }
        }
    }
    // E = exp(-S) through t E' = -(t S') E.
    let mut e: Vec<EtaPoly> = vec![EtaPoly::new(); tmax as usize + 1];
    e[0].insert([0, 0, 0], Poly2::one());
    for n in 1..=tmax as usize {
        let mut acc = EtaPoly::new();
        for j in 1..=n {
            for (k, c) in mul(&s[j], &e[n - j]) {
                add_into(&mut acc, k, c.scale(&int(-(j as i64))));
            }
        }
        let inv = Scalar::new(1.into(), (n as i64).into());
        e[n] = acc.into_iter().map(|(k, c)| (k, c.scale(&inv))).collect();
    }
    // External legs: prod_i 1/(1 + t eta_i); the t^n part is (-1)^n h_n(eta).
    let mut f: Vec<EtaPoly> = vec![EtaPoly::new(); tmax as usize + 1];
    for n in 0..=tmax {
        for l in 0..=(tmax - n) {
            let sign = if l % 2 == 0 { int(1) } else { int(-1) };
            let mut leg = EtaPoly::new();
            for a in 0..=l {
                for b in 0..=(l - a) {
                    leg.insert([a, b, l - a - b], Poly2::constant(sign.clone()));
                }
            }
            for (k, c) in mul(&e[n as usize], &leg) {
                add_into(&mut f[(n + l) as usize], k, c);
            }
        }
    }
    let mut moments = Moments { adj: adjugate(&h), memo: HashMap::new() };
    let mut out = Vec::new();
    for tp in 0..=tmax {
        if tp % 2 == 1 {
            // Odd powers of sqrt(-z) carry odd total degree and must average to zero.
            let mut acc = Poly2::zero();
            for (m, c) in &f[tp as usize] {
                acc = &acc + &(c * &moments.get(*m));
            }
            if !acc.is_zero() {
                return Err(Error::Other(format!("half-integer power t^{tp} survives")));
            }
            continue;
        }
        let k = tp / 2;
        let top = 3 * k;
        let mut num = Poly2::zero();
        for (m, c) in &f[tp as usize] {
            let half: u32 = m.iter().sum::<u32>() / 2;
            if half > top {
                return Err(Error::Other(format!("moment order {half} exceeds {top}")));
            }
            num = &num + &(&(c * &moments.get(*m)) * &det.pow(top - half));
        }
        // det^(3k) = (-2)^(3k) N^(3k); the sign (-1)^k converts t^(2k) to z^k.
        let mut scale = Scalar::one() / crate::exactseries::scalar::pow(&int(-2), top);
        if k % 2 == 1 {
            scale = -scale;
        }
        out.push(SectorFn::new(num.scale(&scale), top));
    }
    Ok(out)
}

/// The closed form of `(R_1)_1` printed with five Feynman diagrams.
pub fn example_r1(p: &Params) -> SectorFn {
    let (l2, m2) = (p.l2(), p.m2());
    let third = Scalar::new(1.into(), 3.into());
    let (mm, ll) = (Poly2::m(), Poly2::l());
    let q = [
        ll.scale(&(&l2 * &l2 * &third)),
        mm.scale(&(&m2 * &m2 * &third)),
        (&(&ll * &ll) * &mm).scale(&l2),
        (&(&mm * &mm) * &ll).scale(&m2),
        ll.scale(&(&l2 * &m2 * int(-2))),
        mm.scale(&(&l2 * &m2 * int(-2))),
    ]
    .iter()
    .fold(Poly2::zero(), |acc, t| &acc + t);
    let n = crate::canonical::sectorfn::n_poly(p);
    let diff = &l2 - &m2;
    let num = &(&n * &q).scale(&int(9)) - &Poly2::constant(int(5) * &l2 * &m2 * &diff * &diff);
    SectorFn::new(num.scale(&Scalar::new(1.into(), 48.into())), 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalFrame;
    use crate::exactseries::scalar::frac;
    use crate::frobenius::Sector;

    fn p() -> Params {
        Params::from_ints(3, 5).unwrap()
    }

    #[test]
    fn critical_point_and_hessian() {
        let w = LgPotential::new(&p());
        assert!(w.gradient().iter().all(|g| g.is_zero()));
        let n = crate::canonical::sectorfn::n_poly(&p());
        assert_eq!(det3(&w.hessian()), n.scale(&int(-2)));
    }

    #[test]
    fn first_correction_matches_closed_form() {
        for (l, m) in [(3, 5), (2, 9), (-7, 4)] {
            let p = Params::from_ints(l, m).unwrap();
            let r = wick_r1(&p, 1).unwrap();
            assert_eq!(r[0], SectorFn::poly(Poly2::one()));
            assert_eq!(r[1], example_r1(&p), "({l},{m})");
        }
    }

    #[test]
    fn value_at_origin() {
        let p = p();
        let r = wick_r1(&p, 1).unwrap();
        let f = CanonicalFrame::new(&p, Sector::new(0, 0), 2).unwrap();
        // -(l^2 + l m + m^2) / (24 l m (l + m)) at (3, 5).
        assert_eq!(r[1].eval_at_origin(&f), frac(-49, 2880));
    }

    #[test]
    fn numerator_degrees() {
        let r = wick_r1(&p(), 2).unwrap();
        for (k, f) in r.iter().enumerate().skip(1) {
            assert_eq!(f.npow, 3 * k as u32);
            assert!(f.num.degree().unwrap() <= 8 * k as u32);
        }
    }
}
