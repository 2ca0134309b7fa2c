//! Exact integer polynomials in one and two variables.
//!
//! Just enough commutative algebra for boundary-curve elimination: dense
//! univariate `Poly1` over ℤ, sparse bivariate `Poly2` over ℤ[r, s],
//! pseudo-division and primitive-PRS gcds, Sylvester resultants evaluated
//! by fraction-free (Bareiss) elimination, square-free parts, and rational
//! root isolation. Degrees here are tiny, so clarity wins over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::rat::Q;

fn q_of(c: &BigInt) -> Q {
    Q::from_big(num_rational::BigRational::from_integer(c.clone()))
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

// ---------------------------------------------------------------------------
// univariate

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct Poly1 {
    /// coeffs[k] multiplies x^k; no trailing zeros.
    pub coeffs: Vec<BigInt>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly1::from_i64(&[1])
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly1::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly1::from_coeffs(vec![c])
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_const(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in o.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Poly1::from_coeffs(out)
    }

    pub fn sub(&self, o: &Poly1) -> Poly1 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Poly1 {
        let mut out = Poly1::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        Poly1::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigInt::from(k as i64 + 1))
                .collect(),
        )
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut out = Q::zero();
        for c in self.coeffs.iter().rev() {
            out = out * x.clone() + q_of(c);
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut out = 0.0;
        for c in self.coeffs.iter().rev() {
            out = out * x + big_to_f64(c);
        }
        out
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive(&self) -> Poly1 {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly1::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of self by `d`.
    pub fn pseudo_rem(&self, d: &Poly1) -> Poly1 {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.degree();
        let lead_d = d.lead();
        while !r.is_zero() && r.degree() >= dd {
            let k = (r.degree() - dd) as usize;
            let lead_r = r.lead();
            let mut shifted = vec![BigInt::zero(); k];
            shifted.extend(d.coeffs.iter().map(|c| c * &lead_r));
            r = r.scale(&lead_d).sub(&Poly1::from_coeffs(shifted));
        }
        r
    }

    /// Exact quotient; panics when division is not exact.
    pub fn div_exact(&self, d: &Poly1) -> Poly1 {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Poly1::zero();
        }
        let mut r = self.clone();
        let qlen = (self.degree() - d.degree()).max(0) as usize + 1;
        let mut q = vec![BigInt::zero(); qlen];
        while !r.is_zero() && r.degree() >= d.degree() {
            let k = (r.degree() - d.degree()) as usize;
            let (c, rem) = r.lead().div_rem(&d.lead());
            assert!(rem.is_zero(), "inexact polynomial division");
            q[k] = c.clone();
            let mut shifted = vec![BigInt::zero(); k];
            shifted.extend(d.coeffs.iter().map(|cc| cc * &c));
            r = r.sub(&Poly1::from_coeffs(shifted));
        }
        assert!(r.is_zero(), "inexact polynomial division (remainder)");
        Poly1::from_coeffs(q)
    }

    /// Primitive-PRS gcd, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &Poly1) -> Poly1 {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.is_zero() {
            return normalize_sign1(b);
        }
        if b.is_zero() {
            return normalize_sign1(a);
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        normalize_sign1(a.primitive())
    }

    /// Square-free part (distinct irreducible factors, content dropped).
    pub fn squarefree_part(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        if self.degree() <= 1 {
            return normalize_sign1(self.primitive());
        }
        let g = self.gcd(&self.derivative());
        if g.degree() <= 0 {
            return normalize_sign1(self.primitive());
        }
        normalize_sign1(self.primitive().div_exact(&g).primitive())
    }

    /// Writes the primitive part as `m² · f` with `f` square-free:
    /// returns `(m, f)`. Used to pull square factors out of radicals.
    pub fn sqrt_decompose(&self) -> (Poly1, Poly1) {
        let mut rest = normalize_sign1(self.primitive());
        let mut m = Poly1::one();
        loop {
            if rest.degree() <= 1 {
                break;
            }
            let g = rest.gcd(&rest.derivative());
            if g.degree() <= 0 {
                break;
            }
            // g contains every factor of multiplicity ≥ 2 at least once;
            // the part of g whose square divides rest moves into m
            let sq = g.gcd(&rest.div_exact(&g));
            if sq.degree() <= 0 {
                break;
            }
            m = m.mul(&sq);
            rest = normalize_sign1(rest.div_exact(&sq.pow(2)).primitive());
        }
        (m, rest)
    }

    /// Rational roots with multiplicities (rational root theorem).
    pub fn rational_roots(&self) -> Vec<(Q, u32)> {
        let mut out: Vec<(Q, u32)> = Vec::new();
        if self.is_zero() || self.degree() < 1 {
            return out;
        }
        let trailing_idx = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        if trailing_idx > 0 {
            out.push((Q::zero(), trailing_idx as u32));
        }
        let lead = self.lead().abs();
        let trail = self.coeffs[trailing_idx].abs();
        let pd = small_divisors(&trail);
        let qd = small_divisors(&lead);
        let mut candidates: Vec<Q> = Vec::new();
        for p in &pd {
            for q in &qd {
                let c = Q::new(*p, *q);
                candidates.push(c.clone());
                candidates.push(-&c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if self.eval_q(&c).is_zero() {
                // multiplicity via derivative chain
                let mut mult = 1;
                let mut d = self.derivative();
                while !d.is_zero() && d.eval_q(&c).is_zero() {
                    mult += 1;
                    d = d.derivative();
                }
                out.push((c, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Real roots of the square-free part inside the open interval;
    /// rational roots come back exact.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Vec<RealRoot> {
        let mut out: Vec<RealRoot> = Vec::new();
        if self.is_zero() {
            return out;
        }
        for (r, mult) in self.rational_roots() {
            let v = r.to_f64();
            if v > lo && v < hi {
                out.push(RealRoot {
                    value: v,
                    exact: Some(r),
                    mult,
                });
            }
        }
        let sf = self.squarefree_part();
        let n = 4096;
        let mut prev_x = lo + (hi - lo) * 1e-9;
        let mut prev_v = sf.eval_f64(prev_x);
        for k in 1..=n {
            let x = lo + (hi - lo) * k as f64 / n as f64;
            let v = sf.eval_f64(x);
            if v != 0.0 && prev_v != 0.0 && prev_v.signum() != v.signum() {
                let mut a = prev_x;
                let mut b = x;
                let mut va = prev_v;
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    let vm = sf.eval_f64(mid);
                    if vm == 0.0 {
                        a = mid;
                        b = mid;
                        break;
                    }
                    if vm.signum() == va.signum() {
                        a = mid;
                        va = vm;
                    } else {
                        b = mid;
                    }
                }
                let root = 0.5 * (a + b);
                if !out.iter().any(|r| (r.value - root).abs() < 1e-9) {
                    out.push(RealRoot {
                        value: root,
                        exact: None,
                        mult: 1,
                    });
                }
            }
            prev_x = x;
            prev_v = v;
        }
        out.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub exact: Option<Q>,
    pub mult: u32,
}

fn normalize_sign1(p: Poly1) -> Poly1 {
    if p.lead().is_negative() {
        p.neg()
    } else {
        p
    }
}

fn small_divisors(n: &BigInt) -> Vec<i64> {
    let mut out = vec![1];
    if let Some(v) = n.abs().to_i64() {
        let v = v.max(1);
        let mut d = 1;
        while d * d <= v && d < 1_000_000 {
            if v % d == 0 {
                out.push(d);
                out.push(v / d);
            }
            d += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if k == 1 {
                        write!(f, "r")?;
                    } else {
                        write!(f, "r^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// bivariate

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Poly2 {
    /// (r-degree, s-degree) → coefficient; no zero entries.
    pub terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly2::default();
        if !c.is_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = Poly2::default();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Poly2::default();
        for &(i, j, c) in terms {
            p.add_term(i, j, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_const(&self) -> bool {
        self.terms.keys().all(|k| *k == (0, 0))
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, o: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((i, j), c) in &o.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly2) -> Poly2 {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn pow_n(&self, k: u32) -> Poly2 {
        let mut out = Poly2::constant(BigInt::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn deg_r(&self) -> u32 {
        self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn deg_s(&self) -> u32 {
        self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0)
    }

    pub fn eval_q(&self, r: &Q, s: &Q) -> Q {
        let mut out = Q::zero();
        for ((i, j), c) in &self.terms {
            let mut term = q_of(c);
            for _ in 0..*i {
                term = term * r.clone();
            }
            for _ in 0..*j {
                term = term * s.clone();
            }
            out += term;
        }
        out
    }

    pub fn eval_f64(&self, r: f64, s: f64) -> f64 {
        let mut out = 0.0;
        for ((i, j), c) in &self.terms {
            out += big_to_f64(c) * r.powi(*i as i32) * s.powi(*j as i32);
        }
        out
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive(&self) -> Poly2 {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect(),
        }
    }

    /// Exact division; panics if not divisible.
    pub fn div_exact(&self, d: &Poly2) -> Poly2 {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut out = Poly2::zero();
        let (dk, dc) = rem_lead(d);
        while !rem.is_zero() {
            let (rk, rc) = rem_lead(&rem);
            assert!(
                rk.0 >= dk.0 && rk.1 >= dk.1,
                "inexact bivariate division (monomial)"
            );
            let (qc, qrem) = rc.div_rem(&dc);
            assert!(qrem.is_zero(), "inexact bivariate division (coefficient)");
            let mono = Poly2::monomial(rk.0 - dk.0, rk.1 - dk.1, qc);
            out = out.add(&mono);
            rem = rem.sub(&mono.mul(d));
        }
        out
    }

    /// View as a polynomial in s with ℤ[r] coefficients.
    pub fn coeffs_in_s(&self) -> Vec<Poly1> {
        let ds = self.deg_s() as usize;
        let mut raw: Vec<Vec<BigInt>> = vec![Vec::new(); ds + 1];
        for ((i, j), c) in &self.terms {
            let row = &mut raw[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, BigInt::zero());
            }
            row[*i as usize] += c;
        }
        raw.into_iter().map(Poly1::from_coeffs).collect()
    }

    pub fn from_coeffs_in_s(coeffs: &[Poly1]) -> Poly2 {
        let mut out = Poly2::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs.iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|((i, j), c)| ((*j, *i), c.clone()))
                .collect(),
        }
    }

    /// gcd of the ℤ[r] coefficient polynomials: the content free of s.
    pub fn content_in_s(&self) -> Poly1 {
        let mut g = Poly1::zero();
        for p in self.coeffs_in_s() {
            if !p.is_zero() {
                g = g.gcd(&p);
            }
        }
        g
    }

    pub fn derivative_s(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.add_term(*i, j - 1, c * BigInt::from(*j as i64));
            }
        }
        out
    }

    /// Substitutes concrete rational r, keeping a polynomial in s over ℚ
    /// cleared to ℤ.
    pub fn eval_r(&self, r: &Q) -> Poly1 {
        let cs = self.coeffs_in_s();
        let vals: Vec<Q> = cs.iter().map(|p| p.eval_q(r)).collect();
        let mut denom = BigInt::one();
        for v in &vals {
            denom = denom.lcm(v.denom());
        }
        Poly1::from_coeffs(
            vals.iter()
                .map(|v| v.numer() * (&denom / v.denom()))
                .collect(),
        )
    }

    /// gcd as polynomials in s over ℤ[r], primitive PRS.
    pub fn gcd_in_s(&self, o: &Poly2) -> Poly2 {
        let primitive_s = |p: &Poly2| -> Poly2 {
            let c = p.content_in_s();
            if c.is_zero() || (c.is_const() && c.lead().abs().is_one()) {
                return p.clone();
            }
            Poly2::from_coeffs_in_s(
                &p.coeffs_in_s()
                    .iter()
                    .map(|x| {
                        if x.is_zero() {
                            Poly1::zero()
                        } else {
                            x.div_exact(&c)
                        }
                    })
                    .collect::<Vec<_>>(),
            )
        };
        let mut a = primitive_s(self);
        let mut b = primitive_s(o);
        if a.deg_s() < b.deg_s() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg_s() >= 1 || (!b.is_zero() && a.deg_s() >= 1 && b.deg_s() == 0) {
            if b.deg_s() == 0 {
                // common factor can only be s-free; handled by caller
                return Poly2::constant(BigInt::one());
            }
            let r = pseudo_rem_in_s(&a, &b);
            a = b;
            b = primitive_s(&r);
        }
        if b.is_zero() {
            primitive_s(&a)
        } else {
            Poly2::constant(BigInt::one())
        }
    }

    /// Curve clean-up: primitive part, contents free of s and of r divided
    /// out, square-free in s.
    pub fn squarefree_curve(&self) -> Poly2 {
        let mut p = self.primitive();
        let cs = p.content_in_s();
        if !cs.is_zero() && !(cs.is_const() && cs.lead().abs().is_one()) {
            p = Poly2::from_coeffs_in_s(
                &p.coeffs_in_s()
                    .iter()
                    .map(|c| {
                        if c.is_zero() {
                            Poly1::zero()
                        } else {
                            c.div_exact(&cs)
                        }
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let swapped = p.swap_vars();
        let cr = swapped.content_in_s();
        if !cr.is_zero() && !(cr.is_const() && cr.lead().abs().is_one()) {
            p = Poly2::from_coeffs_in_s(
                &swapped
                    .coeffs_in_s()
                    .iter()
                    .map(|c| {
                        if c.is_zero() {
                            Poly1::zero()
                        } else {
                            c.div_exact(&cr)
                        }
                    })
                    .collect::<Vec<_>>(),
            )
            .swap_vars();
        }
        if p.deg_s() >= 1 {
            let g = p.gcd_in_s(&p.derivative_s());
            if g.deg_s() >= 1 {
                p = p.div_exact(&g).primitive();
            }
        }
        p.primitive()
    }

    /// Sign convention: the leading coefficient of the highest r-power
    /// block (highest s inside it) is positive.
    pub fn normalize_sign(&self) -> Poly2 {
        if self.is_zero() {
            return self.clone();
        }
        let dr = self.deg_r();
        let lead = self
            .terms
            .iter()
            .filter(|((i, _), _)| *i == dr)
            .max_by_key(|((_, j), _)| *j)
            .map(|(_, c)| c.clone())
            .unwrap();
        if lead.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn rem_lead(p: &Poly2) -> ((u32, u32), BigInt) {
    p.terms
        .iter()
        .next_back()
        .map(|(k, c)| (*k, c.clone()))
        .expect("lead of zero polynomial")
}

fn pseudo_rem_in_s(a: &Poly2, b: &Poly2) -> Poly2 {
    let db = b.deg_s();
    let lead_b = b.coeffs_in_s()[db as usize].clone();
    let lead_b2 = Poly2::from_coeffs_in_s(&[lead_b]);
    let mut r = a.clone();
    let mut guard = 0;
    while !r.is_zero() && r.deg_s() >= db && r.deg_s() >= 1 {
        let dr = r.deg_s();
        let lead_r = r.coeffs_in_s()[dr as usize].clone();
        let mut shifted = vec![Poly1::zero(); (dr - db) as usize];
        shifted.push(lead_r);
        let shift_poly = Poly2::from_coeffs_in_s(&shifted);
        r = r.mul(&lead_b2).sub(&shift_poly.mul(b));
        guard += 1;
        assert!(guard < 1000, "pseudo-division runaway");
        if dr == db {
            break;
        }
    }
    r
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let mut first = true;
        for k in keys {
            let c = &self.terms[&k];
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mut body = String::new();
            if k.0 > 0 {
                body.push('r');
                if k.0 > 1 {
                    body.push_str(&format!("^{}", k.0));
                }
            }
            if k.1 > 0 {
                if !body.is_empty() {
                    body.push('*');
                }
                body.push('s');
                if k.1 > 1 {
                    body.push_str(&format!("^{}", k.1));
                }
            }
            if body.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", body)?;
            } else {
                write!(f, "{}*{}", mag, body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// resultants over ℤ[r, s]

/// Resultant with respect to t of two polynomials given by their t-coefficients
/// (index = power of t), via the Sylvester matrix and fraction-free
/// elimination.
pub fn resultant_t(p: &[Poly2], q: &[Poly2]) -> Poly2 {
    let dp = p.iter().rposition(|c| !c.is_zero()).expect("zero polynomial");
    let dq = q.iter().rposition(|c| !c.is_zero()).expect("zero polynomial");
    if dp == 0 {
        return p[0].pow_n(dq as u32);
    }
    if dq == 0 {
        return q[0].pow_n(dp as u32);
    }
    let n = dp + dq;
    let mut m: Vec<Vec<Poly2>> = vec![vec![Poly2::zero(); n]; n];
    for row in 0..dq {
        for k in 0..=dp {
            m[row][row + dp - k] = p[k].clone();
        }
    }
    for row in 0..dp {
        for k in 0..=dq {
            m[dq + row][row + dq - k] = q[k].clone();
        }
    }
    bareiss_det(m)
}

/// Fraction-free determinant (Bareiss). Row swaps flip the sign.
fn bareiss_det(mut m: Vec<Vec<Poly2>>) -> Poly2 {
    let n = m.len();
    if n == 0 {
        return Poly2::constant(BigInt::one());
    }
    let mut sign = 1i32;
    let mut prev = Poly2::constant(BigInt::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Poly2::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev);
            }
        }
        for i in k + 1..n {
            m[i][k] = Poly2::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly1_gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = Poly1::from_i64(&[-1, 1])
            .pow(2)
            .mul(&Poly1::from_i64(&[2, 1]));
        let sf = p.squarefree_part();
        assert_eq!(
            sf,
            Poly1::from_i64(&[-1, 1]).mul(&Poly1::from_i64(&[2, 1]))
        );
    }

    #[test]
    fn poly1_rational_roots() {
        // (2x-1)(x+3)
        let p = Poly1::from_i64(&[-1, 2]).mul(&Poly1::from_i64(&[3, 1]));
        let roots = p.rational_roots();
        assert!(roots.iter().any(|(r, m)| r == &Q::new(1, 2) && *m == 1));
        assert!(roots.iter().any(|(r, m)| r == &Q::int(-3) && *m == 1));
    }

    #[test]
    fn sqrt_decompose_cube() {
        // (1-12r)^3 ~ m² f with m, f linear
        let lin = Poly1::from_i64(&[1, -12]);
        let p = lin.pow(3);
        let (m, f) = p.sqrt_decompose();
        assert_eq!(m.degree(), 1);
        assert_eq!(f.degree(), 1);
        let recomposed = m.mul(&m).mul(&f);
        assert!(recomposed == p || recomposed == p.neg());
    }

    #[test]
    fn resultant_eliminates_common_root() {
        // p = t - r, q = t² - s : res = r² - s up to sign
        let p = vec![
            Poly2::monomial(1, 0, BigInt::from(-1)),
            Poly2::constant(BigInt::one()),
        ];
        let q = vec![
            Poly2::monomial(0, 1, BigInt::from(-1)),
            Poly2::zero(),
            Poly2::constant(BigInt::one()),
        ];
        let res = resultant_t(&p, &q).normalize_sign();
        assert_eq!(res, Poly2::from_terms(&[(2, 0, 1), (0, 1, -1)]));
    }

    #[test]
    fn bivariate_content_strip() {
        // (4r+1)(r+s-1) : the s-free factor is stripped
        let p = Poly2::from_terms(&[(1, 0, 4), (0, 0, 1)]).mul(&Poly2::from_terms(&[
            (1, 0, 1),
            (0, 1, 1),
            (0, 0, -1),
        ]));
        let clean = p.squarefree_curve().normalize_sign();
        assert_eq!(
            clean,
            Poly2::from_terms(&[(1, 0, 1), (0, 1, 1), (0, 0, -1)])
        );
    }

    #[test]
    fn squarefree_curve_removes_square() {
        let curve = Poly2::from_terms(&[(1, 0, 1), (0, 1, 1), (0, 0, -1)]);
        let sq = curve.mul(&curve);
        assert_eq!(sq.squarefree_curve().normalize_sign(), curve);
    }

    #[test]
    fn poly2_exact_division() {
        let a = Poly2::from_terms(&[(1, 0, 1), (0, 1, 1)]);
        let b = Poly2::from_terms(&[(1, 1, 2), (2, 0, 2), (0, 2, 2)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), b);
    }
}
