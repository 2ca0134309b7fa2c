//! Symbolic variable arguments.
//!
//! Series arguments and prefactor power bases are monomials over a small
//! atom set: base variables `v` and the affine atoms `1 - v`, combined by
//! product, reciprocal and a rational multiplier (which carries negation,
//! e.g. `-y` or `4*x`). Summation indices never appear here.

use crate::rat::Q;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarAtom {
    /// A base variable, e.g. `x`.
    Var(String),
    /// The affine atom `1 - v` for base variable `v`.
    OneMinus(String),
}

impl fmt::Display for VarAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarAtom::Var(v) => write!(f, "{}", v),
            VarAtom::OneMinus(v) => write!(f, "(1-{})", v),
        }
    }
}

/// `coeff · ∏ atomᵢ^{eᵢ}` with nonzero rational `coeff` and nonzero integer
/// exponents. The constant expression `1` is `coeff = 1` with no atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarExpr {
    coeff: Q,
    atoms: BTreeMap<VarAtom, i64>,
}

impl VarExpr {
    pub fn one() -> Self {
        VarExpr {
            coeff: Q::one(),
            atoms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Q) -> Self {
        assert!(!c.is_zero(), "variable expressions are nonzero");
        VarExpr {
            coeff: c,
            atoms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(VarAtom::Var(name.to_string()), 1);
        VarExpr {
            coeff: Q::one(),
            atoms,
        }
    }

    pub fn one_minus(name: &str) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(VarAtom::OneMinus(name.to_string()), 1);
        VarExpr {
            coeff: Q::one(),
            atoms,
        }
    }

    pub fn coeff(&self) -> &Q {
        &self.coeff
    }

    pub fn atoms(&self) -> &BTreeMap<VarAtom, i64> {
        &self.atoms
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.atoms.is_empty()
    }

    pub fn mul(&self, other: &VarExpr) -> VarExpr {
        let mut out = self.clone();
        out.coeff *= other.coeff.clone();
        for (a, e) in &other.atoms {
            let slot = out.atoms.entry(a.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.atoms.remove(a);
            }
        }
        out
    }

    pub fn recip(&self) -> VarExpr {
        VarExpr {
            coeff: self.coeff.recip(),
            atoms: self.atoms.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    pub fn neg(&self) -> VarExpr {
        VarExpr {
            coeff: -&self.coeff,
            atoms: self.atoms.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> VarExpr {
        if k == 0 {
            return VarExpr::one();
        }
        let mut coeff = Q::one();
        let base = if k > 0 {
            self.coeff.clone()
        } else {
            self.coeff.recip()
        };
        for _ in 0..k.unsigned_abs() {
            coeff *= base.clone();
        }
        VarExpr {
            coeff,
            atoms: self.atoms.iter().map(|(a, e)| (a.clone(), e * k)).collect(),
        }
    }

    /// `1 - self`, for the argument shapes this crate manipulates:
    /// `1 - v`, `1 - (1-v) = v`, and `1 - (-v/(1-v)) = 1/(1-v)`.
    pub fn one_minus_expr(&self) -> Option<VarExpr> {
        if self.atoms.len() == 1 && self.coeff.is_one() {
            let (atom, e) = self.atoms.iter().next().unwrap();
            if *e == 1 {
                return Some(match atom {
                    VarAtom::Var(v) => VarExpr::one_minus(v),
                    VarAtom::OneMinus(v) => VarExpr::var(v),
                });
            }
        }
        // 1 - (-v·(1-v)^{-1}) = (1-v+v)/(1-v) = (1-v)^{-1}
        if self.coeff == Q::int(-1) && self.atoms.len() == 2 {
            let mut var = None;
            let mut om = None;
            for (a, e) in &self.atoms {
                match a {
                    VarAtom::Var(v) if *e == 1 => var = Some(v.clone()),
                    VarAtom::OneMinus(u) if *e == -1 => om = Some(u.clone()),
                    _ => {}
                }
            }
            if let (Some(v), Some(u)) = (var, om) {
                if v == u {
                    return Some(VarExpr::one_minus(&v).recip());
                }
            }
        }
        None
    }

    /// `self/(self - 1)`, the Pfaff argument map. Supported on the closed
    /// family {v, 1-v, -v/(1-v), -(1-v)/v, 1/v, 1/(1-v)} of shapes that
    /// arise from composing the classical transformations.
    pub fn over_self_minus_one(&self) -> Option<VarExpr> {
        // z/(z-1) = -z/(1-z)
        let om = self.one_minus_expr()?;
        Some(self.neg().mul(&om.recip()))
    }

    pub fn base_vars(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .atoms
            .keys()
            .map(|a| match a {
                VarAtom::Var(v) | VarAtom::OneMinus(v) => v.clone(),
            })
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn eval(&self, vars: &BTreeMap<String, Complex64>) -> Complex64 {
        let mut out = Complex64::new(self.coeff.to_f64(), 0.0);
        for (a, e) in &self.atoms {
            let base = match a {
                VarAtom::Var(v) => *vars
                    .get(v)
                    .unwrap_or_else(|| panic!("unbound variable {v}")),
                VarAtom::OneMinus(v) => {
                    Complex64::new(1.0, 0.0)
                        - *vars.get(v).unwrap_or_else(|| panic!("unbound variable {v}"))
                }
            };
            out *= base.powi(*e as i32);
        }
        out
    }

    pub fn eval_abs(&self, vars: &BTreeMap<String, Complex64>) -> f64 {
        self.eval(vars).norm()
    }

    /// Display of the absolute value, e.g. `Abs[x/y]`, `1/Abs[y]`,
    /// `4*Abs[x]`. The sign of the coefficient disappears.
    pub fn display_abs(&self) -> String {
        let mag = self.coeff.abs();
        let mut num = String::new();
        let mut den = String::new();
        let fmt_atom = |a: &VarAtom, e: u64| {
            let inner = match a {
                VarAtom::Var(v) => format!("Abs[{}]", v),
                VarAtom::OneMinus(v) => format!("Abs[1 - {}]", v),
            };
            if e == 1 {
                inner
            } else {
                format!("{}^{}", inner, e)
            }
        };
        // group atoms that belong to one Abs when they form a pure ratio of vars
        let pure_vars = self
            .atoms
            .keys()
            .all(|a| matches!(a, VarAtom::Var(_)));
        if pure_vars && !self.atoms.is_empty() {
            let mut inner_num = String::new();
            let mut inner_den = String::new();
            for (a, e) in &self.atoms {
                let v = match a {
                    VarAtom::Var(v) => v.clone(),
                    _ => unreachable!(),
                };
                let part = if e.unsigned_abs() == 1 {
                    v
                } else {
                    format!("{}^{}", v, e.unsigned_abs())
                };
                if *e > 0 {
                    if !inner_num.is_empty() {
                        inner_num.push('*');
                    }
                    inner_num.push_str(&part);
                } else {
                    if !inner_den.is_empty() {
                        inner_den.push('*');
                    }
                    inner_den.push_str(&part);
                }
            }
            let abs = match (inner_num.is_empty(), inner_den.is_empty()) {
                (false, false) => format!("Abs[{}/{}]", inner_num, inner_den),
                (false, true) => format!("Abs[{}]", inner_num),
                (true, false) => {
                    den = format!("Abs[{}]", inner_den);
                    String::new()
                }
                (true, true) => String::new(),
            };
            num = abs;
        } else {
            for (a, e) in &self.atoms {
                let part = fmt_atom(a, e.unsigned_abs());
                if *e > 0 {
                    if !num.is_empty() {
                        num.push('*');
                    }
                    num.push_str(&part);
                } else {
                    if !den.is_empty() {
                        den.push('*');
                    }
                    den.push_str(&part);
                }
            }
        }
        let mut head = String::new();
        if !mag.is_one() || num.is_empty() {
            head = mag.to_string();
        }
        let mut out = match (head.is_empty(), num.is_empty()) {
            (true, false) => num,
            (false, true) => head,
            (false, false) => format!("{}*{}", head, num),
            (true, true) => "1".to_string(),
        };
        if !den.is_empty() {
            out = format!("{}/{}", out, den);
        }
        out
    }
}

impl fmt::Display for VarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        let mut den = String::new();
        for (a, e) in &self.atoms {
            let part = if e.unsigned_abs() == 1 {
                format!("{}", a)
            } else {
                format!("{}^{}", a, e.unsigned_abs())
            };
            if *e > 0 {
                if !num.is_empty() {
                    num.push('*');
                }
                num.push_str(&part);
            } else {
                if !den.is_empty() {
                    den.push('*');
                }
                den.push_str(&part);
            }
        }
        let mut lead = String::new();
        if self.coeff == Q::int(-1) && !num.is_empty() {
            lead.push('-');
        } else if !self.coeff.is_one() || num.is_empty() {
            lead = self.coeff.to_string();
            if !num.is_empty() {
                lead.push('*');
            }
        }
        write!(f, "{}{}", lead, num)?;
        if !den.is_empty() {
            write!(f, "/{}", den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn product_and_reciprocal() {
        let x = VarExpr::var("x");
        let y = VarExpr::var("y");
        let e = x.mul(&y.recip()).neg(); // -x/y
        assert_eq!(e.to_string(), "-x/y");
        assert_eq!(e.recip().to_string(), "-y/x");
        assert!(e.mul(&e.recip()).is_one());
    }

    #[test]
    fn pfaff_argument_closure() {
        let y = VarExpr::var("y");
        let w = y.over_self_minus_one().unwrap(); // -y/(1-y)
        assert_eq!(w.to_string(), "-y/(1-y)");
        // applying the map twice returns the original argument
        assert_eq!(w.over_self_minus_one().unwrap(), y);
    }

    #[test]
    fn one_minus_shapes() {
        let y = VarExpr::var("y");
        assert_eq!(y.one_minus_expr().unwrap(), VarExpr::one_minus("y"));
        assert_eq!(
            VarExpr::one_minus("y").one_minus_expr().unwrap(),
            VarExpr::var("y")
        );
        assert!(y.neg().one_minus_expr().is_none());
    }

    #[test]
    fn abs_display() {
        let e = VarExpr::var("x").mul(&VarExpr::var("y").recip()).neg();
        assert_eq!(e.display_abs(), "Abs[x/y]");
        assert_eq!(VarExpr::var("y").recip().display_abs(), "1/Abs[y]");
        assert_eq!(
            VarExpr::var("x").mul(&VarExpr::constant(q(4, 1))).display_abs(),
            "4*Abs[x]"
        );
    }

    #[test]
    fn numeric_eval() {
        let mut vars = BTreeMap::new();
        vars.insert("y".to_string(), Complex64::new(0.25, 0.0));
        let e = VarExpr::one_minus("y").recip().neg();
        assert!((e.eval(&vars).re + 1.0 / 0.75).abs() < 1e-15);
    }
}
