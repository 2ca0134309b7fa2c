//! Products of gamma, Pochhammer, sign and power factors.
//!
//! A [`FactorProduct`] is the summand coefficient of a series, or a series
//! prefactor: an exact rational constant times gamma functions, Pochhammer
//! symbols, a sign `(-1)^L`, symbolic powers `base^L` and rational powers
//! `k^L`, each carried with an integer exponent. Equal products have equal
//! canonical factor maps, so structural equality is meaningful.

use crate::expr::{Index, LinearForm};
use crate::rat::Q;
use crate::varexpr::VarExpr;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `Γ(arg)^{exp}`; `exp` lives in the containing product map.
pub type GammaArg = LinearForm;

/// `(base)_{shift}` key for the Pochhammer map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PochKey {
    pub base: LinearForm,
    pub shift: LinearForm,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct FactorProduct {
    /// Rational constant multiplier.
    pub(crate) coeff: Q,
    /// Γ(arg) → integer exponent (negative = denominator).
    pub(crate) gammas: BTreeMap<LinearForm, i64>,
    /// (base)_shift → integer exponent.
    pub(crate) pochs: BTreeMap<PochKey, i64>,
    /// Exponent L of a single collected sign factor (-1)^L.
    pub(crate) sign_exp: LinearForm,
    /// Symbolic power factors base^L.
    pub(crate) powers: BTreeMap<VarExpr, LinearForm>,
    /// Rational-base power factors k^L (k > 0), e.g. from dimidiation.
    pub(crate) rat_powers: BTreeMap<Q, LinearForm>,
}

impl FactorProduct {
    pub fn one() -> Self {
        FactorProduct {
            coeff: Q::one(),
            ..Default::default()
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one()
            && self.gammas.is_empty()
            && self.pochs.is_empty()
            && self.sign_exp.is_zero()
            && self.powers.is_empty()
            && self.rat_powers.is_empty()
    }

    pub fn coeff(&self) -> &Q {
        &self.coeff
    }

    pub fn gammas(&self) -> &BTreeMap<LinearForm, i64> {
        &self.gammas
    }

    pub fn pochs(&self) -> &BTreeMap<PochKey, i64> {
        &self.pochs
    }

    pub fn sign_exponent(&self) -> &LinearForm {
        &self.sign_exp
    }

    pub fn powers(&self) -> &BTreeMap<VarExpr, LinearForm> {
        &self.powers
    }

    pub fn rat_powers(&self) -> &BTreeMap<Q, LinearForm> {
        &self.rat_powers
    }

    pub fn with_coeff(mut self, c: Q) -> Self {
        self.coeff = c;
        self
    }

    pub fn mul_coeff(&mut self, c: &Q) {
        self.coeff *= c.clone();
    }

    pub fn push_gamma(&mut self, arg: LinearForm, exp: i64) {
        if exp == 0 {
            return;
        }
        let slot = self.gammas.entry(arg).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            let key = self
                .gammas
                .iter()
                .find(|(_, e)| **e == 0)
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.gammas.remove(&k);
            }
        }
    }

    pub fn push_poch(&mut self, base: LinearForm, shift: LinearForm, exp: i64) {
        if exp == 0 || shift.is_zero() {
            return;
        }
        let key = PochKey { base, shift };
        let slot = self.pochs.entry(key.clone()).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.pochs.remove(&key);
        }
    }

    /// Multiplies by (-1)^L. The exponent is reduced mod 2 only when it is
    /// a concrete integer.
    pub fn push_sign(&mut self, exponent: LinearForm) {
        self.sign_exp = self.sign_exp.add(&exponent);
        if let Some(c) = self.sign_exp.as_constant() {
            if c.is_integer() {
                let k = c.to_i64().expect("sign exponent fits i64");
                self.sign_exp = LinearForm::int(k.rem_euclid(2));
            }
        }
    }

    pub fn push_power(&mut self, base: VarExpr, exp: LinearForm) {
        if exp.is_zero() {
            return;
        }
        if base.is_one() {
            return;
        }
        let slot = self.powers.entry(base.clone()).or_insert_with(LinearForm::zero);
        *slot = slot.add(&exp);
        if slot.is_zero() {
            self.powers.remove(&base);
        }
    }

    pub fn push_rat_power(&mut self, base: Q, exp: LinearForm) {
        assert!(!base.is_zero() && !base.is_negative(), "rational power base must be positive");
        if exp.is_zero() || base.is_one() {
            return;
        }
        let slot = self
            .rat_powers
            .entry(base.clone())
            .or_insert_with(LinearForm::zero);
        *slot = slot.add(&exp);
        if slot.is_zero() {
            self.rat_powers.remove(&base);
        }
    }

    pub fn mul(&self, other: &FactorProduct) -> FactorProduct {
        let mut out = self.clone();
        out.coeff *= other.coeff.clone();
        for (g, e) in &other.gammas {
            out.push_gamma(g.clone(), *e);
        }
        for (k, e) in &other.pochs {
            out.push_poch(k.base.clone(), k.shift.clone(), *e);
        }
        out.push_sign(other.sign_exp.clone());
        for (b, e) in &other.powers {
            out.push_power(b.clone(), e.clone());
        }
        for (b, e) in &other.rat_powers {
            out.push_rat_power(b.clone(), e.clone());
        }
        out
    }

    pub fn recip(&self) -> FactorProduct {
        let mut out = FactorProduct::one();
        out.coeff = self.coeff.recip();
        for (g, e) in &self.gammas {
            out.gammas.insert(g.clone(), -e);
        }
        for (k, e) in &self.pochs {
            out.pochs.insert(k.clone(), -e);
        }
        // 1/(-1)^L = (-1)^{-L}; exponents are symbolic so keep the negation
        out.push_sign(self.sign_exp.neg());
        for (b, e) in &self.powers {
            out.powers.insert(b.clone(), e.neg());
        }
        for (b, e) in &self.rat_powers {
            out.rat_powers.insert(b.clone(), e.neg());
        }
        out
    }

    /// True when no gamma argument, Pochhammer base/shift, sign exponent or
    /// power exponent mentions any of `indices`.
    pub fn is_free_of(&self, indices: &[Index]) -> bool {
        let touches = |f: &LinearForm| indices.iter().any(|i| f.has_index(i));
        !self.gammas.keys().any(touches)
            && !self
                .pochs
                .keys()
                .any(|k| touches(&k.base) || touches(&k.shift))
            && !touches(&self.sign_exp)
            && !self.powers.values().any(touches)
            && !self.rat_powers.values().any(touches)
    }

    /// Splits into `(index_free, index_bearing)` with respect to `indices`.
    /// Power and sign exponents are split termwise: the parameter/constant
    /// part of each exponent stays in the prefactor, the index part moves
    /// to the index-bearing side.
    pub fn split_index_free(&self, indices: &[Index]) -> (FactorProduct, FactorProduct) {
        let mut free = FactorProduct::one();
        let mut bound = FactorProduct::one();
        free.coeff = self.coeff.clone();
        let touches = |f: &LinearForm| indices.iter().any(|i| f.has_index(i));
        for (g, e) in &self.gammas {
            if touches(g) {
                bound.push_gamma(g.clone(), *e);
            } else {
                free.push_gamma(g.clone(), *e);
            }
        }
        for (k, e) in &self.pochs {
            if touches(&k.base) || touches(&k.shift) {
                bound.push_poch(k.base.clone(), k.shift.clone(), *e);
            } else {
                free.push_poch(k.base.clone(), k.shift.clone(), *e);
            }
        }
        let sign_idx = self.sign_exp.index_part(indices);
        let sign_rest = self.sign_exp.sub(&sign_idx);
        free.push_sign(sign_rest);
        bound.push_sign(sign_idx);
        for (b, e) in &self.powers {
            let e_idx = e.index_part(indices);
            let e_rest = e.sub(&e_idx);
            free.push_power(b.clone(), e_rest);
            bound.push_power(b.clone(), e_idx);
        }
        for (b, e) in &self.rat_powers {
            let e_idx = e.index_part(indices);
            let e_rest = e.sub(&e_idx);
            free.push_rat_power(b.clone(), e_rest);
            bound.push_rat_power(b.clone(), e_idx);
        }
        (free, bound)
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::pretty_factors(self))
    }
}

impl fmt::Debug for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Builder with a fluent interface for assembling summands in tests and
/// the named-series table.
#[derive(Default)]
pub struct ProductBuilder {
    fp: FactorProduct,
}

impl ProductBuilder {
    pub fn new() -> Self {
        ProductBuilder {
            fp: FactorProduct::one(),
        }
    }

    pub fn gamma(mut self, arg: LinearForm) -> Self {
        self.fp.push_gamma(arg, 1);
        self
    }

    pub fn gamma_den(mut self, arg: LinearForm) -> Self {
        self.fp.push_gamma(arg, -1);
        self
    }

    pub fn poch(mut self, base: LinearForm, shift: LinearForm) -> Self {
        self.fp.push_poch(base, shift, 1);
        self
    }

    pub fn poch_den(mut self, base: LinearForm, shift: LinearForm) -> Self {
        self.fp.push_poch(base, shift, -1);
        self
    }

    /// Denominator factorial `idx!`, stored as the Pochhammer `(1)_idx`.
    pub fn fact_den(mut self, idx: &Index) -> Self {
        self.fp
            .push_poch(LinearForm::int(1), LinearForm::index(idx.clone()), -1);
        self
    }

    pub fn sign(mut self, exponent: LinearForm) -> Self {
        self.fp.push_sign(exponent);
        self
    }

    pub fn power(mut self, base: VarExpr, exp: LinearForm) -> Self {
        self.fp.push_power(base, exp);
        self
    }

    pub fn coeff(mut self, c: Q) -> Self {
        self.fp.mul_coeff(&c);
        self
    }

    pub fn build(self) -> FactorProduct {
        self.fp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::lf;

    #[test]
    fn multiset_cancellation() {
        let mut fp = FactorProduct::one();
        fp.push_poch(lf("a", &[]), lf("2m", &["m"]), 1);
        fp.push_poch(lf("a", &[]), lf("2m", &["m"]), -1);
        assert!(fp.is_one());
    }

    #[test]
    fn sign_constant_reduces_mod_two() {
        let mut fp = FactorProduct::one();
        fp.push_sign(LinearForm::int(3));
        assert_eq!(fp.sign_exponent(), &LinearForm::int(1));
        fp.push_sign(LinearForm::int(1));
        assert_eq!(fp.sign_exponent(), &LinearForm::int(0));
        // index-bearing exponents are kept verbatim
        fp.push_sign(lf("2m", &["m"]));
        assert_eq!(fp.sign_exponent(), &lf("2m", &["m"]));
    }

    #[test]
    fn split_power_exponents() {
        let mut fp = FactorProduct::one();
        fp.push_power(
            crate::varexpr::VarExpr::one_minus("y"),
            lf("c - a - b_p - m", &["m"]),
        );
        let (free, bound) = fp.split_index_free(&[Index::new("m")]);
        assert_eq!(
            free.powers()
                .get(&crate::varexpr::VarExpr::one_minus("y"))
                .unwrap(),
            &lf("c - a - b_p", &[])
        );
        assert_eq!(
            bound
                .powers()
                .get(&crate::varexpr::VarExpr::one_minus("y"))
                .unwrap(),
            &lf("-m", &["m"])
        );
    }

    #[test]
    fn recip_inverts() {
        let fp = ProductBuilder::new()
            .gamma(lf("a", &[]))
            .poch(lf("b", &[]), lf("m", &["m"]))
            .coeff(crate::rat::q(3, 4))
            .build();
        assert!(fp.mul(&fp.recip()).is_one());
    }
}
