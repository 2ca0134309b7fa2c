//! Multivariable hypergeometric series values.
//!
//! A [`HypSeries`] is a sum over non-negative integer indices of a factor
//! product times variable powers. Canonical form keeps one [`VarArg`] per
//! index with unit exponent: index-bearing powers, rational powers and sign
//! factors are folded into the variable arguments (turning `y` into `-y`,
//! `x` into `x/y`, and so on), which is what recognition and convergence
//! analysis consume.

use crate::error::SeriesError;
use crate::expr::{Index, LinearForm};
use crate::factors::{FactorProduct, PochKey};
use crate::rat::Q;
use crate::rules;
use crate::varexpr::VarExpr;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One variable argument `expr^{index_exp}`; `expr` is index-free and the
/// exponent is an integer combination of summation indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarArg {
    pub expr: VarExpr,
    pub index_exp: LinearForm,
}

impl VarArg {
    pub fn new(expr: VarExpr, index_exp: LinearForm) -> Self {
        assert!(index_exp.is_index_only(), "variable exponents are index-only");
        VarArg { expr, index_exp }
    }
}

impl fmt::Debug for VarArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^({})", self.expr, self.index_exp)
    }
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypSeries {
    pub indices: Vec<Index>,
    pub factors: FactorProduct,
    pub vars: Vec<VarArg>,
}

impl fmt::Debug for HypSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::pretty_series(self))
    }
}

impl fmt::Display for HypSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::render::pretty_series(self))
    }
}

impl HypSeries {
    /// Builds a series from a raw summand product. Index-bearing powers in
    /// the product become variable arguments; the result is canonical.
    pub fn from_summand(indices: Vec<Index>, summand: FactorProduct) -> Self {
        let s = HypSeries {
            indices,
            factors: summand,
            vars: Vec::new(),
        };
        s.canonicalize()
    }

    /// Canonical form: one `VarArg` per index, in index order, with the
    /// whole index-dependence of powers and signs absorbed into the
    /// variable expressions.
    pub fn canonicalize(&self) -> Self {
        let mut fp = self.factors.clone();
        // absorb existing var args into the factor product first
        for va in &self.vars {
            fp.push_power(va.expr.clone(), va.index_exp.clone());
        }

        let mut vars = Vec::new();
        let mut residual = FactorProduct::one();
        residual.mul_coeff(fp.coeff());

        for (g, e) in fp.gammas() {
            residual.push_gamma(g.clone(), *e);
        }
        for (k, e) in fp.pochs() {
            residual.push_poch(k.base.clone(), k.shift.clone(), *e);
        }

        // per-index collected argument expressions
        for idx in &self.indices {
            let mut expr = VarExpr::one();
            for (base, exp) in fp.powers() {
                let c = exp.coeff_of(idx);
                if c != 0 {
                    expr = expr.mul(&base.pow(c));
                }
            }
            for (base, exp) in fp.rat_powers() {
                let c = exp.coeff_of(idx);
                if c != 0 {
                    expr = expr.mul(&VarExpr::constant(base.clone()).pow(c));
                }
            }
            let sc = fp.sign_exponent().coeff_of(idx);
            if sc.rem_euclid(2) == 1 {
                expr = expr.neg();
            }
            vars.push(VarArg::new(expr, LinearForm::index(idx.clone())));
        }

        // parameter/constant parts of exponents stay as factors
        for (base, exp) in fp.powers() {
            let rest = exp.param_const_part(&self.indices);
            residual.push_power(base.clone(), rest);
        }
        for (base, exp) in fp.rat_powers() {
            let rest = exp.param_const_part(&self.indices);
            residual.push_rat_power(base.clone(), rest);
        }
        residual.push_sign(fp.sign_exponent().param_const_part(&self.indices));

        HypSeries {
            indices: self.indices.clone(),
            factors: residual,
            vars,
        }
    }

    /// Argument expression attached to one index in canonical form.
    pub fn var_of(&self, idx: &Index) -> Option<&VarExpr> {
        self.indices
            .iter()
            .position(|i| i == idx)
            .and_then(|k| self.vars.get(k))
            .map(|va| &va.expr)
    }

    /// Splits index-free factor content off into a prefactor, returning
    /// `(prefactor, series-with-unit-prefactor)`.
    pub fn split_prefactor(&self) -> (FactorProduct, HypSeries) {
        let canon = self.canonicalize();
        let (free, bound) = canon.factors.split_index_free(&canon.indices);
        (
            free,
            HypSeries {
                indices: canon.indices,
                factors: bound,
                vars: canon.vars,
            },
        )
    }

    /// Runs the composite `sim` pipeline over the summand.
    pub fn sim(&self) -> Result<HypSeries, crate::error::SimError> {
        let canon = self.canonicalize();
        let fp = rules::sim(&canon.factors, &canon.indices)?;
        Ok(HypSeries {
            indices: canon.indices.clone(),
            factors: fp,
            vars: canon.vars,
        }
        .canonicalize())
    }

    /// Rearranges Pochhammer factors so the first summation index carries a
    /// positive coefficient in every shift, via `(b)_{n-m} =
    /// (-1)^m (b)_n / (1-b-n)_m`. Value-preserving; bases may pick up other
    /// indices.
    pub fn normalize_first_index_positive(&self) -> HypSeries {
        let canon = self.canonicalize();
        let first = match canon.indices.first() {
            Some(i) => i.clone(),
            None => return canon,
        };
        let needs = canon
            .factors
            .pochs()
            .keys()
            .any(|k| k.shift.coeff_of(&first) < 0);
        if !needs {
            return canon;
        }
        let split = rules::split_shift(&canon.factors, &first);
        let fixed = rules::positive_poch(&split, &[first]);
        HypSeries {
            indices: canon.indices,
            factors: fixed,
            vars: canon.vars,
        }
        .canonicalize()
    }
}

/// The recognition fingerprint of a series: index parts of numerator and
/// denominator Pochhammer shifts (factorials excluded) plus the variable
/// argument expressions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CharacteristicList {
    pub num: Vec<LinearForm>,
    pub den: Vec<LinearForm>,
    pub vars: Vec<VarExpr>,
}

impl CharacteristicList {
    /// Integer coefficient matrices over the given index order, sorted; the
    /// multiset fingerprint used for catalog matching.
    pub fn coeff_vectors(&self, indices: &[Index]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let vecs = |forms: &[LinearForm]| -> Vec<Vec<i64>> {
            let mut v: Vec<Vec<i64>> = forms
                .iter()
                .map(|f| indices.iter().map(|i| f.coeff_of(i)).collect())
                .collect();
            v.sort();
            v
        };
        (vecs(&self.num), vecs(&self.den))
    }
}

impl fmt::Display for CharacteristicList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |forms: &[LinearForm]| {
            forms
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{{{{{}}}, {{{}}}}}", join(&self.num), join(&self.den))
    }
}

/// Sort order for display: descending total index weight, then descending
/// coefficient tuple. Matching is multiset-based, so this affects output
/// only.
pub fn sort_forms(forms: &mut [LinearForm], indices: &[Index]) {
    forms.sort_by(|a, b| {
        let key = |f: &LinearForm| {
            let v: Vec<i64> = indices.iter().map(|i| f.coeff_of(i)).collect();
            let sum: i64 = v.iter().sum();
            (sum, v)
        };
        key(b).cmp(&key(a))
    });
}

/// Extracts the characteristic list. The series must be simplified:
/// index-bearing Pochhammer bases or gamma arguments are rejected.
pub fn characteristic_list(
    indices: &[Index],
    series: &HypSeries,
) -> Result<CharacteristicList, SeriesError> {
    let canon = series.canonicalize();
    for (g, _) in canon.factors.gammas() {
        if indices.iter().any(|i| g.has_index(i)) {
            return Err(SeriesError::NotSimplified(g.to_string()));
        }
    }
    for key in canon.factors.pochs().keys() {
        if indices.iter().any(|i| key.base.has_index(i)) {
            return Err(SeriesError::NotSimplified(key.base.to_string()));
        }
    }

    let mut num = Vec::new();
    let mut den = Vec::new();
    // one factorial (1)_idx per index is excluded by convention
    let mut factorial_budget: Vec<(Index, i64)> =
        indices.iter().map(|i| (i.clone(), 1)).collect();

    for (key, e) in canon.factors.pochs() {
        let part = key.shift.index_part(indices);
        if part.is_zero() {
            continue;
        }
        let mult = e.unsigned_abs();
        let is_factorial_shape = key.base == LinearForm::int(1)
            && indices.iter().any(|i| part == LinearForm::index(i.clone()));
        let mut remaining = mult;
        if *e < 0 && is_factorial_shape {
            if let Some((_, budget)) = factorial_budget
                .iter_mut()
                .find(|(i, _)| part == LinearForm::index(i.clone()))
            {
                let used = (*budget).min(remaining as i64);
                *budget -= used;
                remaining -= used as u64;
            }
        }
        for _ in 0..remaining {
            if *e > 0 {
                num.push(part.clone());
            } else {
                den.push(part.clone());
            }
        }
    }
    sort_forms(&mut num, indices);
    sort_forms(&mut den, indices);
    let vars = canon.vars.iter().map(|v| v.expr.clone()).collect();
    Ok(CharacteristicList { num, den, vars })
}

/// A finite sum of (prefactor × series) terms: the output shape of every
/// transformation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermSum {
    pub terms: Vec<Term>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Term {
    pub prefactor: FactorProduct,
    pub series: HypSeries,
}

impl TermSum {
    pub fn single(series: HypSeries) -> Self {
        let (prefactor, series) = series.split_prefactor();
        TermSum {
            terms: vec![Term { prefactor, series }],
        }
    }
}

/// Convenience: the denominator Pochhammer multiset key for a factorial.
pub fn factorial_key(idx: &Index) -> PochKey {
    PochKey {
        base: LinearForm::int(1),
        shift: LinearForm::index(idx.clone()),
    }
}

/// Rewrites a bare rational constant into the trivial variable expression,
/// used when folding dimidiation powers into arguments.
pub fn const_expr(c: Q) -> VarExpr {
    VarExpr::constant(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::lf;
    use crate::factors::ProductBuilder;
    use crate::named;

    fn idx(s: &str) -> Index {
        Index::new(s)
    }

    #[test]
    fn f1_characteristic_list() {
        let s = named::appell_f1("a", "b", "b_p", "c", "x", "y", "m", "p");
        let cl = characteristic_list(&s.indices.clone(), &s).unwrap();
        let (num, den) = cl.coeff_vectors(&s.indices);
        assert_eq!(num, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(den, vec![vec![1, 1]]);
        assert_eq!(
            cl.vars,
            vec![VarExpr::var("x"), VarExpr::var("y")]
        );
    }

    #[test]
    fn geometric_series_char_list() {
        // (a)_m x^m / m!
        let m = idx("m");
        let fp = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m", &["m"]))
            .fact_den(&m)
            .power(VarExpr::var("x"), lf("m", &["m"]))
            .build();
        let s = HypSeries::from_summand(vec![m.clone()], fp);
        let cl = characteristic_list(&[m], &s).unwrap();
        assert_eq!(cl.num, vec![lf("m", &["m"])]);
        assert!(cl.den.is_empty());
    }

    #[test]
    fn f3_characteristic_list() {
        let s = named::appell_f3("a1", "a2", "b1", "b2", "c", "x", "y", "m", "n");
        let cl = characteristic_list(&s.indices.clone(), &s).unwrap();
        let (num, den) = cl.coeff_vectors(&s.indices);
        assert_eq!(num, vec![vec![0, 1], vec![0, 1], vec![1, 0], vec![1, 0]]);
        assert_eq!(den, vec![vec![1, 1]]);
    }

    #[test]
    fn not_simplified_detection() {
        let m = idx("m");
        let n = idx("n");
        let fp = ProductBuilder::new()
            .poch(lf("a + n", &["n"]), lf("m", &["m"]))
            .fact_den(&m)
            .fact_den(&n)
            .build();
        let s = HypSeries {
            indices: vec![m.clone(), n.clone()],
            factors: fp,
            vars: vec![
                VarArg::new(VarExpr::var("x"), lf("m", &["m"])),
                VarArg::new(VarExpr::var("y"), lf("n", &["n"])),
            ],
        };
        assert!(matches!(
            characteristic_list(&[m, n], &s),
            Err(SeriesError::NotSimplified(_))
        ));
    }

    #[test]
    fn canonicalize_folds_signs_and_powers() {
        let m = idx("m");
        let n = idx("n");
        let mut fp = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m + n", &["m", "n"]))
            .fact_den(&m)
            .fact_den(&n)
            .sign(lf("m", &["m"]))
            .power(VarExpr::var("x"), lf("m", &["m"]))
            .power(VarExpr::var("y"), lf("-n", &["n"]))
            .build();
        fp.push_power(VarExpr::var("y"), lf("-a", &[]));
        let s = HypSeries::from_summand(vec![m.clone(), n.clone()], fp);
        assert_eq!(s.var_of(&m).unwrap(), &VarExpr::var("x").neg());
        assert_eq!(s.var_of(&n).unwrap(), &VarExpr::var("y").recip());
        // parameter part of the power exponent stays in the factors
        assert_eq!(
            s.factors.powers().get(&VarExpr::var("y")).unwrap(),
            &lf("-a", &[])
        );
    }

    #[test]
    fn normalize_first_index_positive_h5_factor() {
        // (b)_{n-m} with first index m -> (-1)^m (b)_n / (1-b-n)_m
        let m = idx("m");
        let n = idx("n");
        let fp = ProductBuilder::new()
            .poch(lf("b", &[]), lf("n - m", &["m", "n"]))
            .fact_den(&m)
            .fact_den(&n)
            .power(VarExpr::var("x"), lf("m", &["m"]))
            .power(VarExpr::var("y"), lf("n", &["n"]))
            .build();
        let s = HypSeries::from_summand(vec![m.clone(), n.clone()], fp);
        let norm = s.normalize_first_index_positive();
        // sign folded into x -> -x
        assert_eq!(norm.var_of(&m).unwrap(), &VarExpr::var("x").neg());
        assert!(norm
            .factors
            .pochs()
            .contains_key(&PochKey {
                base: lf("b", &[]),
                shift: lf("n", &["n"]),
            }));
        assert_eq!(
            norm.factors
                .pochs()
                .get(&PochKey {
                    base: lf("1 - b - n", &["n"]),
                    shift: lf("m", &["m"]),
                }),
            Some(&-1)
        );
    }

    #[test]
    fn normalize_noop_when_positive() {
        let s = named::appell_f2("a", "b1", "b2", "c1", "c2", "x", "y", "m", "n");
        assert_eq!(s.normalize_first_index_positive(), s.canonicalize());
    }
}
