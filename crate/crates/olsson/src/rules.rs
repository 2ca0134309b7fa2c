//! Substitution rules on factor products.
//!
//! Four rule families drive every simplification in the crate:
//!
//! * [`gamma_to_poch`] — `Γ(a+n) → (a)_n Γ(a)` and `(a+n)_m → (a)_{m+n}/(a)_n`,
//!   pulling summation indices out of gamma arguments and Pochhammer bases;
//! * [`positive_poch`] — `(a)_{-n} → (-1)^n/(1-a)_n`, removing all-negative
//!   Pochhammer shifts;
//! * [`poch_dim`] — the dimidiation formula `(a)_{kL} → k^{kL}·∏ᵢ((a+i)/k)_L`;
//! * [`unsim`] — `(a)_{m+n} → (a)_n (a+n)_m`, splitting one index out of a
//!   compound shift.
//!
//! [`sim`] chains them so that no gamma argument or Pochhammer base keeps a
//! summation index and no all-negative shift survives.

use crate::error::SimError;
use crate::expr::{Index, LinearForm};
use crate::factors::FactorProduct;
use crate::rat::Q;

/// One pass of the two gamma→Pochhammer substitutions. Each existing factor
/// is rewritten at most once; factors produced by the pass are not revisited.
fn gamma_to_poch_pass(x: &FactorProduct, indices: &[Index]) -> (FactorProduct, bool) {
    let mut out = FactorProduct::one();
    out.mul_coeff(x.coeff());
    out.push_sign(x.sign_exponent().clone());
    for (b, e) in x.powers() {
        out.push_power(b.clone(), e.clone());
    }
    for (b, e) in x.rat_powers() {
        out.push_rat_power(b.clone(), e.clone());
    }
    let mut changed = false;

    for (arg, e) in x.gammas() {
        let hit = indices.iter().find(|i| arg.coeff_of(i) != 0);
        match hit {
            Some(i) => {
                // Γ(rest + c·i) → (rest)_{c·i} Γ(rest)
                let c = arg.coeff_of(i);
                let shift = LinearForm::index_scaled(i.clone(), c);
                let rest = arg.sub(&shift);
                out.push_gamma(rest.clone(), *e);
                out.push_poch(rest, shift, *e);
                changed = true;
            }
            None => out.push_gamma(arg.clone(), *e),
        }
    }
    for (key, e) in x.pochs() {
        let hit = indices.iter().find(|i| key.base.coeff_of(i) != 0);
        match hit {
            Some(i) => {
                // (rest + c·i)_s → (rest)_{s + c·i} / (rest)_{c·i}
                let c = key.base.coeff_of(i);
                let part = LinearForm::index_scaled(i.clone(), c);
                let rest = key.base.sub(&part);
                out.push_poch(rest.clone(), key.shift.add(&part), *e);
                out.push_poch(rest, part, -e);
                changed = true;
            }
            None => out.push_poch(key.base.clone(), key.shift.clone(), *e),
        }
    }
    (out, changed)
}

pub fn gamma_to_poch(x: &FactorProduct, indices: &[Index], repeat: bool) -> FactorProduct {
    let (mut cur, mut changed) = gamma_to_poch_pass(x, indices);
    if !repeat {
        return cur;
    }
    let mut guard = 0;
    while changed {
        let (next, ch) = gamma_to_poch_pass(&cur, indices);
        cur = next;
        changed = ch;
        guard += 1;
        assert!(guard < 10_000, "gamma_to_poch failed to reach a fixpoint");
    }
    cur
}

/// `(a)_{f - N} → (-1)^N (a)_f / (1 - a - f)_N` for shifts whose index part
/// `-N` is all-negative over `indices` (the index-free part `f` is usually
/// zero in practice).
pub fn positive_poch(x: &FactorProduct, indices: &[Index]) -> FactorProduct {
    let mut out = FactorProduct::one();
    out.mul_coeff(x.coeff());
    out.push_sign(x.sign_exponent().clone());
    for (b, e) in x.powers() {
        out.push_power(b.clone(), e.clone());
    }
    for (b, e) in x.rat_powers() {
        out.push_rat_power(b.clone(), e.clone());
    }
    for (g, e) in x.gammas() {
        out.push_gamma(g.clone(), *e);
    }
    for (key, e) in x.pochs() {
        let idx_terms = key.shift.index_terms();
        let matched = !idx_terms.is_empty()
            && idx_terms.values().all(|k| *k < 0)
            && idx_terms.keys().all(|i| indices.contains(i));
        if matched {
            let idx_part = key.shift.index_part(indices);
            let n = idx_part.neg();
            let f = key.shift.sub(&idx_part);
            out.push_sign(n.scale(&Q::int(*e)));
            if !f.is_zero() {
                out.push_poch(key.base.clone(), f.clone(), *e);
            }
            let new_base = LinearForm::int(1).sub(&key.base).sub(&f);
            out.push_poch(new_base, n, -e);
        } else {
            out.push_poch(key.base.clone(), key.shift.clone(), *e);
        }
    }
    out
}

/// Dimidiation: shifts that are non-negative index combinations with content
/// `k ≥ 2` split into a `k`-fold product with step-1 bases and the power
/// factor `k^{shift}`.
pub fn poch_dim(x: &FactorProduct) -> FactorProduct {
    let mut out = FactorProduct::one();
    out.mul_coeff(x.coeff());
    out.push_sign(x.sign_exponent().clone());
    for (b, e) in x.powers() {
        out.push_power(b.clone(), e.clone());
    }
    for (b, e) in x.rat_powers() {
        out.push_rat_power(b.clone(), e.clone());
    }
    for (g, e) in x.gammas() {
        out.push_gamma(g.clone(), *e);
    }
    for (key, e) in x.pochs() {
        let k = key.shift.index_content();
        let applies = key.shift.is_index_only()
            && k >= 2
            && key.shift.index_terms().values().all(|c| *c > 0);
        if applies {
            let l = key.shift.scale(&Q::new(1, k));
            out.push_rat_power(Q::int(k), key.shift.scale(&Q::int(*e)));
            for i in 0..k {
                let base = key.base.add_constant(&Q::int(i)).scale(&Q::new(1, k));
                out.push_poch(base, l.clone(), *e);
            }
        } else {
            out.push_poch(key.base.clone(), key.shift.clone(), *e);
        }
    }
    out
}

/// `(a)_{L + c·idx} → (a)_L (a+L)_{c·idx}` for `c > 0` and nonzero `L`.
pub fn unsim(x: &FactorProduct, idx: &Index) -> FactorProduct {
    split_shift_if(x, idx, |c| c > 0)
}

/// Like [`unsim`] but splits for any nonzero coefficient of `idx`
/// (the identity `(a)_{u+v} = (a)_u (a+u)_v` holds for either sign).
pub(crate) fn split_shift(x: &FactorProduct, idx: &Index) -> FactorProduct {
    split_shift_if(x, idx, |c| c != 0)
}

fn split_shift_if(x: &FactorProduct, idx: &Index, pred: impl Fn(i64) -> bool) -> FactorProduct {
    let mut out = FactorProduct::one();
    out.mul_coeff(x.coeff());
    out.push_sign(x.sign_exponent().clone());
    for (b, e) in x.powers() {
        out.push_power(b.clone(), e.clone());
    }
    for (b, e) in x.rat_powers() {
        out.push_rat_power(b.clone(), e.clone());
    }
    for (g, e) in x.gammas() {
        out.push_gamma(g.clone(), *e);
    }
    for (key, e) in x.pochs() {
        let c = key.shift.coeff_of(idx);
        let part = LinearForm::index_scaled(idx.clone(), c);
        let l = key.shift.sub(&part);
        if pred(c) && !l.is_zero() {
            out.push_poch(key.base.clone(), l.clone(), *e);
            out.push_poch(key.base.add(&l), part, *e);
        } else {
            out.push_poch(key.base.clone(), key.shift.clone(), *e);
        }
    }
    out
}

/// `(a)_L (a+L)_M → (a)_{L+M}` for factor pairs carried with like-signed
/// exponents; repeated until no pair merges.
fn merge_pochs(x: &FactorProduct) -> FactorProduct {
    let mut cur = x.clone();
    loop {
        let mut merged = None;
        'search: for (k1, e1) in cur.pochs() {
            for (k2, e2) in cur.pochs() {
                if k1 == k2 {
                    continue;
                }
                if (*e1 > 0) == (*e2 > 0) && k2.base == k1.base.add(&k1.shift) {
                    merged = Some((k1.clone(), k2.clone(), if *e1 > 0 { 1 } else { -1 }));
                    break 'search;
                }
            }
        }
        match merged {
            None => return cur,
            Some((k1, k2, step)) => {
                let mut next = cur.clone();
                next.push_poch(k1.base.clone(), k1.shift.clone(), -step);
                next.push_poch(k2.base.clone(), k2.shift.clone(), -step);
                next.push_poch(k1.base.clone(), k1.shift.add(&k2.shift), step);
                cur = next;
            }
        }
    }
}

/// Folds gamma factors with concrete positive integer arguments into the
/// rational coefficient: Γ(1) = Γ(2) = 1, Γ(k) = (k-1)!.
fn tidy_constant_gammas(x: &FactorProduct) -> FactorProduct {
    let mut out = x.clone();
    let consts: Vec<(LinearForm, i64)> = out
        .gammas()
        .iter()
        .filter_map(|(g, e)| {
            g.as_constant().and_then(|c| {
                if c.is_integer() && !c.is_negative() && !c.is_zero() {
                    Some((g.clone(), *e))
                } else {
                    None
                }
            })
        })
        .collect();
    for (g, e) in consts {
        let k = g.as_constant().unwrap().to_i64().unwrap();
        let mut fact = Q::one();
        for j in 1..k {
            fact *= Q::int(j);
        }
        out.push_gamma(g, -e);
        let f = if e > 0 { fact.clone() } else { fact.recip() };
        for _ in 0..e.unsigned_abs() {
            out.mul_coeff(&f);
        }
    }
    out
}

/// The composite simplification pipeline: gamma→Pochhammer to a fixpoint,
/// negative shifts removed, bases purged again, compatible Pochhammers
/// merged. Errors with the partially simplified product when an index
/// survives where the postcondition forbids it.
pub fn sim(x: &FactorProduct, indices: &[Index]) -> Result<FactorProduct, SimError> {
    let step1 = gamma_to_poch(x, indices, true);
    let step2 = positive_poch(&step1, indices);
    let step3 = gamma_to_poch(&step2, indices, true);
    let step4 = merge_pochs(&step3);
    let out = tidy_constant_gammas(&step4);

    for (g, _) in out.gammas() {
        if let Some(i) = indices.iter().find(|i| g.has_index(i)) {
            return Err(SimError::Incomplete {
                index: i.clone(),
                what: format!("gamma argument {}", g),
                partial: Box::new(out.clone()),
            });
        }
    }
    for (key, _) in out.pochs() {
        if let Some(i) = indices.iter().find(|i| key.base.has_index(i)) {
            return Err(SimError::Incomplete {
                index: i.clone(),
                what: format!("Pochhammer base {}", key.base),
                partial: Box::new(out.clone()),
            });
        }
        let idx_terms = key.shift.index_terms();
        if !idx_terms.is_empty() && idx_terms.values().all(|k| *k < 0) {
            let i = idx_terms.keys().next().unwrap().clone();
            return Err(SimError::Incomplete {
                index: i,
                what: format!("all-negative Pochhammer shift {}", key.shift),
                partial: Box::new(out.clone()),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::lf;
    use crate::factors::ProductBuilder;

    fn m() -> Index {
        Index::new("m")
    }
    fn n() -> Index {
        Index::new("n")
    }

    #[test]
    fn gamma_rule_single_index() {
        let x = ProductBuilder::new().gamma(lf("a + n + 2m", &["m", "n"])).build();
        let got = gamma_to_poch(&x, &[n()], false);
        let want = ProductBuilder::new()
            .gamma(lf("a + 2m", &["m"]))
            .poch(lf("a + 2m", &["m"]), lf("n", &["n"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn poch_base_rule() {
        let x = ProductBuilder::new()
            .poch(lf("a + n", &["n"]), lf("m", &["m"]))
            .build();
        let got = gamma_to_poch(&x, &[n()], false);
        let want = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m + n", &["m", "n"]))
            .poch_den(lf("a", &[]), lf("n", &["n"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn gamma_rule_repeated() {
        let x = ProductBuilder::new().gamma(lf("a + n + 2m", &["m", "n"])).build();
        let got = gamma_to_poch(&x, &[n(), m()], true);
        let want = ProductBuilder::new()
            .gamma(lf("a", &[]))
            .poch(lf("a", &[]), lf("2m + n", &["m", "n"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn gamma_rule_no_index() {
        let x = ProductBuilder::new().gamma(lf("a", &[])).build();
        assert_eq!(gamma_to_poch(&x, &[m()], true), x);
    }

    #[test]
    fn positive_poch_golden() {
        let x = ProductBuilder::new()
            .poch(lf("a + b", &[]), lf("-m - 2n", &["m", "n"]))
            .build();
        let got = positive_poch(&x, &[m(), n()]);
        let want = ProductBuilder::new()
            .sign(lf("m + 2n", &["m", "n"]))
            .poch_den(lf("1 - a - b", &[]), lf("m + 2n", &["m", "n"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn positive_poch_leaves_positive() {
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m", &["m"]))
            .build();
        assert_eq!(positive_poch(&x, &[m()]), x);
    }

    #[test]
    fn poch_dim_content_three() {
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("3m", &["m"]))
            .build();
        let got = poch_dim(&x);
        let mut want = ProductBuilder::new()
            .poch(lf("a/3", &[]), lf("m", &["m"]))
            .poch(lf("1/3 + a/3", &[]), lf("m", &["m"]))
            .poch(lf("2/3 + a/3", &[]), lf("m", &["m"]))
            .build();
        want.push_rat_power(Q::int(3), lf("3m", &["m"]));
        assert_eq!(got, want);
    }

    #[test]
    fn poch_dim_extracts_content() {
        // (a)_{3n + 9m}: content 3, L = 3m + n
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("3n + 9m", &["m", "n"]))
            .build();
        let got = poch_dim(&x);
        let mut want = ProductBuilder::new()
            .poch(lf("a/3", &[]), lf("3m + n", &["m", "n"]))
            .poch(lf("1/3 + a/3", &[]), lf("3m + n", &["m", "n"]))
            .poch(lf("2/3 + a/3", &[]), lf("3m + n", &["m", "n"]))
            .build();
        want.push_rat_power(Q::int(3), lf("9m + 3n", &["m", "n"]));
        assert_eq!(got, want);
    }

    #[test]
    fn poch_dim_negative_noop() {
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("-3m", &["m"]))
            .build();
        assert_eq!(poch_dim(&x), x);
    }

    #[test]
    fn unsim_golden() {
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("2m + 3n + p", &["m", "n", "p"]))
            .build();
        let got = unsim(&x, &n());
        let want = ProductBuilder::new()
            .poch(lf("a", &[]), lf("2m + p", &["m", "p"]))
            .poch(lf("a + 2m + p", &["m", "p"]), lf("3n", &["n"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn unsim_absent_index() {
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m", &["m"]))
            .build();
        assert_eq!(unsim(&x, &n()), x);
    }

    #[test]
    fn unsim_round_trip_via_gamma_rule() {
        // unsim splits (a)_{m+n}; the Pochhammer base rule restores it
        let x = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m + n", &["m", "n"]))
            .build();
        let split = unsim(&x, &n());
        let restored = gamma_to_poch(&split, &[n(), m()], true);
        assert_eq!(restored, x);
    }

    #[test]
    fn sim_ratio_of_gammas() {
        // Γ(a+m+p)/Γ(a+m) over {m,p} -> (a)_{m+p}/(a)_m
        let x = ProductBuilder::new()
            .gamma(lf("a + m + p", &["m", "p"]))
            .gamma_den(lf("a + m", &["m"]))
            .build();
        let got = sim(&x, &[m(), Index::new("p")]).unwrap();
        let want = ProductBuilder::new()
            .poch(lf("a", &[]), lf("m + p", &["m", "p"]))
            .poch_den(lf("a", &[]), lf("m", &["m"]))
            .build();
        assert_eq!(got, want);
    }

    #[test]
    fn sim_idempotent() {
        let x = ProductBuilder::new()
            .gamma(lf("a + 2m - n", &["m", "n"]))
            .poch(lf("b - m", &["m"]), lf("n", &["n"]))
            .gamma_den(lf("c + m", &["m"]))
            .build();
        let once = sim(&x, &[m(), n()]).unwrap();
        let twice = sim(&once, &[m(), n()]).unwrap();
        assert_eq!(once, twice);
    }
}
