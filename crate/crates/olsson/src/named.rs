//! Textbook constructors for the classical double hypergeometric series
//! (Appell F1–F4, Horn G1–G3 and H1–H7, the seven confluent Humbert
//! series) plus Lauricella and one-variable ₚFq builders. Parameter and
//! variable names are caller-chosen strings; indices default to the usual
//! `m`, `n`.

use crate::expr::{Index, LinearForm, Param};
use crate::factors::{FactorProduct, ProductBuilder};
use crate::series::HypSeries;
use crate::varexpr::VarExpr;

fn p(name: &str) -> LinearForm {
    LinearForm::param(Param::new(name))
}

fn i(name: &str) -> LinearForm {
    LinearForm::index(Index::new(name))
}

/// Builds a two-index series from shift descriptors. `num`/`den` list
/// (parameter name, m-coefficient, n-coefficient) triples.
pub fn double_series(
    num: &[(&str, i64, i64)],
    den: &[(&str, i64, i64)],
    x: &str,
    y: &str,
    m: &str,
    n: &str,
) -> HypSeries {
    let mi = Index::new(m);
    let ni = Index::new(n);
    let shift = |cm: i64, cn: i64| {
        LinearForm::index_scaled(mi.clone(), cm).add(&LinearForm::index_scaled(ni.clone(), cn))
    };
    let mut b = ProductBuilder::new();
    for (name, cm, cn) in num {
        b = b.poch(p(name), shift(*cm, *cn));
    }
    for (name, cm, cn) in den {
        b = b.poch_den(p(name), shift(*cm, *cn));
    }
    let fp = b
        .fact_den(&mi)
        .fact_den(&ni)
        .power(VarExpr::var(x), i(m))
        .power(VarExpr::var(y), i(n))
        .build();
    HypSeries::from_summand(vec![mi, ni], fp)
}

pub fn appell_f1(a: &str, b: &str, bp: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 1, 1), (b, 1, 0), (bp, 0, 1)], &[(c, 1, 1)], x, y, m, n)
}

pub fn appell_f2(a: &str, b1: &str, b2: &str, c1: &str, c2: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, 1), (b1, 1, 0), (b2, 0, 1)],
        &[(c1, 1, 0), (c2, 0, 1)],
        x,
        y,
        m,
        n,
    )
}

pub fn appell_f3(a1: &str, a2: &str, b1: &str, b2: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a1, 1, 0), (a2, 0, 1), (b1, 1, 0), (b2, 0, 1)],
        &[(c, 1, 1)],
        x,
        y,
        m,
        n,
    )
}

pub fn appell_f4(a: &str, b: &str, c1: &str, c2: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, 1), (b, 1, 1)],
        &[(c1, 1, 0), (c2, 0, 1)],
        x,
        y,
        m,
        n,
    )
}

pub fn horn_g1(a: &str, b: &str, bp: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 1, 1), (b, -1, 1), (bp, 1, -1)], &[], x, y, m, n)
}

pub fn horn_g2(a: &str, ap: &str, b: &str, bp: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, 0), (ap, 0, 1), (b, -1, 1), (bp, 1, -1)],
        &[],
        x,
        y,
        m,
        n,
    )
}

pub fn horn_g3(a: &str, ap: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, -1, 2), (ap, 2, -1)], &[], x, y, m, n)
}

pub fn horn_h1(a: &str, b: &str, c: &str, d: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, -1), (b, 1, 1), (c, 0, 1)],
        &[(d, 1, 0)],
        x,
        y,
        m,
        n,
    )
}

pub fn horn_h2(a: &str, b: &str, c: &str, d: &str, e: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, -1), (b, 1, 0), (c, 0, 1), (d, 0, 1)],
        &[(e, 1, 0)],
        x,
        y,
        m,
        n,
    )
}

pub fn horn_h3(a: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 2, 1), (b, 0, 1)], &[(c, 1, 1)], x, y, m, n)
}

pub fn horn_h4(a: &str, b: &str, c: &str, d: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 2, 1), (b, 0, 1)], &[(c, 1, 0), (d, 0, 1)], x, y, m, n)
}

pub fn horn_h5(a: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 2, 1), (b, -1, 1)], &[(c, 0, 1)], x, y, m, n)
}

pub fn horn_h6(a: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 2, -1), (b, -1, 1), (c, 0, 1)], &[], x, y, m, n)
}

pub fn horn_h7(a: &str, b: &str, c: &str, d: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 2, -1), (b, 0, 1), (c, 0, 1)],
        &[(d, 1, 0)],
        x,
        y,
        m,
        n,
    )
}

// The seven confluent (Humbert) double series.

pub fn humbert_phi1(a: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 1, 1), (b, 1, 0)], &[(c, 1, 1)], x, y, m, n)
}

pub fn humbert_phi2(b: &str, bp: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(b, 1, 0), (bp, 0, 1)], &[(c, 1, 1)], x, y, m, n)
}

pub fn humbert_phi3(b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(b, 1, 0)], &[(c, 1, 1)], x, y, m, n)
}

pub fn humbert_psi1(a: &str, b: &str, c: &str, cp: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, 1), (b, 1, 0)],
        &[(c, 1, 0), (cp, 0, 1)],
        x,
        y,
        m,
        n,
    )
}

pub fn humbert_psi2(a: &str, c: &str, cp: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 1, 1)], &[(c, 1, 0), (cp, 0, 1)], x, y, m, n)
}

pub fn humbert_xi1(a: &str, ap: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(
        &[(a, 1, 0), (ap, 0, 1), (b, 1, 0)],
        &[(c, 1, 1)],
        x,
        y,
        m,
        n,
    )
}

pub fn humbert_xi2(a: &str, b: &str, c: &str, x: &str, y: &str, m: &str, n: &str) -> HypSeries {
    double_series(&[(a, 1, 0), (b, 1, 0)], &[(c, 1, 1)], x, y, m, n)
}

/// One-variable ₚFq summand: `∏(aᵢ)_s / (∏(bⱼ)_s s!) · z^s`.
pub fn pfq(upper: &[&str], lower: &[&str], z: &str, s: &str) -> HypSeries {
    let si = Index::new(s);
    let mut b = ProductBuilder::new();
    for a in upper {
        b = b.poch(p(a), i(s));
    }
    for l in lower {
        b = b.poch_den(p(l), i(s));
    }
    let fp = b
        .fact_den(&si)
        .power(VarExpr::var(z), i(s))
        .build();
    HypSeries::from_summand(vec![si], fp)
}

/// Lauricella kind selector for the N-variable builders.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lauricella {
    A,
    B,
    C,
    D,
}

/// N-variable Lauricella series over indices `m1..mN`, variables `x1..xN`.
pub fn lauricella(kind: Lauricella, n_vars: usize) -> HypSeries {
    assert!(n_vars >= 2);
    let indices: Vec<Index> = (1..=n_vars).map(|k| Index::new(&format!("m{k}"))).collect();
    let sum_all = indices
        .iter()
        .fold(LinearForm::zero(), |acc, i| acc.add(&LinearForm::index(i.clone())));
    let mut fp = FactorProduct::one();
    match kind {
        Lauricella::A => {
            fp.push_poch(p("a"), sum_all.clone(), 1);
            for (k, idx) in indices.iter().enumerate() {
                fp.push_poch(p(&format!("b{}", k + 1)), LinearForm::index(idx.clone()), 1);
                fp.push_poch(p(&format!("c{}", k + 1)), LinearForm::index(idx.clone()), -1);
            }
        }
        Lauricella::B => {
            for (k, idx) in indices.iter().enumerate() {
                fp.push_poch(p(&format!("a{}", k + 1)), LinearForm::index(idx.clone()), 1);
                fp.push_poch(p(&format!("b{}", k + 1)), LinearForm::index(idx.clone()), 1);
            }
            fp.push_poch(p("c"), sum_all.clone(), -1);
        }
        Lauricella::C => {
            fp.push_poch(p("a"), sum_all.clone(), 1);
            fp.push_poch(p("b"), sum_all.clone(), 1);
            for (k, idx) in indices.iter().enumerate() {
                fp.push_poch(p(&format!("c{}", k + 1)), LinearForm::index(idx.clone()), -1);
            }
        }
        Lauricella::D => {
            fp.push_poch(p("a"), sum_all.clone(), 1);
            for (k, idx) in indices.iter().enumerate() {
                fp.push_poch(p(&format!("b{}", k + 1)), LinearForm::index(idx.clone()), 1);
            }
            fp.push_poch(p("c"), sum_all.clone(), -1);
        }
    }
    for (k, idx) in indices.iter().enumerate() {
        fp.push_poch(LinearForm::int(1), LinearForm::index(idx.clone()), -1);
        fp.push_power(
            VarExpr::var(&format!("x{}", k + 1)),
            LinearForm::index(idx.clone()),
        );
    }
    HypSeries::from_summand(indices, fp)
}
