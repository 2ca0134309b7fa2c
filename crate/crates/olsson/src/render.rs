//! Text, grammar and LaTeX renderers.
//!
//! `pretty_*` produce Mathematica-flavoured output (`Pochhammer[a, m + p]`,
//! `Gamma[c]`, `x^m`), the default for the CLI. `grammar_*` emit the input
//! language so that `parse(render(x)) == x`. `latex_*` emit compilable
//! LaTeX fragments.

use crate::expr::LinearForm;
use crate::factors::FactorProduct;
use crate::rat::Q;
use crate::series::{HypSeries, Term, TermSum};
use crate::varexpr::{VarAtom, VarExpr};

fn paren_form(f: &LinearForm) -> String {
    let s = f.to_string();
    if s.contains(' ') {
        format!("({})", s)
    } else {
        s
    }
}

fn push_part(parts: &mut Vec<String>, s: String) {
    if !s.is_empty() {
        parts.push(s);
    }
}

/// Mathematica-style display of a factor product.
pub fn pretty_factors(fp: &FactorProduct) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    if !fp.coeff().is_one() {
        if fp.coeff().is_integer() {
            push_part(&mut num, fp.coeff().to_string());
        } else {
            push_part(&mut num, fp.coeff().numer().to_string());
            push_part(&mut den, fp.coeff().denom().to_string());
        }
    }
    if !fp.sign_exponent().is_zero() {
        push_part(&mut num, format!("(-1)^{}", paren_form(fp.sign_exponent())));
    }
    for (g, e) in fp.gammas() {
        let s = format!("Gamma[{}]", g);
        let target = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            target.push(s.clone());
        }
    }
    for (k, e) in fp.pochs() {
        let s = format!("Pochhammer[{}, {}]", k.base, k.shift);
        let target = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            target.push(s.clone());
        }
    }
    for (b, exp) in fp.rat_powers() {
        push_part(&mut num, format!("{}^{}", b, paren_form(exp)));
    }
    for (b, exp) in fp.powers() {
        let base = b.to_string();
        let base = if base.len() > 1 || b.coeff().is_negative() {
            format!("({})", base)
        } else {
            base
        };
        push_part(&mut num, format!("{}^{}", base, paren_form(exp)));
    }
    if num.is_empty() {
        num.push("1".to_string());
    }
    let n = num.join(" ");
    if den.is_empty() {
        n
    } else if den.len() == 1 && !den[0].contains(' ') {
        format!("{}/{}", n, den[0])
    } else {
        format!("{}/({})", n, den.join(" "))
    }
}

pub fn pretty_series(s: &HypSeries) -> String {
    let mut out = pretty_factors(&s.factors);
    for va in &s.vars {
        if va.expr.is_one() {
            continue;
        }
        let base = va.expr.to_string();
        let base = if base.len() > 1 {
            format!("({})", base)
        } else {
            base
        };
        out.push_str(&format!(" {}^{}", base, paren_form(&va.index_exp)));
    }
    out
}

pub fn pretty_term(t: &Term) -> String {
    if t.prefactor.is_one() {
        pretty_series(&t.series)
    } else {
        format!("{} · Σ[{}]", pretty_factors(&t.prefactor), pretty_series(&t.series))
    }
}

pub fn pretty_termsum(ts: &TermSum) -> String {
    ts.terms
        .iter()
        .map(pretty_term)
        .collect::<Vec<_>>()
        .join("\n + ")
}

// ---------------------------------------------------------------------------
// grammar (round-trippable) rendering

fn grammar_vexpr(v: &VarExpr) -> String {
    v.to_string()
}

pub fn grammar_factors(fp: &FactorProduct) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    if !fp.coeff().is_one() {
        push_part(&mut num, fp.coeff().numer().to_string());
        if !fp.coeff().is_integer() {
            push_part(&mut den, fp.coeff().denom().to_string());
        }
    }
    if !fp.sign_exponent().is_zero() {
        push_part(
            &mut num,
            format!("pow(-1, {})", fp.sign_exponent()),
        );
    }
    for (g, e) in fp.gammas() {
        let s = format!("gamma({})", g);
        let t = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            t.push(s.clone());
        }
    }
    for (k, e) in fp.pochs() {
        let is_fact = k.base == LinearForm::int(1);
        let s = if is_fact {
            format!("fact({})", k.shift)
        } else {
            format!("poch({}, {})", k.base, k.shift)
        };
        let t = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            t.push(s.clone());
        }
    }
    for (b, exp) in fp.rat_powers() {
        push_part(&mut num, format!("pow({}, {})", b, exp));
    }
    for (b, exp) in fp.powers() {
        push_part(&mut num, format!("pow({}, {})", grammar_vexpr(b), exp));
    }
    if num.is_empty() {
        num.push("1".to_string());
    }
    let n = num.join("*");
    if den.is_empty() {
        n
    } else {
        format!("{}/({})", n, den.join("*"))
    }
}

pub fn grammar_series(s: &HypSeries) -> String {
    let canon = s.canonicalize();
    let mut fp = canon.factors.clone();
    for va in &canon.vars {
        fp.push_power(va.expr.clone(), va.index_exp.clone());
    }
    grammar_factors(&fp)
}

// ---------------------------------------------------------------------------
// LaTeX rendering

fn latex_symbol(name: &str) -> String {
    // parameters written `b_p` in the grammar print as primed symbols
    if let Some(stem) = name.strip_suffix("_p") {
        return format!("{}'", latex_symbol(stem));
    }
    if name.len() >= 2 {
        let (head, tail) = name.split_at(1);
        if tail.chars().all(|c| c.is_ascii_digit()) {
            return format!("{}_{{{}}}", head, tail);
        }
    }
    name.to_string()
}

pub fn latex_form(f: &LinearForm) -> String {
    let mut out = String::new();
    let mut first = true;
    let mut put = |coef: &Q, sym: Option<String>| {
        if coef.is_zero() {
            return;
        }
        let neg = coef.is_negative();
        let mag = coef.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match sym {
            None => out.push_str(&latex_q(&mag)),
            Some(s) => {
                if !mag.is_one() {
                    out.push_str(&latex_q(&mag));
                    out.push(' ');
                }
                out.push_str(&s);
            }
        }
    };
    put(f.constant_part(), None);
    for (p, c) in f.param_terms() {
        put(c, Some(latex_symbol(p.name())));
    }
    for (i, k) in f.index_terms() {
        put(&Q::int(*k), Some(latex_symbol(i.name())));
    }
    if first {
        out.push('0');
    }
    out
}

fn latex_q(c: &Q) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

pub fn latex_vexpr(v: &VarExpr) -> String {
    let mut num = String::new();
    let mut den = String::new();
    for (a, e) in v.atoms() {
        let atom = match a {
            VarAtom::Var(name) => latex_symbol(name),
            VarAtom::OneMinus(name) => format!("(1-{})", latex_symbol(name)),
        };
        let part = if e.unsigned_abs() == 1 {
            atom
        } else {
            format!("{}^{{{}}}", atom, e.unsigned_abs())
        };
        if *e > 0 {
            num.push_str(&part);
        } else {
            den.push_str(&part);
        }
    }
    let mut lead = String::new();
    if v.coeff() == &Q::int(-1) && !num.is_empty() {
        lead.push('-');
    } else if !v.coeff().is_one() || num.is_empty() {
        lead = latex_q(v.coeff());
    }
    if den.is_empty() {
        format!("{}{}", lead, num)
    } else {
        format!("{}\\frac{{{}}}{{{}}}", lead, if num.is_empty() { "1".into() } else { num }, den)
    }
}

pub fn latex_factors(fp: &FactorProduct) -> String {
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    if !fp.coeff().is_one() {
        num.push(latex_q(fp.coeff()));
    }
    if !fp.sign_exponent().is_zero() {
        num.push(format!("(-1)^{{{}}}", latex_form(fp.sign_exponent())));
    }
    for (g, e) in fp.gammas() {
        let s = format!("\\Gamma({})", latex_form(g));
        let t = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            t.push(s.clone());
        }
    }
    for (k, e) in fp.pochs() {
        let s = if k.base == LinearForm::int(1) && !k.shift.has_any_index() {
            format!("({})_{{{}}}", latex_form(&k.base), latex_form(&k.shift))
        } else if k.base == LinearForm::int(1) {
            format!("{}!", latex_form(&k.shift))
        } else {
            format!("({})_{{{}}}", latex_form(&k.base), latex_form(&k.shift))
        };
        let t = if *e > 0 { &mut num } else { &mut den };
        for _ in 0..e.unsigned_abs() {
            t.push(s.clone());
        }
    }
    for (b, exp) in fp.rat_powers() {
        num.push(format!("{}^{{{}}}", b, latex_form(exp)));
    }
    for (b, exp) in fp.powers() {
        let base = latex_vexpr(b);
        let base = if base.len() > 1 {
            format!("({})", base)
        } else {
            base
        };
        num.push(format!("{}^{{{}}}", base, latex_form(exp)));
    }
    if num.is_empty() {
        num.push("1".to_string());
    }
    if den.is_empty() {
        num.join(" ")
    } else {
        format!("\\frac{{{}}}{{{}}}", num.join(" "), den.join(" "))
    }
}

pub fn latex_series(s: &HypSeries) -> String {
    let canon = s.canonicalize();
    let idx = canon
        .indices
        .iter()
        .map(|i| latex_symbol(i.name()))
        .collect::<Vec<_>>()
        .join(",");
    let mut body = latex_factors(&canon.factors);
    for va in &canon.vars {
        if va.expr.is_one() {
            continue;
        }
        let base = latex_vexpr(&va.expr);
        let base = if base.len() > 1 {
            format!("\\left({}\\right)", base)
        } else {
            base
        };
        body.push_str(&format!(" {}^{{{}}}", base, latex_form(&va.index_exp)));
    }
    format!("\\sum_{{{}=0}}^{{\\infty}} {}", idx, body)
}

pub fn latex_termsum(ts: &TermSum) -> String {
    ts.terms
        .iter()
        .map(|t| {
            if t.prefactor.is_one() {
                latex_series(&t.series)
            } else {
                format!("{}\\, {}", latex_factors(&t.prefactor), latex_series(&t.series))
            }
        })
        .collect::<Vec<_>>()
        .join("\n + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn grammar_round_trip_f2() {
        let s = named::appell_f2("a", "b1", "b2", "c1", "c2", "x", "y", "m", "p");
        let text = grammar_series(&s);
        let back = crate::grammar::parse_series(&text, &["m", "p"]).unwrap();
        assert_eq!(back, s.canonicalize());
    }

    #[test]
    fn latex_prime_mapping() {
        assert_eq!(latex_symbol("b_p"), "b'");
        assert_eq!(latex_symbol("c2"), "c_{2}");
    }
}
