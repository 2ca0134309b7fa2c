//! Symbolic parameters, summation indices and linear forms.
//!
//! A [`LinearForm`] is the argument of every gamma function and Pochhammer
//! symbol handled by this crate: an exact rational constant, plus rational
//! multiples of parameters, plus integer multiples of summation indices.
//! Zero coefficients are never stored, so structural equality is semantic
//! equality. Parameters are generic: no relation between them is ever
//! assumed, and indices only take non-negative integer values.

use crate::rat::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A symbolic series parameter such as `a`, `b1` or `c2`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Param(pub String);

impl Param {
    pub fn new(name: &str) -> Self {
        Param(name.to_string())
    }
    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A summation index such as `m`, `n` or `p`; always a non-negative integer.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Index(pub String);

impl Index {
    pub fn new(name: &str) -> Self {
        Index(name.to_string())
    }
    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact linear combination `constant + Σ qᵢ·paramᵢ + Σ kⱼ·indexⱼ`
/// with rational `qᵢ` and integer `kⱼ`, kept canonical (no zero entries).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LinearForm {
    constant: Q,
    params: BTreeMap<Param, Q>,
    indices: BTreeMap<Index, i64>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut f = Self::default();
        f.constant = c;
        f
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Q::int(n))
    }

    pub fn param(p: Param) -> Self {
        let mut f = Self::default();
        f.params.insert(p, Q::one());
        f
    }

    pub fn index(i: Index) -> Self {
        let mut f = Self::default();
        f.indices.insert(i, 1);
        f
    }

    pub fn index_scaled(i: Index, k: i64) -> Self {
        let mut f = Self::default();
        if k != 0 {
            f.indices.insert(i, k);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.params.is_empty() && self.indices.is_empty()
    }

    pub fn constant_part(&self) -> &Q {
        &self.constant
    }

    pub fn param_terms(&self) -> &BTreeMap<Param, Q> {
        &self.params
    }

    pub fn index_terms(&self) -> &BTreeMap<Index, i64> {
        &self.indices
    }

    pub fn coeff_of(&self, i: &Index) -> i64 {
        self.indices.get(i).copied().unwrap_or(0)
    }

    pub fn has_index(&self, i: &Index) -> bool {
        self.indices.contains_key(i)
    }

    pub fn has_any_index(&self) -> bool {
        !self.indices.is_empty()
    }

    /// True when the form is an integer combination of indices only.
    pub fn is_index_only(&self) -> bool {
        self.constant.is_zero() && self.params.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.constant += other.constant.clone();
        for (p, c) in &other.params {
            let e = out.params.entry(p.clone()).or_insert_with(Q::zero);
            *e += c.clone();
        }
        for (i, k) in &other.indices {
            *out.indices.entry(i.clone()).or_insert(0) += k;
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LinearForm {
        self.scale(&Q::int(-1))
    }

    pub fn scale(&self, k: &Q) -> LinearForm {
        if k.is_zero() {
            return LinearForm::zero();
        }
        let mut out = LinearForm::default();
        out.constant = &self.constant * k;
        for (p, c) in &self.params {
            out.params.insert(p.clone(), c * k);
        }
        for (i, c) in &self.indices {
            let scaled = (Q::int(*c) * k.clone())
                .to_i64()
                .expect("index coefficients must stay integral under scaling");
            out.indices.insert(i.clone(), scaled);
        }
        out.prune();
        out
    }

    pub fn add_constant(&self, c: &Q) -> LinearForm {
        let mut out = self.clone();
        out.constant += c.clone();
        out
    }

    fn prune(&mut self) {
        self.params.retain(|_, c| !c.is_zero());
        self.indices.retain(|_, k| *k != 0);
    }

    /// Projection onto the given indices (drops constant, parameters and
    /// any index not listed).
    pub fn index_part(&self, indices: &[Index]) -> LinearForm {
        let mut out = LinearForm::default();
        for (i, k) in &self.indices {
            if indices.contains(i) {
                out.indices.insert(i.clone(), *k);
            }
        }
        out
    }

    /// The complement of [`index_part`](Self::index_part): constant,
    /// parameters, and indices not in the list.
    pub fn param_const_part(&self, indices: &[Index]) -> LinearForm {
        let mut out = self.clone();
        out.indices.retain(|i, _| !indices.contains(i));
        out
    }

    /// Substitutes bindings for parameters and indices. Partially bound
    /// forms stay symbolic; call [`as_constant`](Self::as_constant) on the
    /// result to extract a fully bound value.
    pub fn substitute(&self, bindings: &Bindings) -> LinearForm {
        let mut out = LinearForm::default();
        out.constant = self.constant.clone();
        for (p, c) in &self.params {
            match bindings.params.get(p) {
                Some(v) => out.constant += c * v,
                None => {
                    out.params.insert(p.clone(), c.clone());
                }
            }
        }
        for (i, k) in &self.indices {
            match bindings.indices.get(i) {
                Some(v) => out.constant += Q::int(*k) * v,
                None => {
                    out.indices.insert(i.clone(), *k);
                }
            }
        }
        out
    }

    /// Fully bound value, if nothing symbolic remains.
    pub fn as_constant(&self) -> Option<&Q> {
        if self.params.is_empty() && self.indices.is_empty() {
            Some(&self.constant)
        } else {
            None
        }
    }

    pub fn eval_f64(&self, bindings: &Bindings) -> f64 {
        let s = self.substitute(bindings);
        s.as_constant()
            .unwrap_or_else(|| panic!("unbound symbols in {}", s))
            .to_f64()
    }

    /// Content (gcd) of the index coefficients, 0 for index-free forms.
    pub fn index_content(&self) -> i64 {
        let mut g: i64 = 0;
        for k in self.indices.values() {
            g = num_integer::gcd(g, k.abs());
        }
        g
    }
}

/// Parameter and index bindings for substitution and evaluation.
#[derive(Clone, Default, Debug)]
pub struct Bindings {
    pub params: BTreeMap<Param, Q>,
    pub indices: BTreeMap<Index, Q>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn param(mut self, name: &str, v: Q) -> Self {
        self.params.insert(Param::new(name), v);
        self
    }

    pub fn index(mut self, name: &str, v: i64) -> Self {
        self.indices.insert(Index::new(name), Q::int(v));
        self
    }

    pub fn set_index(&mut self, i: &Index, v: i64) {
        self.indices.insert(i.clone(), Q::int(v));
    }
}

impl fmt::Display for LinearForm {
    /// Terms print as constant first, then parameters alphabetically, then
    /// indices alphabetically, so rendered output is deterministic.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, coef: &Q, sym: Option<&str>| -> fmt::Result {
            if coef.is_zero() {
                return Ok(());
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match sym {
                None => write!(f, "{}", mag)?,
                Some(s) => {
                    if mag.is_one() {
                        write!(f, "{}", s)?;
                    } else {
                        write!(f, "{}*{}", mag, s)?;
                    }
                }
            }
            Ok(())
        };
        put(f, &self.constant, None)?;
        for (p, c) in &self.params {
            put(f, c, Some(p.name()))?;
        }
        for (i, k) in &self.indices {
            put(f, &Q::int(*k), Some(i.name()))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Convenience builder: parses forms like `"a + 2m - 1/2"` for tests and
/// internal tables. Parameters are single-letter-or-longer names not in
/// `indices`; anything listed in `indices` becomes an index term.
pub fn lf(text: &str, indices: &[&str]) -> LinearForm {
    crate::grammar::parse_linear_form(text, indices).expect("bad linear form literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn a() -> LinearForm {
        LinearForm::param(Param::new("a"))
    }
    fn m() -> LinearForm {
        LinearForm::index(Index::new("m"))
    }
    fn n() -> LinearForm {
        LinearForm::index(Index::new("n"))
    }

    #[test]
    fn add_cancels() {
        let b = LinearForm::param(Param::new("b"));
        let x = a().add(&m());
        let y = b.add(&m().neg());
        let s = x.add(&y);
        assert_eq!(s, a().add(&b));
        assert!(!s.has_any_index());
    }

    #[test]
    fn add_identity() {
        let x = a().add(&m().scale(&Q::int(2)));
        assert_eq!(x.add(&LinearForm::zero()), x);
    }

    #[test]
    fn rational_coefficients_combine() {
        // (a/3 + m) + (2a/3 + n) = a + m + n
        let x = a().scale(&q(1, 3)).add(&m());
        let y = a().scale(&q(2, 3)).add(&n());
        assert_eq!(x.add(&y), a().add(&m()).add(&n()));
    }

    #[test]
    fn index_projection() {
        let x = a().add(&m().scale(&Q::int(2))).add(&n());
        let proj = x.index_part(&[Index::new("m"), Index::new("n")]);
        assert_eq!(proj, m().scale(&Q::int(2)).add(&n()));
        let rest = x.param_const_part(&[Index::new("m"), Index::new("n")]);
        assert_eq!(rest, a());
        assert_eq!(proj.add(&rest), x);
    }

    #[test]
    fn projection_no_index_content() {
        let x = a().add_constant(&Q::one());
        assert!(x.index_part(&[Index::new("m")]).is_zero());
    }

    #[test]
    fn substitution_full_and_partial() {
        let x = a().add(&m().scale(&Q::int(2)));
        let full = Bindings::new().param("a", q(1, 2)).index("m", 3);
        assert_eq!(x.substitute(&full).as_constant().unwrap(), &q(13, 2));
        let part = Bindings::new().index("m", 0);
        assert_eq!(x.substitute(&part), a());
    }

    #[test]
    fn substitution_derived_value() {
        // c - a - b' at a=1/3, b'=1/5, c=7/2 -> 89/30
        let c = LinearForm::param(Param::new("c"));
        let bp = LinearForm::param(Param::new("b_p"));
        let x = c.sub(&a()).sub(&bp);
        let b = Bindings::new()
            .param("a", q(1, 3))
            .param("b_p", q(1, 5))
            .param("c", q(7, 2));
        assert_eq!(x.substitute(&b).as_constant().unwrap(), &q(89, 30));
    }

    #[test]
    fn display_order() {
        let x = LinearForm::int(1)
            .add(&a().neg())
            .add(&LinearForm::param(Param::new("c")))
            .add(&m().scale(&Q::int(2)));
        assert_eq!(x.to_string(), "1 - a + c + 2*m");
    }

    #[test]
    fn index_content_gcd() {
        let x = m().scale(&Q::int(3)).add(&n().scale(&Q::int(9)));
        assert_eq!(x.index_content(), 3);
        assert_eq!(a().index_content(), 0);
    }
}
