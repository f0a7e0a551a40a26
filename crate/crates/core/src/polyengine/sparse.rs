//! Sparse multivariate polynomials with integer coefficients.
//!
//! Monomials pack up to three exponents into a `u64` (21 bits each, first
//! variable most significant), so the natural key order is lexicographic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::uni::UniPoly;

pub const MAX_VARS: usize = 3;
const BITS: u32 = 21;
const MASK: u64 = (1 << BITS) - 1;

/// Variable names, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    C,
    D,
    E,
    A,
    B,
    T,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::C => "c",
            Var::D => "d",
            Var::E => "e",
            Var::A => "a",
            Var::B => "b",
            Var::T => "t",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Some(match s {
            "c" => Var::C,
            "d" => Var::D,
            "e" => Var::E,
            "a" => Var::A,
            "b" => Var::B,
            "t" => Var::T,
            _ => return None,
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("target degree {target} is below the polynomial degree {degree}")]
    DegreeTooLow { target: u32, degree: u32 },
    #[error("too many variables: {0:?}")]
    TooManyVariables(Vec<Var>),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(Var),
    #[error("polynomial vanishes identically on the line {0}")]
    VanishesOnLine(String),
    #[error("{0}")]
    Other(String),
}

/// Exact polynomial in up to three named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vec<Var>,
    terms: BTreeMap<u64, BigInt>,
}

fn shift(i: usize) -> u32 {
    BITS * (MAX_VARS as u32 - 1 - i as u32)
}

fn pack(exps: &[u32]) -> u64 {
    exps.iter().enumerate().fold(0u64, |acc, (i, &e)| {
        assert!((e as u64) <= MASK, "exponent {e} exceeds packing width");
        acc | ((e as u64) << shift(i))
    })
}

fn unpack(key: u64, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((key >> shift(i)) & MASK) as u32).collect()
}

fn key_degree(key: u64, n: usize) -> u32 {
    (0..n).map(|i| ((key >> shift(i)) & MASK) as u32).sum()
}

impl SparsePoly {
    pub fn zero(vars: &[Var]) -> SparsePoly {
        let mut v = vars.to_vec();
        v.sort();
        v.dedup();
        assert!(v.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        SparsePoly {
            vars: v,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Var], c: impl Into<BigInt>) -> SparsePoly {
        let mut p = SparsePoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn var(vars: &[Var], v: Var) -> SparsePoly {
        let mut p = SparsePoly::zero(vars);
        let i = p.index_of(v).expect("variable in list");
        let mut exps = vec![0; p.vars.len()];
        exps[i] = 1;
        p.terms.insert(pack(&exps), BigInt::one());
        p
    }

    /// Builds from (exponents, coefficient) pairs; exponents follow `vars`
    /// after canonical sorting.
    pub fn from_terms<I, C>(vars: &[Var], terms: I) -> SparsePoly
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = SparsePoly::zero(vars);
        assert_eq!(p.vars.as_slice(), vars, "variables must be given in canonical order");
        for (e, c) in terms {
            p.add_term(pack(&e), c.into());
        }
        p
    }

    fn add_term(&mut self, key: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms as (exponents, coefficient) in lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        let n = self.vars.len();
        self.terms.iter().map(move |(&k, c)| (unpack(k, n), c))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(&pack(exps)).cloned().unwrap_or_default()
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn with_vars(&self, vars: &[Var]) -> SparsePoly {
        let mut target = SparsePoly::zero(vars);
        if target.vars == self.vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.index_of(*v).expect("target variables include the source ones"))
            .collect();
        let n = self.vars.len();
        let m = target.vars.len();
        for (&k, c) in &self.terms {
            let src = unpack(k, n);
            let mut dst = vec![0; m];
            for (i, e) in src.into_iter().enumerate() {
                dst[map[i]] = e;
            }
            target.terms.insert(pack(&dst), c.clone());
        }
        target
    }

    fn unify(&self, other: &SparsePoly) -> (SparsePoly, SparsePoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        vars.sort();
        vars.dedup();
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        if self.vars != other.vars {
            let (a, b) = self.unify(other);
            return a.add(&b);
        }
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> SparsePoly {
        if s.is_zero() {
            return SparsePoly::zero(&self.vars);
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        if self.vars != other.vars {
            let (a, b) = self.unify(other);
            return a.mul(&b);
        }
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(&self.vars);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(small.terms.len() * large.terms.len() / 2 + 1);
        for (&ka, ca) in &small.terms {
            for (&kb, cb) in &large.terms {
                // Packed keys add componentwise as long as no field overflows.
                let key = ka + kb;
                match acc.get_mut(&key) {
                    Some(v) => *v += ca * cb,
                    None => {
                        acc.insert(key, ca * cb);
                    }
                }
            }
        }
        let n = self.vars.len();
        debug_assert!(acc.keys().all(|&k| unpack(k, n).iter().all(|&e| (e as u64) < MASK)));
        SparsePoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut result = SparsePoly::constant(&self.vars, 1);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    pub fn total_degree(&self) -> Result<u32, PolyError> {
        let n = self.vars.len();
        self.terms
            .keys()
            .map(|&k| key_degree(k, n))
            .max()
            .ok_or(PolyError::ZeroPolynomial("degree"))
    }

    pub fn min_total_degree(&self) -> Result<u32, PolyError> {
        let n = self.vars.len();
        self.terms
            .keys()
            .map(|&k| key_degree(k, n))
            .min()
            .ok_or(PolyError::ZeroPolynomial("minimal degree"))
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match self.index_of(v) {
            None => 0,
            Some(i) => self
                .terms
                .keys()
                .map(|&k| ((k >> shift(i)) & MASK) as u32)
                .max()
                .unwrap_or(0),
        }
    }

    /// Homogeneous component of the given total degree.
    pub fn component(&self, degree: u32) -> SparsePoly {
        let n = self.vars.len();
        SparsePoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&k, _)| key_degree(k, n) == degree)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes an integer for one variable, keeping the variable list.
    pub fn substitute(&self, v: Var, value: &BigInt) -> SparsePoly {
        let Some(i) = self.index_of(v) else {
            return self.clone();
        };
        let n = self.vars.len();
        let mut out = SparsePoly::zero(&self.vars);
        for (&k, c) in &self.terms {
            let mut exps = unpack(k, n);
            let e = exps[i];
            exps[i] = 0;
            out.add_term(pack(&exps), c * value.pow(e));
        }
        out
    }

    /// Drops variables that no longer occur.
    pub fn compact(&self) -> SparsePoly {
        let used: Vec<Var> = self
            .vars
            .iter()
            .copied()
            .filter(|&v| self.degree_in(v) > 0)
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let n = self.vars.len();
        let keep: Vec<usize> = used.iter().map(|v| self.index_of(*v).unwrap()).collect();
        let mut out = SparsePoly::zero(&used);
        for (&k, c) in &self.terms {
            let exps = unpack(k, n);
            let e: Vec<u32> = keep.iter().map(|&i| exps[i]).collect();
            out.terms.insert(pack(&e), c.clone());
        }
        out
    }

    /// Converts a polynomial involving at most `v` into a dense univariate one.
    pub fn to_univariate(&self, v: Var) -> Result<UniPoly, PolyError> {
        let n = self.vars.len();
        let i = self.index_of(v);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (&k, c) in &self.terms {
            let exps = unpack(k, n);
            for (j, &e) in exps.iter().enumerate() {
                if Some(j) != i && e > 0 {
                    return Err(PolyError::NotUnivariate(v));
                }
            }
            let e = i.map(|i| exps[i]).unwrap_or(0) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, v: Var) -> SparsePoly {
        SparsePoly::from_terms(
            &[v],
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    /// Adds `new_var` so every monomial has degree `target`
    /// (default: the total degree).
    pub fn homogenize(&self, new_var: Var, target: Option<u32>) -> Result<SparsePoly, PolyError> {
        if self.index_of(new_var).is_some() {
            return Err(PolyError::Other(format!("{new_var} already occurs")));
        }
        let degree = if self.is_zero() { 0 } else { self.total_degree()? };
        let target = target.unwrap_or(degree);
        if target < degree {
            return Err(PolyError::DegreeTooLow { target, degree });
        }
        let mut vars = self.vars.clone();
        vars.push(new_var);
        vars.sort();
        if vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(vars));
        }
        let lifted = self.with_vars(&vars);
        let j = lifted.index_of(new_var).unwrap();
        let m = vars.len();
        let mut out = SparsePoly::zero(&vars);
        for (&k, c) in &lifted.terms {
            let mut exps = unpack(k, m);
            exps[j] = target - exps.iter().sum::<u32>();
            out.terms.insert(pack(&exps), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at integer values for every variable (in `vars` order).
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let n = self.vars.len();
        assert_eq!(point.len(), n);
        self.terms
            .iter()
            .map(|(&k, c)| {
                unpack(k, n)
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * x.pow(e))
            })
            .sum()
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Terms sorted graded-lex descending.
    pub fn sorted_terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let n = self.vars.len();
        let mut t: Vec<(u32, u64, &BigInt)> = self.terms.iter().map(|(&k, c)| (key_degree(k, n), k, c)).collect();
        t.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        t.into_iter().map(|(_, k, c)| (unpack(k, n), c.clone())).collect()
    }

    /// Primitive part with positive leading coefficient under graded lex.
    pub fn normalize(&self) -> SparsePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        let lead = &self.sorted_terms()[0].1;
        if lead.is_negative() {
            g = -g;
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(&k, c)| (k, c / &g)).collect(),
        }
    }

    /// True when `self = ±other`.
    pub fn equals_up_to_sign(&self, other: &SparsePoly) -> bool {
        let (a, b) = self.unify(other);
        a == b || a == b.neg()
    }

    /// Canonical JSON dump.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mut row: Vec<Value> = e.into_iter().map(|x| json!(x)).collect();
                row.push(Value::String(c.to_string()));
                Value::Array(row)
            })
            .collect();
        json!({
            "vars": self.vars.iter().map(|v| v.name()).collect::<Vec<_>>(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<SparsePoly, PolyError> {
        let bad = || PolyError::Other("malformed polynomial JSON".into());
        let vars: Vec<Var> = v["vars"]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_str().and_then(Var::parse).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        let n = vars.len();
        let mut p = SparsePoly::zero(&vars);
        if p.vars != vars {
            return Err(bad());
        }
        for row in v["terms"].as_array().ok_or_else(bad)? {
            let row = row.as_array().ok_or_else(bad)?;
            if row.len() != n + 1 {
                return Err(bad());
            }
            let exps: Vec<u32> = row[..n]
                .iter()
                .map(|x| x.as_u64().map(|e| e as u32).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            let c: BigInt = row[n].as_str().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            p.add_term(pack(&exps), c);
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.vars.iter().zip(&exps) {
                match e {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    _ => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({self})", self.vars.iter().map(|v| v.name()).collect::<Vec<_>>().join(","))
    }
}

/// Parses expressions like `1 + c + d` or `c^2 - 4*c*d` over the given
/// variables. Intended for tests and small inputs.
pub fn parse_poly(vars: &[Var], s: &str) -> Result<SparsePoly, PolyError> {
    let mut p = SparsePoly::zero(vars);
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let bad = |t: &str| PolyError::Other(format!("cannot parse term `{t}`"));
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let mut coef = BigInt::from(sign);
        let mut exps = vec![0u32; p.vars.len()];
        for factor in body.split('*') {
            if let Ok(n) = factor.parse::<BigInt>() {
                coef *= n;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad(&t))?),
                None => (factor, 1),
            };
            let v = Var::parse(name).ok_or_else(|| bad(&t))?;
            let i = p.index_of(v).ok_or_else(|| bad(&t))?;
            exps[i] += e;
        }
        p.add_term(pack(&exps), coef);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CD: [Var; 2] = [Var::C, Var::D];

    fn poly(s: &str) -> SparsePoly {
        parse_poly(&CD, s).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let p = poly("1 + c + d");
        let q = p.mul(&p);
        assert_eq!(q, poly("1 + 2*c + 2*d + c^2 + 2*c*d + d^2"));
        assert_eq!(q.to_string(), "c^2 + 2*c*d + d^2 + 2*c + 2*d + 1");
        assert!(p.sub(&p).is_zero());
        assert_eq!(q.total_degree().unwrap(), 2);
        assert_eq!(q.min_total_degree().unwrap(), 0);
        assert_eq!(poly("c^3 - 4*c*d").degree_in(Var::D), 1);
    }

    #[test]
    fn homogenize_examples() {
        let h = poly("1 + c + d").homogenize(Var::E, None).unwrap();
        assert_eq!(h, parse_poly(&[Var::C, Var::D, Var::E], "e + c + d").unwrap());
        let g = poly("c + c^2 + c*d + 2*d");
        assert_eq!(
            g.homogenize(Var::E, Some(2)).unwrap(),
            parse_poly(&[Var::C, Var::D, Var::E], "c^2 + c*d + c*e + 2*d*e").unwrap()
        );
        let one = SparsePoly::constant(&CD, 1);
        assert_eq!(
            one.homogenize(Var::E, Some(0)).unwrap(),
            SparsePoly::constant(&[Var::C, Var::D, Var::E], 1)
        );
        assert!(poly("c^2").homogenize(Var::E, Some(1)).is_err());
    }

    #[test]
    fn json_is_sorted_and_roundtrips() {
        let p = poly("3 - c + 2*c*d^2 + d^3");
        let j = p.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"vars":["c","d"],"terms":[[1,2,"2"],[0,3,"1"],[1,0,"-1"],[0,0,"3"]]}"#
        );
        assert_eq!(SparsePoly::from_json(&j).unwrap(), p);
    }

    #[test]
    fn substitution_and_univariate() {
        let p = poly("c^2 + c*d + 2*d");
        let r = p.substitute(Var::D, &BigInt::zero());
        assert_eq!(r.to_univariate(Var::C).unwrap().coeffs(), &[0, 0, 1].map(BigInt::from));
        assert!(p.to_univariate(Var::C).is_err());
        assert_eq!(p.eval(&[BigInt::from(2), BigInt::from(3)]), BigInt::from(16));
    }

    #[test]
    fn normalization() {
        let p = poly("-2*c^2 + 4*d");
        assert_eq!(p.normalize(), poly("c^2 - 2*d"));
        assert!(p.equals_up_to_sign(&p.neg()));
    }

    proptest! {
        #[test]
        fn ring_laws(a in prop::collection::vec(-5i64..5, 6), b in prop::collection::vec(-5i64..5, 6),
                     c in prop::collection::vec(-5i64..5, 6)) {
            let mk = |v: &[i64]| SparsePoly::from_terms(&CD, [
                (vec![0, 0], v[0]), (vec![1, 0], v[1]), (vec![0, 1], v[2]),
                (vec![2, 0], v[3]), (vec![1, 1], v[4]), (vec![0, 3], v[5]),
            ]);
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            let pt = [BigInt::from(3), BigInt::from(-2)];
            prop_assert_eq!(x.mul(&y).eval(&pt), x.eval(&pt) * y.eval(&pt));
        }
    }
}
