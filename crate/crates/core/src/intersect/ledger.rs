//! Bezout ledgers: product of projective degrees, boundary intersection
//! multiplicities, and the residual count inside the chart d ≠ 0.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::elim::coefficients_in;
use super::oracle::d_zero_locus;
use crate::counts::{nu, nu_prime, Variant};
use crate::exactcore::{gcd_u64, pow2, ExactInt, NumberError};
use crate::polyengine::cyclo::cpq_minimal_uni;
use crate::polyengine::families::closed_form_degree;
use crate::polyengine::uni::gcd;
use crate::polyengine::{family_poly, Budget, FamilyError, FamilyId, SparsePoly, UniPoly, Var};

/// A curve pair whose affine intersections are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    /// 𝒳_n ∩ 𝒴_m: P_n against G_m.
    IV { n: u64, m: u64 },
    /// 𝒫_j ∩ 𝒬_{m−j}: cP_j + 2dQ_j against R_{m−j}.
    II { m: u64, j: u64 },
}

impl Case {
    pub fn validate(&self) -> Result<(), LedgerError> {
        match *self {
            Case::IV { n, m } if n >= 3 && n <= m => Ok(()),
            Case::II { m, j } if m >= 3 && j >= 1 && j < m => Ok(()),
            _ => Err(LedgerError::Domain(format!("{self} is outside 3 <= n <= m (IV) or m >= 3, 1 <= j < m (II)"))),
        }
    }

    pub fn families(&self) -> [(FamilyId, u32); 2] {
        match *self {
            Case::IV { n, m } => [(FamilyId::P, n as u32), (FamilyId::G, m as u32)],
            Case::II { m, j } => [(FamilyId::CPplus2dQ, j as u32), (FamilyId::R, (m - j) as u32)],
        }
    }

    pub fn curves(&self, budget: &Budget) -> Result<(SparsePoly, SparsePoly), LedgerError> {
        self.validate()?;
        let [(a, i), (b, k)] = self.families();
        Ok((family_poly(a, i, None, budget)?, family_poly(b, k, None, budget)?))
    }

    pub fn degrees(&self) -> (ExactInt, ExactInt) {
        let [(a, i), (b, k)] = self.families();
        (
            closed_form_degree(a, i).expect("closed-form degree"),
            closed_form_degree(b, k).expect("closed-form degree"),
        )
    }

    pub fn bezout_product(&self) -> ExactInt {
        let (a, b) = self.degrees();
        a * b
    }

    /// Largest q whose points c_{p,q} can lie on both curves.
    fn q_max(&self) -> u64 {
        match *self {
            Case::IV { n, m } => n.min(m),
            Case::II { m, j } => j.max(m - j),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::IV { n, m } => write!(f, "IV({n},{m})"),
            Case::II { m, j } => write!(f, "II({m},{j})"),
        }
    }
}

impl FromStr for Case {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Case, LedgerError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        let bad = || LedgerError::Domain(format!("cannot parse case `{s}` (expected IV(n,m) or II(m,j))"));
        let (kind, rest) = if let Some(r) = t.strip_prefix("IV(") {
            ("IV", r)
        } else if let Some(r) = t.strip_prefix("II(") {
            ("II", r)
        } else {
            return Err(bad());
        };
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: u64 = a.parse().map_err(|_| bad())?;
        let b: u64 = b.parse().map_err(|_| bad())?;
        let case = if kind == "IV" { Case::IV { n: a, m: b } } else { Case::II { m: a, j: b } };
        case.validate()?;
        Ok(case)
    }
}

impl Serialize for Case {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Case {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Case, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    AtInfinityLine,
    Origin00,
    /// The point [0:1:0].
    VertexD,
    /// c = c_{p,q} on the line d = 0, one of the φ(q)/2 conjugates (p < q/2).
    Cpq { q: u64, p: u64 },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::AtInfinityLine => write!(f, "line at infinity"),
            Location::Origin00 => write!(f, "(0,0)"),
            Location::VertexD => write!(f, "[0:1:0]"),
            Location::Cpq { q, p } => write!(f, "c_{{{p},{q}}}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicitySource {
    ClosedForm,
    ExactLocal,
}

impl FromStr for MultiplicitySource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "closed-form" | "closed" => Ok(MultiplicitySource::ClosedForm),
            "exact-local" | "exact" => Ok(MultiplicitySource::ExactLocal),
            other => Err(format!("unknown multiplicity source `{other}` (expected closed-form|exact-local)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryItem {
    pub location: Location,
    #[serde(with = "crate::exactcore::decimal")]
    pub multiplicity: ExactInt,
    pub source: MultiplicitySource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutLedger {
    pub case: Case,
    /// Present only when some multiplicity depends on the ν′ variant.
    pub variant: Option<Variant>,
    pub source: MultiplicitySource,
    #[serde(with = "crate::exactcore::decimal")]
    pub degree_first: ExactInt,
    #[serde(with = "crate::exactcore::decimal")]
    pub degree_second: ExactInt,
    #[serde(with = "crate::exactcore::decimal")]
    pub product: ExactInt,
    pub items: Vec<BoundaryItem>,
    #[serde(with = "crate::exactcore::decimal")]
    pub residual: ExactInt,
}

impl BezoutLedger {
    pub fn boundary_total(&self) -> ExactInt {
        self.items.iter().map(|i| &i.multiplicity).sum()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LedgerError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{case}: {detail}")]
    Inconsistent { case: String, detail: String },
    #[error("{case}: local multiplicity at {location} needs more than a tangent-cone argument")]
    Unsupported { case: String, location: String },
}

/// Numerators p with 1 ≤ p < q/2 and gcd(p, q) = 1.
pub fn conjugate_numerators(q: u64) -> Vec<u64> {
    (1..q).filter(|&p| 2 * p < q && gcd_u64(p, q) == 1).collect()
}

fn locations(case: &Case) -> Vec<Location> {
    let mut out = vec![Location::AtInfinityLine];
    if let Case::II { .. } = case {
        out.push(Location::Origin00);
        out.push(Location::VertexD);
    }
    for q in 3..=case.q_max() {
        for p in conjugate_numerators(q) {
            out.push(Location::Cpq { q, p });
        }
    }
    out
}

fn closed_form_multiplicity(case: &Case, loc: Location, variant: Variant) -> Result<ExactInt, LedgerError> {
    Ok(match (*case, loc) {
        (_, Location::AtInfinityLine) => ExactInt::zero(),
        (Case::IV { n, m }, Location::Cpq { q, .. }) => nu(q, n)? * nu(q, m)?,
        (Case::II { m, j }, Location::Origin00) => pow2(m - j - 1),
        (Case::II { m, j }, Location::VertexD) => {
            // (1/6)(1 − (−1)^j)(2^{m−j} − (−1)^{m−j})
            if j % 2 == 0 {
                ExactInt::zero()
            } else {
                let k = m - j;
                let s = if k % 2 == 0 { ExactInt::one() } else { -ExactInt::one() };
                (pow2(k) - s) / 3
            }
        }
        (Case::II { m, j }, Location::Cpq { q, .. }) => nu_prime(q, j, variant)? * nu_prime(q, m - j, variant)?,
        (Case::IV { .. }, _) => unreachable!("IV ledgers have no {loc} item"),
    })
}

/// Dehomogenizes a binary form in (c, d) at d = 1.
fn at_d_one(form: &SparsePoly) -> UniPoly {
    coefficients_in(form, Var::C, Var::D).into_iter().fold(UniPoly::zero(), |a, r| a.add(&r))
}

fn is_constant(p: &UniPoly) -> bool {
    p.degree().map_or(true, |d| d == 0)
}

/// Whether two binary forms of the given degrees share a linear factor.
fn forms_share_line(f: &SparsePoly, df: u32, g: &SparsePoly, dg: u32) -> bool {
    let (a, b) = (at_d_one(f), at_d_one(g));
    let both_d = a.degree().unwrap_or(0) < df as usize && b.degree().unwrap_or(0) < dg as usize;
    both_d || !is_constant(&gcd(&a, &b))
}

/// Intersection multiplicity at the origin from the tangent cones: the
/// product of the point multiplicities when the cones share no line.
pub fn origin_multiplicity(f: &SparsePoly, g: &SparsePoly) -> Option<ExactInt> {
    let a = f.min_total_degree().ok()?;
    let b = g.min_total_degree().ok()?;
    if a == 0 || b == 0 {
        return Some(ExactInt::zero());
    }
    if forms_share_line(&f.component(a), a, &g.component(b), b) {
        return None;
    }
    Some(ExactInt::from(a) * ExactInt::from(b))
}

/// The curve in the chart d = 1 around [0:1:0], coordinates (c, e) with e
/// stored in the slot of d.
fn vertex_chart(f: &SparsePoly) -> SparsePoly {
    let n = f.total_degree().unwrap_or(0);
    let (ci, di) = (f.index_of(Var::C), f.index_of(Var::D));
    SparsePoly::from_terms(
        &[Var::C, Var::D],
        f.terms().map(|(e, c)| {
            let i = ci.map_or(0, |k| e[k]);
            let j = di.map_or(0, |k| e[k]);
            (vec![i, n - i - j], c.clone())
        }),
    )
}

/// Intersection multiplicity at [0:1:0], from the tangent cones there.
pub fn vertex_multiplicity(f: &SparsePoly, g: &SparsePoly) -> Option<ExactInt> {
    origin_multiplicity(&vertex_chart(f), &vertex_chart(g))
}

fn exponent_of(r: &UniPoly, q: u64) -> Result<usize, LedgerError> {
    if r.is_zero() {
        return Err(LedgerError::Domain("curve contains the line d = 0".into()));
    }
    Ok(r.strip_factor(&cpq_minimal_uni(q)?).0)
}

struct Local {
    f: SparsePoly,
    g: SparsePoly,
    f0: UniPoly,
    g0: UniPoly,
}

fn exact_local_multiplicity(case: &Case, loc: Location, l: &Local) -> Result<ExactInt, LedgerError> {
    let unsupported = || LedgerError::Unsupported { case: case.to_string(), location: loc.to_string() };
    match loc {
        Location::AtInfinityLine => {
            // common points of the top forms other than [0:1:0]
            let (df, dg) = (l.f.total_degree().unwrap_or(0), l.g.total_degree().unwrap_or(0));
            let (tf, tg) = (at_d_one(&l.f.component(df)), at_d_one(&l.g.component(dg)));
            let common = gcd(&tf, &tg);
            let away_from_vertex = common.strip_factor(&UniPoly::monomial(1)).1;
            let both_c_direction = tf.degree().unwrap_or(0) < df as usize && tg.degree().unwrap_or(0) < dg as usize;
            if !is_constant(&away_from_vertex) || both_c_direction {
                return Err(unsupported());
            }
            Ok(ExactInt::zero())
        }
        Location::Origin00 => origin_multiplicity(&l.f, &l.g).ok_or_else(unsupported),
        Location::VertexD => vertex_multiplicity(&l.f, &l.g).ok_or_else(unsupported),
        Location::Cpq { q, .. } => Ok(ExactInt::from(exponent_of(&l.f0, q)? * exponent_of(&l.g0, q)?)),
    }
}

/// Every common point on d = 0 and at infinity must be an item of the ledger.
fn check_coverage(case: &Case, l: &Local, locs: &[Location]) -> Result<(), LedgerError> {
    let mut rest = d_zero_locus(&l.f, &l.g);
    if rest.is_zero() {
        return Err(LedgerError::Inconsistent { case: case.to_string(), detail: "both curves contain d = 0".into() });
    }
    if locs.contains(&Location::Origin00) {
        rest = rest.strip_factor(&UniPoly::monomial(1)).1;
    }
    for q in 3..=case.q_max() {
        rest = rest.strip_factor(&cpq_minimal_uni(q)?).1;
    }
    if !is_constant(&rest) {
        return Err(LedgerError::Inconsistent {
            case: case.to_string(),
            detail: format!("common points on d = 0 outside the ledger: roots of {rest}"),
        });
    }
    if !locs.contains(&Location::VertexD) {
        let m = origin_multiplicity(&vertex_chart(&l.f), &vertex_chart(&l.g));
        if m.map_or(true, |m| !m.is_zero()) {
            return Err(LedgerError::Inconsistent {
                case: case.to_string(),
                detail: "both curves pass through [0:1:0]".into(),
            });
        }
    }
    Ok(())
}

/// The Bezout ledger of a case, with boundary multiplicities either from the
/// closed forms (per ν′ variant) or computed locally from the polynomials.
pub fn bezout_ledger(case: Case, variant: Variant, source: MultiplicitySource) -> Result<BezoutLedger, LedgerError> {
    case.validate()?;
    let locs = locations(&case);
    let items: Vec<BoundaryItem> = match source {
        MultiplicitySource::ClosedForm => locs
            .iter()
            .map(|&location| {
                Ok(BoundaryItem { location, multiplicity: closed_form_multiplicity(&case, location, variant)?, source })
            })
            .collect::<Result<_, LedgerError>>()?,
        MultiplicitySource::ExactLocal => {
            let (f, g) = case.curves(&Budget::default())?;
            let [(a, i), (b, k)] = case.families();
            let l = Local {
                f0: crate::polyengine::certify::restriction_d0(a, i),
                g0: crate::polyengine::certify::restriction_d0(b, k),
                f,
                g,
            };
            check_coverage(&case, &l, &locs)?;
            locs.iter()
                .map(|&location| {
                    Ok(BoundaryItem { location, multiplicity: exact_local_multiplicity(&case, location, &l)?, source })
                })
                .collect::<Result<_, LedgerError>>()?
        }
    };
    let variant_matters = source == MultiplicitySource::ClosedForm && {
        let other = match variant {
            Variant::PaperDisplay => Variant::MarkovRecurrence,
            Variant::MarkovRecurrence => Variant::PaperDisplay,
        };
        locs.iter().zip(&items).any(|(&loc, item)| {
            closed_form_multiplicity(&case, loc, other).map_or(true, |m| m != item.multiplicity)
        })
    };
    let (d1, d2) = case.degrees();
    let product = &d1 * &d2;
    let total: ExactInt = items.iter().map(|i| &i.multiplicity).sum();
    let residual = &product - &total;
    if residual < ExactInt::zero() {
        return Err(LedgerError::Inconsistent {
            case: case.to_string(),
            detail: format!("boundary multiplicities {total} exceed the Bezout product {product}"),
        });
    }
    Ok(BezoutLedger {
        case,
        variant: variant_matters.then_some(variant),
        source,
        degree_first: d1,
        degree_second: d2,
        product,
        items,
        residual,
    })
}

/// Compares two ledgers of the same case item by item.
pub fn compare_items(a: &BezoutLedger, b: &BezoutLedger) -> Vec<(Location, ExactInt, ExactInt)> {
    a.items
        .iter()
        .zip(&b.items)
        .filter(|(x, y)| x.multiplicity != y.multiplicity)
        .map(|(x, y)| (x.location, x.multiplicity.clone(), y.multiplicity.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mults(l: &BezoutLedger) -> Vec<i64> {
        l.items.iter().map(|i| i64::try_from(&i.multiplicity).unwrap()).collect()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("II(6,3)".parse::<Case>().unwrap(), Case::II { m: 6, j: 3 });
        assert_eq!(" iv( 3 , 4 )".parse::<Case>().unwrap(), Case::IV { n: 3, m: 4 });
        assert!("IV(4,3)".parse::<Case>().is_err());
        assert!("II(3,3)".parse::<Case>().is_err());
        assert_eq!(Case::IV { n: 3, m: 3 }.to_string(), "IV(3,3)");
    }

    #[test]
    fn iv_three_three() {
        let l = bezout_ledger(Case::IV { n: 3, m: 3 }, Variant::PaperDisplay, MultiplicitySource::ClosedForm).unwrap();
        assert_eq!(l.product, 10.into());
        assert_eq!(mults(&l), vec![0, 1]);
        assert_eq!(l.residual, 9.into());
        let e = bezout_ledger(Case::IV { n: 3, m: 3 }, Variant::PaperDisplay, MultiplicitySource::ExactLocal).unwrap();
        assert_eq!(mults(&e), vec![0, 1]);
    }

    #[test]
    fn ii_six_three_per_source() {
        let case = Case::II { m: 6, j: 3 };
        let p = bezout_ledger(case, Variant::PaperDisplay, MultiplicitySource::ClosedForm).unwrap();
        assert_eq!(p.product, 18.into());
        assert_eq!(mults(&p), vec![0, 4, 3, 0]);
        assert_eq!(p.residual, 11.into());
        assert_eq!(p.variant, Some(Variant::PaperDisplay));
        let m = bezout_ledger(case, Variant::MarkovRecurrence, MultiplicitySource::ClosedForm).unwrap();
        assert_eq!(m.residual, 10.into());
        let e = bezout_ledger(case, Variant::PaperDisplay, MultiplicitySource::ExactLocal).unwrap();
        assert_eq!(mults(&e), vec![0, 4, 3, 1]);
        assert_eq!(e.residual, 10.into());
        assert!(compare_items(&e, &m).is_empty());
        assert_eq!(compare_items(&e, &p).len(), 1);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_numerators(3), vec![1]);
        assert_eq!(conjugate_numerators(7), vec![1, 2, 3]);
        assert_eq!(conjugate_numerators(8), vec![1, 3]);
        assert_eq!(conjugate_numerators(12), vec![1, 5]);
    }
}
