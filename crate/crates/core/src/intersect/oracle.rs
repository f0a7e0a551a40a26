//! Numerical count of the affine intersection points of two plane curves.
//!
//! One variable is eliminated by an exact resultant; the other coordinate
//! of each point is recovered from a slice whose exact degree profile is
//! known, so no leading or trailing coefficient is ever numerically zero.
//! Every point is polished by Newton's method on the pair and validated
//! against both polynomials. The count is repeated with the roles of c and
//! d exchanged and the two must agree.

use serde_json::{json, Value};

use super::elim::{coefficients_in, resultant_uni, ElimError};
use super::mpc::{horner_real, log2_abs, real_zero, Cx, Real};
use super::roots::{aberth, complex_roots, RootError};
use crate::polyengine::uni::{gcd, squarefree_part};
use crate::polyengine::{SparsePoly, UniPoly, Var};

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    pub precision_bits: usize,
    /// Points closer than 2^-dedup_bits (relative) are merged.
    pub dedup_bits: u32,
    pub exclude_d_zero: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { precision_bits: 256, dedup_bits: 64, exclude_d_zero: true }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("elimination directions disagree: {via_d} points eliminating d, {via_c} eliminating c")]
    DirectionMismatch { via_d: usize, via_c: usize },
    #[error("point ({c}, {d}) fails validation: relative residuals 2^{res_f:.1}, 2^{res_g:.1}")]
    ResidualValidation { c: String, d: String, res_f: f64, res_g: f64 },
    #[error("{0} contains a line x = const; resultant slicing is undefined")]
    VerticalComponent(String),
    #[error("a resultant root without a matching point: {0}")]
    LostPoint(String),
    #[error("precision {0} bits cannot resolve the dedup threshold")]
    ClusterAmbiguity(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub c: Cx,
    pub d: Cx,
    /// log2 of |f| and |g| at the point relative to their coefficient scale.
    pub residual_f_log2: f64,
    pub residual_g_log2: f64,
    /// Nonsingular Jacobian, i.e. a transverse intersection.
    pub simple: bool,
}

impl RootCluster {
    pub fn to_json(&self) -> Value {
        let pair = |z: &Cx| {
            let w = z.to_c64();
            json!([format!("{:.17e}", w.re), format!("{:.17e}", w.im)])
        };
        json!({
            "c": pair(&self.c),
            "d": pair(&self.d),
            "residual_f_log2": self.residual_f_log2.max(-1e6).round(),
            "residual_g_log2": self.residual_g_log2.max(-1e6).round(),
            "simple": self.simple,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Intersections {
    pub count: usize,
    /// Points found eliminating d, in canonical order.
    pub points: Vec<RootCluster>,
    pub count_eliminating_c: usize,
}

/// Dense bivariate polynomial: rows[k] holds the x-coefficients of y^k.
struct Biv {
    rows: Vec<Vec<Cx>>,
    abs_rows: Vec<Vec<Real>>,
}

impl Biv {
    fn new(p: &SparsePoly, x: Var, y: Var, prec: usize) -> Biv {
        let rows: Vec<Vec<Cx>> = coefficients_in(p, x, y)
            .iter()
            .map(|u| u.coeffs().iter().map(|c| Cx::from_int(c, prec)).collect())
            .collect();
        let abs_rows = coefficients_in(p, x, y)
            .iter()
            .map(|u| u.coeffs().iter().map(|c| Cx::from_int(&c.magnitude().clone().into(), prec).re).collect())
            .collect();
        Biv { rows, abs_rows }
    }

    /// (p, p_x, p_y) at (x, y).
    fn eval(&self, x: &Cx, y: &Cx, prec: usize) -> (Cx, Cx, Cx) {
        let (mut p, mut px, mut py) = (Cx::zero(prec), Cx::zero(prec), Cx::zero(prec));
        for row in self.rows.iter().rev() {
            let (h, dh) = super::mpc::horner_with_derivative(row, x, prec);
            py = &(&py * y) + &p;
            p = &(&p * y) + &h;
            px = &(&px * y) + &dh;
        }
        (p, px, py)
    }

    fn slice(&self, x: &Cx, lo: usize, hi: usize, prec: usize) -> Vec<Cx> {
        self.rows[lo..=hi].iter().map(|row| super::mpc::horner(row, x, prec)).collect()
    }

    /// log2 of Σ |a_ij| |x|^i |y|^j.
    fn scale_log2(&self, x: &Cx, y: &Cx, prec: usize) -> f64 {
        let (ax, ay) = (x.abs(), y.abs());
        let mut p = real_zero(prec);
        for row in self.abs_rows.iter().rev() {
            p *= &ay;
            p += horner_real(row, &ax, prec);
        }
        log2_abs(&p)
    }

    fn relative_residual(&self, x: &Cx, y: &Cx, prec: usize) -> f64 {
        relative(&self.eval(x, y, prec).0, self.scale_log2(x, y, prec))
    }
}

/// log2 |v| − scale, with an exact zero reported as −∞.
fn relative(v: &Cx, scale: f64) -> f64 {
    if v.is_zero() {
        f64::NEG_INFINITY
    } else {
        v.log2_abs() - scale
    }
}

fn is_constant(p: &UniPoly) -> bool {
    p.degree().map_or(true, |d| d == 0)
}

fn quotient(a: &UniPoly, b: &UniPoly) -> UniPoly {
    a.div_exact(b).expect("gcd divides its argument")
}

/// Splits the squarefree polynomial `s` by the exact y-degree range
/// [lo, hi] of the slice polynomial at its roots.
fn split_profile(s: &UniPoly, rows: &[UniPoly], name: &str) -> Result<Vec<(usize, usize, UniPoly)>, OracleError> {
    let top = rows.len() - 1;
    let mut by_hi = Vec::new();
    let mut rest = s.clone();
    for k in (1..=top).rev() {
        if is_constant(&rest) {
            break;
        }
        let g = gcd(&rest, &rows[k]);
        let piece = quotient(&rest, &g);
        if !is_constant(&piece) {
            by_hi.push((k, piece));
        }
        rest = g;
    }
    if !is_constant(&rest) && !is_constant(&gcd(&rest, &rows[0])) {
        return Err(OracleError::VerticalComponent(name.to_string()));
    }
    let mut out = Vec::new();
    for (hi, piece) in by_hi {
        let mut rest = piece;
        for (lo, row) in rows.iter().enumerate().take(hi) {
            if is_constant(&rest) {
                break;
            }
            let g = gcd(&rest, row);
            let sub = quotient(&rest, &g);
            if !is_constant(&sub) {
                out.push((lo, hi, sub));
            }
            rest = g;
        }
    }
    Ok(out)
}

struct Direction<'a> {
    f: &'a SparsePoly,
    g: &'a SparsePoly,
    x: Var,
    y: Var,
}

/// Exact part of one elimination direction.
struct Prepared<'a> {
    x: Var,
    y: Var,
    h: &'a SparsePoly,
    k: &'a SparsePoly,
    /// Roots carrying a point on y = 0.
    z0: Option<UniPoly>,
    /// (lo, hi, roots that must carry a point, roots that may carry none).
    pieces: Vec<(usize, usize, UniPoly, UniPoly)>,
}

fn prepare<'a>(dir: &Direction<'a>, opts: &OracleOptions) -> Result<Prepared<'a>, OracleError> {
    let (x, y) = (dir.x, dir.y);
    let res = resultant_uni(dir.f, dir.g, y)?;
    let mut s = squarefree_part(&res).primitive();
    if opts.exclude_d_zero && x == Var::D {
        s = s.strip_factor(&UniPoly::monomial(1)).1;
    }
    let (df, dg) = (dir.f.degree_in(y), dir.g.degree_in(y));
    let (h, k) = if dg > 0 && (df == 0 || dg < df) { (dir.g, dir.f) } else { (dir.f, dir.g) };
    let h_rows = coefficients_in(h, x, y);
    let k_rows = coefficients_in(k, x, y);

    let at_zero = gcd(&s, &gcd(&h_rows[0], &k_rows[0]));
    let z0 = (!(opts.exclude_d_zero && y == Var::D) && !is_constant(&at_zero)).then(|| at_zero.clone());
    // roots whose only common points lie on y = 0 or at infinity
    let lead = gcd(&h_rows[h_rows.len() - 1], &k_rows[k_rows.len() - 1]);
    let exempt = lead.mul(&at_zero);

    let mut pieces = Vec::new();
    for (lo, hi, piece) in split_profile(&s, &h_rows, &format!("{h}"))? {
        let may = gcd(&piece, &exempt);
        let must = quotient(&piece, &may);
        pieces.push((lo, hi, must, may));
    }
    Ok(Prepared { x, y, h, k, z0, pieces })
}

fn numeric(p: &Prepared, level: usize) -> Result<Vec<(Cx, Cx)>, OracleError> {
    let work = level + 32;
    let hb = Biv::new(p.h, p.x, p.y, work);
    let kb = Biv::new(p.k, p.x, p.y, work);
    let mut out = Vec::new();
    if let Some(z0) = &p.z0 {
        for xi in complex_roots(z0, level)? {
            out.push((xi, Cx::zero(work)));
        }
    }
    let accept = -(level as f64) / 2.0;
    for (lo, hi, must, may) in &p.pieces {
        for (poly, required) in [(must, *lo < *hi), (may, false)] {
            if is_constant(poly) || lo == hi {
                continue;
            }
            for xi in complex_roots(poly, level)? {
                let xi = xi.with_precision(work);
                let slice = hb.slice(&xi, *lo, *hi, work);
                let before = out.len();
                for yj in aberth(&slice, level)? {
                    let yj = yj.with_precision(work);
                    if kb.relative_residual(&xi, &yj, work) < accept {
                        out.push((xi.clone(), yj));
                    }
                }
                if required && out.len() == before {
                    return Err(OracleError::LostPoint(xi.to_string()));
                }
            }
        }
        if lo == hi && !is_constant(must) {
            return Err(OracleError::LostPoint(format!("{} roots with only y = 0 in the slice", must.degree().unwrap_or(0))));
        }
    }
    let swap = p.x == Var::D;
    Ok(out.into_iter().map(|(a, b)| if swap { (b, a) } else { (a, b) }).collect())
}

/// Newton's method on the pair (f, g) from (c, d). A step that does not
/// reduce the larger relative residual is undone. Returns the point, both
/// residuals and the simple flag.
fn polish(fb: &Biv, gb: &Biv, c: Cx, d: Cx, prec: usize) -> (Cx, Cx, f64, f64, bool) {
    let floor = -(prec as f64) + 16.0;
    let mut best: Option<(Cx, Cx, f64, f64)> = None;
    let (mut c, mut d) = (c, d);
    let mut simple = true;
    for _ in 0..4 {
        let (f, fc, fd) = fb.eval(&c, &d, prec);
        let (g, gc, gd) = gb.eval(&c, &d, prec);
        let rf = relative(&f, fb.scale_log2(&c, &d, prec));
        let rg = relative(&g, gb.scale_log2(&c, &d, prec));
        if let Some((_, _, bf, bg)) = &best {
            if rf.max(rg) >= bf.max(*bg) {
                break;
            }
        }
        best = Some((c.clone(), d.clone(), rf, rg));
        let a = &fc * &gd;
        let b = &fd * &gc;
        let det = &a - &b;
        simple = det.log2_abs() - a.log2_abs().max(b.log2_abs()) > -(prec as f64) / 4.0;
        if rf.max(rg) < floor || det.is_zero() {
            break;
        }
        let dc = &(&(&g * &fd) - &(&f * &gd)) / &det;
        let dd = &(&(&f * &gc) - &(&g * &fc)) / &det;
        c = &c + &dc;
        d = &d + &dd;
    }
    let (c, d, rf, rg) = best.expect("one evaluation");
    (c, d, rf, rg, simple)
}

fn validate(f: &SparsePoly, g: &SparsePoly, raw: Vec<(Cx, Cx)>, opts: &OracleOptions, level: usize) -> Result<Vec<RootCluster>, OracleError> {
    let work = level + 32;
    let limit = -(opts.precision_bits as f64) / 2.0;
    let fb = Biv::new(f, Var::C, Var::D, work);
    let gb = Biv::new(g, Var::C, Var::D, work);
    let mut pts = Vec::new();
    for (c, d) in raw {
        let (c, d, res_f, res_g, simple) = polish(&fb, &gb, c, d, work);
        if res_f > limit || res_g > limit {
            return Err(OracleError::ResidualValidation { c: c.to_string(), d: d.to_string(), res_f, res_g });
        }
        pts.push(RootCluster { c, d, residual_f_log2: res_f, residual_g_log2: res_g, simple });
    }
    Ok(dedup(pts, opts.dedup_bits))
}

fn retryable(e: &OracleError) -> bool {
    matches!(
        e,
        OracleError::ResidualValidation { .. }
            | OracleError::DirectionMismatch { .. }
            | OracleError::LostPoint(_)
            | OracleError::Roots(RootError::NoConvergence { .. })
    )
}

/// Affine intersection points of f and g in (c, d).
///
/// Root finding starts at the requested precision and doubles, up to four
/// times, while validation or the cross-check between directions fails.
pub fn affine_intersections(f: &SparsePoly, g: &SparsePoly, opts: &OracleOptions) -> Result<Intersections, OracleError> {
    if opts.precision_bits < 2 * opts.dedup_bits as usize {
        return Err(OracleError::ClusterAmbiguity(opts.precision_bits));
    }
    let via_d = Direction { f, g, x: Var::C, y: Var::D };
    let via_c = Direction { f, g, x: Var::D, y: Var::C };
    let (a, b) = rayon::join(|| prepare(&via_d, opts), || prepare(&via_c, opts));
    let (a, b) = (a?, b?);
    let mut last = None;
    for level in (0..3).map(|i| opts.precision_bits << i) {
        let attempt = || -> Result<Intersections, OracleError> {
            let (pa, pb) = rayon::join(
                || numeric(&a, level).and_then(|r| validate(f, g, r, opts, level)),
                || numeric(&b, level).and_then(|r| validate(f, g, r, opts, level)),
            );
            let (pa, pb) = (pa?, pb?);
            if pa.len() != pb.len() {
                return Err(OracleError::DirectionMismatch { via_d: pa.len(), via_c: pb.len() });
            }
            Ok(Intersections { count: pa.len(), count_eliminating_c: pb.len(), points: pa })
        };
        match attempt() {
            Ok(r) => return Ok(r),
            Err(e) if retryable(&e) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn dedup(mut pts: Vec<RootCluster>, bits: u32) -> Vec<RootCluster> {
    pts.sort_by(|p, q| p.c.canonical_cmp(&q.c).then(p.d.canonical_cmp(&q.d)));
    let mut out: Vec<RootCluster> = Vec::new();
    for p in pts {
        let near = out.iter().any(|q| {
            let dist = (&p.c - &q.c).log2_abs().max((&p.d - &q.d).log2_abs());
            let size = p.c.log2_abs().max(p.d.log2_abs()).max(0.0);
            dist - size < -(bits as f64)
        });
        if !near {
            out.push(p);
        }
    }
    out
}

/// Common roots of f(c, 0) and g(c, 0), decided exactly: the squarefree gcd.
pub fn d_zero_locus(f: &SparsePoly, g: &SparsePoly) -> UniPoly {
    let f0 = coefficients_in(f, Var::C, Var::D).swap_remove(0);
    let g0 = coefficients_in(g, Var::C, Var::D).swap_remove(0);
    let z = gcd(&f0, &g0);
    if z.is_zero() {
        return z;
    }
    squarefree_part(&z).primitive()
}

/// Number of distinct affine points of f = g = 0 on the line d = 0.
pub fn d_zero_count(f: &SparsePoly, g: &SparsePoly) -> Option<usize> {
    let z = d_zero_locus(f, g);
    if z.is_zero() {
        None
    } else {
        Some(z.degree().unwrap_or(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyengine::families::lr_cubic;
    use crate::polyengine::sparse::parse_poly;
    use crate::polyengine::{family_poly, Budget, FamilyId};
    use num_rational::BigRational;

    fn cd(s: &str) -> SparsePoly {
        parse_poly(&[Var::C, Var::D], s).unwrap()
    }

    fn fam(f: FamilyId, i: u32) -> SparsePoly {
        family_poly(f, i, None, &Budget::default()).unwrap()
    }

    #[test]
    fn conic_and_line() {
        let opts = OracleOptions { exclude_d_zero: false, ..Default::default() };
        let r = affine_intersections(&cd("c^2 + d^2 - 5"), &cd("c - d + 1"), &opts).unwrap();
        assert_eq!(r.count, 2);
        let pts: Vec<_> = r.points.iter().map(|p| (p.c.to_c64().re, p.d.to_c64().re)).collect();
        assert!((pts[0].0 + 2.0).abs() < 1e-30 && (pts[0].1 + 1.0).abs() < 1e-30);
        assert!((pts[1].0 - 1.0).abs() < 1e-30 && (pts[1].1 - 2.0).abs() < 1e-30);
        assert!(r.points.iter().all(|p| p.simple));
        // excluding d = 0 removes nothing here but does remove (1, 0) below
        let r = affine_intersections(&cd("c^2 + d^2 - 1"), &cd("c - d - 1"), &opts).unwrap();
        assert_eq!(r.count, 2);
        let r = affine_intersections(&cd("c^2 + d^2 - 1"), &cd("c - d - 1"), &OracleOptions::default()).unwrap();
        assert_eq!(r.count, 1);
    }

    #[test]
    fn tangency_and_degree_drop() {
        let opts = OracleOptions { exclude_d_zero: false, ..Default::default() };
        // leading coefficient c*d^2 vanishes on c = 0, where a point runs off to infinity
        let r = affine_intersections(&cd("c*d^2 - 1"), &cd("d - c - 1"), &opts).unwrap();
        assert_eq!(r.count, 3);
        // two points with the same c
        let r = affine_intersections(&cd("d^2 - 4"), &cd("c - 3"), &opts).unwrap();
        assert_eq!(r.count, 2);
    }

    #[test]
    fn exact_zeros_and_lines() {
        // c = 0 meets R_2 away from d = 0 only at (0, -1)
        let r = affine_intersections(&cd("c"), &cd("c^4 - 4*c^3*d - 8*c^2*d + 16*c*d^2 + 16*d^3 + 16*d^2"), &OracleOptions::default())
            .unwrap();
        assert_eq!(r.count, 1);
        assert_eq!(r.points[0].d.to_c64().re, -1.0);
    }

    #[test]
    fn period_three_centers() {
        let r = affine_intersections(&fam(FamilyId::P, 3), &fam(FamilyId::G, 1), &OracleOptions::default()).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.count_eliminating_c, 3);
    }

    #[test]
    fn lr_cubic_meets_p3_in_four_points() {
        let lr = lr_cubic(&BigRational::new(1.into(), 2.into())).unwrap();
        let r = affine_intersections(&fam(FamilyId::CPplus2dQ, 3), &lr, &OracleOptions::default()).unwrap();
        assert_eq!(r.count, 4);
    }

    #[test]
    fn iv_three_three() {
        let r = affine_intersections(&fam(FamilyId::P, 3), &fam(FamilyId::G, 3), &OracleOptions::default()).unwrap();
        assert_eq!(r.count, 9);
        assert!(r.points.iter().all(|p| p.simple && p.residual_f_log2 < -128.0));
    }

    #[test]
    fn d_zero_membership_is_exact() {
        assert_eq!(d_zero_count(&cd("c^2 + d - 1"), &cd("c - 1 + d^2")), Some(1));
        assert_eq!(d_zero_count(&cd("d"), &cd("c")), Some(1));
        assert_eq!(d_zero_count(&cd("d"), &cd("c*d")), None);
    }

    #[test]
    fn low_precision_is_refused() {
        let opts = OracleOptions { precision_bits: 100, ..Default::default() };
        assert_eq!(
            affine_intersections(&cd("c"), &cd("d - 1"), &opts),
            Err(OracleError::ClusterAmbiguity(100))
        );
    }
}
