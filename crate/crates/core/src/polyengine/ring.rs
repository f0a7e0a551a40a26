//! Rings in which the recursive families can be evaluated.
//!
//! Every family is a straight-line program in two generators x and y
//! (c and d, or a and b). Evaluating it in a ring other than the full
//! polynomial ring gives restrictions, slices, leading forms and bounds
//! without ever expanding the full polynomial.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dense::{self, Domain};
use super::sparse::{SparsePoly, Var};

pub trait PlaneRing {
    type Elem: Clone;

    fn constant_int(&self, v: &BigInt) -> Self::Elem;
    fn x(&self) -> Self::Elem;
    fn y(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn constant(&self, v: i64) -> Self::Elem {
        self.constant_int(&BigInt::from(v))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn scale(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.mul(&self.constant(k), a)
    }

    /// Evaluates a polynomial in the two generators, given by its variables
    /// `(xv, yv)`; any other variable must not occur.
    fn eval_sparse(&self, p: &SparsePoly, xv: Var, yv: Var) -> Self::Elem {
        let xi = p.index_of(xv);
        let yi = p.index_of(yv);
        let mut total = self.constant(0);
        let mut xpow: Vec<Self::Elem> = vec![self.constant(1)];
        let mut ypow: Vec<Self::Elem> = vec![self.constant(1)];
        for (exps, c) in p.terms() {
            for (i, &e) in exps.iter().enumerate() {
                assert!(e == 0 || Some(i) == xi || Some(i) == yi, "foreign variable in evaluated polynomial");
            }
            let ex = xi.map(|i| exps[i]).unwrap_or(0) as usize;
            let ey = yi.map(|i| exps[i]).unwrap_or(0) as usize;
            while xpow.len() <= ex {
                let next = self.mul(xpow.last().unwrap(), &self.x());
                xpow.push(next);
            }
            while ypow.len() <= ey {
                let next = self.mul(ypow.last().unwrap(), &self.y());
                ypow.push(next);
            }
            let term = self.mul(&self.constant_int(c), &self.mul(&xpow[ex], &ypow[ey]));
            total = self.add(&total, &term);
        }
        total
    }
}

/// The full polynomial ring over Z in two named variables.
#[derive(Debug, Clone, Copy)]
pub struct SparseRing {
    pub xv: Var,
    pub yv: Var,
}

impl SparseRing {
    pub const CD: SparseRing = SparseRing { xv: Var::C, yv: Var::D };
    pub const AB: SparseRing = SparseRing { xv: Var::A, yv: Var::B };

    fn vars(&self) -> [Var; 2] {
        let mut v = [self.xv, self.yv];
        v.sort();
        v
    }
}

impl PlaneRing for SparseRing {
    type Elem = SparsePoly;

    fn constant_int(&self, v: &BigInt) -> SparsePoly {
        SparsePoly::constant(&self.vars(), v.clone())
    }
    fn x(&self) -> SparsePoly {
        SparsePoly::var(&self.vars(), self.xv)
    }
    fn y(&self) -> SparsePoly {
        SparsePoly::var(&self.vars(), self.yv)
    }
    fn add(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.add(b)
    }
    fn sub(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.sub(b)
    }
    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        a.mul(b)
    }
}

/// Univariate images: x and y are replaced by fixed polynomials in one
/// variable t over a coefficient domain. Restriction to d = 0 is
/// x ↦ t, y ↦ 0; the slice c = c₀ is x ↦ c₀, y ↦ t.
#[derive(Debug, Clone)]
pub struct SubstRing<K: Domain> {
    pub k: K,
    pub x_image: Vec<K::E>,
    pub y_image: Vec<K::E>,
}

impl<K: Domain> SubstRing<K> {
    pub fn new(k: K, x_image: Vec<K::E>, y_image: Vec<K::E>) -> Self {
        let x_image = dense::trim(&k, x_image);
        let y_image = dense::trim(&k, y_image);
        SubstRing { k, x_image, y_image }
    }

    /// y = 0, x = t.
    pub fn on_x_axis(k: K) -> Self {
        let one = k.one();
        let zero = k.zero();
        SubstRing::new(k, vec![zero, one], Vec::new())
    }

    /// x = value, y = t.
    pub fn slice_x(k: K, value: K::E) -> Self {
        let one = k.one();
        let zero = k.zero();
        SubstRing::new(k, vec![value], vec![zero, one])
    }

    /// y = value, x = t.
    pub fn slice_y(k: K, value: K::E) -> Self {
        let one = k.one();
        let zero = k.zero();
        SubstRing::new(k, vec![zero, one], vec![value])
    }
}

impl<K: Domain> PlaneRing for SubstRing<K> {
    type Elem = Vec<K::E>;

    fn constant_int(&self, v: &BigInt) -> Vec<K::E> {
        dense::trim(&self.k, vec![self.k.from_int(v)])
    }
    fn constant(&self, v: i64) -> Vec<K::E> {
        dense::trim(&self.k, vec![self.k.from_i64(v)])
    }
    fn x(&self) -> Vec<K::E> {
        self.x_image.clone()
    }
    fn y(&self) -> Vec<K::E> {
        self.y_image.clone()
    }
    fn add(&self, a: &Vec<K::E>, b: &Vec<K::E>) -> Vec<K::E> {
        dense::add(&self.k, a, b)
    }
    fn sub(&self, a: &Vec<K::E>, b: &Vec<K::E>) -> Vec<K::E> {
        dense::sub(&self.k, a, b)
    }
    fn mul(&self, a: &Vec<K::E>, b: &Vec<K::E>) -> Vec<K::E> {
        dense::mul(&self.k, a, b)
    }
    fn scale(&self, a: &Vec<K::E>, k: i64) -> Vec<K::E> {
        dense::scale(&self.k, a, &self.k.from_i64(k))
    }
}

/// Evaluation at a point.
#[derive(Debug, Clone)]
pub struct PointRing<K: Domain> {
    pub k: K,
    pub x0: K::E,
    pub y0: K::E,
}

impl<K: Domain> PlaneRing for PointRing<K> {
    type Elem = K::E;

    fn constant_int(&self, v: &BigInt) -> K::E {
        self.k.from_int(v)
    }
    fn constant(&self, v: i64) -> K::E {
        self.k.from_i64(v)
    }
    fn x(&self) -> K::E {
        self.x0.clone()
    }
    fn y(&self) -> K::E {
        self.y0.clone()
    }
    fn add(&self, a: &K::E, b: &K::E) -> K::E {
        self.k.add(a, b)
    }
    fn sub(&self, a: &K::E, b: &K::E) -> K::E {
        self.k.sub(a, b)
    }
    fn mul(&self, a: &K::E, b: &K::E) -> K::E {
        self.k.mul(a, b)
    }
}

/// Value and both first partial derivatives at a point.
#[derive(Debug, Clone)]
pub struct JetRing<K: Domain> {
    pub k: K,
    pub x0: K::E,
    pub y0: K::E,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<E> {
    pub value: E,
    pub dx: E,
    pub dy: E,
}

impl<K: Domain> PlaneRing for JetRing<K> {
    type Elem = Jet<K::E>;

    fn constant_int(&self, v: &BigInt) -> Jet<K::E> {
        Jet {
            value: self.k.from_int(v),
            dx: self.k.zero(),
            dy: self.k.zero(),
        }
    }
    fn x(&self) -> Jet<K::E> {
        Jet {
            value: self.x0.clone(),
            dx: self.k.one(),
            dy: self.k.zero(),
        }
    }
    fn y(&self) -> Jet<K::E> {
        Jet {
            value: self.y0.clone(),
            dx: self.k.zero(),
            dy: self.k.one(),
        }
    }
    fn add(&self, a: &Jet<K::E>, b: &Jet<K::E>) -> Jet<K::E> {
        Jet {
            value: self.k.add(&a.value, &b.value),
            dx: self.k.add(&a.dx, &b.dx),
            dy: self.k.add(&a.dy, &b.dy),
        }
    }
    fn sub(&self, a: &Jet<K::E>, b: &Jet<K::E>) -> Jet<K::E> {
        Jet {
            value: self.k.sub(&a.value, &b.value),
            dx: self.k.sub(&a.dx, &b.dx),
            dy: self.k.sub(&a.dy, &b.dy),
        }
    }
    fn mul(&self, a: &Jet<K::E>, b: &Jet<K::E>) -> Jet<K::E> {
        let k = &self.k;
        Jet {
            value: k.mul(&a.value, &b.value),
            dx: k.add(&k.mul(&a.dx, &b.value), &k.mul(&a.value, &b.dx)),
            dy: k.add(&k.mul(&a.dy, &b.value), &k.mul(&a.value, &b.dy)),
        }
    }
}

/// Extreme homogeneous component at a nominal degree.
///
/// An element is `(D, H)` with H the degree-D component of the true value
/// and every other component strictly on the far side of D. When H is
/// nonzero, D is the exact degree (or order) and H the exact form;
/// when H cancels to zero the nominal D is only a bound.
#[derive(Debug, Clone)]
pub struct FormRing<K: Domain> {
    pub k: K,
    pub top: bool,
}

/// A homogeneous form of degree `degree`, stored by x-exponent:
/// `coeffs[i]` multiplies x^i y^(degree−i).
#[derive(Debug, Clone, PartialEq)]
pub struct Form<E> {
    pub degree: i64,
    pub coeffs: Vec<E>,
}

impl<E> Form<E> {
    pub fn is_zero_form(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<K: Domain> FormRing<K> {
    pub fn top(k: K) -> Self {
        FormRing { k, top: true }
    }

    pub fn bottom(k: K) -> Self {
        FormRing { k, top: false }
    }

    fn padded(&self, f: &Form<K::E>) -> Vec<K::E> {
        let mut v = f.coeffs.clone();
        v.resize(f.degree.max(0) as usize + 1, self.k.zero());
        v
    }
}

impl<K: Domain> PlaneRing for FormRing<K> {
    /// `None` is the exact zero element.
    type Elem = Option<Form<K::E>>;

    fn constant_int(&self, v: &BigInt) -> Self::Elem {
        let c = self.k.from_int(v);
        if v.is_zero() {
            None
        } else {
            Some(Form {
                degree: 0,
                coeffs: dense::trim(&self.k, vec![c]),
            })
        }
    }
    fn x(&self) -> Self::Elem {
        Some(Form {
            degree: 1,
            coeffs: vec![self.k.zero(), self.k.one()],
        })
    }
    fn y(&self) -> Self::Elem {
        Some(Form {
            degree: 1,
            coeffs: vec![self.k.one()],
        })
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (None, x) | (x, None) => x.clone(),
            (Some(fa), Some(fb)) => {
                let pick_a = if self.top { fa.degree > fb.degree } else { fa.degree < fb.degree };
                let pick_b = if self.top { fb.degree > fa.degree } else { fb.degree < fa.degree };
                if pick_a {
                    Some(fa.clone())
                } else if pick_b {
                    Some(fb.clone())
                } else {
                    Some(Form {
                        degree: fa.degree,
                        coeffs: dense::trim(&self.k, dense::add(&self.k, &self.padded(fa), &self.padded(fb))),
                    })
                }
            }
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let nb = b.as_ref().map(|f| Form {
            degree: f.degree,
            coeffs: f.coeffs.iter().map(|c| self.k.neg(c)).collect(),
        });
        self.add(a, &nb)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (Some(fa), Some(fb)) => Some(Form {
                degree: fa.degree + fb.degree,
                coeffs: dense::mul(&self.k, &fa.coeffs, &fb.coeffs),
            }),
            _ => None,
        }
    }
}

/// Upper bound on the sum of absolute values of the coefficients.
#[derive(Debug, Clone, Copy, Default)]
pub struct NormRing;

impl PlaneRing for NormRing {
    type Elem = BigInt;

    fn constant_int(&self, v: &BigInt) -> BigInt {
        v.abs()
    }
    fn x(&self) -> BigInt {
        BigInt::from(1)
    }
    fn y(&self) -> BigInt {
        BigInt::from(1)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

/// Upper bounds on (total degree, degree in x, degree in y).
#[derive(Debug, Clone, Copy, Default)]
pub struct DegreeBoundRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeBound {
    pub total: u64,
    pub x: u64,
    pub y: u64,
}

impl PlaneRing for DegreeBoundRing {
    /// `None` is the zero element.
    type Elem = Option<DegreeBound>;

    fn constant_int(&self, v: &BigInt) -> Self::Elem {
        (!v.is_zero()).then_some(DegreeBound { total: 0, x: 0, y: 0 })
    }
    fn x(&self) -> Self::Elem {
        Some(DegreeBound { total: 1, x: 1, y: 0 })
    }
    fn y(&self) -> Self::Elem {
        Some(DegreeBound { total: 1, x: 0, y: 1 })
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (None, x) | (x, None) => *x,
            (Some(p), Some(q)) => Some(DegreeBound {
                total: p.total.max(q.total),
                x: p.x.max(q.x),
                y: p.y.max(q.y),
            }),
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        match (a, b) {
            (Some(p), Some(q)) => Some(DegreeBound {
                total: p.total + q.total,
                x: p.x + q.x,
                y: p.y + q.y,
            }),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::PrimeField;
    use crate::polyengine::dense::Integers;
    use crate::polyengine::sparse::parse_poly;

    fn sample<R: PlaneRing>(r: &R) -> R::Elem {
        // (x + y)^2 - 4xy + 3y^3
        let s = r.add(&r.x(), &r.y());
        let t = r.sub(&r.square(&s), &r.scale(&r.mul(&r.x(), &r.y()), 4));
        r.add(&t, &r.scale(&r.mul(&r.y(), &r.square(&r.y())), 3))
    }

    #[test]
    fn rings_agree_with_full_polynomial() {
        let full = sample(&SparseRing::CD);
        assert_eq!(full, parse_poly(&[Var::C, Var::D], "c^2 - 2*c*d + d^2 + 3*d^3").unwrap());
        let k = Integers;
        let restricted = sample(&SubstRing::on_x_axis(k));
        assert_eq!(restricted, vec![0.into(), 0.into(), 1.into()]);
        let slice = sample(&SubstRing::slice_x(k, BigInt::from(2)));
        assert_eq!(slice, vec![4, -4, 1, 3].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let point = sample(&PointRing { k, x0: 2.into(), y0: 1.into() });
        assert_eq!(point, BigInt::from(4));
        let jet = sample(&JetRing { k, x0: 2.into(), y0: 1.into() });
        assert_eq!(jet.dx, BigInt::from(2));
        assert_eq!(jet.dy, BigInt::from(7));
        let top = sample(&FormRing::top(k)).unwrap();
        assert_eq!((top.degree, top.coeffs.len()), (3, 1));
        let bottom = sample(&FormRing::bottom(k)).unwrap();
        assert_eq!(bottom.degree, 2);
        assert_eq!(bottom.coeffs, vec![1, -2, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(sample(&NormRing), BigInt::from(11));
        let db = sample(&DegreeBoundRing).unwrap();
        assert_eq!((db.total, db.x, db.y), (3, 2, 3));
        let f = PrimeField::new(101);
        let m = sample(&SubstRing::slice_x(f, 2));
        assert_eq!(m, vec![4, 97, 1, 3]);
    }

    #[test]
    fn cancellation_is_visible_in_forms() {
        let k = Integers;
        let r = FormRing::top(k);
        let z = r.sub(&r.square(&r.x()), &r.square(&r.x()));
        assert_eq!(z.unwrap().coeffs.len(), 0);
    }
}
