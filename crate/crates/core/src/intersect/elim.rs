//! Exact elimination: resultants of bivariate polynomials.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::modp::{self, PolyCrt, PrimeField, PrimeStream};
use crate::polyengine::dense::Domain;
use crate::polyengine::{SparsePoly, UniPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElimError {
    #[error("{0} does not occur in both polynomials")]
    MissingVariable(Var),
    #[error("expected polynomials in exactly two variables, got {0:?}")]
    NotBivariate(Vec<Var>),
    #[error("the resultant vanishes identically: common component")]
    CommonComponent,
}

/// Coefficients of `p` in powers of `y`, each a dense polynomial in `x`.
pub fn coefficients_in(p: &SparsePoly, x: Var, y: Var) -> Vec<UniPoly> {
    let xi = p.index_of(x);
    let yi = p.index_of(y);
    let dy = p.degree_in(y) as usize;
    let dx = p.degree_in(x) as usize;
    let mut out = vec![vec![BigInt::from(0); dx + 1]; dy + 1];
    for (e, c) in p.terms() {
        let ex = xi.map_or(0, |i| e[i]) as usize;
        let ey = yi.map_or(0, |i| e[i]) as usize;
        out[ey][ex] += c;
    }
    out.into_iter().map(UniPoly::new).collect()
}

fn l1(p: &SparsePoly) -> BigInt {
    p.terms().map(|(_, c)| c.magnitude().clone().into()).fold(BigInt::from(0), |a: BigInt, b: BigInt| a + b)
}

/// Res_y(f, g) as a polynomial in the other variable, by evaluation at
/// integer nodes modulo word primes, interpolation and Chinese
/// remaindering up to a coefficient bound.
pub fn resultant(f: &SparsePoly, g: &SparsePoly, eliminate: Var) -> Result<SparsePoly, ElimError> {
    let mut vars: Vec<Var> = f.vars().iter().chain(g.vars()).copied().collect();
    vars.sort();
    vars.dedup();
    let x = match vars.iter().copied().filter(|&v| v != eliminate).collect::<Vec<_>>().as_slice() {
        [x] => *x,
        [] => Var::C,
        _ => return Err(ElimError::NotBivariate(vars)),
    };
    let y = eliminate;
    let (m, n) = (f.degree_in(y) as usize, g.degree_in(y) as usize);
    if f.is_zero() || g.is_zero() {
        return Err(ElimError::CommonComponent);
    }
    if m == 0 && n == 0 {
        return Ok(SparsePoly::constant(&[x], 1));
    }
    let fc = coefficients_in(f, x, y);
    let gc = coefficients_in(g, x, y);
    let deg_bound = (f.total_degree().unwrap() * g.total_degree().unwrap()) as usize;
    let nodes = deg_bound + 1;
    // |Res|_1 ≤ |f|_1^n |g|_1^m.
    let bound: BigInt = l1(f).pow(n as u32) * l1(g).pow(m as u32) * 2 + 1;
    let mut needed = Vec::new();
    let mut modulus = BigInt::from(1);
    let mut stream = PrimeStream::new();
    while modulus <= bound {
        let p = stream.next().unwrap();
        modulus *= p;
        needed.push(p);
    }
    let images: Vec<(u64, Vec<u64>)> = needed
        .par_iter()
        .map(|&p| {
            let k = PrimeField::new(p);
            let red = |cs: &[UniPoly]| -> Vec<Vec<u64>> {
                cs.iter().map(|u| u.coeffs().iter().map(|c| k.from_int(c)).collect()).collect()
            };
            let (fp, gp) = (red(&fc), red(&gc));
            let xs: Vec<u64> = (0..nodes as u64).collect();
            let ys: Vec<u64> = xs
                .iter()
                .map(|&x0| {
                    let ev = |cs: &Vec<Vec<u64>>| -> Vec<u64> {
                        cs.iter().map(|c| crate::polyengine::dense::eval(&k, c, &x0)).collect()
                    };
                    modp::resultant(&k, &ev(&fp), m, &ev(&gp), n)
                })
                .collect();
            (p, modp::interpolate(&k, &xs, &ys))
        })
        .collect();
    let mut crt = PolyCrt::new();
    for (p, img) in &images {
        crt.add(img, *p);
    }
    let r = UniPoly::new(crt.symmetric());
    if r.is_zero() {
        return Err(ElimError::CommonComponent);
    }
    Ok(SparsePoly::from_univariate(&r, x))
}

/// Res_y(f, g) as a dense univariate polynomial in the remaining variable.
pub fn resultant_uni(f: &SparsePoly, g: &SparsePoly, eliminate: Var) -> Result<UniPoly, ElimError> {
    let r = resultant(f, g, eliminate)?;
    match r.vars() {
        [v] => Ok(r.to_univariate(*v).expect("univariate")),
        _ => Ok(UniPoly::new(vec![r.coefficient(&[])])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyengine::sparse::parse_poly;

    fn cd(s: &str) -> SparsePoly {
        parse_poly(&[Var::C, Var::D], s).unwrap()
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant_uni(&cd("d - c"), &cd("d + c"), Var::D).unwrap(), UniPoly::from_i64(&[0, 2]));
        assert_eq!(resultant_uni(&cd("c^2 + d^2 + 3"), &cd("1"), Var::D).unwrap(), UniPoly::one());
        // Res_d(d^2 - c, d - 1) = 1 - c.
        assert_eq!(resultant_uni(&cd("d^2 - c"), &cd("d - 1"), Var::D).unwrap(), UniPoly::from_i64(&[1, -1]));
        // leading coefficient in d vanishing at c = 0
        assert_eq!(resultant_uni(&cd("c*d - 1"), &cd("d - 2"), Var::D).unwrap(), UniPoly::from_i64(&[-1, 2]).neg());
        assert!(matches!(
            resultant(&cd("c*d + c"), &cd("d^2 + d"), Var::D),
            Err(ElimError::CommonComponent)
        ));
    }
}
