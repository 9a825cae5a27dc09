use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::is_prime;
use crate::representation::{DimVector, Representation};

use super::count::{check_primes, count, CountReport};

/// Primes sampled when none are given.
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// `P` with `P(q) = #Gr_e(M)(F_q)`; `coefficients[i]` is the coefficient of `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    pub coefficients: Vec<BigRational>,
    pub degree_bound: usize,
    pub samples: Vec<(u64, u64)>,
    pub warnings: Vec<String>,
}

impl CountingPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn has_nonnegative_integer_coefficients(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Whether `P(p)` equals the count at every sampled prime.
    pub fn reproduces_samples(&self) -> bool {
        self.samples
            .iter()
            .all(|&(p, n)| self.eval(&BigRational::from_integer(p.into())) == BigRational::from_integer(n.into()))
    }

    /// `P(1)`.
    pub fn value_at_one(&self) -> BigRational {
        self.eval(&BigRational::one())
    }
}

impl std::fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<(usize, BigRational)> =
            self.coefficients.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).rev().collect();
        f.write_str(&format_terms(&terms, "x"))
    }
}

/// Sum of `c*v^k` terms in the given order, e.g. `2*x + 1`.
pub fn format_terms(terms: &[(usize, BigRational)], var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let power = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if power.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{a}*{power}"));
        }
    }
    out
}

/// `Σ_p e_p (m_p − e_p)`.
pub fn degree_bound(m: &Representation, e: &DimVector) -> usize {
    m.rank_vector().0.iter().zip(&e.0).map(|(&m, &k)| k * m.saturating_sub(k)).sum()
}

/// The given primes, extended by the next primes until there are at least `needed`.
pub fn extend_primes(primes: &[u64], needed: usize) -> Vec<u64> {
    let mut out = primes.to_vec();
    let mut next = out.iter().copied().max().unwrap_or(1) + 1;
    while out.len() < needed {
        if is_prime(next) {
            out.push(next);
        }
        next += 1;
    }
    out
}

/// Exact Lagrange interpolation through distinct points; ascending coefficients.
pub fn interpolate(points: &[(u64, u64)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n.max(1)];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(xj.into());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(xi.into()) - xj;
        }
        let scale = BigRational::from_integer(yi.into()) / denom;
        for (k, c) in basis.into_iter().enumerate() {
            result[k] += c * &scale;
        }
    }
    while result.len() > 1 && result.last().is_some_and(|c| c.is_zero()) {
        result.pop();
    }
    result
}

/// Interpolates from existing reports; `degree_bound` controls the consistency warning.
pub fn polynomial_from_reports(reports: &[CountReport], degree_bound: usize) -> CountingPolynomial {
    let samples: Vec<(u64, u64)> = reports.iter().map(|r| (r.prime, r.total)).collect();
    let coefficients = interpolate(&samples);
    let mut poly = CountingPolynomial { coefficients, degree_bound, samples, warnings: Vec::new() };
    if poly.samples.len() < degree_bound + 1 {
        poly.warnings.push(format!(
            "only {} primes sampled for degree bound {degree_bound}; the polynomial is not determined",
            poly.samples.len()
        ));
    }
    if poly.degree().is_some_and(|d| d > degree_bound) {
        poly.warnings.push(format!("interpolated degree exceeds the bound {degree_bound}: counts are not polynomial"));
    }
    if poly.integer_coefficients().is_none() {
        poly.warnings.push("non-integral coefficients: no affine-cell certificate".into());
    } else if !poly.has_nonnegative_integer_coefficients() {
        poly.warnings.push("negative coefficients: no affine-cell certificate".into());
    }
    poly
}

/// Counting polynomial from counts at `primes` (default set if `None`), extended to the degree bound.
pub fn counting_polynomial(
    m: &Representation,
    e: &DimVector,
    primes: Option<&[u64]>,
    budget: u128,
) -> Result<CountingPolynomial> {
    let base = primes.unwrap_or(&DEFAULT_PRIMES);
    check_primes(base)?;
    let bound = degree_bound(m, e);
    let primes = extend_primes(base, bound + 1);
    let reports = count(m, e, &primes, budget)?;
    Ok(polynomial_from_reports(&reports, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_recovers_linear_counts() {
        let p = interpolate(&[(2, 5), (3, 7), (5, 11)]);
        let c: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        assert_eq!(c, ["1", "2"]);
    }

    #[test]
    fn formatting() {
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(format_terms(&[(1, r(2)), (0, r(1))], "x"), "2*x + 1");
        assert_eq!(format_terms(&[(0, r(1)), (2, r(2)), (6, r(1))], "t"), "1 + 2*t^2 + t^6");
        assert_eq!(format_terms(&[(2, r(-1)), (0, r(3))], "x"), "-x^2 + 3");
        assert_eq!(format_terms(&[], "x"), "0");
    }

    #[test]
    fn prime_extension() {
        assert_eq!(extend_primes(&[2, 3], 5), vec![2, 3, 5, 7, 11]);
        assert_eq!(extend_primes(&[2, 3, 5], 2), vec![2, 3, 5]);
    }
}
