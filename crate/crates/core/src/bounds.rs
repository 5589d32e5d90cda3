//! Closed-form bounds on multifold packings and multiple coverings.
//!
//! The packing and covering bounds apply only for q > 2 and n ≡ q (mod q²);
//! outside that range they report [`Applicability::NotApplicable`] instead of
//! falling back to another bound.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Formula {
    /// |C| ≤ q^n((n+1)λ−1)/(n²(q−1)+nq), improved when q, n, λ are even.
    MultifoldPacking,
    /// |C| ≤ λq^n/(n(q−1)+q) for minimum distance ≥ 2.
    MultifoldPackingDistance2,
    /// |C̄| ≥ q^n(n+1)μ/(n²(q−1)+nq).
    MultipleCovering,
    /// |C| ≤ λq^n/(1+n(q−1)).
    SpherePacking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub q: u64,
    pub n: u64,
    /// λ for packing bounds, μ for the covering bound.
    pub multiplicity: u64,
    pub formula: Formula,
    pub direction: Direction,
    pub applicability: Applicability,
    pub value: Option<BigRational>,
    /// The even-case refinement, when q, n and λ are all even.
    pub improved: Option<BigRational>,
    /// Whether meeting the bound forces a code without repeated words.
    pub equality_forbids_multiplicity: bool,
}

impl BoundReport {
    pub fn is_applicable(&self) -> bool {
        self.applicability == Applicability::Applicable
    }

    /// The tightest available exact value.
    pub fn best(&self) -> Option<&BigRational> {
        self.improved.as_ref().or(self.value.as_ref())
    }

    pub fn floor(&self) -> Option<BigInt> {
        self.best().map(|v| v.floor().to_integer())
    }

    pub fn ceil(&self) -> Option<BigInt> {
        self.best().map(|v| v.ceil().to_integer())
    }

    /// Floor for upper bounds, ceiling for lower bounds.
    pub fn integer_bound(&self) -> Option<BigInt> {
        match self.direction {
            Direction::Upper => self.floor(),
            Direction::Lower => self.ceil(),
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.applicability, self.integer_bound()) {
            (Applicability::Applicable, Some(v)) => write!(f, "{v}"),
            (Applicability::NotApplicable(why), _) => write!(f, "n/a ({why})"),
            _ => write!(f, "n/a"),
        }
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn q_pow_n(q: u64, n: u64) -> BigInt {
    num_traits::pow(big(q), n as usize)
}

/// The congruence condition shared by the packing and covering bounds.
pub fn congruence_holds(q: u64, n: u64) -> bool {
    q > 2 && n % (q * q) == q % (q * q)
}

fn applicability(q: u64, n: u64) -> Applicability {
    if q <= 2 {
        Applicability::NotApplicable(format!("requires q > 2, got q = {q}"))
    } else if !congruence_holds(q, n) {
        Applicability::NotApplicable(format!("requires n ≡ q mod q², got n = {n} mod {} = {}", q * q, n % (q * q)))
    } else {
        Applicability::Applicable
    }
}

fn not_applicable(q: u64, n: u64, m: u64, formula: Formula, direction: Direction, why: Applicability) -> BoundReport {
    BoundReport {
        q,
        n,
        multiplicity: m,
        formula,
        direction,
        applicability: why,
        value: None,
        improved: None,
        equality_forbids_multiplicity: false,
    }
}

/// q^n((n+1)λ−1)/(n²(q−1)+nq).
pub fn packing_value(q: u64, n: u64, lambda: u64) -> BigRational {
    BigRational::new(
        q_pow_n(q, n) * (big(n + 1) * big(lambda) - BigInt::one()),
        big(n * n * (q - 1) + n * q),
    )
}

/// The same bound in the form it takes inside the Krawtchouk argument:
/// q^n((n+1)(q−1)λ−q+1)/(n(q−1)(n(q−1)+q)).
pub fn packing_value_unsimplified(q: u64, n: u64, lambda: u64) -> BigRational {
    BigRational::new(
        q_pow_n(q, n) * (big(n + 1) * big(q - 1) * big(lambda) - big(q) + BigInt::one()),
        big(n * (q - 1) * (n * (q - 1) + q)),
    )
}

/// q^n((n+1)(q−1)λ−q)/(n(q−1)(n(q−1)+q)).
pub fn packing_value_even(q: u64, n: u64, lambda: u64) -> BigRational {
    BigRational::new(
        q_pow_n(q, n) * (big(n + 1) * big(q - 1) * big(lambda) - big(q)),
        big(n * (q - 1) * (n * (q - 1) + q)),
    )
}

/// Upper bound on a λ-fold 1-packing in H(n, q).
pub fn packing_upper_bound(q: u64, n: u64, lambda: u64) -> BoundReport {
    let app = applicability(q, n);
    if app != Applicability::Applicable || lambda == 0 {
        let app = if lambda == 0 {
            Applicability::NotApplicable("λ must be positive".into())
        } else {
            app
        };
        return not_applicable(q, n, lambda, Formula::MultifoldPacking, Direction::Upper, app);
    }
    let value = packing_value(q, n, lambda);
    let improved = (q.is_multiple_of(2) && n.is_multiple_of(2) && lambda.is_multiple_of(2))
        .then(|| packing_value_even(q, n, lambda));
    BoundReport {
        q,
        n,
        multiplicity: lambda,
        formula: Formula::MultifoldPacking,
        direction: Direction::Upper,
        applicability: Applicability::Applicable,
        value: Some(value),
        improved,
        equality_forbids_multiplicity: true,
    }
}

/// Upper bound on a λ-fold 1-packing with minimum distance ≥ 2.
pub fn packing_upper_bound_dist2(q: u64, n: u64, lambda: u64) -> BoundReport {
    let app = applicability(q, n);
    if app != Applicability::Applicable {
        return not_applicable(q, n, lambda, Formula::MultifoldPackingDistance2, Direction::Upper, app);
    }
    BoundReport {
        q,
        n,
        multiplicity: lambda,
        formula: Formula::MultifoldPackingDistance2,
        direction: Direction::Upper,
        applicability: Applicability::Applicable,
        value: Some(BigRational::new(
            big(lambda) * q_pow_n(q, n),
            big(n * (q - 1) + q),
        )),
        improved: None,
        equality_forbids_multiplicity: false,
    }
}

/// Lower bound on a (n, ·, 1, μ) multiple covering.
pub fn covering_lower_bound(q: u64, n: u64, mu: u64) -> BoundReport {
    let app = applicability(q, n);
    if app != Applicability::Applicable {
        return not_applicable(q, n, mu, Formula::MultipleCovering, Direction::Lower, app);
    }
    BoundReport {
        q,
        n,
        multiplicity: mu,
        formula: Formula::MultipleCovering,
        direction: Direction::Lower,
        applicability: Applicability::Applicable,
        value: Some(BigRational::new(
            q_pow_n(q, n) * big(n + 1) * big(mu),
            big(n * n * (q - 1) + n * q),
        )),
        improved: None,
        equality_forbids_multiplicity: false,
    }
}

/// λq^n/(1+n(q−1)) for radius 1.
pub fn sphere_packing_bound(q: u64, n: u64, lambda: u64) -> BoundReport {
    BoundReport {
        q,
        n,
        multiplicity: lambda,
        formula: Formula::SpherePacking,
        direction: Direction::Upper,
        applicability: Applicability::Applicable,
        value: Some(BigRational::new(
            big(lambda) * q_pow_n(q, n),
            big(1 + n * (q - 1)),
        )),
        improved: None,
        equality_forbids_multiplicity: false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Singleton {
    Mds,
    Below,
    Violates,
}

/// Compares M with q^{n−d+1}.
pub fn singleton_check(q: u64, n: u64, m: u64, d: u64) -> Singleton {
    if d == 0 || d > n + 1 {
        return if d > n + 1 && m <= 1 { Singleton::Below } else { Singleton::Violates };
    }
    let cap = q_pow_n(q, n - d + 1);
    match big(m).cmp(&cap) {
        std::cmp::Ordering::Equal => Singleton::Mds,
        std::cmp::Ordering::Less => Singleton::Below,
        std::cmp::Ordering::Greater => Singleton::Violates,
    }
}

/// Whether `value` is an integer (used by table output).
pub fn is_integral(v: &BigRational) -> bool {
    v.denom().is_one() || v.numer().is_multiple_of(v.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: u64) -> Option<BigInt> {
        Some(BigInt::from(v))
    }

    #[test]
    fn packing_examples() {
        assert_eq!(packing_upper_bound(3, 3, 1).floor(), int(3));
        assert_eq!(packing_upper_bound(3, 12, 1).floor(), int(19683));
        let r = packing_upper_bound(4, 4, 2);
        assert_eq!(r.value.as_ref().unwrap().floor().to_integer(), BigInt::from(36));
        assert_eq!(r.improved.as_ref().unwrap(), &BigRational::new(BigInt::from(256 * 26), BigInt::from(192)));
        assert_eq!(r.floor(), int(34));
        assert!(r.equality_forbids_multiplicity);
    }

    #[test]
    fn length_39() {
        // n = 39 = (3^4 − 3)/2: value is exactly 3^35, the shortened Hamming size
        let r = packing_upper_bound(3, 39, 1);
        assert_eq!(r.value.unwrap(), BigRational::from_integer(num_traits::pow(BigInt::from(3), 35)));
    }

    #[test]
    fn not_applicable_cases() {
        assert!(!packing_upper_bound(2, 2, 1).is_applicable());
        assert!(!packing_upper_bound(3, 4, 1).is_applicable());
        assert!(!covering_lower_bound(3, 5, 1).is_applicable());
        assert!(!packing_upper_bound_dist2(4, 5, 1).is_applicable());
        assert_eq!(packing_upper_bound(3, 4, 1).value, None);
        assert!(packing_upper_bound(3, 21, 1).is_applicable());
    }

    #[test]
    fn dist2_examples() {
        assert_eq!(packing_upper_bound_dist2(3, 3, 3).floor(), int(9));
        assert_eq!(packing_upper_bound_dist2(3, 3, 2).floor(), int(6));
        assert_eq!(packing_upper_bound_dist2(4, 4, 4).floor(), int(64));
    }

    #[test]
    fn covering_examples() {
        assert_eq!(covering_lower_bound(3, 3, 6).ceil(), int(24));
        assert_eq!(covering_lower_bound(3, 3, 1).ceil(), int(4));
        let r = covering_lower_bound(3, 12, 1);
        assert_eq!(r.value.clone().unwrap(), BigRational::new(BigInt::from(6908733), BigInt::from(324)));
        // 6908733 / 324 = 21323.25
        assert_eq!(r.integer_bound(), int(21324));
    }

    #[test]
    fn sphere_and_singleton() {
        assert_eq!(sphere_packing_bound(3, 4, 1).floor(), int(9));
        assert_eq!(singleton_check(4, 4, 16, 3), Singleton::Mds);
        assert_eq!(singleton_check(4, 5, 64, 3), Singleton::Mds);
        assert_eq!(singleton_check(4, 5, 63, 3), Singleton::Below);
        assert_eq!(singleton_check(3, 3, 4, 3), Singleton::Violates);
    }

    #[test]
    fn grid_invariants() {
        for q in 3..=7u64 {
            for n in (q..=200).step_by((q * q) as usize) {
                for lambda in 1..=q {
                    assert_eq!(packing_value(q, n, lambda), packing_value_unsimplified(q, n, lambda));
                    let d2 = packing_upper_bound_dist2(q, n, lambda).value.unwrap();
                    assert!(d2 <= packing_upper_bound(q, n, lambda).value.unwrap());
                }
                for mu in 1..=n * (q - 1) + 1 {
                    let cov = covering_lower_bound(q, n, mu).value.unwrap();
                    let pack = packing_value(q, n, n * (q - 1) + 1 - mu);
                    let qn = BigRational::from_integer(q_pow_n(q, n));
                    assert_eq!(cov, qn - pack);
                }
            }
        }
    }
}
