use num_complex::{Complex, Complex64};
use num_rational::Ratio;

/// Exact rational with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

/// Exact Gaussian rational `re + i·im`.
pub type Scalar = Complex<Rational>;

pub fn rational(numer: i128, denom: i128) -> Rational {
    Ratio::new(numer, denom)
}

pub fn real(q: Rational) -> Scalar {
    Complex::new(q, Rational::from_integer(0))
}

pub fn imag(q: Rational) -> Scalar {
    Complex::new(Rational::from_integer(0), q)
}

pub fn int(n: i128) -> Scalar {
    real(Rational::from_integer(n))
}

pub fn to_complex64(s: &Scalar) -> Complex64 {
    Complex64::new(ratio_to_f64(&s.re), ratio_to_f64(&s.im))
}

fn ratio_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}
