use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::expr::{Chart, Expr, Monomial};
use super::graded::{GradedCoeff, Multidegree};
use super::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Style {
    Ascii,
    Pretty,
}

impl Style {
    fn times(self) -> &'static str {
        match self {
            Style::Ascii => "*",
            Style::Pretty => "·",
        }
    }
}

pub fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `2`, `-1/2`, `i`, `-3*i`, `(1+2*i)`.
pub fn render_scalar(s: &Scalar) -> String {
    render_scalar_styled(s, Style::Ascii)
}

fn render_scalar_styled(s: &Scalar, style: Style) -> String {
    let t = style.times();
    if s.im.is_zero() {
        return render_rational(&s.re);
    }
    let imag = if s.im.is_one() {
        "i".to_string()
    } else if (-s.im).is_one() {
        "-i".to_string()
    } else {
        format!("{}{t}i", render_rational(&s.im))
    };
    if s.re.is_zero() {
        imag
    } else if s.im.is_negative() {
        format!("({}{imag})", render_rational(&s.re))
    } else {
        format!("({}+{imag})", render_rational(&s.re))
    }
}

fn superscript(n: i32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    if n < 0 {
        out.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        out.push(DIGITS[c.to_digit(10).unwrap_or(0) as usize]);
    }
    out
}

fn power(base: &str, p: i32, style: Style) -> String {
    match (p, style) {
        (1, _) => base.to_string(),
        (_, Style::Ascii) => format!("{base}^{p}"),
        (_, Style::Pretty) => format!("{base}{}", superscript(p)),
    }
}

pub(crate) fn symbol_factors(degree: &Multidegree, style: Style) -> Vec<String> {
    degree
        .factors()
        .map(|(s, e)| {
            let name = match style {
                Style::Ascii => s.ascii_name(),
                Style::Pretty => s.pretty_name(),
            };
            power(name, i32::from(e), style)
        })
        .collect()
}

pub(crate) fn monomial_factors(m: &Monomial, chart: Chart, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &p) in m.z.iter().enumerate() {
        if p != 0 {
            let name = match style {
                Style::Ascii => chart.coordinate_name(i),
                Style::Pretty => chart.pretty_coordinate_name(i),
            };
            out.push(power(name, p, style));
        }
    }
    if m.a != 0 {
        out.push(power("a", m.a, style));
    }
    if m.exp != 0 {
        let t = style.times();
        let z0 = match style {
            Style::Ascii => "z0",
            Style::Pretty => "z₀",
        };
        let arg = match m.exp {
            1 => format!("a{t}{z0}"),
            -1 => format!("-a{t}{z0}"),
            k => format!("{k}{t}a{t}{z0}"),
        };
        out.push(format!("exp({arg})"));
    }
    out
}

pub(crate) fn derivative_factors(alpha: &[u8; 4], chart: Chart, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &k) in alpha.iter().enumerate() {
        if k > 0 {
            let d = match style {
                Style::Ascii => format!("d_{}", chart.coordinate_name(i)),
                Style::Pretty => format!("∂_{}", chart.pretty_coordinate_name(i)),
            };
            out.push(power(&d, i32::from(k), style));
        }
    }
    out
}

/// Render `scalar · factors`, folding unit scalars into a sign.
pub(crate) fn render_product(value: &Scalar, factors: &[String], style: Style) -> String {
    let t = style.times();
    if factors.is_empty() {
        return render_scalar_styled(value, style);
    }
    let body = factors.join(t);
    if value.is_one() {
        body
    } else if (-*value).is_one() {
        format!("-{body}")
    } else {
        format!("{}{t}{body}", render_scalar_styled(value, style))
    }
}

/// Join rendered terms with ` + ` / ` - `.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = String>) -> String {
    let mut out = String::new();
    for (n, term) in terms.into_iter().enumerate() {
        if n == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Expr {
    fn render(&self, style: Style) -> String {
        join_terms(self.terms().map(|(m, d, v)| {
            let mut factors = symbol_factors(d, style);
            factors.extend(monomial_factors(m, self.chart(), style));
            render_product(v, &factors, style)
        }))
    }

    /// Deterministic ASCII rendering, e.g. `i*inv_kappa*x1`.
    pub fn to_ascii(&self) -> String {
        self.render(Style::Ascii)
    }

    /// Unicode rendering for human-facing tables, e.g. `i·κ⁻¹·x₁`.
    pub fn to_pretty(&self) -> String {
        self.render(Style::Pretty)
    }
}

impl GradedCoeff {
    pub fn to_ascii(&self) -> String {
        join_terms(
            self.terms()
                .map(|(d, v)| render_product(v, &symbol_factors(d, Style::Ascii), Style::Ascii)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{int, rational, real, DeformSymbol};

    #[test]
    fn scalars() {
        assert_eq!(render_scalar(&int(2)), "2");
        assert_eq!(render_scalar(&real(rational(-1, 2))), "-1/2");
        assert_eq!(render_scalar(&Scalar::new(rational(0, 1), rational(1, 1))), "i");
        assert_eq!(render_scalar(&Scalar::new(rational(0, 1), rational(-3, 1))), "-3*i");
        assert_eq!(render_scalar(&Scalar::new(rational(1, 1), rational(-2, 1))), "(1-2*i)");
    }

    #[test]
    fn kappa_term() {
        let x1 = Expr::coordinate(Chart::Minkowski, 1, 1).unwrap();
        let k = Expr::symbol(
            Chart::Minkowski,
            1,
            DeformSymbol::InvKappa,
            Scalar::new(rational(0, 1), rational(1, 1)),
        );
        assert_eq!((&k * &x1).to_ascii(), "i*inv_kappa*x1");
        assert_eq!((&k * &x1).to_pretty(), "i·κ⁻¹·x₁");
        assert_eq!((-(&k * &x1)).to_ascii(), "-i*inv_kappa*x1");
    }

    #[test]
    fn rindler_factors() {
        let e = Expr::sinh_az0(1) * Expr::z1_pow(Chart::Rindler, 1, -1);
        assert_eq!(e.to_ascii(), "-1/2*z1^-1*exp(-a*z0) + 1/2*z1^-1*exp(a*z0)");
        assert_eq!(Expr::zero(Chart::Rindler, 1).to_ascii(), "0");
    }
}
