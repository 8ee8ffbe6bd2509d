use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::diffop::{DiffOp, MultiIndex};
use super::expr::{Chart, Expr, Monomial};
use super::graded::{GradedCoeff, Multidegree};
use super::render::{derivative_factors, join_terms, monomial_factors, render_product, symbol_factors, Style};
use super::scalar::{int, rational, real, Scalar};
use crate::error::SymbolicError;

/// One slot of a tensor term: `monomial · ∂^deriv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotTerm {
    pub coeff: Monomial,
    pub deriv: MultiIndex,
}

impl SlotTerm {
    pub const IDENTITY: SlotTerm = SlotTerm {
        coeff: Monomial::ONE,
        deriv: [0; 4],
    };

    fn derivative_order(&self) -> u32 {
        self.deriv.iter().map(|&k| u32::from(k)).sum()
    }

    /// `self ∘ other` as a list of `factor · slot`.
    fn compose(&self, other: &SlotTerm) -> Vec<(i128, SlotTerm)> {
        if self.deriv == [0; 4] {
            return alloc::vec![(
                1,
                SlotTerm {
                    coeff: self.coeff.mul(&other.coeff),
                    deriv: other.deriv,
                },
            )];
        }
        let mut acc: BTreeMap<SlotTerm, i128> = BTreeMap::new();
        let alpha = self.deriv;
        let mut gamma = [0u8; 4];
        loop {
            let binom: i128 = (0..4).map(|v| binomial(alpha[v], gamma[v])).product();
            for (c, dm) in other.coeff.diff_multi(&gamma) {
                let slot = SlotTerm {
                    coeff: self.coeff.mul(&dm),
                    deriv: core::array::from_fn(|v| alpha[v] - gamma[v] + other.deriv[v]),
                };
                *acc.entry(slot).or_insert(0) += binom * c;
            }
            // next γ ≤ α in odometer order
            let mut v = 0;
            loop {
                if v == 4 {
                    return acc.into_iter().filter(|(_, c)| *c != 0).map(|(s, c)| (c, s)).collect();
                }
                if gamma[v] < alpha[v] {
                    gamma[v] += 1;
                    break;
                }
                gamma[v] = 0;
                v += 1;
            }
        }
    }

    fn apply(&self, f: &Expr) -> Expr {
        f.diff_multi(&self.deriv)
            .scale_term(&self.coeff, &Multidegree::ZERO, &Scalar::one())
    }

    fn render(&self, chart: Chart, style: Style) -> String {
        let mut factors = monomial_factors(&self.coeff, chart, style);
        factors.extend(derivative_factors(&self.deriv, chart, style));
        if factors.is_empty() {
            String::from("1")
        } else {
            factors.join(match style {
                Style::Ascii => "*",
                Style::Pretty => "·",
            })
        }
    }

    pub fn to_ascii(&self, chart: Chart) -> String {
        self.render(chart, Style::Ascii)
    }

    pub fn to_pretty(&self, chart: Chart) -> String {
        self.render(chart, Style::Pretty)
    }
}

fn binomial(n: u8, k: u8) -> i128 {
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * i128::from(n - j) / i128::from(j + 1);
    }
    acc
}

type Key<const K: usize> = ([SlotTerm; K], Multidegree);

/// Sum of `scalar · symbols · (slot_1 ⊗ … ⊗ slot_K)` acting on `K`
/// functions, one slot each. Products compose slotwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorOp<const K: usize> {
    chart: Chart,
    order: u32,
    terms: BTreeMap<Key<K>, Scalar>,
}

/// Two-slot (bidifferential) operator.
pub type BiOp = TensorOp<2>;
/// Three-slot operator, used for cocycle identities.
pub type TriOp = TensorOp<3>;

impl<const K: usize> TensorOp<K> {
    pub fn zero(chart: Chart, order: u32) -> Self {
        TensorOp {
            chart,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(chart: Chart, order: u32) -> Self {
        let mut op = Self::zero(chart, order);
        op.push([SlotTerm::IDENTITY; K], Multidegree::ZERO, Scalar::one());
        op
    }

    /// `D_1 ⊗ … ⊗ D_K`.
    pub fn tensor(ops: [&DiffOp; K]) -> Result<Self, SymbolicError> {
        let chart = ops[0].chart();
        let order = ops[0].order();
        for op in ops.iter() {
            if op.chart() != chart {
                return Err(SymbolicError::ChartMismatch(chart, op.chart()));
            }
            if op.order() != order {
                return Err(SymbolicError::OrderMismatch(order, op.order()));
            }
        }
        let mut partial: Vec<(Vec<SlotTerm>, Multidegree, Scalar)> =
            alloc::vec![(Vec::new(), Multidegree::ZERO, Scalar::one())];
        for op in ops.iter() {
            let mut next = Vec::new();
            for (slots, d, v) in &partial {
                for (w, dw, m, alpha) in op.flat_terms() {
                    let nd = d.combine(&dw);
                    if nd.total() > order {
                        continue;
                    }
                    let mut s = slots.clone();
                    s.push(SlotTerm { coeff: m, deriv: alpha });
                    next.push((s, nd, v * w));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(chart, order);
        for (slots, d, v) in partial {
            let arr: [SlotTerm; K] = core::array::from_fn(|k| slots[k]);
            out.push(arr, d, v);
        }
        Ok(out)
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[SlotTerm; K], &Multidegree, &Scalar)> {
        self.terms.iter().map(|((s, d), v)| (s, d, v))
    }

    /// Terms grouped by slot content, each with its graded coefficient.
    pub fn grouped(&self) -> Vec<([SlotTerm; K], GradedCoeff)> {
        let mut map: BTreeMap<[SlotTerm; K], GradedCoeff> = BTreeMap::new();
        for ((s, d), v) in &self.terms {
            map.entry(*s)
                .or_insert_with(|| GradedCoeff::zero(self.order))
                .add_term(*d, *v);
        }
        map.into_iter().collect()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, d)| d.total()).min()
    }

    pub(crate) fn push(&mut self, slots: [SlotTerm; K], degree: Multidegree, value: Scalar) {
        if degree.total() > self.order || value.is_zero() {
            return;
        }
        let key = (slots, degree);
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check(&self, other: &Self) -> Result<(), SymbolicError> {
        if self.chart != other.chart {
            return Err(SymbolicError::ChartMismatch(self.chart, other.chart));
        }
        if self.order != other.order {
            return Err(SymbolicError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((s, d), v) in &other.terms {
            out.push(*s, *d, *v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = self.clone();
        for ((s, d), v) in &other.terms {
            out.push(*s, *d, -*v);
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(self.chart, self.order);
        if factor.is_zero() {
            return out;
        }
        for ((s, d), v) in &self.terms {
            out.push(*s, *d, v * factor);
        }
        out
    }

    /// Multiply by a graded coefficient such as `θ₂₃` or `κ⁻¹/2`.
    pub fn scale_graded(&self, coeff: &GradedCoeff) -> Self {
        let mut out = Self::zero(self.chart, self.order);
        for ((s, d), v) in &self.terms {
            for (dc, vc) in coeff.terms() {
                let nd = d.combine(dc);
                if nd.total() <= self.order {
                    out.push(*s, nd, v * vc);
                }
            }
        }
        out
    }

    /// Slotwise composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.check(other)?;
        let mut out = Self::zero(self.chart, self.order);
        let mut cache: BTreeMap<(SlotTerm, SlotTerm), Vec<(i128, SlotTerm)>> = BTreeMap::new();
        for ((s1, d1), v1) in &self.terms {
            for ((s2, d2), v2) in &other.terms {
                let d = d1.combine(d2);
                if d.total() > self.order {
                    continue;
                }
                let mut partial: Vec<(i128, [SlotTerm; K])> = alloc::vec![(1, [SlotTerm::IDENTITY; K])];
                for k in 0..K {
                    let pieces = cache.entry((s1[k], s2[k])).or_insert_with(|| s1[k].compose(&s2[k]));
                    let mut next = Vec::with_capacity(partial.len() * pieces.len());
                    for (c, slots) in &partial {
                        for (pc, piece) in pieces.iter() {
                            let mut ns = *slots;
                            ns[k] = *piece;
                            next.push((c * pc, ns));
                        }
                    }
                    partial = next;
                }
                let v = v1 * v2;
                for (c, slots) in partial {
                    out.push(slots, d, v * int(c));
                }
            }
        }
        Ok(out)
    }

    /// `Σ_{j=0..N} self^j / j!` at the truncation order `N`.
    ///
    /// Every term must carry deformation degree at least one, otherwise the
    /// series would not terminate under truncation.
    pub fn exp_truncated(&self) -> Result<Self, SymbolicError> {
        if self.terms.keys().any(|(_, d)| d.total() == 0) {
            return Err(SymbolicError::DegreeZeroExponent);
        }
        let mut result = Self::identity(self.chart, self.order);
        let mut power = Self::identity(self.chart, self.order);
        for j in 1..=self.order {
            power = power.compose(self)?;
            if power.is_zero() {
                break;
            }
            let inv_fact = real(rational(1, factorial(j)));
            result = result.try_add(&power.scale(&inv_fact))?;
        }
        Ok(result)
    }

    /// Apply to `K` functions and multiply the slot results together.
    pub fn apply(&self, fs: [&Expr; K]) -> Result<Expr, SymbolicError> {
        for f in fs.iter() {
            if f.chart() != self.chart {
                return Err(SymbolicError::ChartMismatch(self.chart, f.chart()));
            }
            if f.order() != self.order {
                return Err(SymbolicError::OrderMismatch(self.order, f.order()));
            }
        }
        let mut cache: [BTreeMap<SlotTerm, Expr>; K] = core::array::from_fn(|_| BTreeMap::new());
        let mut out = Expr::zero(self.chart, self.order);
        for ((slots, d), v) in &self.terms {
            let mut prod = Expr::zero(self.chart, self.order);
            prod.push(Monomial::ONE, *d, *v);
            for k in 0..K {
                let piece = cache[k].entry(slots[k]).or_insert_with(|| slots[k].apply(fs[k]));
                if piece.is_zero() {
                    prod = Expr::zero(self.chart, self.order);
                    break;
                }
                prod = &prod * piece;
            }
            if !prod.is_zero() {
                out = &out + &prod;
            }
        }
        Ok(out)
    }

    /// Apply to `K` functions keeping the result as an element of the
    /// `K`-fold tensor product of function spaces.
    pub fn apply_tensor(&self, fs: [&Expr; K]) -> Result<TensorValue<K>, SymbolicError> {
        for f in fs.iter() {
            if f.chart() != self.chart {
                return Err(SymbolicError::ChartMismatch(self.chart, f.chart()));
            }
        }
        let mut out = TensorValue {
            chart: self.chart,
            order: self.order,
            terms: BTreeMap::new(),
        };
        for ((slots, d), v) in &self.terms {
            let pieces: Vec<Expr> = (0..K).map(|k| slots[k].apply(fs[k])).collect();
            if pieces.iter().any(Expr::is_zero) {
                continue;
            }
            let mut partial: Vec<([Monomial; K], Multidegree, Scalar)> = alloc::vec![([Monomial::ONE; K], *d, *v)];
            for (k, piece) in pieces.iter().enumerate() {
                let mut next = Vec::new();
                for (ms, pd, pv) in &partial {
                    for (m, dm, vm) in piece.terms() {
                        let nd = pd.combine(dm);
                        if nd.total() > self.order {
                            continue;
                        }
                        let mut nm = *ms;
                        nm[k] = *m;
                        next.push((nm, nd, pv * vm));
                    }
                }
                partial = next;
            }
            for (ms, pd, pv) in partial {
                out.push(ms, pd, pv);
            }
        }
        Ok(out)
    }

    fn render(&self, style: Style) -> String {
        let sep = match style {
            Style::Ascii => " (x) ",
            Style::Pretty => " ⊗ ",
        };
        join_terms(self.terms.iter().map(|((slots, d), v)| {
            let legs: Vec<String> = slots
                .iter()
                .map(|s| alloc::format!("[{}]", s.render(self.chart, style)))
                .collect();
            let mut factors = symbol_factors(d, style);
            factors.push(legs.join(sep));
            render_product(v, &factors, style)
        }))
    }

    pub fn to_ascii(&self) -> String {
        self.render(Style::Ascii)
    }

    pub fn to_pretty(&self) -> String {
        self.render(Style::Pretty)
    }
}

fn factorial(n: u32) -> i128 {
    (1..=i128::from(n)).product()
}

impl BiOp {
    /// `A ∧ B = A ⊗ B - B ⊗ A`.
    pub fn wedge(a: &DiffOp, b: &DiffOp) -> Result<BiOp, SymbolicError> {
        BiOp::tensor([a, b])?.try_sub(&BiOp::tensor([b, a])?)
    }

    /// Exchange the two slots.
    pub fn swap(&self) -> BiOp {
        let mut out = Self::zero(self.chart, self.order);
        for (([s0, s1], d), v) in &self.terms {
            out.push([*s1, *s0], *d, *v);
        }
        out
    }

    /// `self ⊗ 1`.
    pub fn embed_12(&self) -> TriOp {
        let mut out = TriOp::zero(self.chart, self.order);
        for (([s0, s1], d), v) in &self.terms {
            out.push([*s0, *s1, SlotTerm::IDENTITY], *d, *v);
        }
        out
    }

    /// `1 ⊗ self`.
    pub fn embed_23(&self) -> TriOp {
        let mut out = TriOp::zero(self.chart, self.order);
        for (([s0, s1], d), v) in &self.terms {
            out.push([SlotTerm::IDENTITY, *s0, *s1], *d, *v);
        }
        out
    }

    /// `(Δ₀ ⊗ 1)` with the primitive coproduct `X ↦ X ⊗ 1 + 1 ⊗ X`; the
    /// left legs must be vector fields.
    pub fn coproduct_left(&self) -> Result<TriOp, SymbolicError> {
        let mut out = TriOp::zero(self.chart, self.order);
        for (([s0, s1], d), v) in &self.terms {
            if s0.derivative_order() != 1 {
                return Err(SymbolicError::NotVectorField);
            }
            out.push([*s0, SlotTerm::IDENTITY, *s1], *d, *v);
            out.push([SlotTerm::IDENTITY, *s0, *s1], *d, *v);
        }
        Ok(out)
    }

    /// `(1 ⊗ Δ₀)`; the right legs must be vector fields.
    pub fn coproduct_right(&self) -> Result<TriOp, SymbolicError> {
        let mut out = TriOp::zero(self.chart, self.order);
        for (([s0, s1], d), v) in &self.terms {
            if s1.derivative_order() != 1 {
                return Err(SymbolicError::NotVectorField);
            }
            out.push([*s0, *s1, SlotTerm::IDENTITY], *d, *v);
            out.push([*s0, SlotTerm::IDENTITY, *s1], *d, *v);
        }
        Ok(out)
    }
}

/// Element of the `K`-fold tensor product of expression spaces, in
/// canonical form. Produced by [`TensorOp::apply_tensor`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorValue<const K: usize> {
    chart: Chart,
    order: u32,
    terms: BTreeMap<([Monomial; K], Multidegree), Scalar>,
}

impl<const K: usize> TensorValue<K> {
    fn push(&mut self, ms: [Monomial; K], degree: Multidegree, value: Scalar) {
        if value.is_zero() {
            return;
        }
        let key = (ms, degree);
        let slot = self.terms.entry(key).or_insert_with(Scalar::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_ascii(&self) -> String {
        join_terms(self.terms.iter().map(|((ms, d), v)| {
            let legs: Vec<String> = ms
                .iter()
                .map(|m| {
                    let f = monomial_factors(m, self.chart, Style::Ascii);
                    if f.is_empty() {
                        String::from("[1]")
                    } else {
                        alloc::format!("[{}]", f.join("*"))
                    }
                })
                .collect();
            let mut factors = symbol_factors(d, Style::Ascii);
            factors.push(legs.join(" (x) "));
            render_product(v, &factors, Style::Ascii)
        }))
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

macro_rules! panicking_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<const K: usize> $trait<&TensorOp<K>> for &TensorOp<K> {
            type Output = TensorOp<K>;

            /// # Panics
            ///
            /// On chart or truncation-order mismatch.
            fn $method(self, rhs: &TensorOp<K>) -> TensorOp<K> {
                self.$checked(rhs).expect("operands share chart and order")
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, compose);

impl<const K: usize> Neg for &TensorOp<K> {
    type Output = TensorOp<K>;

    fn neg(self) -> TensorOp<K> {
        self.scale(&-Scalar::one())
    }
}

impl<const K: usize> fmt::Display for TensorOp<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{imag, DeformSymbol};

    fn p(var: usize) -> DiffOp {
        DiffOp::partial(Chart::Minkowski, 2, var)
            .unwrap()
            .scale(&imag(rational(1, 1)))
    }

    fn theta23(op: &BiOp) -> BiOp {
        op.scale_graded(&GradedCoeff::symbol(2, DeformSymbol::Theta(2, 3), Scalar::one()))
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let w = BiOp::wedge(&p(2), &p(3)).unwrap();
        assert_eq!(w.swap(), -&w);
        assert!(BiOp::wedge(&p(1), &p(1)).unwrap().is_zero());
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = BiOp::zero(Chart::Minkowski, 3);
        assert_eq!(z.exp_truncated().unwrap(), BiOp::identity(Chart::Minkowski, 3));
    }

    #[test]
    fn exp_rejects_degree_zero() {
        let w = BiOp::wedge(&p(2), &p(3)).unwrap();
        assert_eq!(w.exp_truncated(), Err(SymbolicError::DegreeZeroExponent));
    }

    #[test]
    fn exp_orders_differ_by_half_square() {
        let w2 = theta23(&BiOp::wedge(&p(2), &p(3)).unwrap());
        let e2 = w2.exp_truncated().unwrap();
        let o1 = {
            let mut t = BiOp::zero(Chart::Minkowski, 1);
            for (s, d, v) in w2.terms() {
                t.push(*s, *d, *v);
            }
            t
        };
        let e1 = o1.exp_truncated().unwrap();
        assert_eq!(e1, &BiOp::identity(Chart::Minkowski, 1) + &o1);
        // lift e1 to order 2 and compare with e2
        let mut lifted = BiOp::zero(Chart::Minkowski, 2);
        for (s, d, v) in e1.terms() {
            lifted.push(*s, *d, *v);
        }
        let half_sq = w2.compose(&w2).unwrap().scale(&real(rational(1, 2)));
        assert_eq!(&e2 - &lifted, half_sq);
    }

    #[test]
    fn identity_apply_is_product() {
        let x = Expr::coordinate(Chart::Minkowski, 2, 1).unwrap();
        let y = Expr::coordinate(Chart::Minkowski, 2, 2).unwrap();
        let id = BiOp::identity(Chart::Minkowski, 2);
        assert_eq!(id.apply([&x, &y]).unwrap(), &x * &y);
    }

    #[test]
    fn coproduct_is_leibniz() {
        // (Δ₀⊗1)(∂2⊗∂3) applied to (f, g, h) then slots 1,2 multiplied equals
        // (∂2⊗∂3) applied to (f g, h)
        let op = BiOp::tensor([&p(2), &p(3)]).unwrap();
        let tri = op.coproduct_left().unwrap();
        let f = Expr::coordinate(Chart::Minkowski, 2, 2).unwrap();
        let g = &f * &Expr::coordinate(Chart::Minkowski, 2, 0).unwrap();
        let h = Expr::coordinate(Chart::Minkowski, 2, 3).unwrap();
        let lhs = tri.apply([&f, &g, &h]).unwrap();
        let rhs = op.apply([&(&f * &g), &h]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn slot_compose_matches_diffop_compose() {
        let z1 = Expr::coordinate(Chart::Rindler, 1, 1).unwrap();
        let a = DiffOp::partial(Chart::Rindler, 1, 1)
            .unwrap()
            .left_mul(&Expr::exp_az0(1, 1))
            .unwrap();
        let b = DiffOp::partial(Chart::Rindler, 1, 0).unwrap().left_mul(&z1).unwrap();
        let ab = a.compose(&b).unwrap();
        let id = DiffOp::identity(Chart::Rindler, 1);
        let lhs = BiOp::tensor([&a, &id])
            .unwrap()
            .compose(&BiOp::tensor([&b, &id]).unwrap())
            .unwrap();
        assert_eq!(lhs, BiOp::tensor([&ab, &id]).unwrap());
    }
}
