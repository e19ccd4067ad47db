use std::fmt::Debug;

use crate::error::Result;

/// The seven basic operations every representation provides, plus the
/// encode/decode maps between the representation and plain field elements.
///
/// A plain element is an integer in `[0, q)`; for prime fields this is the
/// canonical residue, for `GF(p^d)` it is the base-`p` digit vector of the
/// polynomial coefficients (constant term first).
pub trait FiniteField {
    type Elem: Copy + PartialEq + Debug;

    /// Field cardinality `q`.
    fn order(&self) -> u64;

    fn characteristic(&self) -> u64;

    fn encode(&self, value: u64) -> Self::Elem;

    fn decode(&self, elem: Self::Elem) -> u64;

    fn zero(&self) -> Self::Elem {
        self.encode(0)
    }

    fn one(&self) -> Self::Elem {
        self.encode(1)
    }

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;

    /// `a*x + y`
    fn axpy(&self, a: Self::Elem, x: Self::Elem, y: Self::Elem) -> Self::Elem;

    /// `r + a*x`, the in-place accumulation step.
    fn axpyin(&self, r: Self::Elem, a: Self::Elem, x: Self::Elem) -> Self::Elem {
        self.axpy(a, x, r)
    }
}
