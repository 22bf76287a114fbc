use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Element, Field, Quadrant, Sign};
use crate::error::{Error, Result};

/// An element bound to its field. Arithmetic between elements of
/// different fields fails with [`Error::FieldMismatch`] through the
/// `try_*` methods; the operator impls panic instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    elem: Element,
}

impl<'f> FieldElement<'f> {
    pub(super) fn new(field: &'f Field, elem: Element) -> Self {
        debug_assert!(field.contains(elem));
        FieldElement { field, elem }
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn element(&self) -> Element {
        self.elem
    }

    pub fn index(&self) -> u32 {
        self.elem.index()
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.elem)
    }

    fn check(&self, other: &FieldElement<'_>) -> Result<()> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, elem: Element) -> FieldElement<'f> {
        FieldElement { field: self.field, elem }
    }

    pub fn try_add(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.elem, other.elem)))
    }

    pub fn try_sub(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.elem, other.elem)))
    }

    pub fn try_mul(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.elem, other.elem)))
    }

    pub fn try_div(&self, other: &FieldElement<'_>) -> Result<FieldElement<'f>> {
        self.check(other)?;
        Ok(self.wrap(self.field.div(self.elem, other.elem)?))
    }

    pub fn inv(&self) -> Result<FieldElement<'f>> {
        Ok(self.wrap(self.field.inv(self.elem)?))
    }

    pub fn pow(&self, d: u64) -> FieldElement<'f> {
        self.wrap(self.field.pow(self.elem, d))
    }

    pub fn chi(&self) -> Result<Sign> {
        self.field.quadratic_character(self.elem)
    }

    pub fn trace(&self) -> FieldElement<'f> {
        self.wrap(self.field.trace(self.elem))
    }

    pub fn quadrant(&self) -> Result<Quadrant> {
        self.field.quadrant(self.elem)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.elem == other.elem
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({}^{})", self.elem, self.field.characteristic(), self.field.degree())
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elem)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'f> $trait for FieldElement<'f> {
            type Output = FieldElement<'f>;
            fn $method(self, rhs: Self) -> Self::Output {
                self.$try(&rhs).expect("operands from the same field")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        self.wrap(self.field.neg(self.elem))
    }
}
