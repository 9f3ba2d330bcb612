use std::fmt;

use super::{Field, Value};
use crate::error::{Error, Result};

/// An element of a [`Field`] in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    /// Wraps a payload; `value` must already be canonical for `field`.
    pub fn new(field: Field, value: Value) -> Self {
        FieldElement { field, value }
    }

    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        Ok(FieldElement::new(field.clone(), field.parse_value(s)?))
    }

    pub fn zero(field: &Field) -> Self {
        FieldElement::new(field.clone(), field.zero())
    }

    pub fn one(field: &Field) -> Self {
        FieldElement::new(field.clone(), field.one())
    }

    pub fn from_i64(field: &Field, n: i64) -> Self {
        FieldElement::new(field.clone(), field.from_i64(n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Mul)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        arith(self, other, ArithOp::Div)
    }

    pub fn neg(&self) -> Self {
        FieldElement::new(self.field.clone(), self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        invert(self)
    }

    pub fn pow(&self, e: u64) -> Self {
        FieldElement::new(self.field.clone(), self.field.pow_u64(&self.value, e))
    }

    /// Expression form, e.g. `w+1`.
    pub fn render(&self) -> String {
        self.field.render(&self.value)
    }

    /// Re-embeds into an extension `top` of this element's field.
    pub fn lift(&self, top: &Field) -> Result<Self> {
        Ok(FieldElement::new(
            top.clone(),
            top.embed(&self.field, &self.value)?,
        ))
    }
}

/// Exact `a op b` in the common field of `a` and `b`.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.field.ensure_same(&b.field)?;
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(&a.value, &b.value),
        ArithOp::Sub => f.sub(&a.value, &b.value),
        ArithOp::Mul => f.mul(&a.value, &b.value),
        ArithOp::Div => f.div(&a.value, &b.value)?,
    };
    Ok(FieldElement::new(f.clone(), value))
}

pub fn invert(a: &FieldElement) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(FieldElement::new(a.field.clone(), a.field.inv(&a.value)?))
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}
