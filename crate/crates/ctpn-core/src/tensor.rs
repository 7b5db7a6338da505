//! Dense 4-D tensors and trainable parameters.
//!
//! A [`Tensor`] is a row-major `(batch, channels, rows, cols)` array of
//! `f64` with an optional same-shape gradient buffer. All network math in
//! this crate runs in 64-bit floats so analytic gradients can be checked
//! against central finite differences at tight tolerances.

use crate::error::{Error, Result};

/// Dense 4-D array with optional paired gradient storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: [usize; 4],
    values: Vec<f64>,
    grad: Option<Vec<f64>>,
}

impl Tensor {
    pub fn zeros(shape: [usize; 4]) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape,
            values: vec![0.0; n],
            grad: None,
        }
    }

    pub fn filled(shape: [usize; 4], value: f64) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape,
            values: vec![value; n],
            grad: None,
        }
    }

    /// Build a tensor from raw row-major values.
    pub fn from_values(shape: [usize; 4], values: Vec<f64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if values.len() != n {
            return Err(Error::config(format!(
                "value buffer of length {} does not match shape {:?} (product {})",
                values.len(),
                shape,
                n
            )));
        }
        Ok(Tensor {
            shape,
            values,
            grad: None,
        })
    }

    /// Enable gradient storage (zero-initialized).
    pub fn with_grad(mut self) -> Self {
        let n = self.values.len();
        self.grad = Some(vec![0.0; n]);
        self
    }

    pub fn shape(&self) -> [usize; 4] {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn grad(&self) -> Option<&[f64]> {
        self.grad.as_deref()
    }

    /// Mutable gradient buffer; panics if gradients were never enabled.
    pub fn grad_mut(&mut self) -> &mut [f64] {
        self.grad
            .as_deref_mut()
            .expect("tensor has no gradient buffer")
    }

    pub fn has_grad(&self) -> bool {
        self.grad.is_some()
    }

    pub fn zero_grad(&mut self) {
        if let Some(g) = self.grad.as_deref_mut() {
            g.fill(0.0);
        }
    }

    /// Flat index of `(b, c, r, col)`.
    #[inline]
    pub fn idx(&self, b: usize, c: usize, r: usize, col: usize) -> usize {
        debug_assert!(
            b < self.shape[0] && c < self.shape[1] && r < self.shape[2] && col < self.shape[3]
        );
        ((b * self.shape[1] + c) * self.shape[2] + r) * self.shape[3] + col
    }

    #[inline]
    pub fn at(&self, b: usize, c: usize, r: usize, col: usize) -> f64 {
        self.values[self.idx(b, c, r, col)]
    }

    #[inline]
    pub fn set(&mut self, b: usize, c: usize, r: usize, col: usize, v: f64) {
        let i = self.idx(b, c, r, col);
        self.values[i] = v;
    }

    /// One channel plane `(rows x cols)` of batch item `b`.
    pub fn channel(&self, b: usize, c: usize) -> &[f64] {
        let plane = self.shape[2] * self.shape[3];
        let start = (b * self.shape[1] + c) * plane;
        &self.values[start..start + plane]
    }

    pub fn channel_mut(&mut self, b: usize, c: usize) -> &mut [f64] {
        let plane = self.shape[2] * self.shape[3];
        let start = (b * self.shape[1] + c) * plane;
        &mut self.values[start..start + plane]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn assert_finite(&self, context: &str) -> Result<()> {
        if let Some(i) = self.values.iter().position(|v| !v.is_finite()) {
            return Err(Error::numeric(format!(
                "non-finite value {} at flat index {} in {}",
                self.values[i], i, context
            )));
        }
        Ok(())
    }
}

/// A named trainable tensor with its SGD momentum buffer.
#[derive(Debug, Clone)]
pub struct Parameter {
    name: String,
    pub tensor: Tensor,
    pub momentum: Vec<f64>,
}

impl Parameter {
    /// Wraps a tensor as trainable: gradient storage is enabled and the
    /// momentum buffer starts at zero.
    pub fn new(name: impl Into<String>, tensor: Tensor) -> Self {
        let n = tensor.len();
        Parameter {
            name: name.into(),
            tensor: tensor.with_grad(),
            momentum: vec![0.0; n],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        self.tensor.values()
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        self.tensor.values_mut()
    }

    pub fn grad(&self) -> &[f64] {
        self.tensor.grad().expect("parameter always has grad")
    }

    pub fn grad_mut(&mut self) -> &mut [f64] {
        self.tensor.grad_mut()
    }

    pub fn shape(&self) -> [usize; 4] {
        self.tensor.shape()
    }

    pub fn len(&self) -> usize {
        self.tensor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensor.is_empty()
    }

    pub fn zero_grad(&mut self) {
        self.tensor.zero_grad();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_indexing_are_row_major() {
        let mut t = Tensor::zeros([1, 2, 3, 4]);
        assert_eq!(t.len(), 24);
        t.set(0, 1, 2, 3, 5.0);
        assert_eq!(t.values()[23], 5.0);
        assert_eq!(t.at(0, 1, 2, 3), 5.0);
        assert_eq!(t.idx(0, 1, 0, 0), 12);
    }

    #[test]
    fn from_values_rejects_wrong_length() {
        assert!(Tensor::from_values([1, 1, 2, 2], vec![0.0; 3]).is_err());
    }

    #[test]
    fn grad_buffer_matches_shape() {
        let t = Tensor::zeros([2, 1, 4, 4]).with_grad();
        assert_eq!(t.grad().unwrap().len(), t.len());
    }

    #[test]
    fn parameter_enables_grad_and_momentum() {
        let p = Parameter::new("w", Tensor::filled([1, 1, 2, 2], 1.0));
        assert_eq!(p.grad().len(), 4);
        assert_eq!(p.momentum.len(), 4);
        assert_eq!(p.name(), "w");
    }

    #[test]
    fn finiteness_check_names_the_index() {
        let mut t = Tensor::zeros([1, 1, 1, 3]);
        t.values_mut()[1] = f64::NAN;
        let err = t.assert_finite("test").unwrap_err();
        assert!(err.to_string().contains("index 1"));
    }
}
