use std::fmt;
use std::sync::Arc;

/// Dense 64-bit real tensor in row-major order.
///
/// Values are shared behind an `Arc`, so clones are cheap and tensors are
/// immutable once recorded on a tape. `node` is set when the tensor is the
/// output of a tape operation (or a staged leaf) and identifies the tape
/// node that produced it.
#[derive(Clone, Debug)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Arc<Vec<f64>>,
    pub(crate) node: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TensorError {
    /// product(shape) != data length
    ShapeDataMismatch { shape: Vec<usize>, len: usize },
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::ShapeDataMismatch { shape, len } => {
                write!(f, "shape {shape:?} does not match {len} values")
            }
        }
    }
}

impl std::error::Error for TensorError {}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self, TensorError> {
        if shape.iter().product::<usize>() != data.len() {
            return Err(TensorError::ShapeDataMismatch { shape, len: data.len() });
        }
        Ok(Tensor { shape, data: Arc::new(data), node: None })
    }

    /// 2-D constructor, `rows * cols` row-major values.
    pub fn matrix(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, TensorError> {
        Tensor::new(vec![rows, cols], data)
    }

    pub fn scalar(value: f64) -> Self {
        Tensor { shape: vec![1], data: Arc::new(vec![value]), node: None }
    }

    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: Arc::new(vec![0.0; len]), node: None }
    }

    pub fn filled(shape: &[usize], value: f64) -> Self {
        let len = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: Arc::new(vec![value; len]), node: None }
    }

    pub(crate) fn from_parts(shape: Vec<usize>, data: Vec<f64>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Tensor { shape, data: Arc::new(data), node: None }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row count; a 1-D tensor is treated as a single row.
    pub fn rows(&self) -> usize {
        if self.shape.len() >= 2 {
            self.shape[0]
        } else {
            1
        }
    }

    /// Column count; for a 1-D tensor this is its length.
    pub fn cols(&self) -> usize {
        match self.shape.len() {
            0 => 0,
            1 => self.shape[0],
            _ => self.shape[1],
        }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Mutable access for parameter updates. Only valid on unbound tensors;
    /// tensors recorded on a tape must stay immutable.
    pub fn data_mut(&mut self) -> &mut Vec<f64> {
        assert!(self.node.is_none(), "cannot mutate a tape-bound tensor");
        Arc::make_mut(&mut self.data)
    }

    pub fn is_scalar(&self) -> bool {
        self.data.len() == 1
    }

    /// Value of a 1-element tensor.
    pub fn item(&self) -> f64 {
        assert!(self.is_scalar(), "item() on tensor of shape {:?}", self.shape);
        self.data[0]
    }

    pub fn node_id(&self) -> Option<usize> {
        self.node
    }

    /// Copy with the tape binding removed.
    pub fn detached(&self) -> Tensor {
        Tensor { shape: self.shape.clone(), data: Arc::clone(&self.data), node: None }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Frobenius norm over all entries.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Sum over all entries of the elementwise product.
    pub fn inner(&self, other: &Tensor) -> f64 {
        assert_eq!(self.shape, other.shape, "inner product shape mismatch");
        self.data.iter().zip(other.data.iter()).map(|(a, b)| a * b).sum()
    }

    /// Bitwise equality of shape and values.
    pub fn bit_eq(&self, other: &Tensor) -> bool {
        self.shape == other.shape
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_must_match_data() {
        assert!(Tensor::new(vec![2, 2], vec![1.0, 2.0, 3.0]).is_err());
        let t = Tensor::new(vec![2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.rows(), 2);
        assert_eq!(t.cols(), 2);
    }

    #[test]
    fn scalar_item() {
        assert_eq!(Tensor::scalar(3.5).item(), 3.5);
    }

    #[test]
    fn inner_and_norm() {
        let a = Tensor::new(vec![2], vec![3.0, 4.0]).unwrap();
        assert_eq!(a.frobenius_norm(), 5.0);
        let b = Tensor::new(vec![2], vec![1.0, 2.0]).unwrap();
        assert_eq!(a.inner(&b), 11.0);
    }
}
