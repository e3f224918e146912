use rand::Rng;

use crate::galois::{FpMatrix, PrimeField};
use crate::rng;

use super::RelayError;

/// Above this many messages, verification samples instead of enumerating.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

/// Linear code that sends `dimension` symbols of `F_p` through a chosen
/// invertible submatrix of an end-to-end matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroErrorCode {
    pub field: PrimeField,
    pub dimension: usize,
    /// Source antenna-slots that carry message symbols; the rest stay zero.
    pub column_selection: Vec<usize>,
    /// Sink antenna-slots read by the decoder.
    pub row_selection: Vec<usize>,
    /// `cols x dimension`, places message symbols on the selected columns.
    pub encoder: FpMatrix,
    /// Inverse of `submatrix`.
    pub decoder: FpMatrix,
    pub submatrix: FpMatrix,
}

impl ZeroErrorCode {
    pub fn encode(&self, message: &[u64]) -> Vec<u64> {
        self.encoder.mul_vec(message)
    }

    pub fn decode(&self, received: &[u64]) -> Vec<u64> {
        let y: Vec<u64> = self.row_selection.iter().map(|&r| received[r]).collect();
        self.decoder.mul_vec(&y)
    }
}

/// Picks the pivot columns of `g` and then the pivot rows of the resulting
/// column slice. Both choices are lexicographically first.
pub fn extract_zero_error_code(g: &FpMatrix) -> Result<ZeroErrorCode, RelayError> {
    let field = g.field();
    let cols = g.echelon().pivots;
    let r = cols.len();
    if r == 0 {
        return Err(RelayError::NoCode);
    }
    let all_rows: Vec<usize> = (0..g.rows()).collect();
    let slice = g.select(&all_rows, &cols);
    let rows = slice.transpose().echelon().pivots;
    debug_assert_eq!(rows.len(), r);
    let submatrix = g.select(&rows, &cols);
    let decoder = submatrix.inverse().expect("pivot submatrix is invertible");
    let mut encoder = FpMatrix::zeros(field, g.cols(), r);
    for (k, &c) in cols.iter().enumerate() {
        encoder.set(c, k, 1);
    }
    Ok(ZeroErrorCode {
        field,
        dimension: r,
        column_selection: cols,
        row_selection: rows,
        encoder,
        decoder,
        submatrix,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroErrorCheck {
    pub ok: bool,
    pub messages_checked: u64,
    pub exhaustive: bool,
    /// First message that decoded wrongly.
    pub counterexample: Option<Vec<u64>>,
}

/// Sends messages through `g` and decodes them. Every message is tried when
/// there are at most [`EXHAUSTIVE_LIMIT`] of them; otherwise that many are
/// drawn from `seed`.
pub fn verify_zero_error(code: &ZeroErrorCode, g: &FpMatrix, seed: u64) -> ZeroErrorCheck {
    let p = code.field.modulus();
    let r = code.dimension;
    let total = (p as f64).powi(r as i32);
    let exhaustive = total <= EXHAUSTIVE_LIMIT as f64;
    let n = if exhaustive { total as u64 } else { EXHAUSTIVE_LIMIT };
    let mut rng = rng::stream(seed, 0);
    let mut msg = vec![0u64; r];
    for k in 0..n {
        if exhaustive {
            let mut x = k;
            for m in msg.iter_mut() {
                *m = x % p;
                x /= p;
            }
        } else {
            msg.iter_mut().for_each(|m| *m = rng.random_range(0..p));
        }
        let y = g.mul_vec(&code.encode(&msg));
        if code.decode(&y) != msg {
            return ZeroErrorCheck {
                ok: false,
                messages_checked: k + 1,
                exhaustive,
                counterexample: Some(msg),
            };
        }
    }
    ZeroErrorCheck {
        ok: true,
        messages_checked: n,
        exhaustive,
        counterexample: None,
    }
}
