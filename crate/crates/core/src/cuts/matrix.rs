use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::model::Network;

use super::{Cut, CutError};

/// Row/column layout of a cut's transfer matrix. Rows are receive antennas
/// on the sink side, columns are transmit antennas on the source side, both
/// restricted to antennas that touch at least one crossing edge and sorted
/// by (node index, antenna index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutLayout {
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
    /// (row, col, edge) for every crossing edge.
    pub entries: Vec<(usize, usize, usize)>,
}

impl CutLayout {
    pub fn new(net: &Network, cut: &Cut) -> Self {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for &e in cut.crossing_edges() {
            let ep = net.endpoints(e);
            rows.push((ep.head, ep.head_antenna));
            cols.push((ep.tail, ep.tail_antenna));
        }
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        let entries = cut
            .crossing_edges()
            .iter()
            .map(|&e| {
                let ep = net.endpoints(e);
                let r = rows.binary_search(&(ep.head, ep.head_antenna)).unwrap();
                let c = cols.binary_search(&(ep.tail, ep.tail_antenna)).unwrap();
                (r, c, e)
            })
            .collect();
        Self { rows, cols, entries }
    }
}

/// The complex transfer matrix `H_omega` of a cut.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCutMatrix {
    pub layout: CutLayout,
    pub matrix: DMatrix<Complex64>,
}

impl ComplexCutMatrix {
    /// Number of structurally nonzero entries.
    pub fn nonzeros(&self) -> usize {
        self.layout.entries.len()
    }
}

/// Build `H_omega`: entry (a, b) is the coefficient of the crossing edge from
/// transmit antenna b to receive antenna a, zero when there is none.
pub fn cut_matrix(net: &Network, cut: &Cut) -> Result<ComplexCutMatrix, CutError> {
    let layout = CutLayout::new(net, cut);
    let mut matrix = DMatrix::zeros(layout.rows.len(), layout.cols.len());
    for &(r, c, e) in &layout.entries {
        matrix[(r, c)] = net.edges()[e]
            .coeff
            .ok_or(CutError::MissingCoefficient { edge: e })?;
    }
    Ok(ComplexCutMatrix { layout, matrix })
}
