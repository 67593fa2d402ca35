//! The two-qubit magic square and the product-rule refutation.
//!
//! Nine ±1-valued two-qubit observables arranged 3×3 so that each row and
//! each column commutes internally and multiplies to ±𝟙, with the six sign
//! targets multiplying to -1. No assignment of ±1 values to the cells can
//! reproduce all six products, which rules out a value map multiplicative
//! on commuting pairs. This needs dimension ≥ 4.

use num_complex::Complex64;

use super::NogoError;
use crate::hilbert::{commutator, tensor_product, ComplexMatrix};

/// 3×3 grid of two-qubit observables with row/column product sign targets.
#[derive(Debug, Clone)]
pub struct MagicSquare {
    cells: Vec<ComplexMatrix>,
    row_signs: [i8; 3],
    col_signs: [i8; 3],
}

impl MagicSquare {
    pub fn new(
        cells: Vec<ComplexMatrix>,
        row_signs: [i8; 3],
        col_signs: [i8; 3],
    ) -> Result<Self, NogoError> {
        if cells.len() != 9 {
            return Err(NogoError::InvalidSquare(format!(
                "need 9 cells, got {}",
                cells.len()
            )));
        }
        let square = Self {
            cells,
            row_signs,
            col_signs,
        };
        square.validate(1e-10)?;
        Ok(square)
    }

    pub fn cell(&self, row: usize, col: usize) -> &ComplexMatrix {
        &self.cells[row * 3 + col]
    }

    pub fn row_signs(&self) -> [i8; 3] {
        self.row_signs
    }

    pub fn col_signs(&self) -> [i8; 3] {
        self.col_signs
    }

    /// Checks every structural invariant: Hermitian involutive cells,
    /// commuting rows and columns, row/column products equal to the sign
    /// targets times 𝟙, and target parity -1.
    pub fn validate(&self, tol: f64) -> Result<(), NogoError> {
        let dim = self.cells[0].dim();
        let id = ComplexMatrix::identity(dim);
        for (k, cell) in self.cells.iter().enumerate() {
            if cell.dim() != dim {
                return Err(NogoError::InvalidSquare(format!("cell {k} has wrong dim")));
            }
            if !cell.is_hermitian(tol) {
                return Err(NogoError::InvalidSquare(format!(
                    "cell {k} is not Hermitian"
                )));
            }
            let sq = cell.mul(cell).expect("same dim");
            if sq.sub(&id).expect("same dim").max_abs() > tol {
                return Err(NogoError::InvalidSquare(format!(
                    "cell {k} is not an involution"
                )));
            }
        }
        let lines: [([usize; 3], i8, &str); 6] = [
            ([0, 1, 2], self.row_signs[0], "row 0"),
            ([3, 4, 5], self.row_signs[1], "row 1"),
            ([6, 7, 8], self.row_signs[2], "row 2"),
            ([0, 3, 6], self.col_signs[0], "col 0"),
            ([1, 4, 7], self.col_signs[1], "col 1"),
            ([2, 5, 8], self.col_signs[2], "col 2"),
        ];
        for (idx, sign, name) in &lines {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    let comm =
                        commutator(&self.cells[idx[a]], &self.cells[idx[b]]).expect("same dim");
                    if comm.max_abs() > tol {
                        return Err(NogoError::InvalidSquare(format!(
                            "{name} does not commute internally"
                        )));
                    }
                }
            }
            let product = self.cells[idx[0]]
                .mul(&self.cells[idx[1]])
                .and_then(|m| m.mul(&self.cells[idx[2]]))
                .expect("same dim");
            let target = id.scale(Complex64::new(*sign as f64, 0.0));
            if product.sub(&target).expect("same dim").max_abs() > tol {
                return Err(NogoError::InvalidSquare(format!(
                    "{name} product does not match its sign target"
                )));
            }
        }
        let parity: i8 = self.row_signs.iter().chain(&self.col_signs).product();
        if parity != -1 {
            return Err(NogoError::InvalidSquare(
                "sign targets must multiply to -1".into(),
            ));
        }
        Ok(())
    }
}

fn paulis() -> (ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let id = ComplexMatrix::identity(2);
    let x = ComplexMatrix::from_fn(2, |i, j| {
        if i != j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let y = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 1) => Complex64::new(0.0, -1.0),
        (1, 0) => Complex64::new(0.0, 1.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let z = ComplexMatrix::diagonal(&[1.0, -1.0]);
    (id, x, y, z)
}

/// The standard two-qubit square:
///
/// ```text
///   σz⊗𝟙   𝟙⊗σz   σz⊗σz      rows multiply to +𝟙
///   𝟙⊗σx   σx⊗𝟙   σx⊗σx      columns to +𝟙, +𝟙, -𝟙
///   σz⊗σx  σx⊗σz  σy⊗σy
/// ```
pub fn mermin_square() -> MagicSquare {
    let (id, x, y, z) = paulis();
    let cells = vec![
        tensor_product(&z, &id),
        tensor_product(&id, &z),
        tensor_product(&z, &z),
        tensor_product(&id, &x),
        tensor_product(&x, &id),
        tensor_product(&x, &x),
        tensor_product(&z, &x),
        tensor_product(&x, &z),
        tensor_product(&y, &y),
    ];
    MagicSquare::new(cells, [1, 1, 1], [1, 1, -1])
        .expect("the standard square satisfies every invariant")
}

/// Counts the ±1 assignments to the nine cells whose row and column
/// products hit the given targets, by enumerating all 2⁹ = 512 of them.
pub fn count_sign_assignments(row_signs: [i8; 3], col_signs: [i8; 3]) -> u32 {
    let mut satisfying = 0u32;
    for mask in 0u16..512 {
        let value = |cell: usize| -> i8 {
            if mask >> cell & 1 == 1 {
                1
            } else {
                -1
            }
        };
        let mut ok = true;
        for (r, &target) in row_signs.iter().enumerate() {
            if value(3 * r) * value(3 * r + 1) * value(3 * r + 2) != target {
                ok = false;
                break;
            }
        }
        if ok {
            for (c, &target) in col_signs.iter().enumerate() {
                if value(c) * value(c + 3) * value(c + 6) != target {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            satisfying += 1;
        }
    }
    satisfying
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefutationReport {
    pub total_assignments: u32,
    pub satisfying_assignments: u32,
    /// Product of the six sign targets; -1 makes the count provably zero,
    /// because any assignment gives row and column grand products that agree.
    pub parity_product: i8,
    pub row_signs: [i8; 3],
    pub col_signs: [i8; 3],
}

/// Validates the square and exhaustively refutes the product value-map
/// rule on it: none of the 512 cell assignments satisfies all six product
/// constraints.
pub fn refute_product_valuemap(square: &MagicSquare) -> Result<RefutationReport, NogoError> {
    square.validate(1e-10)?;
    let satisfying = count_sign_assignments(square.row_signs(), square.col_signs());
    let parity: i8 = square
        .row_signs()
        .iter()
        .chain(&square.col_signs())
        .product();
    Ok(RefutationReport {
        total_assignments: 512,
        satisfying_assignments: satisfying,
        parity_product: parity,
        row_signs: square.row_signs(),
        col_signs: square.col_signs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct 4×4 multiplication oracle for a line of three cells.
    fn line_product(square: &MagicSquare, cells: [(usize, usize); 3]) -> ComplexMatrix {
        let mut acc = ComplexMatrix::identity(4);
        for (r, c) in cells {
            acc = acc.mul(square.cell(r, c)).unwrap();
        }
        acc
    }

    #[test]
    fn all_rows_multiply_to_plus_identity() {
        let sq = mermin_square();
        let id = ComplexMatrix::identity(4);
        for r in 0..3 {
            let prod = line_product(&sq, [(r, 0), (r, 1), (r, 2)]);
            assert!(prod.sub(&id).unwrap().max_abs() <= 1e-12);
        }
    }

    #[test]
    fn exactly_one_column_multiplies_to_minus_identity() {
        let sq = mermin_square();
        let id = ComplexMatrix::identity(4);
        let mut minus_columns = 0;
        for c in 0..3 {
            let prod = line_product(&sq, [(0, c), (1, c), (2, c)]);
            let against_minus = prod.add(&id).unwrap().max_abs();
            if against_minus <= 1e-12 {
                minus_columns += 1;
            } else {
                assert!(prod.sub(&id).unwrap().max_abs() <= 1e-12);
            }
        }
        assert_eq!(minus_columns, 1);
    }

    #[test]
    fn every_cell_is_an_involution() {
        let sq = mermin_square();
        let id = ComplexMatrix::identity(4);
        for r in 0..3 {
            for c in 0..3 {
                let cell = sq.cell(r, c);
                assert!(cell.mul(cell).unwrap().sub(&id).unwrap().max_abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn no_assignment_satisfies_the_standard_square() {
        let report = refute_product_valuemap(&mermin_square()).unwrap();
        assert_eq!(report.total_assignments, 512);
        assert_eq!(report.satisfying_assignments, 0);
        assert_eq!(report.parity_product, -1);
    }

    #[test]
    fn all_plus_targets_are_satisfiable() {
        // consistency control on the counting logic alone: with all six
        // targets +1 the all-ones assignment works
        let count = count_sign_assignments([1, 1, 1], [1, 1, 1]);
        assert!(count > 0);
        assert_eq!(count, 16);
    }

    #[test]
    fn parity_shortcut_agrees_with_enumeration() {
        for bits in 0u8..64 {
            let sign = |b: u8| if bits >> b & 1 == 1 { 1i8 } else { -1 };
            let rows = [sign(0), sign(1), sign(2)];
            let cols = [sign(3), sign(4), sign(5)];
            let parity: i8 = rows.iter().chain(&cols).product();
            let count = count_sign_assignments(rows, cols);
            assert_eq!(count == 0, parity == -1, "rows {rows:?} cols {cols:?}");
        }
    }

    #[test]
    fn sign_forgery_is_rejected() {
        let sq = mermin_square();
        let forged = MagicSquare::new(
            (0..3)
                .flat_map(|r| (0..3).map(move |c| (r, c)))
                .map(|(r, c)| sq.cell(r, c).clone())
                .collect(),
            [1, 1, 1],
            [1, 1, 1],
        );
        assert!(matches!(forged, Err(NogoError::InvalidSquare(_))));
    }
}
