use crate::arith::PrimeField;
use crate::combinatorics::AdmissiblePair;
use crate::groups::group::MatrixGroup;
use crate::groups::matrix::Matrix;

/// A linear form `λ(x) = Σ c_ij x_ij` on strictly upper triangular matrices,
/// stored as its coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Matrix,
}

impl LinearForm {
    pub fn new(coeffs: Matrix) -> LinearForm {
        LinearForm {
            coeffs: coeffs.strict_upper(),
        }
    }

    pub fn zero(n: usize) -> LinearForm {
        LinearForm {
            coeffs: Matrix::zero(n),
        }
    }

    /// `λ_{D,φ} = Σ φ(α) E*_α`.
    pub fn from_pair(n: usize, pair: &AdmissiblePair) -> LinearForm {
        LinearForm::new(Matrix::from_pair(n, pair))
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// `λ(x)`; only the strictly upper part of `x` is read.
    pub fn eval(&self, x: &Matrix, f: &PrimeField) -> u8 {
        self.coeffs.pair_upper(x, f)
    }
}

/// Right kernel of a matrix over `F_p` given by rows of length `cols`,
/// returned as a basis in reduced form.
pub fn kernel_basis(rows: &[Vec<u8>], cols: usize, f: &PrimeField) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let v = f.sub(m[i][j], f.mul(factor, m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u8; cols];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row][fc]);
            }
            v
        })
        .collect()
}

/// The right stabilizer `J_{λ,rt} = {y ∈ J : λ(yx) = 0 for all x ∈ J}` of a
/// form on the pattern algebra of `group`.
#[derive(Clone, Debug)]
pub struct RightStabilizer {
    n: usize,
    /// One constraint per pattern basis element `E_ab`: the coefficients of
    /// `y ↦ λ(y E_ab)` on the pattern coordinates.
    constraints: Vec<Vec<u8>>,
    pattern: Vec<(usize, usize)>,
    basis: Vec<Matrix>,
}

impl RightStabilizer {
    pub fn new(group: &MatrixGroup, lambda: &LinearForm) -> RightStabilizer {
        let f = group.field();
        let n = group.n();
        let pattern = group.pattern().to_vec();
        // λ(y E_ab) = Σ_i c_{i,b} y_{i,a}
        let constraints: Vec<Vec<u8>> = pattern
            .iter()
            .map(|&(a, b)| {
                pattern
                    .iter()
                    .map(|&(i, j)| if j == a { lambda.coeffs().get(i, b) } else { 0 })
                    .collect()
            })
            .collect();
        let basis = kernel_basis(&constraints, pattern.len(), f)
            .into_iter()
            .map(|v| {
                let mut m = Matrix::zero(n);
                for (k, &(i, j)) in pattern.iter().enumerate() {
                    m.set(i, j, v[k]);
                }
                m
            })
            .collect();
        RightStabilizer {
            n,
            constraints,
            pattern,
            basis,
        }
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether the strictly upper part of `y` lies in the subalgebra.
    pub fn contains(&self, y: &Matrix, f: &PrimeField) -> bool {
        debug_assert_eq!(y.n(), self.n);
        self.constraints.iter().all(|row| {
            let mut acc = 0u32;
            for (k, &(i, j)) in self.pattern.iter().enumerate() {
                acc += row[k] as u32 * y.get(i, j) as u32;
            }
            acc.is_multiple_of(f.p())
        })
    }
}
