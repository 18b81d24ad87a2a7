/// A real symmetric matrix, symmetrized on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    a: Vec<f64>, // row-major
}

impl SymMatrix {
    /// Builds from arbitrary square data, averaging `a[i][j]` and `a[j][i]`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        Self { n, a }
    }

    pub fn zero(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Sets the (i, j) and (j, i) entries.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            n: self.n,
            a: self.a.iter().map(|x| s * x).collect(),
        }
    }

    /// Eigenvalues in ascending order, by cyclic Jacobi rotations.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigen_decomposition().0
    }

    /// Jacobi diagonalization: eigenvalues ascending plus the orthogonal matrix
    /// whose columns are the matching eigenvectors.
    ///
    /// Sweeps continue until the off-diagonal Frobenius norm drops below
    /// `1e-12 * (diagonal Frobenius norm + 1)`.
    pub fn eigen_decomposition(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.n;
        let mut a = self.a.clone();
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        if n == 1 {
            return (vec![a[0]], vec![vec![1.0]]);
        }
        for _sweep in 0..100 {
            let mut off = 0.0;
            let mut diag = 0.0;
            for i in 0..n {
                diag += a[i * n + i] * a[i * n + i];
                for j in (i + 1)..n {
                    off += 2.0 * a[i * n + j] * a[i * n + j];
                }
            }
            if off.sqrt() < 1e-12 * (diag.sqrt() + 1.0) {
                break;
            }
            for p in 0..n - 1 {
                for r in (p + 1)..n {
                    let apr = a[p * n + r];
                    if apr == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let arr = a[r * n + r];
                    let theta = 0.5 * (arr - app) / apr;
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                        s / (theta.abs() + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // rotate rows/columns p and r
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akr = a[k * n + r];
                        a[k * n + p] = c * akp - s * akr;
                        a[k * n + r] = s * akp + c * akr;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let ark = a[r * n + k];
                        a[p * n + k] = c * apk - s * ark;
                        a[r * n + k] = s * apk + c * ark;
                    }
                    for k in 0..n {
                        let qkp = q[k * n + p];
                        let qkr = q[k * n + r];
                        q[k * n + p] = c * qkp - s * qkr;
                        q[k * n + r] = s * qkp + c * qkr;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
        let vectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&col| (0..n).map(|row| q[row * n + col]).collect())
            .collect();
        (values, vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_eigenvalues() {
        let m = SymMatrix::identity(3);
        assert_eq!(m.eigenvalues(), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_passthrough() {
        let mut m = SymMatrix::zero(3);
        m.set_sym(0, 0, -2.0);
        m.set_sym(1, 1, 0.0);
        m.set_sym(2, 2, 5.0);
        assert_eq!(m.eigenvalues(), vec![-2.0, 0.0, 5.0]);
    }

    #[test]
    fn two_by_two_characteristic_roots() {
        // [[2,1],[1,2]]: characteristic polynomial (2-x)^2 - 1, roots 1 and 3
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let ev = m.eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!((ev[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn symmetrized_on_construction() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![4.0, 1.0]]);
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn reassembly_and_trace() {
        // fixed pseudo-random symmetric 4x4
        let mut state = 0xDEADBEEFu64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut m = SymMatrix::zero(4);
        for i in 0..4 {
            for j in i..4 {
                m.set_sym(i, j, next());
            }
        }
        let (vals, vecs) = m.eigen_decomposition();
        // trace equals eigenvalue sum
        assert!((m.trace() - vals.iter().sum::<f64>()).abs() < 1e-10);
        // Q L Q^T reproduces m entrywise
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += vecs[k][i] * vals[k] * vecs[k][j];
                }
                assert!((s - m.get(i, j)).abs() < 1e-10);
            }
        }
    }
}
