//! Minimal sparse symmetric matrices and a conjugate-gradient solver.
//!
//! The solver targets the Laplacian-type systems this crate produces:
//! positive semidefinite with the constant vector as null space. Systems are
//! solved on the orthogonal complement of the constants by projecting the
//! right-hand side and every iterate, with Jacobi preconditioning.

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("conjugate gradient stalled after {iterations} iterations (residual {residual:.3e})")]
    Stalled { iterations: usize, residual: f64 },
    #[error("right-hand side incompatible with the singular system (mean {0:.3e})")]
    Incompatible(f64),
}

/// Symmetric sparse matrix in CSR form. Both triangles are stored so matvec
/// is a plain row sweep.
#[derive(Clone, Debug)]
pub struct SparseSymmetricMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<f64>,
}

pub struct Builder {
    n: usize,
    entries: Vec<(u32, u32, f64)>,
}

impl Builder {
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.n && j < self.n);
        self.entries.push((i as u32, j as u32, v));
    }

    pub fn build(mut self) -> SparseSymmetricMatrix {
        self.entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0usize; self.n + 1];
        let mut col: Vec<u32> = Vec::with_capacity(self.entries.len());
        let mut val: Vec<f64> = Vec::with_capacity(self.entries.len());
        let mut cur_row = 0usize;
        let mut last = None;
        for &(i, j, v) in &self.entries {
            if last == Some((i, j)) {
                *val.last_mut().unwrap() += v;
                continue;
            }
            while cur_row < i as usize {
                cur_row += 1;
                row_ptr[cur_row] = col.len();
            }
            col.push(j);
            val.push(v);
            last = Some((i, j));
        }
        while cur_row < self.n {
            cur_row += 1;
            row_ptr[cur_row] = col.len();
        }
        SparseSymmetricMatrix { n: self.n, row_ptr, col, val }
    }
}

impl SparseSymmetricMatrix {
    pub fn builder(n: usize) -> Builder {
        Builder { n, entries: Vec::new() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col[lo..hi].binary_search(&(j as u32)) {
            Ok(k) => self.val[lo + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.val[k] * x[self.col[k] as usize];
            }
            y[i] = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.val[self.row_ptr[i]..self.row_ptr[i + 1]].iter().sum())
            .collect()
    }

    /// Largest absolute asymmetry |a_ij − a_ji|; 0 for exactly symmetric data.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.col[k] as usize;
                worst = worst.max((self.val[k] - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.col[k] as usize)] = self.val[k];
            }
        }
        m
    }

    /// Solves `A x = b` for positive definite `A` by preconditioned CG.
    pub fn solve_spd(&self, b: &[f64], rel_tol: f64) -> Result<Vec<f64>, SolveError> {
        self.cg(b, rel_tol, false)
    }

    /// Solves `A x = b` where `A` is PSD with the constants as null space.
    /// `b` must have (near) zero mean; the returned solution has zero mean.
    pub fn solve_singular_laplacian(&self, b: &[f64], rel_tol: f64) -> Result<Vec<f64>, SolveError> {
        let scale = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let mean = b.iter().sum::<f64>() / self.n as f64;
        if scale > 0.0 && mean.abs() > 1e-8 * scale {
            return Err(SolveError::Incompatible(mean));
        }
        self.cg(b, rel_tol, true)
    }

    fn cg(&self, b: &[f64], rel_tol: f64, deflate_constants: bool) -> Result<Vec<f64>, SolveError> {
        let n = self.n;
        let project = |v: &mut [f64]| {
            if deflate_constants {
                let m = v.iter().sum::<f64>() / n as f64;
                v.iter_mut().for_each(|x| *x -= m);
            }
        };
        let mut r = b.to_vec();
        project(&mut r);
        let b_norm = norm(&r);
        if b_norm == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let diag = self.diagonal();
        let floor = diag.iter().cloned().fold(0.0, f64::max) * 1e-300 + f64::MIN_POSITIVE;
        let precond: Vec<f64> =
            diag.iter().map(|&d| if d > floor { 1.0 / d } else { 1.0 }).collect();

        let mut x = vec![0.0; n];
        let mut z: Vec<f64> = r.iter().zip(&precond).map(|(ri, pi)| ri * pi).collect();
        project(&mut z);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; n];
        let max_iter = 40 * n + 100;
        for it in 0..max_iter {
            self.matvec(&p, &mut ap);
            project(&mut ap);
            let pap = dot(&p, &ap);
            if pap <= 0.0 {
                return Err(SolveError::Stalled { iterations: it, residual: norm(&r) / b_norm });
            }
            let alpha = rz / pap;
            axpy(&mut x, alpha, &p);
            axpy(&mut r, -alpha, &ap);
            if norm(&r) <= rel_tol * b_norm {
                project(&mut x);
                return Ok(x);
            }
            for i in 0..n {
                z[i] = r[i] * precond[i];
            }
            project(&mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(SolveError::Stalled { iterations: max_iter, residual: norm(&r) / b_norm })
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
