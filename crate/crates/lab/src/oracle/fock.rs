use nalgebra::DMatrix;

/// Truncated annihilation operator on `{|0⟩, …, |cutoff⟩}`.
pub fn annihilation(cutoff: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(cutoff + 1, cutoff + 1);
    for n in 1..=cutoff {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

pub fn number(cutoff: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_fn(cutoff + 1, |n, _| n as f64))
}

/// `a + a†`.
pub fn quadrature(cutoff: usize) -> DMatrix<f64> {
    let a = annihilation(cutoff);
    &a + a.transpose()
}

pub fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

/// max |H − H†| relative to the largest entry of `H`.
pub fn hermiticity_error(h: &DMatrix<f64>) -> f64 {
    let scale = h.amax().max(f64::MIN_POSITIVE);
    (h - h.transpose()).amax() / scale
}

/// Ground state of a real symmetric matrix (lowest eigenvalue, eigenvector).
pub fn ground_state(h: &DMatrix<f64>) -> (f64, nalgebra::DVector<f64>) {
    let eig = h.clone().symmetric_eigen();
    let k = eig.eigenvalues.argmin().0;
    (eig.eigenvalues[k], eig.eigenvectors.column(k).into_owned())
}

/// `⟨ψ|(O − ⟨O⟩)²|ψ⟩` for real symmetric `O` and normalized `ψ`.
pub fn variance(op: &DMatrix<f64>, psi: &nalgebra::DVector<f64>) -> f64 {
    let o_psi = op * psi;
    let mean = psi.dot(&o_psi);
    (o_psi - psi * mean).norm_squared()
}
