//! Free functions on `f64` slices.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `acc += s * x`
pub fn axpy(acc: &mut [f64], s: f64, x: &[f64]) {
    for (a, v) in acc.iter_mut().zip(x) {
        *a += s * v;
    }
}

pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

/// Modified Gram-Schmidt. Vectors whose residual norm falls below `tol` are
/// dropped, so the output is an orthonormal basis of the span.
pub fn gram_schmidt(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        // two passes keep the basis orthogonal to machine precision
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                axpy(&mut w, -c, b);
            }
        }
        if let Some(u) = (norm(&w) > tol).then(|| normalized(&w)).flatten() {
            basis.push(u);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in `R^n`.
pub fn orthogonal_complement(vectors: &[Vec<f64>], n: usize, tol: f64) -> Vec<Vec<f64>> {
    let span = gram_schmidt(vectors, tol);
    let mut all = span.clone();
    all.extend((0..n).map(|i| unit(n, i)));
    let full = gram_schmidt(&all, tol);
    full.into_iter().skip(span.len()).collect()
}

/// Frobenius distance between the orthogonal projectors onto two spans.
pub fn subspace_distance(a: &[Vec<f64>], b: &[Vec<f64>], n: usize) -> f64 {
    let pa = projector(a, n);
    let pb = projector(b, n);
    pa.iter().zip(&pb).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn projector(basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    let ortho = gram_schmidt(basis, 1e-12);
    let mut p = vec![0.0; n * n];
    for v in &ortho {
        for i in 0..n {
            for j in 0..n {
                p[i * n + j] += v[i] * v[j];
            }
        }
    }
    p
}
