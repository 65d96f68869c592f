//! Determinants by partial-pivot LU elimination.

use num_complex::Complex64;

/// Determinant of a row-major `n × n` matrix; the input is overwritten.
pub fn det_in_place(a: &mut [f64], n: usize) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for r in col + 1..n {
            let v = a[r * n + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if piv != col {
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            if factor == 0.0 {
                continue;
            }
            for c in col + 1..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
        }
    }
    det
}

/// Determinant of a row-major `n × n` matrix.
pub fn det(a: &[f64], n: usize) -> f64 {
    det_in_place(&mut a.to_vec(), n)
}

/// Complex determinant of a row-major `n × n` matrix; the input is overwritten.
pub fn complex_det_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm_sqr();
        for r in col + 1..n {
            let v = a[r * n + col].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        let inv = p.inv();
        for r in col + 1..n {
            let factor = a[r * n + col] * inv;
            for c in col + 1..n {
                let v = a[col * n + c];
                a[r * n + c] -= factor * v;
            }
        }
    }
    det
}
