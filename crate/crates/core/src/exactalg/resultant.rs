use super::Poly;

/// Resultant of `a` and `b` with respect to variable `v`, computed as the
/// determinant of the Sylvester matrix by fraction-free (Bareiss) elimination
/// over the coefficient ring ℚ[other variables].
///
/// Conventions: the resultant with a zero polynomial is zero; if `a` has
/// degree 0 in `v` the result is `a^deg_v(b)` (and symmetrically).
pub fn resultant(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = a.nvars();
    assert_eq!(n, b.nvars(), "resultant of polynomials in different rings");
    let (Some(da), Some(db)) = (a.degree_in(v), b.degree_in(v)) else {
        return Poly::zero(n);
    };
    if da == 0 {
        return a.pow(db);
    }
    if db == 0 {
        return b.pow(da);
    }
    let (da, db) = (da as usize, db as usize);
    let size = da + db;
    let ca: Vec<Poly> = (0..=da).map(|k| a.coeff_in(v, k as u32)).collect();
    let cb: Vec<Poly> = (0..=db).map(|k| b.coeff_in(v, k as u32)).collect();
    let mut m = vec![vec![Poly::zero(n); size]; size];
    for row in 0..db {
        for k in 0..=da {
            m[row][row + k] = ca[da - k].clone();
        }
    }
    for row in 0..da {
        for k in 0..=db {
            m[db + row][row + k] = cb[db - k].clone();
        }
    }
    bareiss_det(m)
}

fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let size = m.len();
    let n = m[0][0].nvars();
    let mut negate = false;
    let mut prev = Poly::one(n);
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(n);
            };
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.divexact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn resultant_of_lines() {
        // Res_y(y - x, y + x - 2) = (-x) - (x - 2) up to sign: vanishes at x = 1
        let r = resultant(&(y() - x()), &(y() + x() - Poly::constant(2, rat(2))), 1);
        assert_eq!(r.eval(&[rat(1), rat(0)]), rat(0));
        assert_eq!(r.total_degree(), Some(1));
    }

    #[test]
    fn resultant_detects_common_root() {
        let a = y().pow(2) - x();
        let b = y() - x();
        // common zeros where x^2 = x
        let r = resultant(&a, &b, 1);
        assert!(r.associated(&(x().pow(2) - x())));
    }

    #[test]
    fn degree_zero_conventions() {
        assert_eq!(resultant(&x(), &y(), 1), x());
        assert_eq!(resultant(&y().pow(2), &x(), 1), x().pow(2));
        assert!(resultant(&Poly::zero(2), &y(), 1).is_zero());
    }
}
