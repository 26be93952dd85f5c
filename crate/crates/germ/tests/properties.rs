use proptest::prelude::*;
use sasaki_core::{GaussianRational as Q, Matrix};
use sasaki_germ::fox::{linear_kernel_check, relator_order2, GroupPresentation, Representation};

/// Polynomial in `ε` with matrix coefficients, multiplied without truncation.
fn poly_mul(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    let m = a[0].rows();
    let mut out = vec![Matrix::zeros(m, m); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn reduce(word: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = Vec::new();
    for &l in word {
        match out.last() {
            Some(&(g, inv)) if g == l.0 && inv != l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn to_string(word: &[(usize, bool)]) -> String {
    word.iter()
        .map(|&(g, inv)| {
            let c = (b'a' + g as u8) as char;
            if inv {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

fn inverse(word: &[(usize, bool)]) -> Vec<(usize, bool)> {
    word.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
}

fn word() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..3, any::<bool>()), 1..4)
}

fn small() -> impl Strategy<Value = i64> {
    -2i64..=2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Commutator relators under a diagonal representation: the order-one
    /// and order-two coefficients of `ρ(w)(ε)` along `U_g = ε X_g` match the
    /// truncated system.
    #[test]
    fn order_two_expansion_matches_univariate_oracle(
        w1 in word(),
        w2 in word(),
        diag in prop::collection::vec(prop::sample::select(vec![1i64, -1, 2, 3]), 6),
        dirs in prop::collection::vec(small(), 12),
    ) {
        let mut rel = w1.clone();
        rel.extend(&w2);
        rel.extend(inverse(&w1));
        rel.extend(inverse(&w2));
        let rel = reduce(&rel);
        prop_assume!(!rel.is_empty());
        let gp = GroupPresentation::new(&["a", "b", "c"], &[to_string(&rel).as_str()]).unwrap();
        let images: Vec<Matrix> = (0..3)
            .map(|g| Matrix::from_fn(2, 2, |i, j| if i == j { Q::from(diag[2 * g + i]) } else { Q::from(0) }))
            .collect();
        let rho = Representation::new(&gp, images.clone()).unwrap();
        let sys = relator_order2(&gp, &rho);
        let x: Vec<Q> = dirs.iter().map(|&c| Q::from(c)).collect();
        let xs: Vec<Matrix> = (0..3).map(|g| Matrix::from_fn(2, 2, |i, j| x[4 * g + 2 * i + j].clone())).collect();
        let half = Q::from_ratio(1, 2);
        let mut acc = vec![Matrix::identity(2)];
        for &(g, inv) in &rel {
            let u = &xs[g];
            let u2 = (u * u).scale(&half);
            let factor = if inv {
                let r = images[g].inverse().unwrap();
                vec![r.clone(), &u.scale(&Q::from(-1)) * &r, &u2 * &r]
            } else {
                vec![images[g].clone(), &images[g] * u, &images[g] * &u2]
            };
            acc = poly_mul(&acc, &factor);
        }
        let lin = sys.linear_part.mul_vec(&x);
        for k in 0..4 {
            let (i, j) = (k / 2, k % 2);
            prop_assert_eq!(&lin[k], &acc[1][(i, j)]);
            let qx = sys.quadratic_part[k].mul_vec(&x);
            let quad: Q = x.iter().zip(&qx).map(|(a, b)| a * b).sum();
            prop_assert_eq!(&quad, &acc[2][(i, j)]);
        }
        let check = linear_kernel_check(&gp, &rho);
        prop_assert!(check.jacobians_agree && check.kernels_agree);
    }
}
