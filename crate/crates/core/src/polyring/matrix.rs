//! Determinants and adjugates of small square matrices over the polynomial
//! ring, by fraction-free (Bareiss) elimination.

use super::chart::ChartRef;
use super::polynomial::Polynomial;

/// Determinant by Bareiss elimination; every division is exact.
pub fn determinant(chart: &ChartRef, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(chart);
    }
    let mut a: Vec<Vec<Polynomial>> = m.to_vec();
    let mut sign = false;
    let mut prev = Polynomial::one(chart);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(chart),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t
                    .exact_divide(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn minor(m: &[Vec<Polynomial>], row: usize, col: usize) -> Vec<Vec<Polynomial>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Classical adjugate: `adj(M)·M = M·adj(M) = det(M)·I`.
pub fn adjugate(chart: &ChartRef, m: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = m.len();
    let mut adj = vec![vec![Polynomial::zero(chart); n]; n];
    if n == 1 {
        adj[0][0] = Polynomial::one(chart);
        return adj;
    }
    for (i, row) in m.iter().enumerate() {
        for j in 0..row.len() {
            let c = determinant(chart, &minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::chart::Chart;

    fn leibniz_det(chart: &ChartRef, m: &[Vec<Polynomial>]) -> Polynomial {
        // Brute force over permutations.
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut acc = Polynomial::zero(chart);
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = Polynomial::one(chart);
            for (i, &pi) in p.iter().enumerate() {
                t = &t * &m[i][pi];
            }
            acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let x = Polynomial::var(&c, 0).unwrap();
        let y = Polynomial::var(&c, 1).unwrap();
        let one = Polynomial::one(&c);
        let z = Polynomial::zero(&c);
        let m = vec![
            vec![z.clone(), x.clone(), &y + &one],
            vec![-&x, z.clone(), &x * &y],
            vec![y.clone(), one.clone(), x.clone()],
        ];
        assert_eq!(determinant(&c, &m), leibniz_det(&c, &m));
        let adj = adjugate(&c, &m);
        let d = determinant(&c, &m);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = Polynomial::zero(&c);
                for k in 0..3 {
                    s = &s + &(&adj[i][k] * &m[k][j]);
                }
                let want = if i == j { d.clone() } else { Polynomial::zero(&c) };
                assert_eq!(s, want);
            }
        }
    }
}
