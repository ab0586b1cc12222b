//! Zero-dimensional systems with a known, finite set of real points.
//!
//! Each system is a product grid `u_k ∈ S_k` in coordinates `u = M x` for a
//! random integer matrix `M`, so every equation has degree `|S_k|` (plus 2
//! when a factor without real roots is added) and the real points are
//! `M^{-1} u` over the grid.

use num_traits::{One, Zero};
use rand::Rng;

use crate::{q, qi, Q};

pub const NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug)]
pub struct Variety {
    pub nvars: usize,
    /// One polynomial per line after a `# unknowns:` header.
    pub text: String,
    /// Real points sorted lexicographically.
    pub points: Vec<Vec<Q>>,
    /// Number of complex solutions, all simple.
    pub solutions: usize,
}

fn linear_form(row: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in row.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push_str(if c > 0 { " + " } else { " - " });
        } else if c < 0 {
            s.push('-');
        }
        if c.abs() != 1 {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(NAMES[i]);
    }
    s
}

fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Q> = r.iter().map(|&v| qi(v)).collect();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Random system in at most 3 variables, degree at most 3, with at most 8
/// real points.
pub fn random_variety<R: Rng>(rng: &mut R) -> Variety {
    let nvars = rng.gen_range(1..=3);
    let (m, minv) = loop {
        let m: Vec<Vec<i64>> = (0..nvars)
            .map(|i| {
                (0..nvars)
                    .map(|j| if i == j { rng.gen_range(1..=2) } else { rng.gen_range(-1..=1) })
                    .collect()
            })
            .collect();
        if let Some(inv) = inverse(&m) {
            break (m, inv);
        }
    };
    let mut budget = 8usize;
    let mut solutions = 1usize;
    let mut grids: Vec<Vec<Q>> = Vec::new();
    let mut eqs: Vec<String> = Vec::new();
    for (k, row) in m.iter().enumerate() {
        let left = nvars - k - 1;
        // leave room for at least one value per remaining coordinate
        let cap = (budget >> left).clamp(1, 3);
        let s = rng.gen_range(1..=cap);
        let complex = s == 1 && rng.gen_bool(0.3);
        let mut vals: Vec<Q> = Vec::new();
        while vals.len() < s {
            let v = q(rng.gen_range(-9..=9), rng.gen_range(1..=3));
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        budget /= s;
        let u = linear_form(row);
        let mut factors: Vec<String> = vals.iter().map(|v| format!("({u} - ({v}))")).collect();
        solutions *= s + if complex { 2 } else { 0 };
        if complex {
            factors.push(format!("(({u})^2 + {})", rng.gen_range(1..=5)));
        }
        eqs.push(factors.join("*"));
        grids.push(vals);
    }
    // unitriangular mixing keeps the ideal
    let mut mixed = eqs.clone();
    for (i, e) in mixed.iter_mut().enumerate().skip(1) {
        if rng.gen_bool(0.5) {
            let j = rng.gen_range(0..i);
            *e = format!("{e} + ({})*({})", rng.gen_range(-3..=3), eqs[j]);
        }
    }
    let mut points: Vec<Vec<Q>> = vec![Vec::new()];
    for g in &grids {
        points = points
            .into_iter()
            .flat_map(|p| {
                g.iter().map(move |v| {
                    let mut p = p.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    let mut points: Vec<Vec<Q>> = points
        .into_iter()
        .map(|u| {
            minv.iter()
                .map(|row| row.iter().zip(&u).fold(Q::zero(), |acc, (a, b)| acc + a * b))
                .collect()
        })
        .collect();
    points.sort();
    let text = format!("# unknowns: {}\n{}\n", NAMES[..nvars].join(" "), mixed.join("\n"));
    Variety {
        nvars,
        text,
        points,
        solutions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn points_stay_within_limits() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let v = random_variety(&mut rng);
            assert!(v.points.len() <= 8);
            assert!(v.nvars <= 3);
            assert_eq!(v.text.lines().count(), v.nvars + 1);
        }
    }

    #[test]
    fn inverse_of_small_matrix() {
        let inv = inverse(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(inv, vec![vec![qi(1), qi(-1)], vec![qi(-1), qi(2)]]);
    }
}
