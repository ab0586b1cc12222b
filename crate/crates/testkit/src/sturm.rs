//! Real root counting by Sturm sequences.

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::{qi, Q};

/// Coefficients in increasing degree, trailing zeros trimmed.
fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Q]) -> Vec<Q> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * qi(i as i64)).collect())
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let f = &r[r.len() - 1] / lb;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn sign_changes(seq: &[Vec<Q>], at: Option<&Q>, neg_inf: bool) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| {
            let v = match at {
                Some(x) => p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c),
                None => {
                    let lead = p.last().unwrap().clone();
                    if neg_inf && (p.len() - 1) % 2 == 1 {
                        -lead
                    } else {
                        lead
                    }
                }
            };
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sequence(p: &[Q]) -> Vec<Vec<Q>> {
    let mut seq = vec![trim(p.to_vec())];
    let d = derivative(&seq[0]);
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn count_real_roots(p: &[Q]) -> usize {
    let p = trim(p.to_vec());
    assert!(!p.is_empty(), "zero polynomial");
    if p.len() == 1 {
        return 0;
    }
    let seq = sequence(&p);
    sign_changes(&seq, None, true) - sign_changes(&seq, None, false)
}

/// Distinct real roots in the half-open interval `(a, b]`.
pub fn count_in(p: &[Q], a: &Q, b: &Q) -> usize {
    let seq = sequence(p);
    sign_changes(&seq, Some(a), false) - sign_changes(&seq, Some(b), false)
}

/// Random polynomial of exact degree `deg`, sometimes built from rational
/// roots so that repeated and rational roots occur.
pub fn random_poly<R: Rng>(rng: &mut R, deg: usize) -> Vec<Q> {
    if rng.gen_bool(0.4) && deg > 0 {
        let mut p = vec![qi(1)];
        let mut left = deg;
        while left > 0 {
            let f: Vec<Q> = if left >= 2 && rng.gen_bool(0.3) {
                left -= 2;
                vec![qi(rng.gen_range(-5..=9)), qi(rng.gen_range(-3..=3)), qi(1)]
            } else {
                left -= 1;
                vec![-crate::q(rng.gen_range(-12..=12), rng.gen_range(1..=4)), qi(1)]
            };
            let mut out = vec![Q::zero(); p.len() + f.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            p = out;
        }
        return p;
    }
    let mut p: Vec<Q> = (0..deg).map(|_| crate::q(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect();
    let mut lead = rng.gen_range(-6..=6);
    if lead == 0 {
        lead = 1;
    }
    p.push(qi(lead));
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&v| qi(v)).collect()
    }

    #[test]
    fn known_counts() {
        assert_eq!(count_real_roots(&ints(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&ints(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&ints(&[0, -1, 0, 1])), 3);
        // (x - 1)^2 (x + 2)
        assert_eq!(count_real_roots(&ints(&[2, -3, 0, 1])), 2);
        assert_eq!(count_real_roots(&ints(&[5])), 0);
        assert_eq!(count_in(&ints(&[0, -1, 0, 1]), &qi(-1), &qi(1)), 2);
    }
}
