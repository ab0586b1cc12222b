//! Real root isolation for univariate rational polynomials.
//!
//! Roots are isolated with Descartes' rule of signs under bisection
//! (Vincent–Collins–Akritas) on integer-scaled polynomials, then refined by
//! exact-sign bisection. Every step is exact, so an interval returned here is
//! a proof that it holds exactly one real root.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat, Rat};
use crate::univariate::UniPoly;

/// Closed interval holding exactly one real root of its polynomial.
///
/// When `exact` is set, `lo == hi` is the root itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: bool,
}

impl IsolatingInterval {
    pub fn point(x: Rat) -> Self {
        IsolatingInterval {
            lo: x.clone(),
            hi: x,
            exact: true,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat::int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// `f / gcd(f, f')`, primitive with positive leading coefficient.
pub fn squarefree_part(f: &UniPoly) -> UniPoly {
    assert!(!f.is_zero(), "squarefree part of the zero polynomial");
    let g = f.gcd(&f.derivative());
    f.div_rem(&g).0.primitive_part()
}

/// Strict upper bound on the absolute value of every complex root.
pub fn cauchy_bound(f: &UniPoly) -> Rat {
    let lc = f.leading_coeff().abs();
    let n = f.degree().unwrap_or(0);
    let m = f.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rat::zero);
    m + Rat::one()
}

fn sign_variations<T: Signed>(coeffs: &[T]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in coeffs {
        let s = if c.is_positive() {
            1
        } else if c.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of `f` carried onto the open interval `(lo, hi)` by the
/// Möbius map `x -> (lo + hi*x)/(1 + x)`. Zero means no root inside, one
/// means exactly one root inside.
pub fn descartes_bound(f: &UniPoly, lo: &Rat, hi: &Rat) -> usize {
    assert!(lo < hi, "empty interval");
    let n = match f.degree() {
        Some(n) => n,
        None => return 0,
    };
    let unit = f.taylor_shift(lo).scale_arg(&(hi - lo));
    let mut rev: Vec<Rat> = (0..=n).map(|i| unit.coeff(n - i)).collect();
    rev = UniPoly::new(rev).taylor_shift(&Rat::one()).coeffs().to_vec();
    sign_variations(&rev)
}

fn int_taylor_shift_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = a[j + 1].clone();
            a[j] += t;
        }
    }
}

/// Sign variations of `(x+1)^n q(1/(x+1))`: bounds the roots of `q` in `(0, 1)`.
fn unit_interval_variations(q: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = q.iter().rev().cloned().collect();
    int_taylor_shift_one(&mut rev);
    sign_variations(&rev)
}

fn strip_content(q: &mut [BigInt]) {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for c in q.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for c in q.iter_mut() {
            *c /= &g;
        }
    }
}

/// Root intervals of the integer polynomial `p` on `(0, bound)`, where
/// `bound` is a power of two exceeding every positive root and `p(0) != 0`.
fn isolate_positive(p: &[BigInt], bound_exp: i64) -> Vec<IsolatingInterval> {
    let n = p.len() - 1;
    // q(x) = p(2^e x)
    let mut q0: Vec<BigInt> = Vec::with_capacity(p.len());
    for (i, c) in p.iter().enumerate() {
        let sh = bound_exp * i as i64;
        q0.push(if sh >= 0 {
            c << (sh as u64)
        } else {
            c << ((bound_exp.unsigned_abs() * (n - i) as u64) as usize)
        });
    }
    strip_content(&mut q0);
    let scale = |a: &BigInt, k: u32| -> Rat {
        let two_e = if bound_exp >= 0 {
            Rat::from_integer(BigInt::one() << (bound_exp as u64))
        } else {
            Rat::new(BigInt::one(), BigInt::one() << bound_exp.unsigned_abs())
        };
        Rat::new(a.clone(), BigInt::one() << k) * two_e
    };
    let mut out = Vec::new();
    let mut stack = vec![(q0, BigInt::zero(), 0u32)];
    while let Some((q, a, k)) = stack.pop() {
        let v = unit_interval_variations(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push(IsolatingInterval {
                lo: scale(&a, k),
                hi: scale(&(&a + 1), k),
                exact: false,
            });
            continue;
        }
        // left half: 2^n q(x/2)
        let mut left: Vec<BigInt> = q
            .iter()
            .enumerate()
            .map(|(i, c)| c << (n - i))
            .collect();
        let mut right = left.clone();
        int_taylor_shift_one(&mut right);
        let mid_a = &a * 2 + 1;
        if right[0].is_zero() {
            out.push(IsolatingInterval::point(scale(&mid_a, k + 1)));
        }
        strip_content(&mut left);
        strip_content(&mut right);
        stack.push((right, mid_a.clone(), k + 1));
        stack.push((left, &a * 2, k + 1));
    }
    out
}

/// Shrinks a Descartes-certified interval until both endpoint signs are
/// nonzero and opposite.
fn bracket(f: &UniPoly, mut iv: IsolatingInterval) -> IsolatingInterval {
    loop {
        let sl = f.sign_at(&iv.lo);
        let sh = f.sign_at(&iv.hi);
        if sl * sh < 0 {
            return iv;
        }
        let mid = iv.midpoint();
        if f.sign_at(&mid) == 0 {
            // the open interval holds a single root, so this is it
            return IsolatingInterval::point(mid);
        }
        if descartes_bound(f, &iv.lo, &mid) >= 1 {
            iv.hi = mid;
        } else {
            iv.lo = mid;
        }
    }
}

/// Disjoint isolating intervals for every real root of `f`, sorted, each of
/// width at most `maxwidth`.
pub fn isolate_real_roots(f: &UniPoly, maxwidth: &Rat) -> Vec<IsolatingInterval> {
    assert!(!f.is_zero(), "cannot isolate roots of the zero polynomial");
    let sf = squarefree_part(f);
    if sf.degree() == Some(0) {
        return Vec::new();
    }
    let mut ints = sf.integer_coeffs();
    let mut out = Vec::new();
    if ints[0].is_zero() {
        out.push(IsolatingInterval::point(Rat::zero()));
        ints.remove(0);
    }
    if ints.len() > 1 {
        let deflated = UniPoly::new(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
        let bound_exp = rat::pow2_ceil_exp(&cauchy_bound(&deflated));
        out.extend(isolate_positive(&ints, bound_exp));
        let neg: Vec<BigInt> = ints
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        for iv in isolate_positive(&neg, bound_exp) {
            out.push(IsolatingInterval {
                lo: -iv.hi,
                hi: -iv.lo,
                exact: iv.exact,
            });
        }
    }
    let mut out: Vec<IsolatingInterval> = out
        .into_iter()
        .map(|iv| {
            let iv = if iv.exact { iv } else { bracket(&sf, iv) };
            refine(&sf, &iv, maxwidth)
        })
        .collect();
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Bisects `iv` by exact sign evaluation until its width is at most `eps`.
/// `f` should be squarefree so the root is simple.
pub fn refine(f: &UniPoly, iv: &IsolatingInterval, eps: &Rat) -> IsolatingInterval {
    if iv.exact || iv.width() <= *eps {
        return iv.clone();
    }
    let mut iv = iv.clone();
    if f.sign_at(&iv.lo) * f.sign_at(&iv.hi) >= 0 {
        iv = bracket(f, iv);
        if iv.exact {
            return iv;
        }
    }
    let mut s_lo = f.sign_at(&iv.lo);
    while iv.width() > *eps {
        let mid = iv.midpoint();
        let s = f.sign_at(&mid);
        if s == 0 {
            return IsolatingInterval::point(mid);
        }
        if s == s_lo {
            iv.lo = mid;
            s_lo = s;
        } else {
            iv.hi = mid;
        }
    }
    iv
}
