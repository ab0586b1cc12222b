use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GroebnerBasis;
use crate::budget::{Deadline, TimedOut};
use crate::poly::{Monomial, Poly, Rat, TermOrder};

/// Terms sorted by decreasing monomial under the working order.
type Terms<C> = Vec<(Monomial, C)>;

fn to_integer_terms(p: &Poly, order: &TermOrder) -> Terms<BigInt> {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut out: Terms<BigInt> = p
        .sorted_terms(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

/// Divides by the content and makes the leading coefficient positive.
fn make_primitive(t: &mut Terms<BigInt>) {
    if t.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, c) in t.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if t[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in t.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a*p - b*mono*g` for sorted term lists, skipping the head of both (the
/// caller guarantees the leading terms cancel).
fn combine(
    p: &[(Monomial, BigInt)],
    a: &BigInt,
    g: &[(Monomial, BigInt)],
    b: &BigInt,
    mono: &Monomial,
    order: &TermOrder,
) -> Terms<BigInt> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let shifted = |k: usize| g[k].0.mul(mono);
    let mut gm = if j < g.len() { Some(shifted(j)) } else { None };
    while i < p.len() || gm.is_some() {
        let ord = match (&gm, i < p.len()) {
            (None, _) => Ordering::Greater,
            (Some(_), false) => Ordering::Less,
            (Some(m), true) => order.compare(&p[i].0, m),
        };
        match ord {
            Ordering::Greater => {
                out.push((p[i].0.clone(), a * &p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), -(b * &g[j].1)));
                j += 1;
                gm = if j < g.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let c = a * &p[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                gm = if j < g.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out
}

struct Element {
    terms: Terms<BigInt>,
    sugar: u32,
    active: bool,
}

impl Element {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Fully reduces `p` modulo the active elements. Result is primitive.
fn reduce(
    p: Terms<BigInt>,
    basis: &[Element],
    order: &TermOrder,
    skip: Option<usize>,
) -> Terms<BigInt> {
    let mut p = p;
    let mut rem: Terms<BigInt> = Vec::new();
    let mut steps = 0usize;
    while !p.is_empty() {
        let (m, c) = &p[0];
        let red = basis.iter().enumerate().find(|(k, e)| {
            e.active && Some(*k) != skip && e.lm().divides(m)
        });
        match red {
            None => {
                // move the head term to the remainder
                let head = p.remove(0);
                rem.push(head);
            }
            Some((_, e)) => {
                let b = &e.terms[0].1;
                let g = c.gcd(b);
                let mul_p = b / &g;
                let mul_g = c / &g;
                let mono = m.div(e.lm()).expect("divisible");
                p = combine(&p, &mul_p, &e.terms, &mul_g, &mono, order);
                if !mul_p.is_one() {
                    for (_, rc) in rem.iter_mut() {
                        *rc *= &mul_p;
                    }
                }
                steps += 1;
                if steps.is_multiple_of(8) {
                    remove_joint_content(&mut p, &mut rem);
                }
            }
        }
    }
    make_primitive(&mut rem);
    rem
}

fn remove_joint_content(p: &mut Terms<BigInt>, rem: &mut Terms<BigInt>) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter().chain(rem.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.iter_mut().chain(rem.iter_mut()) {
        *c /= &g;
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn spoly(a: &Element, b: &Element, lcm: &Monomial, order: &TermOrder) -> Terms<BigInt> {
    let ca = &a.terms[0].1;
    let cb = &b.terms[0].1;
    let g = ca.gcd(cb);
    let ma = lcm.div(a.lm()).unwrap();
    let mb = lcm.div(b.lm()).unwrap();
    // (cb/g)*ma*a - (ca/g)*mb*b; write as combine on the shifted a
    let shifted_a: Terms<BigInt> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c.clone())).collect();
    combine(&shifted_a, &(cb / &g), &b.terms, &(ca / &g), &mb, order)
}

fn update(basis: &mut [Element], pairs: &mut Vec<Pair>, t: usize) {
    let h_lm = basis[t].lm().clone();
    let h_sugar = basis[t].sugar;
    let sugar_of = |e: &Element, lcm: &Monomial| {
        let shift = lcm.degree() - e.lm().degree();
        e.sugar + shift
    };
    let mut cands: Vec<(usize, Monomial, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(k, e)| *k != t && e.active)
        .map(|(k, e)| (k, e.lm().lcm(&h_lm), e.lm().is_coprime(&h_lm)))
        .collect();
    // chain criterion among the new pairs
    let mut keep = Vec::new();
    for idx in 0..cands.len() {
        let (_, ref l, coprime) = cands[idx];
        if coprime {
            keep.push(idx);
            continue;
        }
        let dominated = cands.iter().enumerate().any(|(o, (_, lo, _))| {
            o != idx && lo.divides(l) && (lo != l || o < idx)
        });
        if !dominated {
            keep.push(idx);
        }
    }
    // old pairs made redundant by the new leading monomial
    pairs.retain(|p| {
        let li = basis[p.i].lm().lcm(&h_lm);
        let lj = basis[p.j].lm().lcm(&h_lm);
        !(h_lm.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });
    for idx in keep {
        let (k, lcm, coprime) = std::mem::replace(&mut cands[idx], (0, Monomial::one(0), true));
        if coprime {
            continue;
        }
        let s = sugar_of(&basis[k], &lcm).max(h_sugar + lcm.degree() - h_lm.degree());
        pairs.push(Pair { i: k, j: t, lcm, sugar: s });
    }
    for (k, e) in basis.iter_mut().enumerate() {
        if k != t && e.active && h_lm.divides(e.lm()) {
            e.active = false;
        }
    }
}

pub(super) fn groebner(
    polys: &[Poly],
    order: &TermOrder,
    deadline: Deadline,
) -> Result<Vec<Poly>, TimedOut> {
    let registry = polys[0].registry().clone();
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let one = || vec![Poly::one(&registry)];

    let mut inputs: Vec<(Terms<BigInt>, u32)> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| (to_integer_terms(p, order), p.total_degree().unwrap_or(0)))
        .collect();
    if inputs.is_empty() {
        return Ok(vec![Poly::zero(&registry)]);
    }
    // smaller leading monomials first: they reduce the later inputs
    inputs.sort_by(|a, b| order.compare(&a.0[0].0, &b.0[0].0));
    for (t, sugar) in inputs {
        deadline.check()?;
        let r = reduce(t, &basis, order, None);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(one());
        }
        basis.push(Element { terms: r, sugar, active: true });
        let idx = basis.len() - 1;
        update(&mut basis, &mut pairs, idx);
    }

    while !pairs.is_empty() {
        deadline.check()?;
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.sugar
                    .cmp(&pb.sugar)
                    .then_with(|| order.compare(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm, order);
        if s.is_empty() {
            continue;
        }
        let r = reduce(s, &basis, order, None);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(one());
        }
        basis.push(Element { terms: r, sugar: pair.sugar, active: true });
        let idx = basis.len() - 1;
        update(&mut basis, &mut pairs, idx);
    }

    // interreduce the minimal basis
    let active: Vec<usize> = (0..basis.len()).filter(|&k| basis[k].active).collect();
    let mut reduced = Vec::with_capacity(active.len());
    for &k in &active {
        deadline.check()?;
        let t = basis[k].terms.clone();
        let r = reduce(t, &basis, order, Some(k));
        debug_assert!(!r.is_empty() && &r[0].0 == basis[k].lm());
        reduced.push(r);
    }
    let mut out: Vec<Poly> = reduced
        .into_iter()
        .map(|t| {
            let lc = Rat::from_integer(t[0].1.clone());
            Poly::from_terms(&registry, t.into_iter().map(|(m, c)| (m, Rat::from_integer(c) / &lc)))
        })
        .collect();
    out.sort_by(|a, b| {
        order.compare(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });
    Ok(out)
}

/// Rational reduction of `p` by the monic generators of `gb`.
pub fn normal_form_terms(p: &Poly, gb: &GroebnerBasis) -> Vec<(Monomial, Rat)> {
    let order = &gb.order;
    let gens: Vec<Vec<(Monomial, Rat)>> = gb
        .generators
        .iter()
        .map(|g| {
            g.sorted_terms(order)
                .into_iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect()
        })
        .collect();
    let mut work: std::collections::BTreeMap<OrdKey<'_>, Rat> = std::collections::BTreeMap::new();
    let key = |m: &Monomial| OrdKey(m.clone(), order);
    for (m, c) in p.terms() {
        work.insert(key(m), c.clone());
    }
    let mut rem = Vec::new();
    while let Some((k, c)) = work.pop_last() {
        let m = k.0;
        match gens.iter().position(|g| g[0].0.divides(&m)) {
            None => rem.push((m, c)),
            Some(gi) => {
                let g = &gens[gi];
                let mono = m.div(&g[0].0).unwrap();
                for (gm, gc) in &g[1..] {
                    let km = key(&gm.mul(&mono));
                    let delta = &c * gc;
                    let entry = work.entry(km).or_insert_with(Rat::zero);
                    *entry -= delta;
                    if entry.is_zero() {
                        let km = key(&gm.mul(&mono));
                        work.remove(&km);
                    }
                }
            }
        }
    }
    rem
}

/// Monomial ordered by a term order, for use as a map key.
struct OrdKey<'a>(Monomial, &'a TermOrder);

impl PartialEq for OrdKey<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl Eq for OrdKey<'_> {}
impl PartialOrd for OrdKey<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for OrdKey<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.compare(&self.0, &other.0)
    }
}
