use std::cmp::Ordering;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    GRevLex,
    Lex,
}

/// Monomial order together with a variable priority.
///
/// `perm[0]` is the most significant variable. For grevlex the tie-break
/// looks at `perm[n-1]` first: the monomial with the smaller exponent there
/// is the larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        TermOrder { kind, perm }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GRevLex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect())
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GRevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for &v in self.perm.iter().rev() {
                        match a.exp(v).cmp(&b.exp(v)) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_textbook_cases() {
        let o = TermOrder::grevlex(3);
        // equal degree: smaller power of the last variable wins
        assert_eq!(o.compare(&m(&[1, 2, 1]), &m(&[2, 0, 2])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn lex_with_permutation() {
        let o = TermOrder::new(OrderKind::Lex, vec![1, 0]);
        assert_eq!(o.compare(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[0, 1])), Ordering::Greater);
    }
}
