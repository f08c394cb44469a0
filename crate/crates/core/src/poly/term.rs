use std::fmt;

/// A power product `x1^e1 * ... * xn^en`.
///
/// The derived ordering is lex with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(Box<[u32]>);

impl Term {
    pub fn one(n: usize) -> Self {
        Term(vec![0; n].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Term(exps.into_boxed_slice())
    }

    pub fn variable(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Term(e.into_boxed_slice())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// The index `k` if this term is exactly `x_k`.
    pub fn as_variable(&self) -> Option<usize> {
        let mut found = None;
        for (k, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 if found.is_none() => found = Some(k),
                _ => return None,
            }
        }
        found
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn square_free(&self) -> Term {
        Term(self.0.iter().map(|&e| e.min(1)).collect())
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.nvars(), other.nvars());
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, index: usize) -> Term {
        let mut e = self.0.clone();
        e[index] += 1;
        Term(e)
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Term) -> Option<Term> {
        if !self.divides(other) {
            return None;
        }
        Some(Term(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Term) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Keep only the variables with `keep[k]`, renumbered densely.
    pub fn project(&self, keep: &[usize]) -> Term {
        Term(keep.iter().map(|&k| self.0[k]).collect())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        TermDisplay { term: self, names }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        let shown = self.display(&names).to_string();
        f.write_str(&shown)
    }
}

struct TermDisplay<'a> {
    term: &'a Term,
    names: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (k, &e) in self.term.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.names[k])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
