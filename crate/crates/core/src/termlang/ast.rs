use std::collections::BTreeSet;
use std::fmt;

use crate::error::Result;
use crate::seqspace::Perm;

/// The permutation named by a substitution node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PermSpec {
    /// `s[i,j]`
    Transposition(usize, usize),
    /// `s{a0,…,a(n-1)}`, a validated image list.
    Images(Vec<usize>),
}

impl PermSpec {
    pub fn from_perm(f: &Perm) -> Self {
        PermSpec::Images(f.images().to_vec())
    }

    /// The permutation in dimension `n`.
    pub fn to_perm(&self, n: usize) -> Result<Perm> {
        match self {
            PermSpec::Transposition(i, j) => Perm::transposition(n, *i, *j),
            PermSpec::Images(images) => {
                let f = Perm::from_images(images.clone())?;
                if f.dim() != n {
                    return Err(crate::Error::DimensionMismatch {
                        expected: n,
                        found: f.dim(),
                    });
                }
                Ok(f)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Not(Box<Term>),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Subst(PermSpec, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(t: Term) -> Term {
        Term::Not(Box::new(t))
    }

    pub fn and(a: Term, b: Term) -> Term {
        Term::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Term, b: Term) -> Term {
        Term::Or(Box::new(a), Box::new(b))
    }

    pub fn subst(spec: PermSpec, t: Term) -> Term {
        Term::Subst(spec, Box::new(t))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Not(t) | Term::Subst(_, t) => t.collect_vars(out),
            Term::And(a, b) | Term::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One => 1,
            Term::Not(t) | Term::Subst(_, t) => 1 + t.depth(),
            Term::And(a, b) | Term::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = self.lhs.vars();
        self.rhs.collect_vars(&mut out);
        out
    }
}

/// `h_1, …, h_m => c`. With no hypotheses this is just the equation `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiEquation {
    pub hypotheses: Vec<Equation>,
    pub conclusion: Equation,
}

impl QuasiEquation {
    pub fn new(hypotheses: Vec<Equation>, conclusion: Equation) -> Self {
        QuasiEquation {
            hypotheses,
            conclusion,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = self.conclusion.vars();
        for h in &self.hypotheses {
            out.extend(h.vars());
        }
        out
    }
}

impl From<Equation> for QuasiEquation {
    fn from(eq: Equation) -> Self {
        QuasiEquation::new(Vec::new(), eq)
    }
}

// Printing. Levels: 1 = or, 2 = and, 3 = unary.

fn write_term(t: &Term, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Zero => write!(f, "0"),
        Term::One => write!(f, "1"),
        Term::Not(inner) => {
            write!(f, "~")?;
            write_term(inner, 3, f)
        }
        Term::Subst(spec, inner) => {
            write!(f, "{spec} ")?;
            write_term(inner, 3, f)
        }
        Term::And(a, b) => {
            if level > 2 {
                write!(f, "(")?;
            }
            write_term(a, 2, f)?;
            write!(f, " & ")?;
            write_term(b, 3, f)?;
            if level > 2 {
                write!(f, ")")?;
            }
            Ok(())
        }
        Term::Or(a, b) => {
            if level > 1 {
                write!(f, "(")?;
            }
            write_term(a, 1, f)?;
            write!(f, " | ")?;
            write_term(b, 2, f)?;
            if level > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for PermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermSpec::Transposition(i, j) => write!(f, "s[{i},{j}]"),
            PermSpec::Images(images) => {
                let parts: Vec<String> = images.iter().map(|i| i.to_string()).collect();
                write!(f, "s{{{}}}", parts.join(","))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, 1, f)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for QuasiEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hypotheses.is_empty() {
            return write!(f, "{}", self.conclusion);
        }
        let hyps: Vec<String> = self.hypotheses.iter().map(|h| h.to_string()).collect();
        write!(f, "{} => {}", hyps.join(", "), self.conclusion)
    }
}
