use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Carrier, Elem, SubstMap};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::seqspace::Seq;

use super::ast::Term;

/// An assignment of elements to variable names.
pub type Assignment = BTreeMap<String, Elem>;

#[derive(Debug, Clone)]
enum Node {
    Var(usize),
    Zero,
    One,
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Subst(Arc<SubstMap>, Box<Node>),
}

/// A term resolved against one carrier: variables become slots in a fixed
/// order and every substitution node holds its precomputed map.
#[derive(Debug, Clone)]
pub struct CompiledTerm {
    root: Node,
    width: usize,
}

impl CompiledTerm {
    /// `vars` fixes the slot order; every variable of `t` must appear in it.
    pub fn new(t: &Term, d: &Carrier, vars: &[String]) -> Result<Self> {
        Ok(CompiledTerm {
            root: compile(t, d, vars)?,
            width: d.len(),
        })
    }

    pub fn eval(&self, values: &[BitSet]) -> BitSet {
        eval_node(&self.root, values, self.width)
    }
}

fn compile(t: &Term, d: &Carrier, vars: &[String]) -> Result<Node> {
    Ok(match t {
        Term::Var(v) => Node::Var(
            vars.iter()
                .position(|w| w == v)
                .ok_or_else(|| Error::Unassigned(v.clone()))?,
        ),
        Term::Zero => Node::Zero,
        Term::One => Node::One,
        Term::Not(a) => Node::Not(Box::new(compile(a, d, vars)?)),
        Term::And(a, b) => Node::And(Box::new(compile(a, d, vars)?), Box::new(compile(b, d, vars)?)),
        Term::Or(a, b) => Node::Or(Box::new(compile(a, d, vars)?), Box::new(compile(b, d, vars)?)),
        Term::Subst(spec, a) => {
            let f = spec.to_perm(d.dim())?;
            Node::Subst(d.subst_map(&f)?, Box::new(compile(a, d, vars)?))
        }
    })
}

fn eval_node(node: &Node, values: &[BitSet], width: usize) -> BitSet {
    match node {
        Node::Var(i) => values[*i].clone(),
        Node::Zero => BitSet::zeros(width),
        Node::One => BitSet::ones(width),
        Node::Not(a) => eval_node(a, values, width).not(),
        Node::And(a, b) => eval_node(a, values, width).and(&eval_node(b, values, width)),
        Node::Or(a, b) => eval_node(a, values, width).or(&eval_node(b, values, width)),
        Node::Subst(map, a) => map.apply(&eval_node(a, values, width)),
    }
}

fn slots(d: &Carrier, assignment: &Assignment) -> Result<(Vec<String>, Vec<BitSet>)> {
    let mut names = Vec::with_capacity(assignment.len());
    let mut values = Vec::with_capacity(assignment.len());
    for (name, x) in assignment {
        d.check_owner(x)?;
        names.push(name.clone());
        values.push(x.bits().clone());
    }
    Ok((names, values))
}

/// Evaluates `t` in `℘(D)` under `assignment`.
pub fn eval_term(t: &Term, d: &Carrier, assignment: &Assignment) -> Result<Elem> {
    let (names, values) = slots(d, assignment)?;
    let compiled = CompiledTerm::new(t, d, &names)?;
    d.elem(compiled.eval(&values))
}

/// Evaluates `t` by reading the operations straight off their set-builder
/// definitions over the member sequences. Slow; shares no code with
/// [`CompiledTerm`], so it serves as an independent re-check.
pub fn eval_reference(t: &Term, d: &Carrier, assignment: &Assignment) -> Result<Vec<Seq>> {
    let members: Vec<Seq> = d.seqs().collect();
    let mut env = BTreeMap::new();
    for (name, x) in assignment {
        env.insert(name.as_str(), d.seqs_of(x)?);
    }
    reference(t, d, &members, &env)
}

fn reference(t: &Term, d: &Carrier, members: &[Seq], env: &BTreeMap<&str, Vec<Seq>>) -> Result<Vec<Seq>> {
    Ok(match t {
        Term::Var(v) => env.get(v.as_str()).cloned().ok_or_else(|| Error::Unassigned(v.clone()))?,
        Term::Zero => Vec::new(),
        Term::One => members.to_vec(),
        Term::Not(a) => {
            let inner = reference(a, d, members, env)?;
            members.iter().filter(|q| !inner.contains(q)).cloned().collect()
        }
        Term::And(a, b) => {
            let (x, y) = (reference(a, d, members, env)?, reference(b, d, members, env)?);
            members.iter().filter(|q| x.contains(q) && y.contains(q)).cloned().collect()
        }
        Term::Or(a, b) => {
            let (x, y) = (reference(a, d, members, env)?, reference(b, d, members, env)?);
            members.iter().filter(|q| x.contains(q) || y.contains(q)).cloned().collect()
        }
        Term::Subst(spec, a) => {
            let f = spec.to_perm(d.dim())?;
            let x = reference(a, d, members, env)?;
            let mut out = Vec::new();
            for q in members {
                if x.contains(&q.compose_right(&f)?) {
                    out.push(q.clone());
                }
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::termlang::parse_term;

    fn seq(v: &[usize]) -> Seq {
        Seq::new(v.to_vec())
    }

    fn assign(pairs: &[(&str, Elem)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn eval_examples() {
        let d = Carrier::full(2, 2).unwrap();
        let x = d.atom(&seq(&[0, 1])).unwrap();
        let got = eval_term(&parse_term("s[0,1] x").unwrap(), &d, &assign(&[("x", x)])).unwrap();
        assert_eq!(d.seqs_of(&got).unwrap(), vec![seq(&[1, 0])]);

        for x in d.all_elems() {
            let v = eval_term(&parse_term("x | ~x").unwrap(), &d, &assign(&[("x", x)])).unwrap();
            assert_eq!(v, d.one());
        }

        let e = |i| Seq::unit(2, i).unwrap();
        let g = Carrier::from_seqs(2, 2, [e(0), e(1)]).unwrap();
        let x = g.atom(&e(1)).unwrap();
        let lhs = eval_term(&parse_term("s{1,0} x | s{1,0} x").unwrap(), &g, &assign(&[("x", x.clone())])).unwrap();
        assert_eq!(lhs, x.complement());
        assert_eq!(g.seqs_of(&lhs).unwrap(), vec![e(0)]);
    }

    #[test]
    fn eval_errors() {
        let d = Carrier::full(2, 2).unwrap();
        let other = Carrier::full(2, 2).unwrap();
        let t = parse_term("x & y").unwrap();
        assert_eq!(eval_term(&t, &d, &assign(&[("x", d.one())])), Err(Error::Unassigned("y".into())));
        assert_eq!(
            eval_term(&t, &d, &assign(&[("x", d.one()), ("y", other.one())])),
            Err(Error::CarrierMismatch)
        );
        let t3 = parse_term("s{1,2,0} x").unwrap();
        assert!(matches!(
            eval_term(&t3, &d, &assign(&[("x", d.one())])),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad_swap = parse_term("s[0,2] x").unwrap();
        assert!(eval_term(&bad_swap, &d, &assign(&[("x", d.one())])).is_err());
    }

    #[test]
    fn compiled_matches_reference() {
        let d = Carrier::from_seqs(3, 2, [seq(&[0, 0, 1]), seq(&[0, 1, 0]), seq(&[1, 0, 0]), seq(&[1, 1, 0]), seq(&[1, 1, 1])]).unwrap();
        let t = parse_term("s{1,2,0} (x & ~s[0,2] y) | s[1,2] ~x").unwrap();
        for xv in 0..32u128 {
            for yv in [0u128, 5, 17, 31] {
                let a = assign(&[("x", d.elem_from_value(xv)), ("y", d.elem_from_value(yv))]);
                let fast = eval_term(&t, &d, &a).unwrap();
                assert_eq!(d.seqs_of(&fast).unwrap(), eval_reference(&t, &d, &a).unwrap());
            }
        }
    }
}
