use std::sync::Arc;

use crate::error::{Error, Result};
use crate::seqspace::Perm;

use super::carrier::Carrier;
use super::elem::Elem;

/// A direct product `℘(D_0) × … × ℘(D_{m-1})` of algebras of one dimension.
#[derive(Debug, Clone)]
pub struct Product {
    factors: Vec<Arc<Carrier>>,
}

/// An element of a [`Product`], one component per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductElem {
    components: Vec<Elem>,
}

impl ProductElem {
    pub fn components(&self) -> &[Elem] {
        &self.components
    }
}

impl Product {
    pub fn new(factors: Vec<Arc<Carrier>>) -> Result<Self> {
        if let Some(first) = factors.first() {
            if let Some(bad) = factors.iter().find(|c| c.dim() != first.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: bad.dim(),
                });
            }
        }
        Ok(Product { factors })
    }

    pub fn factors(&self) -> &[Arc<Carrier>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn elem(&self, components: Vec<Elem>) -> Result<ProductElem> {
        if components.len() != self.factors.len() {
            return Err(Error::FactorCountMismatch {
                expected: self.factors.len(),
                found: components.len(),
            });
        }
        for (c, x) in self.factors.iter().zip(&components) {
            c.check_owner(x)?;
        }
        Ok(ProductElem { components })
    }

    fn check(&self, a: &ProductElem) -> Result<()> {
        if a.components.len() != self.factors.len() {
            return Err(Error::FactorCountMismatch {
                expected: self.factors.len(),
                found: a.components.len(),
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> ProductElem {
        ProductElem {
            components: self.factors.iter().map(|c| c.zero()).collect(),
        }
    }

    pub fn one(&self) -> ProductElem {
        ProductElem {
            components: self.factors.iter().map(|c| c.one()).collect(),
        }
    }

    pub fn meet(&self, a: &ProductElem, b: &ProductElem) -> Result<ProductElem> {
        self.check(a)?;
        self.check(b)?;
        let components = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.meet(y))
            .collect::<Result<_>>()?;
        Ok(ProductElem { components })
    }

    pub fn join(&self, a: &ProductElem, b: &ProductElem) -> Result<ProductElem> {
        self.check(a)?;
        self.check(b)?;
        let components = a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| x.join(y))
            .collect::<Result<_>>()?;
        Ok(ProductElem { components })
    }

    pub fn complement(&self, a: &ProductElem) -> Result<ProductElem> {
        self.check(a)?;
        Ok(ProductElem {
            components: a.components.iter().map(Elem::complement).collect(),
        })
    }

    pub fn subst(&self, f: &Perm, a: &ProductElem) -> Result<ProductElem> {
        self.check(a)?;
        let components = self
            .factors
            .iter()
            .zip(&a.components)
            .map(|(c, x)| c.subst(f, x))
            .collect::<Result<_>>()?;
        Ok(ProductElem { components })
    }

    pub fn is_zero(&self, a: &ProductElem) -> Result<bool> {
        self.check(a)?;
        Ok(a.components.iter().all(Elem::is_zero))
    }

    pub fn is_one(&self, a: &ProductElem) -> Result<bool> {
        self.check(a)?;
        Ok(a.components.iter().all(Elem::is_one))
    }

    pub fn project(&self, a: &ProductElem, i: usize) -> Result<Elem> {
        self.check(a)?;
        a.components.get(i).cloned().ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.factors.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_copies() -> Product {
        Product::new(vec![
            Arc::new(Carrier::full(2, 2).unwrap()),
            Arc::new(Carrier::full(2, 2).unwrap()),
        ])
        .unwrap()
    }

    #[test]
    fn componentwise_ops() {
        let p = two_copies();
        assert_eq!(p.complement(&p.zero()).unwrap(), p.one());

        let swap = Perm::transposition(2, 0, 1).unwrap();
        let [c0, c1] = [&p.factors()[0], &p.factors()[1]];
        let a = p.elem(vec![c0.elem_from_value(0b0010), c1.elem_from_value(0b1001)]).unwrap();
        let s = p.subst(&swap, &a).unwrap();
        assert_eq!(s.components()[0], c0.subst(&swap, &a.components()[0]).unwrap());
        assert_eq!(s.components()[1], c1.subst(&swap, &a.components()[1]).unwrap());

        let mixed = p.elem(vec![c0.zero(), c1.one()]).unwrap();
        assert!(!p.is_zero(&mixed).unwrap());
        assert!(p.is_zero(&p.zero()).unwrap());
    }

    #[test]
    fn shape_errors() {
        let p = two_copies();
        let c0 = &p.factors()[0];
        assert!(matches!(
            p.elem(vec![c0.zero()]),
            Err(Error::FactorCountMismatch { expected: 2, found: 1 })
        ));
        assert_eq!(
            p.elem(vec![c0.zero(), c0.zero()]),
            Err(Error::CarrierMismatch)
        );
        assert!(Product::new(vec![
            Arc::new(Carrier::full(2, 2).unwrap()),
            Arc::new(Carrier::full(3, 2).unwrap()),
        ])
        .is_err());
    }
}
