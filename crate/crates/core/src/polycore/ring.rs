use std::sync::Arc;

use super::{Field, MonomialOrder, PolyError, Polynomial};

/// Descriptor of a polynomial ring `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: Field,
    split: Option<usize>,
    order: MonomialOrder,
}

impl PolyRing {
    /// Ring with degrevlex order in the given variable sequence.
    pub fn new<S: AsRef<str>>(names: &[S], field: Field) -> Result<Arc<PolyRing>, PolyError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        let order = MonomialOrder::degrevlex(names.len());
        Ok(Arc::new(PolyRing { names, field, split: None, order }))
    }

    /// Same ring with a bigrading: variables `0..split` have degree (1,0),
    /// the rest (0,1).
    pub fn with_split(&self, split: usize) -> Arc<PolyRing> {
        assert!(split <= self.names.len());
        Arc::new(PolyRing { split: Some(split), ..self.clone() })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        assert_eq!(order.nvars(), self.names.len(), "order arity mismatch");
        Arc::new(PolyRing { order, ..self.clone() })
    }

    pub fn with_field(&self, field: Field) -> Arc<PolyRing> {
        Arc::new(PolyRing { field, ..self.clone() })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field; order and grading may differ.
    pub fn same_space(&self, other: &PolyRing) -> bool {
        self.names == other.names && self.field == other.field
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::var(self, i)
    }

    pub fn var_by_name(self: &Arc<Self>, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(self, i))
    }

    /// All variables as polynomials, in ring order.
    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| Polynomial::var(self, i)).collect()
    }
}
