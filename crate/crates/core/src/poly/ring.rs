use std::sync::Arc;

use super::field::PrimeField;
use super::order::TermOrder;
use crate::error::{AlgebraError, Result};

/// A polynomial ring `F_p[v_1, ..., v_n]` with a fixed active term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: TermOrder,
}

pub(crate) fn valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Ring with the default grevlex order in the declared variable order.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<PolyRing>> {
        let n = vars.len();
        Self::with_field(PrimeField::new(p)?, vars, TermOrder::grevlex(n))
    }

    pub fn with_field<S: AsRef<str>>(field: PrimeField, vars: &[S], order: TermOrder) -> Result<Arc<PolyRing>> {
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !valid_variable_name(v) {
                return Err(AlgebraError::InvalidVariableName(v.to_string()));
            }
            if names.iter().any(|w| w == v) {
                return Err(AlgebraError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        if order.nvars() != names.len() {
            return Err(AlgebraError::InvalidOrder(format!(
                "order covers {} variables, ring has {}",
                order.nvars(),
                names.len()
            )));
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: names,
            order,
        }))
    }

    /// Same variables and field under another term order.
    pub fn with_order(&self, order: TermOrder) -> Result<Arc<PolyRing>> {
        Self::with_field(self.field, &self.vars, order)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field and variables, ignoring the term order.
    pub fn same_variables(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    /// Ring with extra variables appended at the end (grevlex in declared order).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<PolyRing>> {
        let mut names = self.vars.clone();
        for e in extra {
            names.push(e.as_ref().to_string());
        }
        let n = names.len();
        Self::with_field(self.field, &names, TermOrder::grevlex(n))
    }

    /// A variable name starting with `stem` not used in this ring.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        name
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
