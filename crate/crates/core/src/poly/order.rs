use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{AlgebraError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Product of two grevlex orders: the first `block` variables of the
    /// priority list are compared first. This is an elimination order for them.
    BlockGrevlex { block: usize },
}

/// A monomial order given by a kind and a variable priority list.
///
/// `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &v in &priority {
            if v >= n || seen[v] {
                return Err(AlgebraError::InvalidOrder(format!(
                    "priority list {priority:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if let OrderKind::BlockGrevlex { block } = kind {
            if block > n {
                return Err(AlgebraError::InvalidOrder(format!("block {block} > {n} variables")));
            }
        }
        Ok(TermOrder { kind, priority })
    }

    pub fn grevlex(nvars: usize) -> Self {
        TermOrder {
            kind: OrderKind::Grevlex,
            priority: (0..nvars).collect(),
        }
    }

    pub fn lex(nvars: usize) -> Self {
        TermOrder {
            kind: OrderKind::Lex,
            priority: (0..nvars).collect(),
        }
    }

    /// Block order eliminating `dropped`: those variables come first, each block grevlex,
    /// both blocks keeping the declared relative variable order.
    pub fn elimination(nvars: usize, dropped: &[usize]) -> Self {
        let mut priority: Vec<usize> = dropped.to_vec();
        priority.sort_unstable();
        priority.dedup();
        let block = priority.len();
        priority.extend((0..nvars).filter(|v| !dropped.contains(v)));
        TermOrder {
            kind: OrderKind::BlockGrevlex { block },
            priority,
        }
    }

    /// Grevlex with `var` moved to the least significant position.
    pub fn grevlex_with_last(nvars: usize, var: usize) -> Self {
        let mut priority: Vec<usize> = (0..nvars).filter(|&v| v != var).collect();
        priority.push(var);
        TermOrder {
            kind: OrderKind::Grevlex,
            priority,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Integer key whose lexicographic order agrees with [`TermOrder::cmp`].
    pub fn sort_key(&self, m: &Monomial) -> Vec<i32> {
        let e = m.exponents();
        let mut key = Vec::with_capacity(self.priority.len() + 2);
        let push_grevlex = |vars: &[usize], key: &mut Vec<i32>| {
            key.push(vars.iter().map(|&v| e[v] as i32).sum());
            key.extend(vars.iter().rev().map(|&v| -(e[v] as i32)));
        };
        match self.kind {
            OrderKind::Lex => key.extend(self.priority.iter().map(|&v| e[v] as i32)),
            OrderKind::Grevlex => push_grevlex(&self.priority, &mut key),
            OrderKind::BlockGrevlex { block } => {
                let (first, second) = self.priority.split_at(block);
                push_grevlex(first, &mut key);
                push_grevlex(second, &mut key);
            }
        }
        key
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => revlex_tail(&self.priority, ea, eb),
                o => o,
            },
            OrderKind::BlockGrevlex { block } => {
                let (first, second) = self.priority.split_at(block);
                match grevlex_on(first, ea, eb) {
                    Ordering::Equal => grevlex_on(second, ea, eb),
                    o => o,
                }
            }
        }
    }
}

#[inline]
fn revlex_tail(vars: &[usize], ea: &[u16], eb: &[u16]) -> Ordering {
    for &v in vars.iter().rev() {
        if ea[v] != eb[v] {
            // smaller exponent in the last differing variable is the larger monomial
            return eb[v].cmp(&ea[v]);
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex_on(vars: &[usize], ea: &[u16], eb: &[u16]) -> Ordering {
    let da: u32 = vars.iter().map(|&v| ea[v] as u32).sum();
    let db: u32 = vars.iter().map(|&v| eb[v] as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => revlex_tail(vars, ea, eb),
        o => o,
    }
}
