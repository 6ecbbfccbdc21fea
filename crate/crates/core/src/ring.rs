//! Polynomial ring descriptors with ℕ²-graded variables.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Degree pair `(d1, d2)`; single-graded rings use `d2 = 0` throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub d1: u32,
    pub d2: u32,
}

impl Bidegree {
    pub const fn new(d1: u32, d2: u32) -> Self {
        Bidegree { d1, d2 }
    }

    pub fn total(self) -> u32 {
        self.d1 + self.d2
    }

    /// Componentwise order.
    pub fn le(self, other: Bidegree) -> bool {
        self.d1 <= other.d1 && self.d2 <= other.d2
    }

    pub fn swap(self) -> Bidegree {
        Bidegree::new(self.d2, self.d1)
    }
}

impl std::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: Bidegree,
}

/// A polynomial ring `k[vars]` with a bidegree attached to every variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub name: String,
    pub vars: Vec<Variable>,
    pub field: Field,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(name: impl Into<String>, vars: Vec<Variable>, field: Field) -> Result<RingRef> {
        let mut seen = HashSet::new();
        for v in &vars {
            if v.degree == Bidegree::default() {
                return Err(Error::Invalid(format!(
                    "variable `{}` has degree (0,0)",
                    v.name
                )));
            }
            if !seen.insert(v.name.as_str()) {
                return Err(Error::DuplicateName(v.name.clone()));
            }
        }
        Ok(Arc::new(Ring {
            name: name.into(),
            vars,
            field,
        }))
    }

    /// Standard bigraded ring: `xs` get degree (1,0) and `ys` degree (0,1).
    pub fn bigraded(name: &str, xs: &[&str], ys: &[&str], field: Field) -> Result<RingRef> {
        let vars = xs
            .iter()
            .map(|n| Variable {
                name: n.to_string(),
                degree: Bidegree::new(1, 0),
            })
            .chain(ys.iter().map(|n| Variable {
                name: n.to_string(),
                degree: Bidegree::new(0, 1),
            }))
            .collect();
        Ring::new(name, vars, field)
    }

    /// Standard single-graded ring: every variable has degree (1,0).
    pub fn graded(name: &str, xs: &[&str], field: Field) -> Result<RingRef> {
        Ring::bigraded(name, xs, &[], field)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn degree(&self, var: usize) -> Bidegree {
        self.vars[var].degree
    }

    /// Every variable has degree (1,0) or (0,1).
    pub fn is_standard_bigraded(&self) -> bool {
        self.vars
            .iter()
            .all(|v| v.degree == Bidegree::new(1, 0) || v.degree == Bidegree::new(0, 1))
    }

    /// Every variable has degree (d,0) with d ≥ 1.
    pub fn is_single_graded(&self) -> bool {
        self.vars
            .iter()
            .all(|v| v.degree.d2 == 0 && v.degree.d1 >= 1)
    }

    /// Every variable has degree (1,0).
    pub fn is_standard_graded(&self) -> bool {
        self.vars.iter().all(|v| v.degree == Bidegree::new(1, 0))
    }

    pub fn first_kind(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.vars[i].degree == Bidegree::new(1, 0))
            .collect()
    }

    pub fn second_kind(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.vars[i].degree == Bidegree::new(0, 1))
            .collect()
    }

    /// Same variables with the two grading coordinates exchanged.
    pub fn swapped(&self) -> RingRef {
        let vars = self
            .vars
            .iter()
            .map(|v| Variable {
                name: v.name.clone(),
                degree: v.degree.swap(),
            })
            .collect();
        Arc::new(Ring {
            name: format!("{}_swapped", self.name),
            vars,
            field: self.field.clone(),
        })
    }

    /// Same variables and field with new degrees.
    pub fn regraded(&self, name: &str, degrees: &[Bidegree]) -> Result<RingRef> {
        assert_eq!(degrees.len(), self.nvars());
        let vars = self
            .vars
            .iter()
            .zip(degrees)
            .map(|(v, d)| Variable {
                name: v.name.clone(),
                degree: *d,
            })
            .collect();
        Ring::new(name, vars, self.field.clone())
    }

    pub fn same_as(self: &RingRef, other: &RingRef) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {} vars", self.name)?;
        for v in &self.vars {
            if v.degree.d2 == 0 {
                write!(f, " {}:{}", v.name, v.degree.d1)?;
            } else {
                write!(f, " {}:{}", v.name, v.degree)?;
            }
        }
        Ok(())
    }
}
