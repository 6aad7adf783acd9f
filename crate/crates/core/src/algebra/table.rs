use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

struct Inner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// Ordered variable names. Index 0 is always `q`.
#[derive(Clone)]
pub struct VariableTable(Arc<Inner>);

impl VariableTable {
    /// Builds `q` followed by `rest`.
    pub fn new<I, S>(rest: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = vec!["q".to_string()];
        names.extend(rest.into_iter().map(Into::into));
        Self::from_names(names)
    }

    /// Builds a table from a complete name list whose first entry must be `q`.
    pub fn from_names(names: Vec<String>) -> Result<Self> {
        if names.first().map(String::as_str) != Some("q") {
            return Err(Error::Parse("variable table must start with q".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || index.insert(n.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate or empty variable `{n}`")));
            }
        }
        Ok(VariableTable(Arc::new(Inner { names, index })))
    }

    pub fn q_only() -> Self {
        Self::new(Vec::<String>::new()).expect("q alone is valid")
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn ensure_same(&self, other: &VariableTable) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }
}

impl PartialEq for VariableTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for VariableTable {}

impl fmt::Debug for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.names.iter()).finish()
    }
}
