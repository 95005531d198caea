use std::fmt;
use std::sync::Arc;

/// An ordered list of variable names; the ring k[x₁,…,xₙ].
#[derive(Clone)]
pub struct Ring {
    names: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Ring {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Variables of `self` followed by those of `other`.
    pub fn concat(&self, other: &Ring) -> Ring {
        let names: Vec<String> = self.names.iter().chain(other.names.iter()).cloned().collect();
        Ring::new(&names)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.names.join(","))
    }
}
