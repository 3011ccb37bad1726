//! Ring contexts: variable names, coefficient field and truncation degree.

use std::fmt;
use std::sync::Arc;

use crate::error::RingError;
use crate::scalar::FieldSpec;

#[derive(Debug, PartialEq, Eq, Hash)]
struct Inner {
    names: Vec<String>,
    field: FieldSpec,
    trunc: Option<u32>,
}

/// Shared description of k[x₁..xₙ] or its truncation modulo total degree N+1.
/// `None` truncation means exact polynomials.
#[derive(Clone, Debug, Eq)]
pub struct RingCtx(Arc<Inner>);

impl PartialEq for RingCtx {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl std::hash::Hash for RingCtx {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.hash(h);
    }
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl RingCtx {
    pub fn new<S: AsRef<str>>(
        names: &[S],
        field: FieldSpec,
        trunc: Option<u32>,
    ) -> Result<Self, RingError> {
        if names.is_empty() {
            return Err(RingError::BadContext("need at least one variable".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().trim().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(RingError::BadContext(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(RingError::BadContext(format!("duplicate variable {n}")));
            }
        }
        if trunc == Some(0) {
            return Err(RingError::BadContext("truncation must be at least 1".into()));
        }
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p)?;
        }
        Ok(RingCtx(Arc::new(Inner { names, field, trunc })))
    }

    /// Polynomial ring over Q with the given names.
    pub fn rational(names: &[&str]) -> Self {
        Self::new(names, FieldSpec::Rational, None).expect("valid names")
    }

    /// Default names: x, y, z for up to three variables, else x1..xn.
    pub fn default_names(n: usize) -> Vec<String> {
        if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        }
    }

    /// Parses "x,y;rational;trunc=32", "x;prime=101" or "x,y". Missing parts default to Q and no truncation.
    pub fn from_spec(spec: &str) -> Result<Self, RingError> {
        let mut parts = spec.split(';');
        let names: Vec<&str> = parts
            .next()
            .unwrap_or("")
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .collect();
        let mut field = FieldSpec::Rational;
        let mut trunc = None;
        for p in parts {
            let p = p.trim();
            if p.is_empty() || p == "rational" || p == "Q" {
                field = if p.is_empty() { field } else { FieldSpec::Rational };
            } else if let Some(v) = p.strip_prefix("prime=").or_else(|| p.strip_prefix("p=")) {
                let v: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| RingError::BadContext(format!("bad prime {v:?}")))?;
                field = FieldSpec::prime(v)?;
            } else if let Some(v) = p.strip_prefix("trunc=") {
                let v = v.trim();
                trunc = if v == "inf" || v == "none" {
                    None
                } else {
                    Some(v.parse().map_err(|_| RingError::BadContext(format!("bad truncation {v:?}")))?)
                };
            } else {
                return Err(RingError::BadContext(format!("unknown ring option {p:?}")));
            }
        }
        Self::new(&names, field, trunc)
    }

    pub fn n_vars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field
    }

    pub fn truncation(&self) -> Option<u32> {
        self.0.trunc
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn with_truncation(&self, trunc: Option<u32>) -> Self {
        Self::new(&self.0.names, self.0.field, trunc).expect("names already validated")
    }

    /// Raises a finite truncation to at least `deg`; polynomial contexts are returned unchanged.
    pub fn with_floor(&self, deg: u32) -> Self {
        match self.0.trunc {
            Some(t) if t < deg => self.with_truncation(Some(deg)),
            _ => self.clone(),
        }
    }

    /// The 2n-variable context of R ⊗ R: names x.., then primed copies x'...
    pub fn doubled(&self) -> Self {
        let mut names = self.0.names.clone();
        names.extend(self.0.names.iter().map(|s| format!("{s}'")));
        Self::new(&names, self.0.field, self.0.trunc).expect("primed names are fresh")
    }

    /// Context on the concatenated variables; clashing names of `other` get primes appended.
    pub fn concat(&self, other: &RingCtx) -> Result<Self, RingError> {
        if self.field() != other.field() {
            return Err(RingError::ContextMismatch(self.to_string(), other.to_string()));
        }
        let mut names = self.0.names.clone();
        for n in other.names() {
            let mut m = n.clone();
            while names.contains(&m) {
                m.push('\'');
            }
            names.push(m);
        }
        let trunc = match (self.0.trunc, other.0.trunc) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        };
        Self::new(&names, self.field(), trunc)
    }

    /// Context on a subset of the variables, in the given order.
    pub fn restrict(&self, vars: &[usize]) -> Result<Self, RingError> {
        let names: Vec<&str> = vars.iter().map(|&i| self.0.names[i].as_str()).collect();
        Self::new(&names, self.field(), self.0.trunc)
    }

    pub fn check_var(&self, i: usize) -> Result<(), RingError> {
        if i < self.n_vars() {
            Ok(())
        } else {
            Err(RingError::VarIndex { index: i, n: self.n_vars() })
        }
    }

    pub fn check_same(&self, o: &RingCtx) -> Result<(), RingError> {
        if self == o {
            Ok(())
        } else {
            Err(RingError::ContextMismatch(self.to_string(), o.to_string()))
        }
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.0.names.join(","))?;
        match self.0.field {
            FieldSpec::Rational => write!(f, "rational")?,
            FieldSpec::Prime(p) => write!(f, "prime={p}")?,
        }
        if let Some(t) = self.0.trunc {
            write!(f, ";trunc={t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_roundtrip() {
        let c = RingCtx::from_spec("x,y;rational;trunc=32").unwrap();
        assert_eq!(c.n_vars(), 2);
        assert_eq!(c.truncation(), Some(32));
        assert_eq!(RingCtx::from_spec(&c.to_string()).unwrap(), c);
        let p = RingCtx::from_spec("t;prime=101").unwrap();
        assert_eq!(p.field(), FieldSpec::Prime(101));
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(RingCtx::from_spec(";rational").is_err());
        assert!(RingCtx::from_spec("x,x").is_err());
        assert!(RingCtx::from_spec("x;trunc=0").is_err());
        assert!(RingCtx::from_spec("x;prime=12").is_err());
        assert!(RingCtx::from_spec("x;bogus").is_err());
    }

    #[test]
    fn doubled_and_concat() {
        let c = RingCtx::rational(&["x", "y"]);
        assert_eq!(c.doubled().names(), ["x", "y", "x'", "y'"]);
        let d = c.concat(&RingCtx::rational(&["y", "z"])).unwrap();
        assert_eq!(d.names(), ["x", "y", "y'", "z"]);
    }
}
