use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A real polynomial in `nvars` coordinates, kept in canonical form:
/// multi-indices sorted, duplicates merged, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFunction {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl PolyFunction {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::from_terms(nvars, [(c, vec![0; nvars])])
    }

    /// The coordinate function x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} coordinates");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(1.0, e)])
    }

    /// Builds from (coefficient, exponents) pairs. Panics if an exponent vector has the wrong length.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (f64, Vec<u32>)>) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest absolute coefficient; 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (c * s, e.clone())))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * f64::from(e[i]));
            }
        }
        out
    }

    /// Restriction to the hyperplane x_i = 0: drops every term containing x_i.
    pub fn restrict_zero(&self, i: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), *c)).collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }
}

impl Add for &PolyFunction {
    type Output = PolyFunction;
    fn add(self, rhs: &PolyFunction) -> PolyFunction {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &PolyFunction {
    type Output = PolyFunction;
    fn sub(self, rhs: &PolyFunction) -> PolyFunction {
        self + &(-rhs)
    }
}

impl Neg for &PolyFunction {
    type Output = PolyFunction;
    fn neg(self) -> PolyFunction {
        self.scale(-1.0)
    }
}

impl Mul for &PolyFunction {
    type Output = PolyFunction;
    fn mul(self, rhs: &PolyFunction) -> PolyFunction {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = PolyFunction::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyFunction {
            type Output = PolyFunction;
            fn $m(self, rhs: PolyFunction) -> PolyFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyFunction {
    type Output = PolyFunction;
    fn neg(self) -> PolyFunction {
        -&self
    }
}

impl fmt::Display for PolyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
