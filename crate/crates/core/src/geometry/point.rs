use std::fmt;

use num_traits::Zero;

use crate::number::{to_f64, Rational};

/// A point of ℚᵈ. Ordered lexicographically, which fixes canonical vertex order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| crate::number::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, s: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub fn dot(&self, v: &[Rational]) -> Rational {
        self.0.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    /// Drops coordinate `axis`.
    pub fn project_out(&self, axis: usize) -> Point {
        Point(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != axis)
                .map(|(_, c)| c.clone())
                .collect(),
        )
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Closed halfspace `normal · x <= offset`.
///
/// Normals produced by the hull code are primitive integer vectors, so two
/// facets are the same hyperplane iff their normals are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Halfspace {
    /// `normal · p - offset`; non-positive inside.
    pub fn slack(&self, p: &Point) -> Rational {
        p.dot(&self.normal) - &self.offset
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.slack(p) <= Rational::zero()
    }

    pub fn normal_f64(&self) -> Vec<f64> {
        self.normal.iter().map(to_f64).collect()
    }
}
