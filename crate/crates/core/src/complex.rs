//! Z-graded chain complexes over GF(2), their homology and Poincaré polynomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::gf2::BitMatrix;
use crate::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("boundary of '{from}' (degree {from_degree}) contains '{to}' of degree {to_degree}")]
    DegreeMismatch {
        from: String,
        from_degree: i64,
        to: String,
        to_degree: i64,
    },
    #[error("unknown basis element '{0}'")]
    UnknownElement(String),
    #[error("duplicate basis element '{0}'")]
    DuplicateElement(String),
    #[error("boundary squared is nonzero on degree {0}")]
    SquareNonzero(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional graded vector space with a degree -1 boundary.
///
/// The boundary of basis element `i` is stored as the set of basis indices
/// it hits; per-degree matrices are materialized by [`Self::boundary_matrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dim: i64,
    basis: Vec<BasisElement>,
    boundary: Vec<BTreeSet<usize>>,
}

impl ChainComplex {
    /// Checks that every boundary lowers degree by exactly one and that names
    /// are unique. Does not check that the boundary squares to zero.
    pub fn new(
        dim: i64,
        basis: Vec<BasisElement>,
        boundary: Vec<BTreeSet<usize>>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(
            basis.len(),
            boundary.len(),
            "one boundary per basis element"
        );
        let mut seen = BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.name.as_str()) {
                return Err(ComplexError::DuplicateElement(b.name.clone()));
            }
        }
        for (i, targets) in boundary.iter().enumerate() {
            for &j in targets {
                let Some(to) = basis.get(j) else {
                    return Err(ComplexError::UnknownElement(format!("#{j}")));
                };
                if to.degree != basis[i].degree - 1 {
                    return Err(ComplexError::DegreeMismatch {
                        from: basis[i].name.clone(),
                        from_degree: basis[i].degree,
                        to: to.name.clone(),
                        to_degree: to.degree,
                    });
                }
            }
        }
        Ok(Self {
            dim,
            basis,
            boundary,
        })
    }

    /// Builds a complex from names: `basis` lists `(name, degree)`, and
    /// `boundary` lists `(name, terms)`; terms listed twice cancel.
    pub fn from_named(
        dim: i64,
        basis: &[(&str, i64)],
        boundary: &[(&str, &[&str])],
    ) -> Result<Self, ComplexError> {
        let elements: Vec<BasisElement> = basis
            .iter()
            .map(|&(n, d)| BasisElement {
                name: n.to_owned(),
                degree: d,
            })
            .collect();
        let index: HashMap<&str, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, &(n, _))| (n, i))
            .collect();
        let mut bd = vec![BTreeSet::new(); basis.len()];
        for &(src, terms) in boundary {
            let &i = index
                .get(src)
                .ok_or_else(|| ComplexError::UnknownElement(src.into()))?;
            for &t in terms {
                let &j = index
                    .get(t)
                    .ok_or_else(|| ComplexError::UnknownElement(t.into()))?;
                if !bd[i].remove(&j) {
                    bd[i].insert(j);
                }
            }
        }
        Self::new(dim, elements, bd)
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Basis indices hit by the boundary of element `i`.
    pub fn boundary_of(&self, i: usize) -> &BTreeSet<usize> {
        &self.boundary[i]
    }

    /// `(min, max)` degree of the basis, or `None` for the zero complex.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let min = self.basis.iter().map(|b| b.degree).min()?;
        let max = self.basis.iter().map(|b| b.degree).max()?;
        Some((min, max))
    }

    /// Basis indices in degree `k`, in basis order.
    pub fn elements_in_degree(&self, k: i64) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].degree == k)
            .collect()
    }

    pub fn dimension_in_degree(&self, k: i64) -> usize {
        self.basis.iter().filter(|b| b.degree == k).count()
    }

    /// The matrix of `C_k -> C_{k-1}`: rows index degree `k-1` elements and
    /// columns index degree `k` elements, both in basis order.
    pub fn boundary_matrix(&self, k: i64) -> BitMatrix {
        let cols = self.elements_in_degree(k);
        let rows = self.elements_in_degree(k - 1);
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = BitMatrix::zeros(rows.len(), cols.len());
        for (c, &i) in cols.iter().enumerate() {
            for j in &self.boundary[i] {
                m.set(row_of[j], c, true);
            }
        }
        m
    }

    /// Verifies `d_{k} d_{k+1} = 0` in every degree.
    pub fn check_square_zero(&self) -> Result<(), ComplexError> {
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(());
        };
        for k in lo..hi {
            let outer = self.boundary_matrix(k);
            let inner = self.boundary_matrix(k + 1);
            if outer.rows() > 0 && inner.cols() > 0 && !outer.mul(&inner).is_zero() {
                return Err(ComplexError::SquareNonzero(k + 1));
            }
        }
        Ok(())
    }

    /// Boundaries keyed by name, for generator-by-generator comparison.
    pub fn named_boundaries(&self) -> BTreeMap<String, (i64, BTreeSet<String>)> {
        self.basis
            .iter()
            .zip(&self.boundary)
            .map(|(b, targets)| {
                let names = targets
                    .iter()
                    .map(|&j| self.basis[j].name.clone())
                    .collect();
                (b.name.clone(), (b.degree, names))
            })
            .collect()
    }

    /// Direct sum; names of `other` get `suffix` appended.
    pub fn direct_sum(&self, other: &ChainComplex, suffix: &str) -> Result<Self, ComplexError> {
        let offset = self.basis.len();
        let mut basis = self.basis.clone();
        basis.extend(other.basis.iter().map(|b| BasisElement {
            name: format!("{}{}", b.name, suffix),
            degree: b.degree,
        }));
        let mut boundary = self.boundary.clone();
        boundary.extend(
            other
                .boundary
                .iter()
                .map(|t| t.iter().map(|j| j + offset).collect()),
        );
        Self::new(self.dim, basis, boundary)
    }

    /// Adds a basis element; returns its index.
    pub(crate) fn push_element(&mut self, name: String, degree: i64) -> usize {
        self.basis.push(BasisElement { name, degree });
        self.boundary.push(BTreeSet::new());
        self.basis.len() - 1
    }

    pub(crate) fn toggle_boundary(&mut self, from: usize, to: usize) {
        if !self.boundary[from].remove(&to) {
            self.boundary[from].insert(to);
        }
    }

    /// `sum_k (-1)^k dim C_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.basis
            .iter()
            .map(|b| if b.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }

    /// Text in the DGA file grammar (the boundary is a linear differential).
    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for b in &self.basis {
            writeln!(out, "gen {} {}", b.name, b.degree).unwrap();
        }
        for (b, targets) in self.basis.iter().zip(&self.boundary) {
            let rhs = if targets.is_empty() {
                "0".to_owned()
            } else {
                targets
                    .iter()
                    .map(|&j| self.basis[j].name.as_str())
                    .collect::<Vec<_>>()
                    .join(" + ")
            };
            writeln!(out, "d {} = {rhs}", b.name).unwrap();
        }
        out
    }
}

/// Homology dimensions per degree, over the degree range of the basis.
pub fn betti(cx: &ChainComplex) -> Result<BTreeMap<i64, usize>, ComplexError> {
    cx.check_square_zero()?;
    let Some((lo, hi)) = cx.degree_range() else {
        return Ok(BTreeMap::new());
    };
    let ranks: HashMap<i64, usize> = (lo..=hi + 1)
        .map(|k| (k, cx.boundary_matrix(k).rank()))
        .collect();
    Ok((lo..=hi)
        .map(|k| (k, cx.dimension_in_degree(k) - ranks[&k] - ranks[&(k + 1)]))
        .collect())
}

/// `sum_k betti_k t^k`.
pub fn poincare(cx: &ChainComplex) -> Result<LaurentPoly, ComplexError> {
    Ok(LaurentPoly::from_terms(
        betti(cx)?.into_iter().map(|(k, b)| (k, b as i64)),
    ))
}

/// Cycles in degree `k` whose classes form a basis of `H_k`, as sets of
/// basis names. Debugging aid; not needed for dimension counts.
pub fn homology_representatives(
    cx: &ChainComplex,
    k: i64,
) -> Result<Vec<BTreeSet<String>>, ComplexError> {
    cx.check_square_zero()?;
    let elems = cx.elements_in_degree(k);
    let boundaries = cx.boundary_matrix(k + 1);
    let mut span: Vec<Vec<u8>> = (0..boundaries.cols())
        .map(|c| {
            (0..boundaries.rows())
                .map(|r| boundaries.get(r, c) as u8)
                .collect()
        })
        .collect();
    let mut rank = if span.is_empty() {
        0
    } else {
        BitMatrix::from_rows(&span).rank()
    };
    let mut reps = Vec::new();
    for z in cx.boundary_matrix(k).nullspace_basis() {
        span.push(z.iter().map(|&b| b as u8).collect());
        let r = BitMatrix::from_rows(&span).rank();
        if r > rank {
            rank = r;
            reps.push(
                z.iter()
                    .zip(&elems)
                    .filter(|(&b, _)| b)
                    .map(|(_, &i)| cx.basis[i].name.clone())
                    .collect(),
            );
        } else {
            span.pop();
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn acyclic_pair() {
        let cx = ChainComplex::from_named(1, &[("a", 1), ("b", 0)], &[("a", &["b"])]).unwrap();
        assert_eq!(betti(&cx).unwrap(), BTreeMap::from([(0, 0), (1, 0)]));
        assert_eq!(poincare(&cx).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn zero_differential_counts_generators() {
        let cx = ChainComplex::from_named(1, &[("x", -1), ("y", 2), ("z", 2)], &[]).unwrap();
        assert_eq!(poincare(&cx).unwrap(), lp("t^-1 + 2*t^2"));
        assert_eq!(betti(&cx).unwrap()[&0], 0);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let err = ChainComplex::from_named(1, &[("a", 1), ("b", 1)], &[("a", &["b"])]).unwrap_err();
        assert!(matches!(err, ComplexError::DegreeMismatch { .. }));
        let err = ChainComplex::from_named(1, &[("a", 1), ("a", 0)], &[]).unwrap_err();
        assert_eq!(err, ComplexError::DuplicateElement("a".into()));
    }

    #[test]
    fn square_nonzero_is_an_error() {
        let cx = ChainComplex::from_named(
            1,
            &[("a", 2), ("b", 1), ("c", 0)],
            &[("a", &["b"]), ("b", &["c"])],
        )
        .unwrap();
        assert_eq!(betti(&cx), Err(ComplexError::SquareNonzero(2)));
    }

    #[test]
    fn direct_sum_adds_betti_numbers() {
        let a =
            ChainComplex::from_named(1, &[("a", 1), ("b", 0), ("c", 0)], &[("a", &["b"])]).unwrap();
        let b = ChainComplex::from_named(1, &[("a", 3), ("b", 0)], &[]).unwrap();
        let sum = a.direct_sum(&b, "'").unwrap();
        assert_eq!(
            poincare(&sum).unwrap(),
            poincare(&a).unwrap() + poincare(&b).unwrap()
        );
        assert_eq!(
            sum.euler_characteristic(),
            a.euler_characteristic() + b.euler_characteristic()
        );
    }

    #[test]
    fn representatives_span_homology() {
        // a -> b + c leaves one class in degree 0.
        let cx =
            ChainComplex::from_named(1, &[("a", 1), ("b", 0), ("c", 0)], &[("a", &["b", "c"])])
                .unwrap();
        let reps = homology_representatives(&cx, 0).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(homology_representatives(&cx, 1).unwrap().is_empty());
    }

    #[test]
    fn euler_characteristic_matches_poincare_at_minus_one() {
        let cx = ChainComplex::from_named(
            2,
            &[("a", 1), ("b", 0), ("c", 0), ("d", -1), ("e", 2)],
            &[("a", &["b"]), ("c", &["d"])],
        )
        .unwrap();
        assert_eq!(
            poincare(&cx).unwrap().eval_at_minus_one(),
            cx.euler_characteristic()
        );
    }
}
