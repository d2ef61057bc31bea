//! DGA homotopy of augmentations.
//!
//! Two augmentations `e1`, `e2` are DGA homotopic iff there is a functional
//! `K` of degree +1 on the generators with `e1 - e2 = K . d^{e1,e2}` on the
//! generators. Since augmentations live in degree 0, `K` is supported on
//! degree -1 generators and the condition is one GF(2) linear system.
//! Three deciders are provided:
//!
//! * [`homotopy_witness`] solves that system,
//! * [`tau0_rank`] tests whether `e1 - e2` vanishes on degree-0 cycles,
//! * [`homotopic_by_dimension`] compares `dim H_n(e2,e1)` with `dim H_{-1}(e1,e2)`,
//!   which is only meaningful for DGAs of connected Legendrians.

use std::fmt;

use thiserror::Error;

use crate::augment::{bilinearize_unchecked, enumerate_augmentations, AugmentError, Augmentation};
use crate::complex::{betti, poincare, ComplexError};
use crate::dga::{Dga, Word};
use crate::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("non-geometric input: dimension defect {defect} is neither 0 nor 1")]
    NonGeometric { defect: i64 },
    #[error("methods disagree on augmentations {0} and {1}: witness says {2}, dimension says {3}")]
    MethodDisagreement(usize, usize, bool, bool),
    #[error("homotopy relation is not {0} at {1:?}")]
    NotAnEquivalence(&'static str, Vec<usize>),
}

/// The degree +1 functional `K` on generators; zero off degree -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    kbar: Vec<bool>,
}

impl HomotopyWitness {
    pub fn value(&self, generator: usize) -> bool {
        self.kbar[generator]
    }

    /// Names of the generators on which `K` is 1.
    pub fn support<'a>(&'a self, dga: &'a Dga) -> Vec<&'a str> {
        (0..dga.len())
            .filter(|&g| self.kbar[g])
            .map(|g| dga.generator(g).name.as_str())
            .collect()
    }

    /// The `(e1, e2)`-derivation generated by `K`, evaluated on a word:
    /// `K(a1...ak) = sum_i e1(a1...a(i-1)) K(ai) e2(a(i+1)...ak)`.
    pub fn derivation(&self, eps1: &Augmentation, eps2: &Augmentation, w: &Word) -> bool {
        let f = w.factors();
        (0..f.len())
            .filter(|&i| {
                self.kbar[f[i]]
                    && f[..i].iter().all(|&b| eps1.value(b))
                    && f[i + 1..].iter().all(|&b| eps2.value(b))
            })
            .count()
            % 2
            == 1
    }

    /// Checks `e1 - e2 = K . d` on every generator using the full
    /// (unlinearized) differential.
    pub fn verify(&self, dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> bool {
        (0..dga.len()).all(|g| {
            let lhs = eps1.value(g) ^ eps2.value(g);
            let rhs = dga
                .d(g)
                .words()
                .filter(|w| self.derivation(eps1, eps2, w))
                .count()
                % 2
                == 1;
            lhs == rhs
        })
    }
}

fn difference_on_degree_zero(
    dga: &Dga,
    cx_elems: &[usize],
    e1: &Augmentation,
    e2: &Augmentation,
) -> Vec<bool> {
    debug_assert!(cx_elems.iter().all(|&g| dga.generator(g).degree == 0));
    cx_elems
        .iter()
        .map(|&g| e1.value(g) ^ e2.value(g))
        .collect()
}

/// Solves for `K` on degree -1 generators, or returns `None` when the
/// augmentations are not homotopic.
pub fn homotopy_witness(
    dga: &Dga,
    eps1: &Augmentation,
    eps2: &Augmentation,
) -> Result<Option<HomotopyWitness>, HomotopyError> {
    eps1.check(dga)?;
    eps2.check(dga)?;
    let cx = bilinearize_unchecked(dga, eps1, eps2);
    let zero = cx.elements_in_degree(0);
    let minus_one = cx.elements_in_degree(-1);
    let diff = difference_on_degree_zero(dga, &zero, eps1, eps2);
    // Row c of the transpose is d(c) written in the degree -1 basis.
    let system = cx.boundary_matrix(0).transpose();
    let solution = system
        .solve(&diff)
        .expect("system sized from the same complex");
    Ok(solution.map(|x| {
        let mut kbar = vec![false; dga.len()];
        for (&g, v) in minus_one.iter().zip(x) {
            kbar[g] = v;
        }
        HomotopyWitness { kbar }
    }))
}

/// Rank (0 or 1) of the map induced by `e1 - e2` on degree-0 bilinearized homology.
pub fn tau0_rank(
    dga: &Dga,
    eps1: &Augmentation,
    eps2: &Augmentation,
) -> Result<usize, HomotopyError> {
    eps1.check(dga)?;
    eps2.check(dga)?;
    let cx = bilinearize_unchecked(dga, eps1, eps2);
    let zero = cx.elements_in_degree(0);
    let diff = difference_on_degree_zero(dga, &zero, eps1, eps2);
    let nonzero_on_cycle = cx
        .boundary_matrix(0)
        .nullspace_basis()
        .iter()
        .any(|z| z.iter().zip(&diff).filter(|(&a, &b)| a && b).count() % 2 == 1);
    Ok(nonzero_on_cycle as usize)
}

/// `dim H_n(e2, e1) - dim H_{-1}(e1, e2)`.
pub fn dimension_defect(
    dga: &Dga,
    eps1: &Augmentation,
    eps2: &Augmentation,
) -> Result<i64, HomotopyError> {
    eps1.check(dga)?;
    eps2.check(dga)?;
    let n = dga.dim();
    let swapped = betti(&bilinearize_unchecked(dga, eps2, eps1))?;
    let forward = betti(&bilinearize_unchecked(dga, eps1, eps2))?;
    let top = swapped.get(&n).copied().unwrap_or(0) as i64;
    let bottom = forward.get(&-1).copied().unwrap_or(0) as i64;
    Ok(top - bottom)
}

/// Homotopic iff the dimension defect is 1. Defects outside `{0, 1}` mean the
/// input cannot be the DGA of a connected Legendrian and are reported as errors.
pub fn homotopic_by_dimension(
    dga: &Dga,
    eps1: &Augmentation,
    eps2: &Augmentation,
) -> Result<bool, HomotopyError> {
    match dimension_defect(dga, eps1, eps2)? {
        0 => Ok(false),
        1 => Ok(true),
        defect => Err(HomotopyError::NonGeometric { defect }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Witness,
    Dimension,
    CrossCheck,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witness" => Ok(Method::Witness),
            "dimension" => Ok(Method::Dimension),
            "cross" | "cross_check" | "cross-check" => Ok(Method::CrossCheck),
            other => Err(format!(
                "unknown method '{other}' (expected witness, dimension or cross)"
            )),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Witness => "witness",
            Method::Dimension => "dimension",
            Method::CrossCheck => "cross",
        })
    }
}

/// The decision for one ordered pair of augmentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecision {
    pub first: usize,
    pub second: usize,
    pub witness: Option<bool>,
    pub dimension: Option<bool>,
}

impl PairDecision {
    pub fn homotopic(&self) -> bool {
        self.witness
            .or(self.dimension)
            .expect("at least one method ran")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyPartition {
    pub augmentations: Vec<Augmentation>,
    /// Augmentation indices per class, classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Every ordered pair, row-major.
    pub decisions: Vec<PairDecision>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index becomes the root
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partitions the enumerated augmentations into DGA homotopy classes.
pub fn homotopy_classes(
    dga: &Dga,
    method: Method,
    cap: usize,
) -> Result<HomotopyPartition, HomotopyError> {
    let augs = enumerate_augmentations(dga, cap)?;
    classes_of(dga, augs, method)
}

/// As [`homotopy_classes`], for a caller-chosen list of augmentations.
pub fn classes_of(
    dga: &Dga,
    augs: Vec<Augmentation>,
    method: Method,
) -> Result<HomotopyPartition, HomotopyError> {
    let n = augs.len();
    let mut decisions = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let witness = match method {
                Method::Witness | Method::CrossCheck => {
                    Some(homotopy_witness(dga, &augs[i], &augs[j])?.is_some())
                }
                Method::Dimension => None,
            };
            let dimension = match method {
                Method::Dimension | Method::CrossCheck => {
                    Some(homotopic_by_dimension(dga, &augs[i], &augs[j])?)
                }
                Method::Witness => None,
            };
            if let (Some(w), Some(d)) = (witness, dimension) {
                if w != d {
                    return Err(HomotopyError::MethodDisagreement(i, j, w, d));
                }
            }
            decisions.push(PairDecision {
                first: i,
                second: j,
                witness,
                dimension,
            });
        }
    }
    let rel = |i: usize, j: usize| decisions[i * n + j].homotopic();
    for i in 0..n {
        if !rel(i, i) {
            return Err(HomotopyError::NotAnEquivalence("reflexive", vec![i]));
        }
        for j in 0..n {
            if rel(i, j) != rel(j, i) {
                return Err(HomotopyError::NotAnEquivalence("symmetric", vec![i, j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rel(i, j) && rel(j, k) && !rel(i, k) {
                    return Err(HomotopyError::NotAnEquivalence("transitive", vec![i, j, k]));
                }
            }
        }
    }
    let mut sets = DisjointSets::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rel(i, j) {
                sets.union(i, j);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = sets.find(i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    Ok(HomotopyPartition {
        augmentations: augs,
        classes,
        decisions,
    })
}

/// Poincaré polynomials of every ordered pair of augmentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlchTable {
    pub augmentations: Vec<Augmentation>,
    /// `table[i][j]` is the polynomial of the pair `(augmentations[i], augmentations[j])`.
    pub table: Vec<Vec<LaurentPoly>>,
}

pub fn blch_table(dga: &Dga, cap: usize) -> Result<BlchTable, HomotopyError> {
    let augs = enumerate_augmentations(dga, cap)?;
    table_of(dga, augs)
}

/// As [`blch_table`], for a caller-chosen list of augmentations.
pub fn table_of(dga: &Dga, augs: Vec<Augmentation>) -> Result<BlchTable, HomotopyError> {
    for a in &augs {
        a.check(dga)?;
    }
    let table = augs
        .iter()
        .map(|e1| {
            augs.iter()
                .map(|e2| poincare(&bilinearize_unchecked(dga, e1, e2)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlchTable {
        augmentations: augs,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::DEFAULT_CAP;
    use crate::dga::parse_dga;
    use std::collections::BTreeMap;

    fn toy() -> Dga {
        parse_dga("dim 1\ngen a 1\ngen b 0\ngen c -1\nd a = 0\nd b = c\nd c = 0\n").unwrap()
    }

    fn aug(dga: &Dga, pairs: &[(&str, bool)]) -> Augmentation {
        let m: BTreeMap<String, bool> = pairs.iter().map(|&(n, v)| (n.to_owned(), v)).collect();
        Augmentation::new(dga, &m).unwrap()
    }

    #[test]
    fn toy_witness() {
        let dga = toy();
        let e1 = aug(&dga, &[("b", false)]);
        let e2 = aug(&dga, &[("b", true)]);
        let w = homotopy_witness(&dga, &e1, &e2).unwrap().unwrap();
        assert_eq!(w.support(&dga), ["c"]);
        assert!(w.verify(&dga, &e1, &e2));
        assert_eq!(tau0_rank(&dga, &e1, &e2).unwrap(), 0);
    }

    #[test]
    fn reflexive_witness_is_zero() {
        let dga = toy();
        let e = aug(&dga, &[("b", true)]);
        let w = homotopy_witness(&dga, &e, &e).unwrap().unwrap();
        assert!(w.support(&dga).is_empty());
        assert_eq!(tau0_rank(&dga, &e, &e).unwrap(), 0);
    }

    #[test]
    fn single_augmentation_gives_one_class() {
        let dga = parse_dga("dim 1\ngen x 1\nd x = 0\n").unwrap();
        let p = homotopy_classes(&dga, Method::Witness, DEFAULT_CAP).unwrap();
        assert_eq!(p.classes, vec![vec![0]]);
    }

    #[test]
    fn empty_table_when_no_augmentations() {
        let dga = parse_dga("dim 1\ngen x 1\nd x = 1\n").unwrap();
        let t = blch_table(&dga, DEFAULT_CAP).unwrap();
        assert!(t.augmentations.is_empty() && t.table.is_empty());
    }

    #[test]
    fn non_geometric_defect_is_reported() {
        // Two free degree -1 generators: D = 0 - 2 for identical augmentations.
        let dga = parse_dga("dim 1\ngen x -1\ngen y -1\nd x = 0\nd y = 0\n").unwrap();
        let e = Augmentation::zero(&dga);
        assert_eq!(
            homotopic_by_dimension(&dga, &e, &e),
            Err(HomotopyError::NonGeometric { defect: -2 })
        );
    }

    #[test]
    fn method_parsing() {
        assert_eq!("cross".parse::<Method>().unwrap(), Method::CrossCheck);
        assert_eq!("witness".parse::<Method>().unwrap(), Method::Witness);
        assert!("vote".parse::<Method>().is_err());
    }
}
