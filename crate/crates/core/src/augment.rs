//! Augmentations and the (bi)linearized chain complexes they induce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::complex::{BasisElement, ChainComplex};
use crate::dga::{Dga, Word};

/// Default limit on the number of degree-0 generators for brute-force enumeration.
pub const DEFAULT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error(
        "generator '{name}' has degree {degree}; augmentations are supported on degree 0 only"
    )]
    NonzeroDegree { name: String, degree: i64 },
    #[error("{count} degree-0 generators exceed the enumeration cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("assignment does not vanish on d({0})")]
    NotAnAugmentation(String),
    #[error("augmentation built for {expected} generators applied to a DGA with {actual}")]
    SizeMismatch { expected: usize, actual: usize },
}

/// A GF(2) assignment on the degree-0 generators of a DGA, extended by 0 on
/// every other generator and by 1 on the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Augmentation {
    values: Vec<bool>,
}

impl Augmentation {
    /// Builds an assignment without checking `eps . d = 0`.
    pub fn from_assignment(
        dga: &Dga,
        assignment: &BTreeMap<String, bool>,
    ) -> Result<Self, AugmentError> {
        let mut values = vec![false; dga.len()];
        for (name, &v) in assignment {
            let g = dga
                .index_of(name)
                .ok_or_else(|| AugmentError::UnknownGenerator(name.clone()))?;
            let degree = dga.generator(g).degree;
            if degree != 0 {
                if v {
                    return Err(AugmentError::NonzeroDegree {
                        name: name.clone(),
                        degree,
                    });
                }
                continue;
            }
            values[g] = v;
        }
        Ok(Self { values })
    }

    /// Builds an assignment and checks that it is an augmentation.
    pub fn new(dga: &Dga, assignment: &BTreeMap<String, bool>) -> Result<Self, AugmentError> {
        let aug = Self::from_assignment(dga, assignment)?;
        aug.check(dga)?;
        Ok(aug)
    }

    /// The zero assignment.
    pub fn zero(dga: &Dga) -> Self {
        Self {
            values: vec![false; dga.len()],
        }
    }

    pub fn value(&self, generator: usize) -> bool {
        self.values[generator]
    }

    /// Multiplicative extension to a word.
    pub fn eval_word(&self, w: &Word) -> bool {
        w.factors().iter().all(|&g| self.values[g])
    }

    /// `(name, value)` for every degree-0 generator, in declaration order.
    pub fn assignment(&self, dga: &Dga) -> Vec<(String, bool)> {
        dga.degree_zero_generators()
            .into_iter()
            .map(|g| (dga.generator(g).name.clone(), self.values[g]))
            .collect()
    }

    /// Values on the degree-0 generators, in declaration order.
    pub fn bits(&self, dga: &Dga) -> Vec<bool> {
        dga.degree_zero_generators()
            .into_iter()
            .map(|g| self.values[g])
            .collect()
    }

    /// Extends by zero to a larger DGA whose first generators agree with the
    /// DGA this augmentation was built for.
    pub fn extend_by_zero(&self, len: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(len, false);
        Self { values }
    }

    /// Checks `eps(d g) = 0` for every generator `g`.
    pub fn check(&self, dga: &Dga) -> Result<(), AugmentError> {
        if self.values.len() != dga.len() {
            return Err(AugmentError::SizeMismatch {
                expected: self.values.len(),
                actual: dga.len(),
            });
        }
        for g in 0..dga.len() {
            let hits = dga.d(g).words().filter(|w| self.eval_word(w)).count();
            if hits % 2 == 1 {
                return Err(AugmentError::NotAnAugmentation(
                    dga.generator(g).name.clone(),
                ));
            }
        }
        Ok(())
    }

    /// Compact form `name=bit,...` over the degree-0 generators.
    pub fn display<'a>(&'a self, dga: &'a Dga) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Augmentation, &'a Dga);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self
                    .0
                    .assignment(self.1)
                    .into_iter()
                    .map(|(n, v)| format!("{n}={}", v as u8))
                    .collect();
                f.write_str(&parts.join(","))
            }
        }
        Show(self, dga)
    }
}

/// True iff the assignment (0 on nonzero-degree generators, 1 on the unit)
/// kills the differential of every generator.
pub fn is_augmentation(dga: &Dga, values: &BTreeMap<String, bool>) -> Result<bool, AugmentError> {
    match Augmentation::from_assignment(dga, values) {
        Ok(aug) => Ok(aug.check(dga).is_ok()),
        Err(AugmentError::NonzeroDegree { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// All augmentations, ordered lexicographically by their values on the
/// degree-0 generators taken in declaration order (0 before 1).
pub fn enumerate_augmentations(dga: &Dga, cap: usize) -> Result<Vec<Augmentation>, AugmentError> {
    let vars = dga.degree_zero_generators();
    if vars.len() > cap {
        return Err(AugmentError::CapExceeded {
            count: vars.len(),
            cap,
        });
    }
    let position: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(p, &g)| (g, p)).collect();

    // Only words made entirely of degree-0 generators can evaluate to 1. Group
    // each generator's such words by the last variable they depend on, so a
    // constraint is checked as soon as all of its variables are assigned.
    let mut checks: Vec<Vec<Vec<Vec<usize>>>> = vec![Vec::new(); vars.len() + 1];
    for g in 0..dga.len() {
        let live: Vec<Vec<usize>> = dga
            .d(g)
            .words()
            .filter(|w| w.factors().iter().all(|f| position.contains_key(f)))
            .map(|w| w.factors().iter().map(|f| position[f]).collect())
            .collect();
        if live.is_empty() {
            continue;
        }
        let last = live
            .iter()
            .flat_map(|w| w.iter().map(|&p| p + 1))
            .max()
            .unwrap_or(0);
        checks[last].push(live);
    }

    let mut out = Vec::new();
    let mut bits = vec![false; vars.len()];
    search(0, &mut bits, &checks, &mut |bits| {
        let mut values = vec![false; dga.len()];
        for (p, &g) in vars.iter().enumerate() {
            values[g] = bits[p];
        }
        out.push(Augmentation { values });
    });
    Ok(out)
}

fn satisfied(constraints: &[Vec<Vec<usize>>], bits: &[bool]) -> bool {
    constraints
        .iter()
        .all(|words| words.iter().filter(|w| w.iter().all(|&p| bits[p])).count() % 2 == 0)
}

fn search(
    depth: usize,
    bits: &mut Vec<bool>,
    checks: &[Vec<Vec<Vec<usize>>>],
    emit: &mut dyn FnMut(&[bool]),
) {
    if !satisfied(&checks[depth], bits) {
        return;
    }
    if depth == bits.len() {
        emit(bits);
        return;
    }
    for v in [false, true] {
        bits[depth] = v;
        search(depth + 1, bits, checks, emit);
    }
    bits[depth] = false;
}

/// The bilinearized complex: each word `b1...bk` of `d g` contributes
/// `eps1(b1...b(i-1)) bi eps2(b(i+1)...bk)` for every position `i`.
pub fn bilinearize(
    dga: &Dga,
    eps1: &Augmentation,
    eps2: &Augmentation,
) -> Result<ChainComplex, AugmentError> {
    eps1.check(dga)?;
    eps2.check(dga)?;
    Ok(bilinearize_unchecked(dga, eps1, eps2))
}

/// [`bilinearize`] without re-validating the augmentations.
pub fn bilinearize_unchecked(dga: &Dga, eps1: &Augmentation, eps2: &Augmentation) -> ChainComplex {
    let basis: Vec<BasisElement> = dga
        .generators()
        .iter()
        .map(|g| BasisElement {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect();
    let mut boundary = vec![BTreeSet::new(); dga.len()];
    for (g, targets) in boundary.iter_mut().enumerate() {
        for w in dga.d(g).words() {
            let f = w.factors();
            for i in 0..f.len() {
                let left = f[..i].iter().all(|&b| eps1.value(b));
                let right = f[i + 1..].iter().all(|&b| eps2.value(b));
                if left && right && !targets.remove(&f[i]) {
                    targets.insert(f[i]);
                }
            }
        }
    }
    ChainComplex::new(dga.dim(), basis, boundary)
        .expect("a degree-respecting differential bilinearizes to a graded boundary")
}

/// The linearized complex, `bilinearize(dga, eps, eps)`.
pub fn linearize(dga: &Dga, eps: &Augmentation) -> Result<ChainComplex, AugmentError> {
    bilinearize(dga, eps, eps)
}
