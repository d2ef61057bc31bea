//! Built-in DGAs and chain complexes with known answers.
//!
//! * the maximal-tb right-handed trefoil and its five augmentations,
//! * the trefoil/unknot link obtained by inserting a small unknot, with a
//!   Maslov shift `k` between the components,
//! * the two-copy of the standard unknot (Hopf link) in any dimension,
//! * the bilinearized complex of the `2N`-copy of the unknot,
//! * the subcomplex contributed by a single "note" component,
//! * the chain-level connected sum [`attach_s`].
//!
//! Multi-component chain complexes use names `c{i}_{j}`, `m{i}_{j}`, `M{i}_{j}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::augment::Augmentation;
use crate::complex::{BasisElement, ChainComplex, ComplexError};
use crate::dga::{Dga, DgaBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("'{0}' is not a degree-{1} basis element")]
    NotInTopDegree(String, i64),
    #[error("functional does not vanish on the boundary of '{0}'")]
    RhoNotClosed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The trefoil generators' values `(b1, b2, b3)` for the five augmentations,
/// in the conventional labelling eps1..eps5.
pub const TREFOIL_AUGMENTATIONS: [[bool; 3]; 5] = [
    [true, true, true],
    [true, false, false],
    [true, true, false],
    [false, false, true],
    [false, true, true],
];

pub fn trefoil_dga() -> Dga {
    trefoil_builder()
        .build()
        .expect("trefoil DGA is well formed")
}

fn trefoil_builder() -> DgaBuilder {
    DgaBuilder::new(1)
        .gen_on("a1", 1, "trefoil")
        .gen_on("a2", 1, "trefoil")
        .gen_on("b1", 0, "trefoil")
        .gen_on("b2", 0, "trefoil")
        .gen_on("b3", 0, "trefoil")
        .d("a1", "1 + b1 + b3 + b1*b2*b3")
        .d("a2", "1 + b1 + b3 + b3*b2*b1")
}

fn trefoil_labelled(dga: &Dga) -> Vec<Augmentation> {
    TREFOIL_AUGMENTATIONS
        .iter()
        .map(|bits| {
            let assignment: BTreeMap<String, bool> = ["b1", "b2", "b3"]
                .iter()
                .zip(bits)
                .map(|(n, &v)| (n.to_string(), v))
                .collect();
            Augmentation::new(dga, &assignment).expect("labelled trefoil augmentation")
        })
        .collect()
}

/// eps1..eps5 on [`trefoil_dga`], in label order (not enumeration order).
pub fn trefoil_augmentations(dga: &Dga) -> Vec<Augmentation> {
    trefoil_labelled(dga)
}

/// Trefoil plus a small unknot; `shift` is the Maslov potential offset.
pub fn trefoil_link_dga(shift: i64) -> Dga {
    let k = shift;
    trefoil_builder()
        .gen_on("a3", 1, "unknot")
        .gen("c1", k - 1)
        .gen("c2", k)
        .gen("d1", 1 - k)
        .gen("d2", -k)
        .d("c2", "c1 + b2*b1*c1")
        .d("d1", "d2 + d2*b2*b1")
        .build()
        .expect("trefoil link DGA is well formed")
}

/// eps1..eps5 of the trefoil extended by zero to [`trefoil_link_dga`].
pub fn trefoil_link_augmentations(dga: &Dga) -> Vec<Augmentation> {
    trefoil_labelled(dga)
}

/// The two-copy of the standard Legendrian unknot in `J^1(R^n)`, upper
/// component shifted by `k` in Maslov potential.
pub fn hopf_dga(n: i64, k: i64) -> Result<Dga, FamilyError> {
    if n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "n must be at least 1, got {n}"
        )));
    }
    Ok(DgaBuilder::new(n)
        .gen_on("c11", n, "L1")
        .gen_on("c22", n, "L2")
        .gen("c12", n + k)
        .gen("c21", n - k)
        .gen("m12", k - 1)
        .gen("M12", n + k - 1)
        .d("c12", "M12 + m12*c11 + c22*m12")
        .d("c11", "c21*m12")
        .d("c22", "m12*c21")
        .build()
        .expect("Hopf DGA is well formed"))
}

/// `(eps_L, eps_R)`: zero on every chord except `eps_R(m12) = 1`. Requires `k = 1`.
pub fn hopf_augmentations(dga: &Dga) -> (Augmentation, Augmentation) {
    let left = Augmentation::zero(dga);
    let right = Augmentation::new(dga, &BTreeMap::from([("m12".to_owned(), true)]))
        .expect("m12 must have degree 0");
    (left, right)
}

fn parity(i: i64) -> bool {
    i.rem_euclid(2) == 1
}

/// Bilinearized complex of the `2N`-copy of the unknot for the augmentations
/// augmenting `m_{i,i+1}` on the left when `i` is even and on the right when
/// `i` is odd. Degenerate and out-of-range generators are dropped.
pub fn multicopy_complex(copies: i64, n: i64) -> Result<ChainComplex, FamilyError> {
    if copies < 1 || n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "need N >= 1 and n >= 1, got N = {copies}, n = {n}"
        )));
    }
    let top = 2 * copies;
    let mut basis: Vec<(String, i64)> = Vec::new();
    for i in 1..=top {
        for j in 1..=top {
            basis.push((format!("c{i}_{j}"), n + j - i));
        }
    }
    for i in 1..=top {
        for j in i + 1..=top {
            basis.push((format!("m{i}_{j}"), j - i - 1));
            basis.push((format!("M{i}_{j}"), n + j - i - 1));
        }
    }
    let in_range = |i: i64| (1..=top).contains(&i);
    let c = |i: i64, j: i64| (in_range(i) && in_range(j)).then(|| format!("c{i}_{j}"));
    let short = |kind: char, i: i64, j: i64| {
        (in_range(i) && in_range(j) && i < j).then(|| format!("{kind}{i}_{j}"))
    };

    let mut boundary: Vec<(String, Vec<String>)> = Vec::new();
    let mut push = |src: String, terms: Vec<(bool, Option<String>)>| {
        let kept = terms
            .into_iter()
            .filter_map(|(on, t)| if on { t } else { None })
            .collect();
        boundary.push((src, kept));
    };
    for i in 1..=top {
        push(
            c(i, i).unwrap(),
            vec![(parity(i), c(i, i - 1)), (parity(i), c(i + 1, i))],
        );
        for j in i + 1..=top {
            push(
                c(i, j).unwrap(),
                vec![
                    (true, short('M', i, j)),
                    (parity(j), c(i, j - 1)),
                    (parity(i), c(i + 1, j)),
                ],
            );
            push(
                c(j, i).unwrap(),
                vec![(parity(i), c(j, i - 1)), (parity(j), c(j + 1, i))],
            );
            for kind in ['m', 'M'] {
                push(
                    short(kind, i, j).unwrap(),
                    vec![
                        (parity(j), short(kind, i, j - 1)),
                        (parity(i), short(kind, i + 1, j)),
                    ],
                );
            }
        }
    }
    named_complex(n, &basis, &boundary)
}

/// Subcomplex of the chords involving one extra component that links the
/// bottom `k` copies with Maslov shift `m`.
pub fn note_subcomplex(k: i64, m: i64, n: i64) -> Result<ChainComplex, FamilyError> {
    if k < 1 || n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "need k >= 1 and n >= 1, got k = {k}, n = {n}"
        )));
    }
    let mut basis = vec![("c0_0".to_owned(), n)];
    for j in 1..=k {
        basis.push((format!("c0_{j}"), n + j - m));
        basis.push((format!("c{j}_0"), n - j + m));
        basis.push((format!("m0_{j}"), j - m - 1));
        basis.push((format!("M0_{j}"), n + j - m - 1));
    }
    let mut boundary = Vec::new();
    for j in 1..=k {
        let odd = parity(j);
        let lower = |kind: &str| (odd && j > 1).then(|| format!("{kind}0_{}", j - 1));
        let mut dc = vec![format!("M0_{j}")];
        dc.extend(lower("c"));
        boundary.push((format!("c0_{j}"), dc));
        boundary.push((
            format!("c{j}_0"),
            (odd && j < k)
                .then(|| format!("c{}_0", j + 1))
                .into_iter()
                .collect(),
        ));
        boundary.push((format!("m0_{j}"), lower("m").into_iter().collect()));
        boundary.push((format!("M0_{j}"), lower("M").into_iter().collect()));
    }
    named_complex(n, &basis, &boundary)
}

fn named_complex(
    n: i64,
    basis: &[(String, i64)],
    boundary: &[(String, Vec<String>)],
) -> Result<ChainComplex, FamilyError> {
    let b: Vec<(&str, i64)> = basis.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    let owned: Vec<(&str, Vec<&str>)> = boundary
        .iter()
        .map(|(s, t)| (s.as_str(), t.iter().map(String::as_str).collect()))
        .collect();
    let bd: Vec<(&str, &[&str])> = owned.iter().map(|(s, t)| (*s, t.as_slice())).collect();
    Ok(ChainComplex::from_named(n, &b, &bd)?)
}

/// Chain-level connected sum: adds `s` in degree `n - 1` with `d s = 0` and
/// adds `rho(x) s` to `d x` for every degree-`n` element `x`. `rho` is given
/// by its support. Fails if `rho` does not vanish on boundaries of degree
/// `n + 1` elements, since the result would not be a complex.
pub fn attach_s(cx: &ChainComplex, n: i64, rho: &[&str]) -> Result<ChainComplex, FamilyError> {
    let mut support = BTreeSet::new();
    for &name in rho {
        match cx.index_of(name) {
            Some(i) if cx.basis()[i].degree == n => {
                support.insert(i);
            }
            _ => return Err(FamilyError::NotInTopDegree(name.to_owned(), n)),
        }
    }
    for y in cx.elements_in_degree(n + 1) {
        if cx.boundary_of(y).intersection(&support).count() % 2 == 1 {
            return Err(FamilyError::RhoNotClosed(cx.basis()[y].name.clone()));
        }
    }
    let mut name = "s".to_owned();
    let mut suffix = 0;
    while cx.index_of(&name).is_some() {
        suffix += 1;
        name = format!("s_{suffix}");
    }
    let mut out = cx.clone();
    let s = out.push_element(name, n - 1);
    for x in support {
        out.toggle_boundary(x, s);
    }
    Ok(out)
}

/// A built-in family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Trefoil,
    TrefoilLink { k: i64 },
    Hopf { n: i64, k: i64 },
    Multicopy { copies: i64, n: i64 },
    Note { k: i64, m: i64, n: i64 },
}

/// What a family produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyObject {
    Dga(Dga),
    Complex(ChainComplex),
}

impl FamilySpec {
    /// Parses `trefoil`, `trefoil-link k=<int>`, `hopf n=<int> k=<int>`,
    /// `multicopy N=<int> n=<int>` or `note k=<int> m=<int> n=<int>`.
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<Self, FamilyError> {
        let Some((name, params)) = tokens.split_first() else {
            return Err(FamilyError::UnknownFamily(String::new()));
        };
        let mut values = BTreeMap::new();
        for p in params {
            let p = p.as_ref();
            let (key, value) = p.split_once('=').ok_or_else(|| {
                FamilyError::InvalidParameter(format!("expected key=value, got '{p}'"))
            })?;
            let value: i64 = value.parse().map_err(|_| {
                FamilyError::InvalidParameter(format!("'{value}' is not an integer"))
            })?;
            if values.insert(key.to_owned(), value).is_some() {
                return Err(FamilyError::InvalidParameter(format!(
                    "'{key}' given twice"
                )));
            }
        }
        let name = name.as_ref();
        let expected: &[&str] = match name {
            "trefoil" => &[],
            "trefoil-link" => &["k"],
            "hopf" => &["n", "k"],
            "multicopy" => &["N", "n"],
            "note" => &["k", "m", "n"],
            other => return Err(FamilyError::UnknownFamily(other.to_owned())),
        };
        for key in values.keys() {
            if !expected.contains(&key.as_str()) {
                return Err(FamilyError::InvalidParameter(format!(
                    "family '{name}' takes no '{key}'"
                )));
            }
        }
        let get = |key: &str| {
            values.get(key).copied().ok_or_else(|| {
                FamilyError::InvalidParameter(format!("family '{name}' needs {key}=<int>"))
            })
        };
        let spec = match name {
            "trefoil" => FamilySpec::Trefoil,
            "trefoil-link" => FamilySpec::TrefoilLink { k: get("k")? },
            "hopf" => FamilySpec::Hopf {
                n: get("n")?,
                k: get("k")?,
            },
            "multicopy" => FamilySpec::Multicopy {
                copies: get("N")?,
                n: get("n")?,
            },
            _ => FamilySpec::Note {
                k: get("k")?,
                m: get("m")?,
                n: get("n")?,
            },
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), FamilyError> {
        let bad = |msg: String| Err(FamilyError::InvalidParameter(msg));
        match *self {
            FamilySpec::Hopf { n, .. } if n < 1 => bad(format!("n must be at least 1, got {n}")),
            FamilySpec::Multicopy { copies, n } if copies < 1 || n < 1 => {
                bad(format!("need N >= 1 and n >= 1, got N = {copies}, n = {n}"))
            }
            FamilySpec::Note { k, n, .. } if k < 1 || n < 1 => {
                bad(format!("need k >= 1 and n >= 1, got k = {k}, n = {n}"))
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<FamilyObject, FamilyError> {
        Ok(match *self {
            FamilySpec::Trefoil => FamilyObject::Dga(trefoil_dga()),
            FamilySpec::TrefoilLink { k } => FamilyObject::Dga(trefoil_link_dga(k)),
            FamilySpec::Hopf { n, k } => FamilyObject::Dga(hopf_dga(n, k)?),
            FamilySpec::Multicopy { copies, n } => {
                FamilyObject::Complex(multicopy_complex(copies, n)?)
            }
            FamilySpec::Note { k, m, n } => FamilyObject::Complex(note_subcomplex(k, m, n)?),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Trefoil => write!(f, "trefoil"),
            FamilySpec::TrefoilLink { k } => write!(f, "trefoil-link k={k}"),
            FamilySpec::Hopf { n, k } => write!(f, "hopf n={n} k={k}"),
            FamilySpec::Multicopy { copies, n } => write!(f, "multicopy N={copies} n={n}"),
            FamilySpec::Note { k, m, n } => write!(f, "note k={k} m={m} n={n}"),
        }
    }
}

/// Renames a two-component Hopf chord (`c12`, `m12`, ...) to the multicopy
/// naming scheme (`c1_2`, `m1_2`, ...).
pub fn hopf_to_multicopy_name(name: &str) -> String {
    let (kind, idx) = name.split_at(1);
    let (i, j) = idx.split_at(1);
    format!("{kind}{i}_{j}")
}

/// Basis entries of a complex as `(name, degree)`.
pub fn basis_summary(cx: &ChainComplex) -> Vec<(String, i64)> {
    cx.basis()
        .iter()
        .map(|BasisElement { name, degree }| (name.clone(), *degree))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{bilinearize, enumerate_augmentations, DEFAULT_CAP};
    use crate::complex::poincare;
    use crate::LaurentPoly;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_shape() {
        let dga = trefoil_dga();
        assert!(dga.validate().is_valid());
        assert_eq!(enumerate_augmentations(&dga, DEFAULT_CAP).unwrap().len(), 5);
        assert_eq!(trefoil_augmentations(&dga).len(), 5);
    }

    #[test]
    fn hopf_degrees() {
        let dga = hopf_dga(2, 1).unwrap();
        let degrees: BTreeMap<&str, i64> = dga
            .generators()
            .iter()
            .map(|g| (g.name.as_str(), g.degree))
            .collect();
        assert_eq!(
            degrees,
            BTreeMap::from([
                ("c11", 2),
                ("c22", 2),
                ("c12", 3),
                ("c21", 1),
                ("m12", 0),
                ("M12", 2)
            ])
        );
        assert!(hopf_dga(0, 1).is_err());
    }

    #[test]
    fn hopf_bilinearized_differential() {
        let dga = hopf_dga(3, 1).unwrap();
        let (l, r) = hopf_augmentations(&dga);
        let bd = bilinearize(&dga, &l, &r).unwrap().named_boundaries();
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(bd["c11"].1, names(&["c21"]));
        assert_eq!(bd["c12"].1, names(&["M12", "c22"]));
        assert_eq!(bd["c22"].1, names(&[]));
    }

    #[test]
    fn multicopy_single_pair_differential() {
        let cx = multicopy_complex(1, 2).unwrap();
        let bd = cx.named_boundaries();
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(bd["c1_1"].1, names(&["c2_1"]));
        assert_eq!(bd["c1_2"].1, names(&["M1_2", "c2_2"]));
        for rest in ["c2_2", "c2_1", "m1_2", "M1_2"] {
            assert!(bd[rest].1.is_empty(), "{rest}");
        }
        assert_eq!(poincare(&cx).unwrap(), lp("1 + t^2"));
    }

    #[test]
    fn multicopy_sizes() {
        let cx = multicopy_complex(2, 3).unwrap();
        // 16 c-chords plus 6 m and 6 M chords
        assert_eq!(cx.len(), 28);
        cx.check_square_zero().unwrap();
    }

    #[test]
    fn note_example() {
        let cx = note_subcomplex(2, 0, 3).unwrap();
        assert_eq!(poincare(&cx).unwrap(), lp("1 + t + t^3"));
        assert!(note_subcomplex(0, 0, 3).is_err());
    }

    #[test]
    fn attach_s_branches() {
        let cx =
            ChainComplex::from_named(1, &[("x", 1), ("y", 1), ("z", 0)], &[("y", &["z"])]).unwrap();
        let base = poincare(&cx).unwrap();
        assert_eq!(base, lp("t"));
        let vanishing = attach_s(&cx, 1, &[]).unwrap();
        assert_eq!(poincare(&vanishing).unwrap(), base.clone() + lp("1"));
        let hitting = attach_s(&cx, 1, &["x"]).unwrap();
        assert_eq!(poincare(&hitting).unwrap(), base - lp("t"));
        assert!(matches!(
            attach_s(&cx, 1, &["z"]),
            Err(FamilyError::NotInTopDegree(..))
        ));

        let closed = ChainComplex::from_named(1, &[("w", 2), ("x", 1)], &[("w", &["x"])]).unwrap();
        assert_eq!(
            attach_s(&closed, 1, &["x"]),
            Err(FamilyError::RhoNotClosed("w".into()))
        );
    }

    #[test]
    fn attach_s_avoids_name_clash() {
        let cx = ChainComplex::from_named(1, &[("s", 1)], &[]).unwrap();
        let out = attach_s(&cx, 1, &[]).unwrap();
        assert_eq!(out.basis()[1].name, "s_1");
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(
            FamilySpec::parse(&["trefoil"]).unwrap(),
            FamilySpec::Trefoil
        );
        assert_eq!(
            FamilySpec::parse(&["trefoil-link", "k=-2"]).unwrap(),
            FamilySpec::TrefoilLink { k: -2 }
        );
        assert_eq!(
            FamilySpec::parse(&["hopf", "k=1", "n=3"]).unwrap(),
            FamilySpec::Hopf { n: 3, k: 1 }
        );
        assert_eq!(
            FamilySpec::parse(&["multicopy", "N=2", "n=1"]).unwrap(),
            FamilySpec::Multicopy { copies: 2, n: 1 }
        );
        assert_eq!(
            FamilySpec::parse(&["note", "k=3", "m=-1", "n=2"]).unwrap(),
            FamilySpec::Note { k: 3, m: -1, n: 2 }
        );
        assert!(matches!(
            FamilySpec::parse(&["torus"]),
            Err(FamilyError::UnknownFamily(_))
        ));
        assert!(FamilySpec::parse(&["hopf", "n=2"]).is_err());
        assert!(FamilySpec::parse(&["hopf", "n=2", "k=1", "q=3"]).is_err());
        assert!(FamilySpec::parse(&["note", "k=0", "m=0", "n=1"]).is_err());
        assert!(FamilySpec::parse(&["hopf", "n=x", "k=1"]).is_err());
        let spec = FamilySpec::Note { k: 3, m: -1, n: 2 };
        let text = spec.to_string();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        assert_eq!(FamilySpec::parse(&tokens).unwrap(), spec);
    }

    #[test]
    fn hopf_name_mapping() {
        assert_eq!(hopf_to_multicopy_name("c12"), "c1_2");
        assert_eq!(hopf_to_multicopy_name("M12"), "M1_2");
    }
}
