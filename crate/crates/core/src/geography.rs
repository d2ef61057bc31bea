//! Polynomial-level geography of bilinearized homology.
//!
//! A Poincaré polynomial `P` of a pair of non-homotopic augmentations of a
//! connected `n`-dimensional Legendrian splits as `P = q + p` where `q` is an
//! honest polynomial of degree at most `n - 1` with `q(0) = 1`, and `p(-1)`
//! is even (`n` odd) or zero (`n` even). Such `P` are realized by the
//! planner below, which pairs the exponents of `p` into note components.

use serde::Serialize;
use thiserror::Error;

use crate::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeographyError {
    #[error("polynomial {0} has a negative coefficient")]
    NegativeCoefficient(LaurentPoly),
    #[error("polynomial {0} is not admissible in dimension {1}")]
    NotAdmissible(LaurentPoly, i64),
    #[error("no feasible pairing of the exponents of {0} in dimension {1}")]
    NoFeasiblePairing(LaurentPoly, i64),
    #[error("polynomial {0} has no t^{1} term to remove")]
    MissingTopClass(LaurentPoly, i64),
    #[error("note length k must be at least 1, got {0}")]
    InvalidLength(i64),
}

/// A decomposition `P = q + p` (or `P = q + p + t^{n-1} p(t^{-1})`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleSplit {
    pub q: LaurentPoly,
    pub p: LaurentPoly,
}

fn require_nonnegative(poly: &LaurentPoly) -> Result<(), GeographyError> {
    if poly.has_nonnegative_coefficients() {
        Ok(())
    } else {
        Err(GeographyError::NegativeCoefficient(poly.clone()))
    }
}

/// Every `q` with `q_e` in `lo(e)..=hi(e)` for `e` in `exps`, in ascending
/// lexicographic order of the coefficient vector read from low to high exponent.
fn candidate_qs(exps: &[i64], bounds: &[(i64, i64)]) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    let mut current = bounds.iter().map(|&(lo, _)| lo).collect::<Vec<_>>();
    if bounds.iter().any(|&(lo, hi)| lo > hi) {
        return out;
    }
    loop {
        out.push(LaurentPoly::from_terms(
            exps.iter().copied().zip(current.iter().copied()),
        ));
        // odometer with the highest exponent varying fastest
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < bounds[i].1 {
                current[i] += 1;
                for (c, b) in current[i + 1..].iter_mut().zip(&bounds[i + 1..]) {
                    *c = b.0;
                }
                break;
            }
        }
    }
}

fn blch_p_condition(p: &LaurentPoly, n: i64) -> bool {
    let at = p.eval_at_minus_one();
    if n % 2 == 0 {
        at == 0
    } else {
        at % 2 == 0
    }
}

/// All bLCH splits of `P`, lexicographically ordered by `q`.
pub fn blch_admissible_splits(
    poly: &LaurentPoly,
    n: i64,
) -> Result<Vec<AdmissibleSplit>, GeographyError> {
    require_nonnegative(poly)?;
    if poly.coeff(0) < 1 || n < 1 {
        return Ok(Vec::new());
    }
    let exps: Vec<i64> = (0..n).collect();
    let bounds: Vec<(i64, i64)> = exps
        .iter()
        .map(|&e| if e == 0 { (1, 1) } else { (0, poly.coeff(e)) })
        .collect();
    Ok(candidate_qs(&exps, &bounds)
        .into_iter()
        .map(|q| AdmissibleSplit {
            p: poly.clone() - q.clone(),
            q,
        })
        .filter(|s| blch_p_condition(&s.p, n))
        .collect())
}

/// The lexicographically smallest bLCH split, if any.
pub fn blch_admissible_split(
    poly: &LaurentPoly,
    n: i64,
) -> Result<Option<AdmissibleSplit>, GeographyError> {
    Ok(blch_admissible_splits(poly, n)?.into_iter().next())
}

/// Finds `q` monic of degree `n` and `p` with `P = q + p + t^{n-1} p(t^{-1})`.
/// `p` is normalized to live on exponents `e <= (n-1)/2`.
pub fn lch_admissible_split(
    poly: &LaurentPoly,
    n: i64,
) -> Result<Option<AdmissibleSplit>, GeographyError> {
    require_nonnegative(poly)?;
    if n < 1 || poly.coeff(n) < 1 {
        return Ok(None);
    }
    let exps: Vec<i64> = (0..=n).collect();
    let bounds: Vec<(i64, i64)> = exps
        .iter()
        .map(|&e| if e == n { (1, 1) } else { (0, poly.coeff(e)) })
        .collect();
    for q in candidate_qs(&exps, &bounds) {
        let rest = poly.clone() - q.clone();
        if let Some(p) = symmetric_half(&rest, n) {
            return Ok(Some(AdmissibleSplit { q, p }));
        }
    }
    Ok(None)
}

/// Writes `r = p + t^{n-1} p(t^{-1})` with `p >= 0`, if possible.
fn symmetric_half(r: &LaurentPoly, n: i64) -> Option<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for (e, c) in r.terms() {
        let mirror = n - 1 - e;
        match e.cmp(&mirror) {
            std::cmp::Ordering::Less => {
                if r.coeff(mirror) != *c {
                    return None;
                }
                p.add_term(e, *c);
            }
            std::cmp::Ordering::Equal => {
                if c % 2 != 0 {
                    return None;
                }
                p.add_term(e, c / 2);
            }
            std::cmp::Ordering::Greater => {
                if r.coeff(mirror) != *c {
                    return None;
                }
            }
        }
    }
    Some(p)
}

/// The polynomial of the swapped pair: `q(t) + t^{n-1} p(t^{-1})`.
pub fn swapped_polynomial(split: &AdmissibleSplit, n: i64) -> LaurentPoly {
    split.q.clone() + split.p.invert_variable().shift(n - 1)
}

/// True iff some bLCH split of `p12` maps to `p21` under [`swapped_polynomial`].
pub fn relpoly_consistent(
    p12: &LaurentPoly,
    p21: &LaurentPoly,
    n: i64,
) -> Result<bool, GeographyError> {
    require_nonnegative(p21)?;
    Ok(blch_admissible_splits(p12, n)?
        .iter()
        .any(|s| swapped_polynomial(s, n) == *p21))
}

/// Effect of a connected sum of two components: `P + t^{n-1}` when the
/// fundamental-class functional vanishes, `P - t^n` otherwise.
pub fn connected_sum_polynomial(
    poly: &LaurentPoly,
    n: i64,
    rho_vanishes: bool,
) -> Result<LaurentPoly, GeographyError> {
    if rho_vanishes {
        Ok(poly.clone() + LaurentPoly::t_pow(n - 1))
    } else if poly.coeff(n) >= 1 {
        Ok(poly.clone() - LaurentPoly::t_pow(n))
    } else {
        Err(GeographyError::MissingTopClass(poly.clone(), n))
    }
}

/// Exponent of the last surviving class of a note component of length `k`
/// and Maslov shift `m` in dimension `n`.
pub fn exponent_a(k: i64, m: i64, n: i64) -> Result<i64, GeographyError> {
    if k < 1 {
        return Err(GeographyError::InvalidLength(k));
    }
    Ok(if k % 2 == 0 { k - m - 1 } else { n - k + m })
}

/// One note component realizing `t^u + t^v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanPair {
    pub u: i64,
    pub v: i64,
    pub m: i64,
    pub k: i64,
    pub a: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationPlan {
    pub n: i64,
    /// Realized by a separate connected Legendrian; recorded symbolically.
    #[serde(serialize_with = "as_string")]
    pub q: LaurentPoly,
    pub pairs: Vec<PlanPair>,
    /// Smallest positive even integer with every `k <= 2N`.
    #[serde(rename = "N")]
    pub copies: i64,
    #[serde(serialize_with = "as_string")]
    pub predicted: LaurentPoly,
}

fn as_string<S: serde::Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn pair_for(u: i64, v: i64, n: i64) -> Option<PlanPair> {
    let (u, v) = (u.min(v), u.max(v));
    let m = -u;
    let k = if (u - v) % 2 != 0 {
        v - u + 1
    } else if n % 2 == 1 {
        n - u - v
    } else {
        return None;
    };
    if k < 1 {
        return None;
    }
    let a = exponent_a(k, m, n).ok()?;
    debug_assert_eq!(a, v);
    Some(PlanPair { u, v, m, k, a })
}

/// Pairs up a sorted exponent multiset. The smallest remaining exponent is
/// always paired first; partners are tried in ascending order, each distinct
/// value once.
fn pair_exponents(exps: &[i64], n: i64, acc: &mut Vec<PlanPair>) -> bool {
    let Some(&u) = exps.first() else { return true };
    let mut tried = std::collections::BTreeSet::new();
    for j in 1..exps.len() {
        let v = exps[j];
        if !tried.insert(v) {
            continue;
        }
        let Some(pair) = pair_for(u, v, n) else {
            continue;
        };
        let rest: Vec<i64> = exps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i != j)
            .map(|(_, &e)| e)
            .collect();
        acc.push(pair);
        if pair_exponents(&rest, n, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

/// Plans a realization of a bLCH-admissible polynomial. Splits are tried in
/// lexicographic order; for each, exponent pairings are searched exhaustively.
pub fn plan_realization(poly: &LaurentPoly, n: i64) -> Result<RealizationPlan, GeographyError> {
    let splits = blch_admissible_splits(poly, n)?;
    if splits.is_empty() {
        return Err(GeographyError::NotAdmissible(poly.clone(), n));
    }
    for split in splits {
        let exps: Vec<i64> = split
            .p
            .terms()
            .flat_map(|(e, &c)| std::iter::repeat_n(e, c as usize))
            .collect();
        if !exps.len().is_multiple_of(2) {
            continue;
        }
        let mut pairs = Vec::new();
        if !pair_exponents(&exps, n, &mut pairs) {
            continue;
        }
        let max_k = pairs.iter().map(|p| p.k).max().unwrap_or(0);
        let half = (max_k + 1) / 2;
        let copies = (half + half % 2).max(2);
        let mut plan = RealizationPlan {
            n,
            q: split.q,
            pairs,
            copies,
            predicted: LaurentPoly::zero(),
        };
        plan.predicted = predicted_polynomial(&plan);
        assert_eq!(
            plan.predicted, *poly,
            "planner produced an inconsistent plan"
        );
        return Ok(plan);
    }
    Err(GeographyError::NoFeasiblePairing(poly.clone(), n))
}

/// `q + sum_i (t^{-m_i} + t^{a_i})`.
pub fn predicted_polynomial(plan: &RealizationPlan) -> LaurentPoly {
    let mut out = plan.q.clone();
    for pair in &plan.pairs {
        out.add_term(-pair.m, 1);
        out.add_term(pair.a, 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn split(q: &str, p: &str) -> AdmissibleSplit {
        AdmissibleSplit { q: lp(q), p: lp(p) }
    }

    #[test]
    fn blch_examples() {
        for n in 1..5 {
            assert_eq!(
                blch_admissible_split(&lp("1"), n).unwrap(),
                Some(split("1", "0"))
            );
        }
        for k in -2..4 {
            let p = LaurentPoly::t_pow(k) + LaurentPoly::t_pow(k - 1);
            let poly = p.clone() + LaurentPoly::one();
            assert_eq!(
                blch_admissible_split(&poly, 1).unwrap(),
                Some(AdmissibleSplit {
                    q: LaurentPoly::one(),
                    p
                })
            );
        }
        assert_eq!(blch_admissible_split(&lp("1 + t^2"), 2).unwrap(), None);
        assert_eq!(blch_admissible_split(&lp("t"), 2).unwrap(), None);
        assert!(matches!(
            blch_admissible_split(&lp("1 - t"), 2),
            Err(GeographyError::NegativeCoefficient(_))
        ));
    }

    #[test]
    fn blch_tie_break_prefers_smallest_q() {
        // q = 1 leaves p = 2t, p(-1) = -2 != 0; q = 1 + t leaves p = t, odd; q = 1 + 2t works.
        assert_eq!(
            blch_admissible_split(&lp("1 + 2*t"), 2).unwrap(),
            Some(split("1 + 2*t", "0"))
        );
        // n = 3: q = 1 leaves p = t + t^2, p(-1) = 0 (even) and wins.
        assert_eq!(
            blch_admissible_split(&lp("1 + t + t^2"), 3).unwrap(),
            Some(split("1", "t + t^2"))
        );
    }

    #[test]
    fn lch_examples() {
        // q must be monic of degree n; q = t with p = 1 gives t + 1 + 1.
        assert_eq!(
            lch_admissible_split(&lp("t + 2"), 1).unwrap(),
            Some(split("t", "1"))
        );
        for n in 1..5 {
            let poly = LaurentPoly::t_pow(n) + LaurentPoly::one();
            assert_eq!(
                lch_admissible_split(&poly, n).unwrap(),
                Some(AdmissibleSplit {
                    q: poly.clone(),
                    p: LaurentPoly::zero()
                })
            );
        }
        assert_eq!(lch_admissible_split(&lp("1"), 1).unwrap(), None);
        assert_eq!(
            lch_admissible_split(&lp("2*t + 4 + t^-1"), 1).unwrap(),
            Some(split("t", "t^-1 + 2"))
        );
    }

    #[test]
    fn swapped_examples() {
        assert_eq!(swapped_polynomial(&split("1", "0"), 3), lp("1"));
        for k in -2..4 {
            let p = LaurentPoly::t_pow(k) + LaurentPoly::t_pow(k - 1);
            let s = AdmissibleSplit {
                q: LaurentPoly::one(),
                p,
            };
            let expected = LaurentPoly::one() + LaurentPoly::t_pow(-k) + LaurentPoly::t_pow(1 - k);
            assert_eq!(swapped_polynomial(&s, 1), expected);
        }
        for (m, k, n) in [(1, 4, 2), (0, 3, 3), (-2, 5, 1)] {
            let a = exponent_a(k, m, n).unwrap();
            let s = AdmissibleSplit {
                q: LaurentPoly::one(),
                p: LaurentPoly::t_pow(-m) + LaurentPoly::t_pow(a),
            };
            let expected =
                LaurentPoly::one() + LaurentPoly::t_pow(n - 1 + m) + LaurentPoly::t_pow(n - 1 - a);
            assert_eq!(swapped_polynomial(&s, n), expected);
        }
    }

    #[test]
    fn relpoly_examples() {
        for n in 1..5 {
            assert!(relpoly_consistent(&lp("1"), &lp("1"), n).unwrap());
        }
        assert!(relpoly_consistent(&lp("t + 2"), &lp("2 + t^-1"), 1).unwrap());
        assert!(!relpoly_consistent(&lp("t + 2"), &lp("t + 2"), 1).unwrap());
        assert!(!relpoly_consistent(&lp("1 + t^2"), &lp("1 + t^2"), 2).unwrap());
    }

    #[test]
    fn connected_sum_examples() {
        for k in -2..4 {
            let base = LaurentPoly::t_pow(k) + LaurentPoly::t_pow(k - 1);
            let before = base.clone() + lp("t + 1");
            let after = connected_sum_polynomial(&before, 1, false).unwrap();
            assert_eq!(after, base + LaurentPoly::one());
        }
        assert_eq!(
            connected_sum_polynomial(&lp("1 + t^3"), 3, true).unwrap(),
            lp("1 + t^2 + t^3")
        );
        assert_eq!(
            connected_sum_polynomial(&lp("1"), 1, false),
            Err(GeographyError::MissingTopClass(lp("1"), 1))
        );
    }

    #[test]
    fn exponent_examples() {
        for n in 1..6 {
            assert_eq!(exponent_a(4, 1, n).unwrap(), 2);
        }
        assert_eq!(exponent_a(3, 0, 3).unwrap(), 0);
        assert_eq!(exponent_a(0, 0, 3), Err(GeographyError::InvalidLength(0)));
        // even branch with m = -u, k = v - u + 1 recovers v
        for u in -5..5 {
            for v in (u + 1..u + 9).step_by(2) {
                assert_eq!(exponent_a(v - u + 1, -u, 2).unwrap(), v);
            }
        }
    }

    #[test]
    fn planner_examples() {
        for n in 1..5 {
            let plan = plan_realization(&lp("1"), n).unwrap();
            assert!(plan.pairs.is_empty());
            assert_eq!(plan.predicted, lp("1"));
        }

        let plan = plan_realization(&lp("1 + t^-1 + t^2"), 2).unwrap();
        assert_eq!(
            plan.pairs,
            vec![PlanPair {
                u: -1,
                v: 2,
                m: 1,
                k: 4,
                a: 2
            }]
        );
        assert_eq!(plan.copies, 2);
        assert_eq!(plan.predicted, lp("1 + t^-1 + t^2"));

        let plan = plan_realization(&lp("3"), 3).unwrap();
        assert_eq!(
            plan.pairs,
            vec![PlanPair {
                u: 0,
                v: 0,
                m: 0,
                k: 3,
                a: 0
            }]
        );
        assert_eq!(plan.predicted, lp("3"));

        let plan = plan_realization(&lp("1 + t + t^-1 + t^2"), 2).unwrap();
        assert_eq!(plan.q, lp("1 + t"));
        assert_eq!(predicted_polynomial(&plan), lp("1 + t + t^-1 + t^2"));
    }

    #[test]
    fn planner_reports_failures() {
        assert!(matches!(
            plan_realization(&lp("1 + t^2"), 2),
            Err(GeographyError::NotAdmissible(..))
        ));
        // n = 1 forces q = 1 and the pair (4, 4) needs k = 1 - 8 < 1.
        assert!(matches!(
            plan_realization(&lp("1 + 2*t^4"), 1),
            Err(GeographyError::NoFeasiblePairing(..))
        ));
    }

    #[test]
    fn planner_backtracks_over_pairings() {
        // n = 3, p = t^-2 + t^0 + 2 t^2 (all even): pairing (-2, 0) first leaves
        // (2, 2) with k = 3 - 4 < 1; pairing (-2, 2) and (0, 2) works.
        let poly = lp("1 + t^-2 + 1 + 2*t^2");
        let plan = plan_realization(&poly, 3).unwrap();
        assert_eq!(plan.predicted, poly);
        assert!(plan.pairs.iter().all(|p| p.k >= 1 && p.a == p.v));
    }

    #[test]
    fn copies_is_smallest_even_bound() {
        let plan = plan_realization(&lp("1 + t^-3 + t^4"), 2).unwrap();
        assert_eq!(plan.pairs[0].k, 8);
        assert_eq!(plan.copies, 4);
        let plan = plan_realization(&lp("1 + t^-3 + t^6"), 2).unwrap();
        assert_eq!(plan.pairs[0].k, 10);
        assert_eq!(plan.copies, 6);
    }
}
