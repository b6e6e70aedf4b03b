//! Linear constraints on Frobenius trace differences between two derived
//! equivalent varieties, and the degrees at which they force equality.
//!
//! Unknowns are `D_i = Tr(phi | H^i(X)) - Tr(phi | H^i(Y))` for `0 <= i <= 2d`.
//! Every constraint is linear with the same coefficients on both sides, so it
//! can be stated on the differences directly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg;
use crate::poly::IntPoly;
use crate::ratfunc::{format_q_poly, RationalFunctionQ};
use crate::zeta::TraceVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("pivot coefficient vanishes identically in row {0}")]
    DegenerateQ(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("specialization point must be a rational q0 > 1, got {0}")]
    InvalidSpecialization(String),
    #[error("trace data mismatch: {0}")]
    DimensionMismatch(String),
}

/// Which optional constraint families to include. The two Mukai rows are
/// always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolverFlags {
    pub albanese: bool,
    pub hard_lefschetz: bool,
    pub trivial: bool,
}

impl Default for SolverFlags {
    fn default() -> Self {
        SolverFlags {
            albanese: true,
            hard_lefschetz: true,
            trivial: true,
        }
    }
}

impl SolverFlags {
    /// All eight flag combinations.
    pub fn all_combinations() -> Vec<SolverFlags> {
        (0..8u8)
            .map(|m| SolverFlags {
                albanese: m & 1 != 0,
                hard_lefschetz: m & 2 != 0,
                trivial: m & 4 != 0,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowLabel {
    EvenMukai,
    OddMukai,
    HardLefschetz(usize),
    Trivial(usize),
    Albanese,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::EvenMukai => f.write_str("EVEN_MUKAI"),
            RowLabel::OddMukai => f.write_str("ODD_MUKAI"),
            RowLabel::HardLefschetz(i) => write!(f, "HL({i})"),
            RowLabel::Trivial(i) => write!(f, "TRIVIAL({i})"),
            RowLabel::Albanese => f.write_str("ALBANESE"),
        }
    }
}

/// One homogeneous row `sum_i coeffs[i] * D_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub label: RowLabel,
    pub coeffs: Vec<RationalFunctionQ>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceConstraintSystem {
    pub d: usize,
    pub flags: SolverFlags,
    pub rows: Vec<ConstraintRow>,
}

impl TraceConstraintSystem {
    pub fn unknowns(&self) -> usize {
        2 * self.d + 1
    }

    /// The same system without the rows carrying `label`.
    pub fn without(&self, label: RowLabel) -> Self {
        TraceConstraintSystem {
            d: self.d,
            flags: self.flags,
            rows: self.rows.iter().filter(|r| r.label != label).cloned().collect(),
        }
    }
}

/// Builds the rows for dimension `d`:
///
/// * `EVEN_MUKAI`: `sum_{i=0}^{d} q^{-i} D_{2i} = 0`, the trace of the even
///   Mukai-Hodge isomorphism with its Tate twists;
/// * `ODD_MUKAI`: `sum_{i=1}^{d} q^{-i} D_{2i-1} = 0`;
/// * `HL(i)`, `0 <= i < d`: `D_{2d-i} - q^{d-i} D_i = 0`, from the eigenvalues
///   on `H^{2d-i}` being those on `H^i` scaled by `q^{d-i}`;
/// * `TRIVIAL(0)`, `TRIVIAL(2d)`: `D_0 = D_{2d} = 0` for geometrically
///   connected varieties;
/// * `ALBANESE`: `D_1 = 0`, since isogenous Albanese varieties have isomorphic
///   `H^1` as Galois representations.
pub fn build_constraint_system(
    d: usize,
    flags: SolverFlags,
) -> Result<TraceConstraintSystem, SolverError> {
    if d == 0 {
        return Err(SolverError::ZeroDimension);
    }
    let n = 2 * d + 1;
    let blank = || vec![RationalFunctionQ::zero(); n];
    let mut rows = Vec::new();

    let mut even = blank();
    for i in 0..=d {
        even[2 * i] = RationalFunctionQ::monomial(1, -(i as i32));
    }
    rows.push(ConstraintRow {
        label: RowLabel::EvenMukai,
        coeffs: even,
    });
    let mut odd = blank();
    for i in 1..=d {
        odd[2 * i - 1] = RationalFunctionQ::monomial(1, -(i as i32));
    }
    rows.push(ConstraintRow {
        label: RowLabel::OddMukai,
        coeffs: odd,
    });
    if flags.hard_lefschetz {
        for i in 0..d {
            let mut c = blank();
            c[2 * d - i] = RationalFunctionQ::one();
            c[i] = RationalFunctionQ::monomial(-1, (d - i) as i32);
            rows.push(ConstraintRow {
                label: RowLabel::HardLefschetz(i),
                coeffs: c,
            });
        }
    }
    if flags.trivial {
        for i in [0, 2 * d] {
            let mut c = blank();
            c[i] = RationalFunctionQ::one();
            rows.push(ConstraintRow {
                label: RowLabel::Trivial(i),
                coeffs: c,
            });
        }
    }
    if flags.albanese {
        let mut c = blank();
        c[1] = RationalFunctionQ::one();
        rows.push(ConstraintRow {
            label: RowLabel::Albanese,
            coeffs: c,
        });
    }
    Ok(TraceConstraintSystem { d, flags, rows })
}

/// A linear relation `sum coeffs[i] * D_i = 0` among unforced differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub coeffs: BTreeMap<usize, RationalFunctionQ>,
}

impl fmt::Display for Relation {
    /// Human form, e.g. `2q·D_1 + D_3 = 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in &self.coeffs {
            let (n, d) = c.integer_parts();
            let mut body = format_q_poly(&n);
            if d != IntPoly::one() {
                body = format!("({body})/({})", format_q_poly(&d));
            }
            let single_term = n.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
            let negative = single_term && body.starts_with('-');
            let mag = if negative { body[1..].to_string() } else { body };
            let mag = if !single_term && d == IntPoly::one() {
                format!("({mag})")
            } else {
                mag
            };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let term = if mag == "1" {
                format!("D_{i}")
            } else {
                format!("{mag}·D_{i}")
            };
            write!(f, "{sep}{term}")?;
            first = false;
        }
        write!(f, " = 0")
    }
}

/// Degrees whose trace differences vanish in every solution, plus relations
/// tying the remaining differences together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedReport {
    pub d: usize,
    pub flags: SolverFlags,
    pub forced: BTreeSet<usize>,
    /// One relation per unforced pivot degree, in terms of free parameters.
    pub residual: Vec<Relation>,
}

impl ForcedReport {
    pub fn all_forced(&self) -> bool {
        self.forced.len() == 2 * self.d + 1
    }

    /// Unforced degrees that remain free parameters of the solution space.
    pub fn free_degrees(&self) -> BTreeSet<usize> {
        let pivots: BTreeSet<usize> = self
            .residual
            .iter()
            .filter_map(|r| r.coeffs.keys().next_back().copied())
            .collect();
        (0..=2 * self.d)
            .filter(|i| !self.forced.contains(i) && !pivots.contains(i))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let relations: Vec<Value> = self
            .residual
            .iter()
            .map(|r| {
                let coeffs: serde_json::Map<String, Value> = r
                    .coeffs
                    .iter()
                    .map(|(i, c)| (format!("D_{i}"), Value::String(c.to_string())))
                    .collect();
                json!({ "coeffs": coeffs })
            })
            .collect();
        json!({
            "d": self.d,
            "flags": self.flags,
            "forced": self.forced.iter().collect::<Vec<_>>(),
            "residual_relations": relations,
        })
    }
}

/// Scales a relation so its coefficients are coprime integer polynomials
/// with the highest-degree unknown's coefficient having positive leading term.
fn normalize_relation(coeffs: BTreeMap<usize, RationalFunctionQ>) -> Relation {
    use num_integer::Integer;
    // Common denominator as a polynomial: product of distinct denominators.
    let mut den = crate::poly::QPoly::one();
    for c in coeffs.values() {
        let g = den.gcd(c.denominator());
        den = &den * &c.denominator().div_rem(&g).0;
    }
    let den_rf = RationalFunctionQ::from_poly(den);
    let polys: BTreeMap<usize, crate::poly::QPoly> = coeffs
        .iter()
        .map(|(i, c)| {
            let scaled = c * &den_rf;
            debug_assert_eq!(scaled.denominator(), &crate::poly::QPoly::one());
            (*i, scaled.numerator().clone())
        })
        .collect();
    // Clear rational coefficients and remove the integer content.
    let lcm = polys
        .values()
        .flat_map(|p| p.coeffs().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: BTreeMap<usize, IntPoly> = polys
        .iter()
        .map(|(i, p)| {
            (
                *i,
                p.scale(&BigRational::from_integer(lcm.clone()))
                    .to_int()
                    .expect("integral"),
            )
        })
        .collect();
    let content = ints
        .values()
        .flat_map(|p| p.coeffs().iter())
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    // Common polynomial content in q (e.g. a shared factor q) is removed too.
    let poly_content = ints
        .values()
        .map(crate::poly::QPoly::from_int)
        .fold(crate::poly::QPoly::zero(), |acc, p| acc.gcd(&p));
    let sign = {
        let (_, top) = ints.iter().next_back().expect("nonempty relation");
        if top.leading().is_some_and(|l| l < &BigInt::zero()) {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    };
    let coeffs = ints
        .into_iter()
        .map(|(i, p)| {
            let p = crate::poly::QPoly::from_int(&p.map(|c| c / &content * &sign));
            let reduced = if poly_content.degree().unwrap_or(0) > 0 {
                p.div_rem(&poly_content).0
            } else {
                p
            };
            (i, RationalFunctionQ::from_poly(reduced))
        })
        .collect::<BTreeMap<_, _>>();
    // Dividing by a monic polynomial content may reintroduce fractions.
    let needs_rescale = coeffs
        .values()
        .any(|c| c.numerator().coeffs().iter().any(|x| !x.is_integer()));
    if needs_rescale {
        return normalize_relation(coeffs);
    }
    Relation { coeffs }
}

/// Gaussian elimination over `Q(q)`.
///
/// Columns are eliminated from the highest degree down, so free parameters of
/// the solution space are the lowest unforced degrees and each remaining
/// relation expresses a higher-degree difference through them.
pub fn solve_forced(system: &TraceConstraintSystem) -> Result<ForcedReport, SolverError> {
    let n = system.unknowns();
    // Clear denominators row-wise so entries start out polynomial.
    let mut rows: Vec<Vec<RationalFunctionQ>> = system
        .rows
        .iter()
        .map(|row| {
            let mut den = crate::poly::QPoly::one();
            for c in &row.coeffs {
                let g = den.gcd(c.denominator());
                den = &den * &c.denominator().div_rem(&g).0;
            }
            let den = RationalFunctionQ::from_poly(den);
            row.coeffs.iter().map(|c| c * &den).collect()
        })
        .collect();

    let order: Vec<usize> = (0..n).rev().collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for &col in &order {
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let pivot = rows[r][col].clone();
        if pivot.is_zero() {
            return Err(SolverError::DegenerateQ(r));
        }
        let inv = pivot.inv();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let mut forced = BTreeSet::new();
    let mut residual = Vec::new();
    for &(row, col) in &pivots {
        let support: BTreeMap<usize, RationalFunctionQ> = rows[row]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        if support.len() == 1 {
            forced.insert(col);
        } else {
            residual.push(normalize_relation(support));
        }
    }
    residual.sort_by_key(|r| *r.coeffs.keys().next_back().unwrap());
    Ok(ForcedReport {
        d: system.d,
        flags: system.flags,
        forced,
        residual,
    })
}

/// A constraint system with `q` specialised to a rational number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericSystem {
    pub d: usize,
    pub flags: SolverFlags,
    pub q0: BigRational,
    pub rows: Vec<(RowLabel, Vec<BigRational>)>,
}

pub fn instantiate_at_q(
    system: &TraceConstraintSystem,
    q0: &BigRational,
) -> Result<NumericSystem, SolverError> {
    if q0 <= &BigRational::one() {
        return Err(SolverError::InvalidSpecialization(q0.to_string()));
    }
    let rows = system
        .rows
        .iter()
        .map(|row| {
            let values = row
                .coeffs
                .iter()
                .map(|c| {
                    c.eval(q0)
                        .ok_or_else(|| SolverError::InvalidSpecialization(q0.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((row.label, values))
        })
        .collect::<Result<Vec<_>, SolverError>>()?;
    Ok(NumericSystem {
        d: system.d,
        flags: system.flags,
        q0: q0.clone(),
        rows,
    })
}

/// Forced degrees of a specialised system: `D_i` is forced iff the unit
/// vector `e_i` lies in the row space, i.e. appending it keeps the rank.
pub fn solve_forced_numeric(system: &NumericSystem) -> ForcedReport {
    let n = 2 * system.d + 1;
    let matrix: Vec<Vec<BigRational>> = system.rows.iter().map(|(_, r)| r.clone()).collect();
    let base_rank = linalg::rank(&matrix, n);
    let forced: BTreeSet<usize> = (0..n)
        .filter(|&i| {
            let mut extended = matrix.clone();
            let mut unit = vec![BigRational::zero(); n];
            unit[i] = BigRational::one();
            extended.push(unit);
            linalg::rank(&extended, n) == base_rank
        })
        .collect();

    // Relations for unforced pivots, with columns reversed as in the symbolic solver.
    let mut reversed: Vec<Vec<BigRational>> = matrix
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let pivots = linalg::rref(&mut reversed, n);
    let mut residual: Vec<Relation> = reversed
        .iter()
        .take(pivots.len())
        .filter(|row| row.iter().filter(|c| !c.is_zero()).count() > 1)
        .map(|row| {
            let coeffs = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (n - 1 - j, RationalFunctionQ::constant(c.clone())))
                .collect();
            normalize_relation(coeffs)
        })
        .collect();
    residual.sort_by_key(|r| *r.coeffs.keys().next_back().unwrap());
    ForcedReport {
        d: system.d,
        flags: system.flags,
        forced,
        residual,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub label: RowLabel,
    pub n: usize,
    pub value: BigRational,
}

impl RowCheck {
    pub fn satisfied(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheckReport {
    pub checks: Vec<RowCheck>,
}

impl TraceCheckReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(RowCheck::satisfied)
    }

    pub fn violations(&self) -> impl Iterator<Item = &RowCheck> {
        self.checks.iter().filter(|c| !c.satisfied())
    }
}

/// Substitutes `D_i = Tr(phi^n | H^i(X)) - Tr(phi^n | H^i(Y))` into every row
/// for `n = 1..B`. The `n`-th power Frobenius is the Frobenius of `F_{q^n}`,
/// so the rows are evaluated at `q^n`.
pub fn verify_traces_against_system(
    tx: &TraceVector,
    ty: &TraceVector,
    system: &TraceConstraintSystem,
) -> Result<TraceCheckReport, SolverError> {
    if tx.q() != ty.q() {
        return Err(SolverError::DimensionMismatch(format!(
            "q = {} vs {}",
            tx.q(),
            ty.q()
        )));
    }
    if tx.dimension() != system.d || ty.dimension() != system.d {
        return Err(SolverError::DimensionMismatch(format!(
            "dimensions {} and {} vs system {}",
            tx.dimension(),
            ty.dimension(),
            system.d
        )));
    }
    if tx.terms() != ty.terms() {
        return Err(SolverError::DimensionMismatch(format!(
            "{} vs {} powers",
            tx.terms(),
            ty.terms()
        )));
    }
    let q = BigRational::from_integer(tx.q().clone());
    let mut checks = Vec::new();
    for n in 1..=tx.terms() {
        let qn = q.pow(n as i32);
        for row in &system.rows {
            let mut value = BigRational::zero();
            for (i, c) in row.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let diff = tx.trace(i, n) - ty.trace(i, n);
                value += c.eval(&qn).expect("q^n is not a pole") * diff;
            }
            checks.push(RowCheck {
                label: row.label,
                n,
                value,
            });
        }
    }
    Ok(TraceCheckReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(albanese: bool) -> SolverFlags {
        SolverFlags {
            albanese,
            ..SolverFlags::default()
        }
    }

    #[test]
    fn row_counts() {
        let s = build_constraint_system(3, flags(true)).unwrap();
        assert_eq!(s.rows.len(), 8);
        assert_eq!(s.unknowns(), 7);
        let s = build_constraint_system(1, flags(false)).unwrap();
        let labels: Vec<RowLabel> = s.rows.iter().map(|r| r.label).collect();
        assert_eq!(
            labels,
            vec![
                RowLabel::EvenMukai,
                RowLabel::OddMukai,
                RowLabel::HardLefschetz(0),
                RowLabel::Trivial(0),
                RowLabel::Trivial(2)
            ]
        );
        let s = build_constraint_system(2, flags(false)).unwrap();
        assert_eq!((s.rows.len(), s.unknowns()), (6, 5));
        assert_eq!(build_constraint_system(0, flags(true)), Err(SolverError::ZeroDimension));
    }

    #[test]
    fn threefold() {
        let all = solve_forced(&build_constraint_system(3, flags(true)).unwrap()).unwrap();
        assert!(all.all_forced());
        assert!(all.residual.is_empty());

        let no_alb = solve_forced(&build_constraint_system(3, flags(false)).unwrap()).unwrap();
        assert_eq!(no_alb.forced, BTreeSet::from([0, 2, 4, 6]));
        let rendered: Vec<String> = no_alb.residual.iter().map(|r| r.to_string()).collect();
        assert_eq!(rendered, vec!["2q·D_1 + D_3 = 0", "-q^2·D_1 + D_5 = 0"]);
        assert_eq!(no_alb.free_degrees(), BTreeSet::from([1]));
    }

    #[test]
    fn fourfold_and_surface() {
        let s4 = solve_forced(&build_constraint_system(4, flags(true)).unwrap()).unwrap();
        assert_eq!(s4.forced, BTreeSet::from([0, 1, 3, 5, 7, 8]));
        let rendered: Vec<String> = s4.residual.iter().map(|r| r.to_string()).collect();
        assert_eq!(rendered, vec!["2q·D_2 + D_4 = 0", "-q^2·D_2 + D_6 = 0"]);
        let s2 = solve_forced(&build_constraint_system(2, flags(false)).unwrap()).unwrap();
        assert!(s2.all_forced());
    }

    #[test]
    fn numeric_specialization() {
        let cases = [(3, 4, true), (4, 9, true), (1, 2, true), (3, 4, false)];
        for (d, q0, alb) in cases {
            let sys = build_constraint_system(d, flags(alb)).unwrap();
            let num = instantiate_at_q(&sys, &BigRational::from_integer(q0.into())).unwrap();
            let numeric = solve_forced_numeric(&num);
            assert_eq!(numeric.forced, solve_forced(&sys).unwrap().forced, "d={d} q0={q0}");
        }
        let sys = build_constraint_system(1, flags(true)).unwrap();
        assert!(instantiate_at_q(&sys, &BigRational::one()).is_err());
    }

    #[test]
    fn json_shape() {
        let r = solve_forced(&build_constraint_system(3, flags(false)).unwrap()).unwrap();
        assert_eq!(
            r.to_json().to_string(),
            concat!(
                r#"{"d":3,"flags":{"albanese":false,"hard_lefschetz":true,"trivial":true},"#,
                r#""forced":[0,2,4,6],"residual_relations":["#,
                r#"{"coeffs":{"D_1":"2*q^1/1*q^0","D_3":"1*q^0/1*q^0"}},"#,
                r#"{"coeffs":{"D_1":"-1*q^2/1*q^0","D_5":"1*q^0/1*q^0"}}]}"#
            )
        );
    }
}
