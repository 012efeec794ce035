//! The sets `L_a(alpha, beta, r)` of curves `gamma` with
//! `max(a i(gamma, alpha), i(gamma, beta) / (a i(alpha, beta))) <= r`.

use num_traits::FromPrimitive;

use super::{CurveGraphIndex, GraphError};
use crate::scalar::{from_int, Exact};
use crate::surface::{intersection_number_multi, MultiCurve, NormalCurve, Triangulation};

/// Membership of `gamma` in `L_a(alpha, beta, r)`, in exact arithmetic over
/// any ordered field `T`.
pub fn in_l_a<T: Exact + FromPrimitive>(
    chart: &Triangulation,
    gamma: &NormalCurve,
    alpha: &MultiCurve,
    beta: &MultiCurve,
    a: &T,
    r: &T,
) -> Result<bool, GraphError> {
    let iab = intersection_number_multi(chart, alpha, beta)?;
    let g = MultiCurve::single(gamma.clone());
    let iga = intersection_number_multi(chart, &g, alpha)?;
    let igb = intersection_number_multi(chart, &g, beta)?;
    membership(iga, igb, iab, a, r)
}

/// The membership inequality from the three intersection numbers.
pub fn membership<T: Exact + FromPrimitive>(iga: u64, igb: u64, iab: u64, a: &T, r: &T) -> Result<bool, GraphError> {
    if iab == 0 {
        return Err(GraphError::DegeneratePair);
    }
    if !a.is_positive() || !r.is_positive() {
        return Err(GraphError::NonPositive);
    }
    let int = |x: u64| from_int::<T>(i64::try_from(x).expect("intersection number fits i64"));
    let first = a.clone() * int(iga);
    let second = int(igb) / (a.clone() * int(iab));
    Ok(first.max(second) <= *r)
}

/// Members of `L_a` for one value of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry<T> {
    pub a: T,
    /// Universe indices of the members.
    pub members: Vec<usize>,
    /// Largest BFS distance between two members, and whether every pair was
    /// certified.
    pub diameter: Option<(u32, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanL<T> {
    pub entries: Vec<ScanEntry<T>>,
}

impl<T> ScanL<T> {
    pub fn all_nonempty(&self) -> bool {
        self.entries.iter().all(|e| !e.members.is_empty())
    }

    pub fn max_diameter(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.diameter.map(|d| d.0)).max()
    }
}

/// Exhaustive membership over the universe for every `a` in the grid.
pub fn scan_l<T: Exact + FromPrimitive>(
    index: &CurveGraphIndex,
    alpha: &MultiCurve,
    beta: &MultiCurve,
    r: &T,
    a_grid: &[T],
    cap: u32,
) -> Result<ScanL<T>, GraphError> {
    let chart = index.chart();
    let iab = intersection_number_multi(chart, alpha, beta)?;
    if iab == 0 {
        return Err(GraphError::DegeneratePair);
    }
    let pairs: Vec<(u64, u64)> = index
        .universe()
        .iter()
        .map(|g| {
            let m = MultiCurve::single(g.clone());
            Ok((
                intersection_number_multi(chart, &m, alpha)?,
                intersection_number_multi(chart, &m, beta)?,
            ))
        })
        .collect::<Result<_, GraphError>>()?;
    let mut entries = Vec::with_capacity(a_grid.len());
    for a in a_grid {
        let mut members = Vec::new();
        for (k, &(iga, igb)) in pairs.iter().enumerate() {
            if membership(iga, igb, iab, a, r)? {
                members.push(k);
            }
        }
        let mut diameter: Option<(u32, bool)> = None;
        for (n, &x) in members.iter().enumerate() {
            for &y in &members[n + 1..] {
                let u = index.universe();
                let d = match index.distance(&u[x], &u[y], cap) {
                    Ok(d) => (d.value, d.certified()),
                    Err(GraphError::Unreachable(c)) => (c + 1, false),
                    Err(e) => return Err(e),
                };
                diameter = Some(match diameter {
                    None => d,
                    Some(old) => (old.0.max(d.0), old.1 && d.1),
                });
            }
        }
        if diameter.is_none() && !members.is_empty() {
            diameter = Some((0, true));
        }
        entries.push(ScanEntry {
            a: a.clone(),
            members,
            diameter,
        });
    }
    Ok(ScanL { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn membership_algebra() {
        let one = Rational::from(1);
        // i(gamma, alpha) = 0 and i(gamma, beta) = i(alpha, beta): max is 1/a
        let a = Rational::new(1, 2);
        assert!(membership(0, 3, 3, &a, &Rational::from(2)).unwrap());
        assert!(!membership(0, 3, 3, &a, &Rational::new(19, 10)).unwrap());
        assert_eq!(membership(1, 1, 0, &one, &one), Err(GraphError::DegeneratePair));
        assert_eq!(membership(1, 1, 1, &Rational::from(0), &one), Err(GraphError::NonPositive));
    }

    #[test]
    fn works_over_wider_rationals() {
        let a = num_rational::Ratio::<i128>::new(3, 7);
        let r = num_rational::Ratio::<i128>::from(2);
        assert!(membership(2, 1, 5, &a, &r).unwrap());
    }
}
