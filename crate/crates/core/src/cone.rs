//! Extreme rays of `{x >= 0, A x = 0}` by the double description method.
//!
//! Rays are tracked together with the set of coordinates where they vanish.
//! Two rays on opposite sides of a new hyperplane are adjacent iff no third
//! ray vanishes everywhere both of them do, which is the only adjacency test
//! needed for cones inside the nonnegative orthant.

use crate::scalar::ExactInt;

/// Largest number of coordinates the zero-set bitsets can hold.
pub const MAX_DIM: usize = 128;

#[derive(Clone, Debug)]
struct Ray<T> {
    v: Vec<T>,
    zeros: u128,
}

fn zero_set<T: ExactInt>(v: &[T]) -> u128 {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .fold(0u128, |acc, (i, _)| acc | (1u128 << i))
}

fn normalize<T: ExactInt>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    a.iter()
        .zip(b)
        .try_fold(T::zero(), |acc, (x, y)| acc.checked_add(&x.checked_mul(y)?))
}

/// Primitive integer generators of the extreme rays, sorted. Returns `None`
/// if an intermediate value overflows `T`.
///
/// # Panics
/// If `n` exceeds [`MAX_DIM`].
pub fn extreme_rays_in<T: ExactInt>(rows: &[Vec<T>], n: usize) -> Option<Vec<Vec<T>>> {
    assert!(n <= MAX_DIM, "cone dimension {n} exceeds {MAX_DIM}");
    let mut rays: Vec<Ray<T>> = (0..n)
        .map(|i| {
            let mut v = vec![T::zero(); n];
            v[i] = T::one();
            Ray {
                zeros: zero_set(&v),
                v,
            }
        })
        .collect();
    for a in rows {
        let mut vals = Vec::with_capacity(rays.len());
        for r in &rays {
            vals.push(dot(a, &r.v)?);
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray<T>> = (0..rays.len())
            .filter(|&i| vals[i].is_zero())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros & rays[q].zeros;
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && r.zeros & common == common);
                if blocked {
                    continue;
                }
                let (sp, sq) = (vals[p], T::zero() - vals[q]);
                let mut v = Vec::with_capacity(n);
                for (x, y) in rays[p].v.iter().zip(&rays[q].v) {
                    v.push(sq.checked_mul(x)?.checked_add(&sp.checked_mul(y)?)?);
                }
                let v = normalize(v);
                next.push(Ray {
                    zeros: zero_set(&v),
                    v,
                });
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Some(out)
}

/// [`extreme_rays_in`] for `i64` data, computed in `i128`.
///
/// # Panics
/// On `i128` overflow, which needs coordinates far beyond what a train
/// track cone produces.
pub fn extreme_rays(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let wide: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    extreme_rays_in(&wide, n)
        .expect("extreme ray computation overflowed i128")
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("extreme ray coordinate exceeds i64"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_has_unit_rays() {
        let r = extreme_rays(&[], 3);
        assert_eq!(r, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn single_switch() {
        // x0 = x1 + x2
        let r = extreme_rays(&[vec![1, -1, -1]], 3);
        assert_eq!(r, vec![vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn square_cone() {
        // x0 + x1 = x2 + x3 has four extreme rays
        let r = extreme_rays(&[vec![1, 1, -1, -1]], 4);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|v| v.iter().sum::<i64>() == 2));
    }

    #[test]
    fn pointed_zero_cone() {
        let r = extreme_rays(&[vec![1, 1]], 2);
        assert!(r.is_empty());
    }
}
