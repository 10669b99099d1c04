use std::cmp::Ordering;

use super::{orientation, Point};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Sizes of the longest cap and the longest cup in a point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapCupProfile {
    pub cap: usize,
    pub cup: usize,
}

/// Longest chain over indices `0..k` (sorted by `x`) whose consecutive turns
/// all have the sign `turn` (`1` for cups, `-1` for caps). `apart(i, j)` says
/// whether two points may both belong to a chain.
#[allow(clippy::needless_range_loop)]
fn longest_chain_by<E>(
    k: usize,
    turn: i8,
    apart: impl Fn(usize, usize) -> bool,
    orient: impl Fn(usize, usize, usize) -> std::result::Result<i8, E>,
) -> std::result::Result<usize, E> {
    if k <= 1 {
        return Ok(k);
    }
    // best[i][j]: longest chain ending with the step i -> j
    let mut best = vec![vec![0usize; k]; k];
    let mut longest = 1;
    for j in 0..k {
        for i in 0..j {
            if !apart(i, j) {
                continue;
            }
            best[i][j] = 2;
            for h in 0..i {
                if best[h][i] > 0 && apart(h, j) && orient(h, i, j)? == turn {
                    best[i][j] = best[i][j].max(best[h][i] + 1);
                }
            }
            longest = longest.max(best[i][j]);
        }
    }
    Ok(longest)
}

/// Longest cap and cup; two points count as both a 2-cap and a 2-cup.
pub fn cap_cup_profile(points: &[Point]) -> Result<CapCupProfile> {
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort_by(|a, b| a.x.cmp(&b.x));
    if sorted.windows(2).any(|w| w[0].x == w[1].x) {
        return Err(Error::InvalidInput("cap/cup profile needs distinct x-coordinates".into()));
    }
    let k = sorted.len();
    let orient = |h: usize, i: usize, j: usize| Ok::<i8, Error>(orientation(sorted[h], sorted[i], sorted[j]));
    Ok(CapCupProfile {
        cap: longest_chain_by(k, -1, |_, _| true, orient)?,
        cup: longest_chain_by(k, 1, |_, _| true, orient)?,
    })
}

/// The profile of points known only through certified boxes. Points whose
/// `x`-intervals overlap are treated as vertically aligned and never share a
/// chain; `None` when some needed orientation is not yet certain.
pub fn cap_cup_profile_boxes(boxes: &[(Interval, Interval)]) -> Option<CapCupProfile> {
    let mut order: Vec<usize> = (0..boxes.len()).collect();
    order.sort_by(|&a, &b| boxes[a].0.mid_f64().total_cmp(&boxes[b].0.mid_f64()));
    let b: Vec<&(Interval, Interval)> = order.iter().map(|&i| &boxes[i]).collect();
    let apart = |i: usize, j: usize| b[i].0.compare(&b[j].0) == Some(Ordering::Less);
    let orient = |h: usize, i: usize, j: usize| {
        let (ux, uy) = (b[i].0.sub(&b[h].0), b[i].1.sub(&b[h].1));
        let (vx, vy) = (b[j].0.sub(&b[h].0), b[j].1.sub(&b[h].1));
        match ux.mul(&vy).sub(&uy.mul(&vx)).sign() {
            Some(Ordering::Greater) => Ok(1),
            Some(Ordering::Less) => Ok(-1),
            _ => Err(()),
        }
    };
    let k = b.len();
    Some(CapCupProfile {
        cap: longest_chain_by(k, -1, apart, orient).ok()?,
        cup: longest_chain_by(k, 1, apart, orient).ok()?,
    })
}

/// Whether every pair of boxes is separated in `x`.
pub fn boxes_separated_in_x(boxes: &[(Interval, Interval)]) -> bool {
    (0..boxes.len()).all(|i| (i + 1..boxes.len()).all(|j| boxes[i].0.compare(&boxes[j].0).is_some_and(|o| o != Ordering::Equal)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(points: &[Point]) -> CapCupProfile {
        let mut sorted = points.to_vec();
        sorted.sort_by(|a, b| a.x.cmp(&b.x));
        let k = sorted.len();
        let mut out = CapCupProfile { cap: k.min(2), cup: k.min(2) };
        for mask in 0u32..(1 << k) {
            let sub: Vec<&Point> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| &sorted[i]).collect();
            if sub.len() < 3 {
                continue;
            }
            let turns: Vec<i8> = sub.windows(3).map(|w| orientation(w[0], w[1], w[2])).collect();
            if turns.iter().all(|&t| t == 1) {
                out.cup = out.cup.max(sub.len());
            }
            if turns.iter().all(|&t| t == -1) {
                out.cap = out.cap.max(sub.len());
            }
        }
        out
    }

    #[test]
    fn three_point_cup() {
        let p = [Point::from_ints(0, 0), Point::from_ints(1, -1), Point::from_ints(2, 0)];
        assert_eq!(cap_cup_profile(&p).unwrap(), CapCupProfile { cap: 2, cup: 3 });
    }

    #[test]
    fn duplicate_x_is_rejected() {
        let p = [Point::from_ints(0, 0), Point::from_ints(0, 1), Point::from_ints(2, 0)];
        assert!(cap_cup_profile(&p).is_err());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        for trial in 0..300 {
            let k = 1 + trial % 10;
            let mut xs: Vec<i64> = Vec::new();
            while xs.len() < k {
                let x = rng.gen_range(-50..50);
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            let pts: Vec<Point> = xs.iter().map(|&x| Point::from_ints(x, rng.gen_range(-50..50))).collect();
            assert_eq!(cap_cup_profile(&pts).unwrap(), brute_force(&pts), "trial {trial}");
        }
    }
}
