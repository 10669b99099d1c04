use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ConvexDrawing, Point};

const RADIUS: f64 = (1u64 << 20) as f64;

/// A seeded random convex drawing: integer points near a large circle, each
/// coordinate nudged by a small fraction, retried until strictly convex.
pub fn random_convex_drawing(n: u32, seed: u64) -> ConvexDrawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut coord = |v: f64| {
            let den: i64 = rng.gen_range(1..=7);
            let nudge: i64 = rng.gen_range(0..den);
            BigRational::new(BigInt::from((v * RADIUS).round() as i64 * den + nudge), BigInt::from(den))
        };
        let points: Vec<Point> = angles.iter().map(|&a| Point::new(coord(a.cos()), coord(a.sin()))).collect();
        if let Ok(d) = ConvexDrawing::rational(points) {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_convex() {
        for n in [1u32, 3, 7, 12] {
            let a = random_convex_drawing(n, 42);
            assert_eq!(a, random_convex_drawing(n, 42));
            assert_eq!(a.n(), n);
        }
        assert_ne!(random_convex_drawing(7, 1), random_convex_drawing(7, 2));
    }
}
