//! Fixed inputs shared by the benchmarks.

use dancing_core::connection::PolynomialConnection;
use dancing_core::sampling::{random_conic_pair, random_connection, rng_for};
use dancing_core::conic::PointConicPair;

pub const POINT4: [f64; 4] = [0.3, -0.4, 0.7, -1.1];

pub fn connection() -> PolynomialConnection {
    random_connection(&mut rng_for(1, 0))
}

pub fn conic_pair() -> PointConicPair {
    random_conic_pair(&mut rng_for(1, 1))
}
