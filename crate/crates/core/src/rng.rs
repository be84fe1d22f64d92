//! Counter-keyed random streams.
//!
//! Every random draw in a simulation comes from a stream keyed by
//! `(master_seed, point, packet, lane)`. No generator is shared between
//! packets or sweep points, so results do not depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Independent uses of randomness within one packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Lane {
    Payload = 1,
    Fading = 2,
    Thermal = 3,
    Interference = 4,
    BurstSchedule = 5,
    Analytic = 6,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes the stream coordinates into a single 64-bit key.
pub fn stream_key(master_seed: u64, point: u64, packet: u64, lane: Lane) -> u64 {
    let mut h = splitmix64(master_seed);
    h = splitmix64(h ^ point);
    h = splitmix64(h ^ packet);
    splitmix64(h ^ lane as u64)
}

pub fn stream(master_seed: u64, point: u64, packet: u64, lane: Lane) -> SimRng {
    SimRng::seed_from_u64(stream_key(master_seed, point, packet, lane))
}
