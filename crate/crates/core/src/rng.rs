//! Reproducible, splittable random streams.
//!
//! Every stream is a ChaCha20 generator (`rand_chacha` 0.9) keyed by the
//! 64-bit master seed and positioned on the ChaCha stream given by the
//! substream id. ChaCha20 output is defined bit-for-bit by its spec, so a
//! `(master_seed, substream_id)` pair yields the same sequence on every
//! platform. This is stream format version 1.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Version tag of the stream construction. Bump if [`RngStream::rng`] ever
/// changes its output.
pub const RNG_STREAM_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub substream_id: u64,
}

impl RngStream {
    pub fn new(master_seed: u64, substream_id: u64) -> Self {
        Self {
            master_seed,
            substream_id,
        }
    }

    /// A fresh generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.substream_id);
        rng
    }

    /// Child stream `id` of this stream.
    ///
    /// Children get a new master seed mixed from the parent's pair, so the
    /// children of different parents never share a key.
    pub fn child(&self, id: u64) -> Self {
        let key =
            splitmix64(self.master_seed ^ splitmix64(self.substream_id.wrapping_add(0x9E37_79B9)));
        Self {
            master_seed: key,
            substream_id: id,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
