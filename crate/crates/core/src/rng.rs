//! Seeded ChaCha streams. One seed fans out into independent streams so the
//! optimizer, the sampler and replicate generators never share draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Optimizer,
    Sampling,
    Generator,
    Shuffle,
    /// Replicate `i` of a repeated experiment.
    Replicate(u64),
}

impl Stream {
    fn id(self) -> u64 {
        match self {
            Stream::Optimizer => 1,
            Stream::Sampling => 2,
            Stream::Generator => 3,
            Stream::Shuffle => 4,
            Stream::Replicate(i) => 1 << 32 | i,
        }
    }
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream.id());
    rng
}

/// Child seed for replicate `i`, derived by counter from `seed`.
pub fn replicate_seed(seed: u64, i: u64) -> u64 {
    use rand::RngCore;
    stream_rng(seed, Stream::Replicate(i)).next_u64()
}
