use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

/// Seed plus stream selector for a ChaCha20 generator.
///
/// Equal `(seed, stream_id)` pairs reproduce identical sequences. Distinct
/// stream ids under one seed give non-overlapping keystreams, which is what
/// parallel replications use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RngState {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngState {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    pub fn with_stream(self, stream_id: u64) -> Self {
        Self { stream_id, ..self }
    }

    pub fn generator(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
