//! Seeded, counter-based randomness.
//!
//! Every random object in the crate (sign vectors, supports, test vectors,
//! Gaussian baselines) is drawn from a [`SplitMix64`] stream whose seed is
//! derived from a master seed with [`derive_seed`]. The generator is the
//! published SplitMix64 algorithm (Steele, Lea, Flood 2014):
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! Output `i` depends only on `seed + (i + 1) * GAMMA`, so a stream can be
//! reproduced in any language from the seed alone.

use rand::{RngCore, SeedableRng};

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Stream roles used when splitting a master seed into child seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Role {
    /// The sign vector applied right after a transform (ε).
    Eps = 0,
    /// The sign vector applied first inside a block (ε′).
    EpsPrime = 1,
    /// Random subsampling set.
    Omega = 2,
    /// Dense Gaussian baseline entries.
    Gaussian = 3,
    /// Per-instance operator draw in experiments.
    Operator = 4,
    /// Per-instance signal or probe vector.
    Signal = 5,
    /// Per-trial stream in Monte-Carlo loops.
    Trial = 6,
}

/// The SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for `(parent, index, role)`:
///
/// ```text
/// h = mix64(parent ^ 0x6A09E667F3BCC909)
/// h = mix64(h ^ index * GAMMA)
/// h = mix64(h ^ (role + 0xBB67AE8584CAA73B))
/// ```
pub fn derive_seed(parent: u64, index: u64, role: Role) -> u64 {
    let mut h = mix64(parent ^ 0x6A09_E667_F3BC_C909);
    h = mix64(h ^ index.wrapping_mul(GAMMA));
    mix64(h ^ (role as u64).wrapping_add(0xBB67_AE85_84CA_A73B))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Stream for the `index`-th child of `parent` in the given role.
    pub fn stream(parent: u64, index: u64, role: Role) -> Self {
        Self::new(derive_seed(parent, index, role))
    }

    #[inline]
    pub fn next_word(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }
}

impl RngCore for SplitMix64 {
    fn next_u32(&mut self) -> u32 {
        (self.next_word() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.next_word()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        rand::rand_core::impls::fill_bytes_via_next(self, dst)
    }
}

impl SeedableRng for SplitMix64 {
    type Seed = [u8; 8];

    fn from_seed(seed: Self::Seed) -> Self {
        Self::new(u64::from_le_bytes(seed))
    }

    fn seed_from_u64(state: u64) -> Self {
        Self::new(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_reference_vectors() {
        // Reference outputs of SplitMix64 seeded with 1234567.
        let mut rng = SplitMix64::new(1234567);
        let expected = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for e in expected {
            assert_eq!(rng.next_word(), e);
        }
    }

    #[test]
    fn derived_seeds_differ_by_role_and_index() {
        let a = derive_seed(42, 0, Role::Eps);
        let b = derive_seed(42, 0, Role::EpsPrime);
        let c = derive_seed(42, 1, Role::Eps);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(42, 0, Role::Eps));
    }
}
