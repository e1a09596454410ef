//! Table-driven particle methods over small byte domains.
//!
//! Every behavior is an explicit input/output table except the neighborhood,
//! which is derived from a pinned hash of the current state so that it
//! genuinely depends on partially interacted particle values. Randomly
//! generated instances of [`TablePm`] drive the differential tests between
//! the fold-based engine and the nested-loop transcription.
//!
//! Generated tables keep particle counts bounded over a run: the particle
//! values split into a volatile prefix and a stable rest, interaction
//! outputs and evolve children always land in the stable part, and only
//! volatile values (which can then occur in the instance alone) may fan out
//! into two children. Destruction stays possible everywhere.

use crate::engine::{Domain, ParticleMethod, PmState};
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};

/// A particle method whose behaviors are lookup tables over `0..|G|` and
/// `0..|P|` byte values.
#[derive(Clone, Debug)]
pub struct TablePm {
    global_count: u8,
    particle_count: u8,
    stop: Vec<bool>,
    interact: Vec<(u8, u8)>,
    evolve: Vec<(u8, Vec<u8>)>,
    evolve_global: Vec<u8>,
    neighbor_seed: u64,
}

fn mix(mut x: u64) -> u64 {
    x ^= x >> 33;
    x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
    x ^= x >> 33;
    x = x.wrapping_mul(0xc4ce_b9fe_1a85_ec53);
    x ^ (x >> 33)
}

impl TablePm {
    /// Generates a random small method plus a random instance, both fully
    /// determined by `seed`.
    pub fn random(seed: u64) -> (TablePm, PmState<u8, u8>) {
        fn draw(rng: &mut ChaCha8Rng, n: u64) -> u8 {
            (rng.next_u64() % n) as u8
        }
        let rng = &mut ChaCha8Rng::seed_from_u64(seed);

        let global_count = draw(rng, 4) + 1;
        let particle_count = draw(rng, 4) + 1;
        // Values below the split may double when evolved; values at or above
        // it form the emission-closed stable part.
        let volatile_count = draw(rng, particle_count as u64);
        let stable_count = (particle_count - volatile_count) as u64;
        let draw_stable =
            |rng: &mut ChaCha8Rng| volatile_count + (rng.next_u64() % stable_count) as u8;

        let stop = (0..global_count).map(|_| draw(rng, 6) == 0).collect();
        let interact = {
            let mut table = Vec::new();
            for _ in 0..global_count as usize * (particle_count as usize).pow(2) {
                let pj = draw_stable(rng);
                let pk = draw_stable(rng);
                table.push((pj, pk));
            }
            table
        };
        let evolve = {
            let mut table = Vec::new();
            for _ in 0..global_count {
                for p in 0..particle_count {
                    let next_g = draw(rng, global_count as u64);
                    let emitted = match (p < volatile_count, draw(rng, 10)) {
                        (_, 0 | 1) => 0,
                        (true, 2..=4) => 2,
                        _ => 1,
                    };
                    let children = (0..emitted).map(|_| draw_stable(rng)).collect();
                    table.push((next_g, children));
                }
            }
            table
        };
        let evolve_global = (0..global_count)
            .map(|_| draw(rng, global_count as u64))
            .collect();
        let neighbor_seed = rng.next_u64();

        let instance_len = draw(rng, 6);
        let particles = (0..instance_len)
            .map(|_| draw(rng, particle_count as u64))
            .collect();
        let global = draw(rng, global_count as u64);

        (
            TablePm {
                global_count,
                particle_count,
                stop,
                interact,
                evolve,
                evolve_global,
                neighbor_seed,
            },
            PmState::new(global, particles),
        )
    }

    fn state_hash(&self, state: &PmState<u8, u8>, j: usize) -> u64 {
        let mut h = mix(self.neighbor_seed ^ j as u64);
        h = mix(h ^ state.global as u64);
        for &p in &state.particles {
            h = mix(h ^ (p as u64 + 0x9e37_79b9));
        }
        h
    }
}

impl ParticleMethod for TablePm {
    type Global = u8;
    type Particle = u8;

    fn neighborhood(&self, state: &PmState<u8, u8>, j: usize) -> Vec<usize> {
        let len = state.len();
        if len <= 1 {
            return Vec::new();
        }
        let mut h = self.state_hash(state, j);
        let count = (h % 4) as usize;
        (0..count)
            .map(|_| {
                h = mix(h);
                // Pick among the len-1 indices distinct from j.
                let pick = (h % (len as u64 - 1)) as usize + 1;
                if pick >= j {
                    pick + 1
                } else {
                    pick
                }
            })
            .collect()
    }

    fn stop(&self, g: &u8) -> bool {
        self.stop[*g as usize]
    }

    fn interact(&self, g: &u8, pj: &u8, pk: &u8) -> (u8, u8) {
        let idx = (*g as usize * self.particle_count as usize + *pj as usize)
            * self.particle_count as usize
            + *pk as usize;
        self.interact[idx]
    }

    fn evolve(&self, g: &u8, pj: &u8) -> (u8, Vec<u8>) {
        let (g_next, children) =
            &self.evolve[*g as usize * self.particle_count as usize + *pj as usize];
        (*g_next, children.clone())
    }

    fn evolve_global(&self, g: &u8) -> u8 {
        self.evolve_global[*g as usize]
    }

    fn render_global(&self, g: &u8) -> String {
        g.to_string()
    }

    fn render_particle(&self, p: &u8) -> String {
        p.to_string()
    }

    fn global_domain(&self) -> Domain<u8> {
        Domain::Finite((0..self.global_count).collect())
    }

    fn particle_domain(&self) -> Domain<u8> {
        Domain::Finite((0..self.particle_count).collect())
    }

    fn may_create_particles(&self) -> bool {
        self.evolve.iter().any(|(_, children)| children.len() > 1)
    }

    fn may_destroy_particles(&self) -> bool {
        self.evolve.iter().any(|(_, children)| children.is_empty())
    }
}
