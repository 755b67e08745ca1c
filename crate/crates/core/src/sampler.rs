//! Uniform spanning-tree sampling through the Picard group.
//!
//! A uniform class of `Pic^0` is drawn coordinate by coordinate, shifted to
//! degree `g`, replaced by its break representative and pulled back along an
//! edge ordering map.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::cycle_map::{eom_inverse_counted, EdgeOrdering};
use crate::divisor::{pic_group_structure, Divisor, PicGroupStructure};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, SpanningTree};
use crate::orientation::break_representative;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    /// Base vertex used for the degree shift and the Picard coordinates.
    pub q: usize,
    pub ordering: EdgeOrdering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub tree: SpanningTree,
    pub divisor: Divisor,
    pub flow_calls: usize,
}

/// A seeded stream of uniform spanning trees. Sample `i` depends only on
/// the seed and `i`.
pub struct Sampler<'a> {
    g: &'a Multigraph,
    cfg: &'a SamplerConfig,
    structure: PicGroupStructure,
    factors: Vec<u64>,
    next: usize,
}

impl<'a> Sampler<'a> {
    pub fn new(g: &'a Multigraph, cfg: &'a SamplerConfig) -> Result<Self> {
        if cfg.count == 0 {
            return Err(Error::Parse("sample count must be at least 1".into()));
        }
        if cfg.q >= g.n() {
            return Err(Error::UnknownVertex(cfg.q.to_string()));
        }
        cfg.ordering.validate(g)?;
        let structure = pic_group_structure(g, cfg.q);
        let factors = structure
            .factors
            .iter()
            .map(|f| {
                f.to_u64()
                    .ok_or_else(|| Error::Parse(format!("invariant factor {f} exceeds 64 bits")))
            })
            .collect::<Result<_>>()?;
        Ok(Sampler {
            g,
            cfg,
            structure,
            factors,
            next: 0,
        })
    }

    pub fn structure(&self) -> &PicGroupStructure {
        &self.structure
    }

    /// The `i`-th sample of the stream.
    pub fn sample(&self, i: usize) -> Result<Sample> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(i as u64);
        let mut d = Divisor::zero(self.g.n());
        for (&f, gen) in self.factors.iter().zip(&self.structure.generators) {
            let r = rng.random_range(0..f) as i64;
            for (x, y) in d.0.iter_mut().zip(gen.values()) {
                *x += r * y;
            }
        }
        d[self.cfg.q] += self.g.genus() as i64;
        let divisor = break_representative(self.g, &d, self.cfg.q)?;
        let (tree, flow_calls) = eom_inverse_counted(self.g, &self.cfg.ordering, &divisor)?;
        Ok(Sample {
            tree,
            divisor,
            flow_calls,
        })
    }
}

impl Iterator for Sampler<'_> {
    type Item = Result<Sample>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.cfg.count {
            return None;
        }
        self.next += 1;
        Some(self.sample(self.next - 1))
    }
}

pub fn sample_spanning_trees(g: &Multigraph, cfg: &SamplerConfig) -> Result<Vec<Sample>> {
    Sampler::new(g, cfg)?.collect()
}

/// `log2 |S(G)|`, the information-theoretic cost of one sample.
pub fn minimal_bits(structure: &PicGroupStructure) -> f64 {
    structure
        .factors
        .iter()
        .map(|f| f.to_f64().unwrap_or(f64::INFINITY).log2())
        .sum()
}

/// Number of ordered edges outside the forest; bounds the flow calls of one
/// inversion.
pub fn flow_call_bound(ord: &EdgeOrdering) -> usize {
    ord.order.len()
}

/// Pearson statistic against the uniform distribution and its upper tail
/// probability.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total == 0 {
        return (0.0, 1.0);
    }
    let expected = total as f64 / k as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((k - 1) as f64).expect("positive degrees of freedom");
    (stat, dist.sf(stat))
}
