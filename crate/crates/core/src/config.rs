/// Tunable limits and strategy choices for the whole pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Seed for every randomized step.
    pub seed: u64,
    /// Good primes factored during inspection; `None` means `max(25, 2n)`.
    pub prime_sample: Option<usize>,
    /// Extra primes tried when no prime with a linear factor was seen;
    /// `None` means `4n`.
    pub linear_prime_budget: Option<usize>,
    /// Largest prime sampled.
    pub max_prime: u64,
    /// Credit `q^(e+f)` from pairs of prime-power cycle types.
    pub pgroup_rule: bool,
    /// Ceiling on any `p`-adic precision exponent.
    pub precision_cap: u32,
    /// Group orders above this are not searched for index-2 subgroups.
    pub index2_budget: u64,
    /// Search-tree nodes allowed in the automorphism backtracker.
    pub node_budget: u64,
    /// Registered wreath intersection strategy (`graph` or `direct`).
    pub intersection: String,
    /// Registered block invariant (`product` or `sum`).
    pub invariant: String,
    /// Subsets tried in Zassenhaus recombination.
    pub recombination_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            prime_sample: None,
            linear_prime_budget: None,
            max_prime: 1 << 16,
            pgroup_rule: true,
            precision_cap: 4096,
            index2_budget: 1_000_000,
            node_budget: 1_000_000,
            intersection: "graph".into(),
            invariant: "product".into(),
            recombination_cap: 1 << 20,
        }
    }
}
