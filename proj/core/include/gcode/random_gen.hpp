#pragma once

#include <cstdint>
#include <vector>

#include "graphcode.hpp"
#include "interval_decomp.hpp"
#include "presentation.hpp"

namespace gcode {

/// Deterministic 64-bit generator (splitmix64) with hand-rolled bounded
/// sampling, so seeded corpora are identical across platforms and standard
/// libraries.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi], inclusive; lo <= hi.
    index uniform(index lo, index hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<index>(next() % span);
    }

    /// True with probability num/den.
    bool chance(index num, index den) { return uniform(1, den) <= num; }
};

/// Random homogeneous presentation with up to the given counts and extents.
Presentation random_presentation(Rng& rng, index max_gens, index max_rels,
                                 index max_m, index max_n);

/// Random strict graphcode with distinct bars per height; edges are sampled
/// among entangled pairs of consecutive heights.
Graphcode random_strict_graphcode(Rng& rng, index max_m, index max_n,
                                  index max_bars_per_height);

/// Random single staircase interval on G(m,n).
StaircaseInterval random_staircase(Rng& rng, index m, index n);

/// A direct sum of random staircases with distinct bars per height, returned
/// as an EtaSequence in the split basis, together with the summands.
struct StaircaseSum {
    EtaSequence eta;
    std::vector<StaircaseInterval> intervals; // sorted
};
StaircaseSum random_staircase_sum(Rng& rng, index max_intervals, index m, index n);

/// Applies up to `ops` random entangled column/row additions together with
/// their companion operations, i.e. isomorphisms of the module, mixing the
/// basis without changing the isomorphism type.
void scramble_eta(EtaSequence& s, Rng& rng, index ops);

} // namespace gcode
