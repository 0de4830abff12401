#pragma once

#include <cstdint>

namespace polyembed {

/// Counter-based generator: the stream for sample `index` depends only on
/// (seed, index), so workers drawing disjoint index ranges reproduce the
/// serial sequence exactly.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();
    /// Uniform in the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace polyembed
