#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyembed/linalg.hpp"
#include "polyembed/shape.hpp"

namespace polyembed {

enum class SampleMode { Grid, Uniform, BoundaryBiased };

struct SampleSpec {
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    SampleMode mode = SampleMode::Uniform;
    /// Radius of the disk standing in for each R^2 factor.
    std::optional<double> plane_radius;
};

/// Round factors are drawn at radius <= (1 - kBoundaryShrink) R so that every
/// sample is strictly inside the open shape.
inline constexpr double kBoundaryShrink = 1e-9;

/// Point `index` of the pseudo-random stream for `spec`; independent of how
/// the index range is split across workers.
Vec sample_point(const ShapeDescriptor& shape, const SampleSpec& spec, std::size_t index);

/// spec.count points, every one satisfying contains(shape, p).
std::vector<Vec> sample(const ShapeDescriptor& shape, const SampleSpec& spec);

const char* to_string(SampleMode mode);
SampleMode parse_sample_mode(const std::string& s);

}  // namespace polyembed
