#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "polyembed/linalg.hpp"

namespace polyembed {

/// Uniform hash grid over points of R^d (d <= 8) with cells of side at
/// least h. With a period P the first conjugate pair (coordinates 0 and d/2)
/// is reduced modulo P Z^2 and lookups wrap around, so the index sees every
/// lattice translate of every point.
///
/// Points at (wrapped) distance below h always share or neighbour a cell, so
/// for_each_neighbor misses no candidate pair.
class CollisionIndex {
public:
    CollisionIndex(int dimension, double h, std::optional<double> period = std::nullopt);

    void insert(const std::vector<Vec>& points);

    std::size_t size() const { return points_.size(); }
    double cell_size() const { return h_; }
    const Vec& point(std::size_t i) const { return points_[i]; }

    /// points[a] - points[b] with the first pair moved to the nearest lattice
    /// representative; `shift` receives the lattice vector that was removed.
    Vec wrapped_difference(std::size_t a, std::size_t b, Vec2* shift = nullptr) const;

    /// Calls fn(j, diff, shift) for every j != i whose wrapped distance to
    /// point i is below `radius` (radius <= h).
    template <class Fn>
    void for_each_neighbor(std::size_t i, double radius, Fn&& fn) const
    {
        thread_local std::vector<Key> keys;
        neighbor_keys(i, keys);
        const double r2 = radius * radius;
        const double* pi = points_[i].data();
        for (const auto& key : keys) {
            const auto it = cells_.find(key);
            if (it == cells_.end()) continue;
            for (std::size_t j : it->second) {
                if (j == i) continue;
                // squared wrapped distance with early exit, no allocation
                const double* pj = points_[j].data();
                double s = 0;
                for (int a = 0; a < d_ && s < r2; ++a) {
                    double v = pi[a] - pj[a];
                    if (period_ && (a == 0 || a == d_ / 2)) v -= std::round(v / *period_) * *period_;
                    s += v * v;
                }
                if (s >= r2) continue;
                Vec2 shift;
                const Vec diff = wrapped_difference(i, j, &shift);
                fn(j, diff, shift);
            }
        }
    }

private:
    using Key = std::array<std::int64_t, 8>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };

    Key cell_of(const Vec& reduced) const;
    void neighbor_keys(std::size_t i, std::vector<Key>& keys) const;

    int d_;
    double h_;
    std::optional<double> period_;
    std::int64_t periodic_cells_ = 0;
    double periodic_h_ = 0.0;
    std::vector<Vec> points_;
    std::vector<Vec> reduced_;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

}  // namespace polyembed
