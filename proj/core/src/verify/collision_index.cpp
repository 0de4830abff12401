#include "polyembed/verify/collision_index.hpp"

#include <algorithm>
#include <stdexcept>

#include "polyembed/errors.hpp"

namespace polyembed {

CollisionIndex::CollisionIndex(int dimension, double h, std::optional<double> period)
    : d_(dimension), h_(h), period_(period)
{
    if (d_ < 1 || d_ > 8) throw std::invalid_argument("collision index supports dimensions 1 to 8");
    if (!(h > 0)) throw std::invalid_argument("collision cell size must be positive");
    if (period_) {
        if (d_ % 2 != 0) throw DimensionMismatch("a lattice period needs an even dimension");
        if (!(*period_ > 0)) throw std::invalid_argument("lattice period must be positive");
        periodic_cells_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(*period_ / h_)));
        periodic_h_ = *period_ / static_cast<double>(periodic_cells_);
    }
}

std::size_t CollisionIndex::KeyHash::operator()(const Key& k) const noexcept
{
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

CollisionIndex::Key CollisionIndex::cell_of(const Vec& reduced) const
{
    Key k{};
    for (int a = 0; a < d_; ++a) {
        const bool wrapped = period_ && (a == 0 || a == d_ / 2);
        const double side = wrapped ? periodic_h_ : h_;
        auto c = static_cast<std::int64_t>(std::floor(reduced[a] / side));
        if (wrapped) c = std::clamp<std::int64_t>(c, 0, periodic_cells_ - 1);
        k[static_cast<std::size_t>(a)] = c;
    }
    return k;
}

void CollisionIndex::neighbor_keys(std::size_t i, std::vector<Key>& keys) const
{
    keys.clear();
    const Key home = cell_of(reduced_[i]);
    std::int64_t total = 1;
    for (int a = 0; a < d_; ++a) total *= 3;
    for (std::int64_t code = 0; code < total; ++code) {
        Key k = home;
        std::int64_t c = code;
        for (int a = 0; a < d_; ++a) {
            auto& v = k[static_cast<std::size_t>(a)];
            v += (c % 3) - 1;
            c /= 3;
            if (period_ && (a == 0 || a == d_ / 2)) v = ((v % periodic_cells_) + periodic_cells_) % periodic_cells_;
        }
        keys.push_back(k);
    }
    if (period_ && periodic_cells_ < 3) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
}

void CollisionIndex::insert(const std::vector<Vec>& points)
{
    for (const auto& p : points) {
        if (p.size() != d_) throw DimensionMismatch("collision index point has the wrong dimension");
        Vec r = p;
        if (period_) {
            for (int a : {0, d_ / 2}) {
                r[a] -= *period_ * std::floor(r[a] / *period_);
                if (r[a] >= *period_) r[a] = 0.0;
            }
        }
        const std::size_t idx = points_.size();
        points_.push_back(p);
        reduced_.push_back(r);
        cells_[cell_of(r)].push_back(idx);
    }
}

Vec CollisionIndex::wrapped_difference(std::size_t a, std::size_t b, Vec2* shift) const
{
    Vec diff = points_[a] - points_[b];
    Vec2 s = Vec2::Zero();
    if (period_) {
        const double P = *period_;
        const int cols[2] = {0, d_ / 2};
        for (int t = 0; t < 2; ++t) {
            const double m = std::round(diff[cols[t]] / P);
            diff[cols[t]] -= m * P;
            s[t] = m;
        }
    }
    if (shift) *shift = s;
    return diff;
}

}  // namespace polyembed
