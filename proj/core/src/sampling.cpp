#include "polyembed/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polyembed/errors.hpp"
#include "polyembed/rng.hpp"

namespace polyembed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radial fraction in (0, 1 - shrink) for a uniform point of a 2k-ball, or a
// fraction concentrated in the outer shell when biased.
double radial_fraction(CounterRng& rng, int dim, bool biased)
{
    const double top = 1.0 - kBoundaryShrink;
    if (biased && rng.uniform() < 0.5) return rng.uniform(0.99, top);
    return top * std::pow(rng.uniform(), 1.0 / dim);
}

Vec sample_round(CounterRng& rng, int pairs, double radius, bool biased)
{
    Vec v(2 * pairs);
    if (pairs == 1) {
        const double theta = kTwoPi * rng.uniform();
        v << std::cos(theta), std::sin(theta);
    } else {
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
        v.normalize();
    }
    return v * (radius * radial_fraction(rng, 2 * pairs, biased));
}

Vec sample_factor(const ShapeFactor& f, CounterRng& rng, const SampleSpec& spec)
{
    const bool biased = spec.mode == SampleMode::BoundaryBiased;
    if (const auto* d = std::get_if<Disk2>(&f)) return sample_round(rng, 1, d->radius, biased);
    if (const auto* b = std::get_if<Ball>(&f)) return sample_round(rng, b->pairs, b->radius, biased);
    if (const auto* t = std::get_if<TranslatedDisk2>(&f)) {
        Vec v = sample_round(rng, 1, t->radius, biased);
        v[0] += t->cx;
        v[1] += t->cy;
        return v;
    }
    if (std::holds_alternative<FullPlane>(f)) {
        if (!spec.plane_radius) throw UnboundedShape("sampling an R^2 factor needs a bounding radius override");
        return sample_round(rng, 1, *spec.plane_radius, biased);
    }
    if (const auto* s = std::get_if<Surface>(&f)) {
        const double side = std::sqrt(s->area);
        Vec v(2);
        v << side * rng.uniform(), side * rng.uniform();
        return v;
    }
    const auto& r = std::get<Rectangle>(f);
    Vec v(static_cast<Eigen::Index>(r.sides.size()));
    for (std::size_t i = 0; i < r.sides.size(); ++i) {
        double u = rng.uniform();
        if (biased && rng.uniform() < 0.5) u = (u < 0.5) ? u * 1e-2 : 1.0 - (1.0 - u) * 1e-2;
        v[static_cast<Eigen::Index>(i)] = r.lower[i] + r.sides[i] * u;
    }
    return v;
}

std::vector<Vec> sample_grid(const ShapeDescriptor& shape, const SampleSpec& spec)
{
    const auto [lo, hi] = bounding_box(shape, spec.plane_radius);
    const auto dim = static_cast<int>(lo.size());
    auto m = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(spec.count), 1.0 / dim)));
    for (;; m = m + m / 4 + 1) {
        std::vector<Vec> inside;
        std::size_t total = 1;
        for (int i = 0; i < dim; ++i) total *= m;
        Vec p(dim);
        for (std::size_t cell = 0; cell < total; ++cell) {
            std::size_t c = cell;
            for (int i = 0; i < dim; ++i) {
                const auto k = static_cast<double>(c % m);
                c /= m;
                p[i] = lo[i] + (k + 0.5) * (hi[i] - lo[i]) / static_cast<double>(m);
            }
            if (contains(shape, p)) inside.push_back(p);
        }
        if (inside.size() >= spec.count) {
            // evenly spaced subset in enumeration order
            std::vector<Vec> out;
            out.reserve(spec.count);
            for (std::size_t i = 0; i < spec.count; ++i) {
                const std::size_t j = (2 * i + 1) * inside.size() / (2 * spec.count);
                out.push_back(inside[j]);
            }
            return out;
        }
    }
}

}  // namespace

Vec sample_point(const ShapeDescriptor& shape, const SampleSpec& spec, std::size_t index)
{
    if (spec.mode == SampleMode::Grid) return sample_grid(shape, spec).at(index);
    CounterRng rng(spec.seed, index);
    Vec p(shape.dimension());
    int first = 0;
    for (const auto& f : shape.factors()) {
        scatter_pairs(p, first, sample_factor(f, rng, spec));
        first += factor_pairs(f);
    }
    return p;
}

std::vector<Vec> sample(const ShapeDescriptor& shape, const SampleSpec& spec)
{
    if (spec.count < 1) throw std::invalid_argument("sample count must be at least 1");
    if (spec.mode == SampleMode::Grid) return sample_grid(shape, spec);
    std::vector<Vec> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) out.push_back(sample_point(shape, spec, i));
    return out;
}

const char* to_string(SampleMode mode)
{
    switch (mode) {
    case SampleMode::Grid: return "grid";
    case SampleMode::Uniform: return "uniform";
    case SampleMode::BoundaryBiased: return "boundary";
    }
    return "?";
}

SampleMode parse_sample_mode(const std::string& s)
{
    if (s == "grid") return SampleMode::Grid;
    if (s == "uniform") return SampleMode::Uniform;
    if (s == "boundary") return SampleMode::BoundaryBiased;
    throw ParseError("unknown sampling mode '" + s + "'");
}

}  // namespace polyembed
