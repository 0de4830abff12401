#include "polyembed/certify/obstruction.hpp"

#include <algorithm>
#include <stdexcept>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

namespace {

// rounding slack; a violation smaller than this is treated as equality
constexpr double kRel = 1e-12;

std::vector<double> partial_products(const std::vector<double>& r)
{
    std::vector<double> out;
    double p = 1.0;
    for (double v : r) out.push_back(p *= v);
    return out;
}

}  // namespace

ObstructionVerdict obstruction_check(const std::vector<double>& R, const std::vector<double>& Rp)
{
    if (R.size() != Rp.size())
        throw DimensionMismatch("obstruction check between " + std::to_string(R.size()) + " and " +
                                std::to_string(Rp.size()) + " factors");
    if (R.empty()) throw std::invalid_argument("obstruction check needs at least one factor");
    std::vector<double> a = R, b = Rp;
    for (double v : a)
        if (!(v > 0)) throw std::invalid_argument("radii must be positive");
    for (double v : b)
        if (!(v > 0)) throw std::invalid_argument("radii must be positive");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    ObstructionVerdict v;
    v.source_min_radius = a.front();
    v.target_min_radius = b.front();
    v.source_partial_products = partial_products(a);
    v.target_partial_products = partial_products(b);
    v.source_product = v.source_partial_products.back();
    v.target_product = v.target_partial_products.back();
    v.nonsqueeze_ok = v.source_min_radius <= v.target_min_radius * (1 + kRel);
    v.volume_ok = v.source_product <= v.target_product * (1 + kRel);
    if (!v.nonsqueeze_ok)
        v.violations.push_back("non-squeezing: R1 = " + format_double(v.source_min_radius) + " > R'1 = " +
                               format_double(v.target_min_radius));
    if (!v.volume_ok)
        v.violations.push_back("volume: prod R = " + format_double(v.source_product) + " > prod R' = " +
                               format_double(v.target_product));
    return v;
}

ObstructionVerdict obstruction_check(const ShapeDescriptor& P, const ShapeDescriptor& Pp)
{
    if (P.dimension() != Pp.dimension())
        throw DimensionMismatch("obstruction check between dimensions " + std::to_string(P.dimension()) + " and " +
                                std::to_string(Pp.dimension()));
    const auto a = P.polydisk_radii();
    const auto b = Pp.polydisk_radii();
    if (!a || !b) throw std::invalid_argument("obstruction check needs products of disks and planes");
    return obstruction_check(*a, *b);
}

}  // namespace polyembed
