#include "polyembed/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polyembed/errors.hpp"

namespace polyembed {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

double ball_volume(int k, double R)
{
    // pi^k R^{2k} / k!
    return std::pow(kPi, k) * std::pow(R, 2 * k) / std::tgamma(k + 1.0);
}

bool close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

int factor_pairs(const ShapeFactor& f)
{
    return std::visit(overloaded{
                          [](const Ball& b) { return b.pairs; },
                          [](const Rectangle& r) { return static_cast<int>(r.sides.size() / 2); },
                          [](const auto&) { return 1; },
                      },
                      f);
}

ShapeDescriptor::ShapeDescriptor(std::vector<ShapeFactor> factors) : factors_(std::move(factors))
{
    for (const auto& f : factors_) {
        std::visit(overloaded{
                       [](const Disk2& d) {
                           if (!(d.radius > 0)) throw std::invalid_argument("disk radius must be positive");
                       },
                       [](const Ball& b) {
                           if (b.pairs < 1 || !(b.radius > 0))
                               throw std::invalid_argument("ball needs dimension >= 2 and positive radius");
                       },
                       [](const Rectangle& r) {
                           if (r.sides.empty() || r.sides.size() % 2 != 0 || r.lower.size() != r.sides.size())
                               throw DimensionMismatch("rectangle factor needs an even number of sides");
                           for (double s : r.sides)
                               if (!(s > 0)) throw std::invalid_argument("rectangle sides must be positive");
                       },
                       [](const Surface& s) {
                           if (!(s.area > 0)) throw std::invalid_argument("surface area must be positive");
                       },
                       [](const FullPlane&) {},
                       [](const TranslatedDisk2& d) {
                           if (!(d.radius > 0)) throw std::invalid_argument("disk radius must be positive");
                       },
                   },
                   f);
        pairs_ += factor_pairs(f);
    }
}

ShapeDescriptor ShapeDescriptor::polydisk(std::vector<double> radii)
{
    std::sort(radii.begin(), radii.end());
    std::vector<ShapeFactor> f;
    f.reserve(radii.size());
    for (double r : radii) f.emplace_back(Disk2{r});
    return ShapeDescriptor(std::move(f));
}

ShapeDescriptor ShapeDescriptor::ball(int pairs, double radius)
{
    return ShapeDescriptor({Ball{pairs, radius}});
}

ShapeDescriptor ShapeDescriptor::cylinder(double radius)
{
    return ShapeDescriptor({Disk2{radius}, FullPlane{}});
}

ShapeDescriptor ShapeDescriptor::plane(int pairs)
{
    return ShapeDescriptor(std::vector<ShapeFactor>(static_cast<std::size_t>(pairs), FullPlane{}));
}

ShapeDescriptor ShapeDescriptor::rectangle(std::vector<double> sides)
{
    std::vector<double> lower(sides.size(), 0.0);
    return ShapeDescriptor({Rectangle{std::move(lower), std::move(sides)}});
}

ShapeDescriptor ShapeDescriptor::box(std::vector<double> lower, std::vector<double> sides)
{
    return ShapeDescriptor({Rectangle{std::move(lower), std::move(sides)}});
}

bool ShapeDescriptor::bounded() const
{
    return std::none_of(factors_.begin(), factors_.end(),
                        [](const ShapeFactor& f) { return std::holds_alternative<FullPlane>(f); });
}

bool ShapeDescriptor::is_polydisk() const
{
    return !factors_.empty() && std::all_of(factors_.begin(), factors_.end(), [](const ShapeFactor& f) {
        return std::holds_alternative<Disk2>(f);
    });
}

std::optional<std::vector<double>> ShapeDescriptor::polydisk_radii() const
{
    std::vector<double> radii;
    for (const auto& f : factors_) {
        if (const auto* d = std::get_if<Disk2>(&f))
            radii.push_back(d->radius);
        else if (std::holds_alternative<FullPlane>(f))
            radii.push_back(std::numeric_limits<double>::infinity());
        else
            return std::nullopt;
    }
    std::sort(radii.begin(), radii.end());
    return radii;
}

ShapeDescriptor ShapeDescriptor::times(const ShapeDescriptor& other) const
{
    auto f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return ShapeDescriptor(std::move(f));
}

double factor_volume(const ShapeFactor& f)
{
    return std::visit(overloaded{
                          [](const Disk2& d) { return kPi * d.radius * d.radius; },
                          [](const Ball& b) { return ball_volume(b.pairs, b.radius); },
                          [](const Rectangle& r) {
                              double v = 1.0;
                              for (double s : r.sides) v *= s;
                              return v;
                          },
                          [](const Surface& s) { return s.area; },
                          [](const FullPlane&) -> double {
                              throw UnboundedShape("volume of a shape with an R^2 factor is infinite");
                          },
                          [](const TranslatedDisk2& d) { return kPi * d.radius * d.radius; },
                      },
                      f);
}

double volume(const ShapeDescriptor& shape)
{
    double v = 1.0;
    for (const auto& f : shape.factors()) v *= factor_volume(f);
    return v;
}

bool factor_contains(const ShapeFactor& f, const Vec& local)
{
    return std::visit(overloaded{
                          [&](const Disk2& d) { return local.squaredNorm() < d.radius * d.radius; },
                          [&](const Ball& b) { return local.squaredNorm() < b.radius * b.radius; },
                          [&](const Rectangle& r) {
                              // local order is (x.., y..); sides are listed in the same order
                              for (Eigen::Index i = 0; i < local.size(); ++i) {
                                  const auto k = static_cast<std::size_t>(i);
                                  if (!(local[i] > r.lower[k] && local[i] < r.lower[k] + r.sides[k])) return false;
                              }
                              return true;
                          },
                          [&](const Surface& s) {
                              const double side = std::sqrt(s.area);
                              const double x = local[0];
                              const double y = local[1];
                              if (!(x >= 0 && x < side && y >= 0 && y < side)) return false;
                              return !(x == 0 && y == 0);
                          },
                          [&](const FullPlane&) { return local.allFinite(); },
                          [&](const TranslatedDisk2& d) {
                              const double dx = local[0] - d.cx;
                              const double dy = local[1] - d.cy;
                              return dx * dx + dy * dy < d.radius * d.radius;
                          },
                      },
                      f);
}

Vec gather_pairs(const Vec& p, int first, int count)
{
    const Eigen::Index n = p.size() / 2;
    Vec local(2 * count);
    local.head(count) = p.segment(first, count);
    local.tail(count) = p.segment(n + first, count);
    return local;
}

void scatter_pairs(Vec& p, int first, const Vec& local)
{
    const Eigen::Index n = p.size() / 2;
    const Eigen::Index count = local.size() / 2;
    p.segment(first, count) = local.head(count);
    p.segment(n + first, count) = local.tail(count);
}

bool contains(const ShapeDescriptor& shape, const Vec& p)
{
    if (p.size() != shape.dimension())
        throw DimensionMismatch("point of dimension " + std::to_string(p.size()) + " tested against a shape of dimension " +
                                std::to_string(shape.dimension()));
    int first = 0;
    for (const auto& f : shape.factors()) {
        const int k = factor_pairs(f);
        if (!factor_contains(f, gather_pairs(p, first, k))) return false;
        first += k;
    }
    return true;
}

ShapeDescriptor scale_shape(const ShapeDescriptor& shape, double C)
{
    if (!(C > 0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<ShapeFactor> out;
    out.reserve(shape.factors().size());
    for (const auto& f : shape.factors()) {
        out.push_back(std::visit(overloaded{
                                     [&](const Disk2& d) -> ShapeFactor { return Disk2{d.radius * C}; },
                                     [&](const Ball& b) -> ShapeFactor { return Ball{b.pairs, b.radius * C}; },
                                     [&](const Rectangle& r) -> ShapeFactor {
                                         Rectangle s = r;
                                         for (auto& v : s.lower) v *= C;
                                         for (auto& v : s.sides) v *= C;
                                         return s;
                                     },
                                     [&](const Surface& s) -> ShapeFactor { return Surface{s.area * C * C}; },
                                     [&](const FullPlane& fp) -> ShapeFactor { return fp; },
                                     [&](const TranslatedDisk2& d) -> ShapeFactor {
                                         return TranslatedDisk2{d.cx * C, d.cy * C, d.radius * C};
                                     },
                                 },
                                 f));
    }
    return ShapeDescriptor(std::move(out));
}

namespace {

// Outer radius about the origin of a planar factor, if it is disk-like or a box.
std::optional<double> outer_radius(const ShapeFactor& f)
{
    if (const auto* d = std::get_if<Disk2>(&f)) return d->radius;
    if (const auto* t = std::get_if<TranslatedDisk2>(&f)) return std::hypot(t->cx, t->cy) + t->radius;
    if (const auto* b = std::get_if<Ball>(&f)) return b->radius;
    if (const auto* r = std::get_if<Rectangle>(&f)) {
        double s = 0;
        for (std::size_t i = 0; i < r->sides.size(); ++i) {
            const double m = std::max(std::abs(r->lower[i]), std::abs(r->lower[i] + r->sides[i]));
            s += m * m;
        }
        return std::sqrt(s);
    }
    return std::nullopt;
}

bool factor_within(const ShapeFactor& a, const ShapeFactor& b)
{
    if (factor_pairs(a) != factor_pairs(b)) return false;
    if (std::holds_alternative<FullPlane>(b)) return true;
    if (std::holds_alternative<FullPlane>(a)) return false;
    constexpr double eps = 1e-12;
    if (const auto* sa = std::get_if<Surface>(&a)) {
        const auto* sb = std::get_if<Surface>(&b);
        return sb != nullptr && close(sa->area, sb->area, eps);
    }
    if (std::holds_alternative<Surface>(b)) return false;

    if (const auto* rb = std::get_if<Rectangle>(&b)) {
        if (const auto* ra = std::get_if<Rectangle>(&a)) {
            for (std::size_t i = 0; i < ra->sides.size(); ++i) {
                if (ra->lower[i] < rb->lower[i] - eps) return false;
                if (ra->lower[i] + ra->sides[i] > rb->lower[i] + rb->sides[i] + eps) return false;
            }
            return true;
        }
        // a round factor centred at c with radius r: its bounding box must fit
        Vec c = Vec::Zero(2 * factor_pairs(a));
        double r = 0;
        if (const auto* t = std::get_if<TranslatedDisk2>(&a)) {
            c << t->cx, t->cy;
            r = t->radius;
        } else {
            r = *outer_radius(a);
        }
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            const auto k = static_cast<std::size_t>(i);
            if (c[i] - r < rb->lower[k] - eps || c[i] + r > rb->lower[k] + rb->sides[k] + eps) return false;
        }
        return true;
    }

    // b is a disk, translated disk or ball
    double bx = 0, by = 0, br = 0;
    if (const auto* t = std::get_if<TranslatedDisk2>(&b)) {
        bx = t->cx;
        by = t->cy;
        br = t->radius;
    } else {
        br = *outer_radius(b);
    }
    if (const auto* ra = std::get_if<Rectangle>(&a)) {
        // every corner must be inside the closed disk
        const std::size_t d = ra->sides.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            double s = 0;
            for (std::size_t i = 0; i < d; ++i) {
                double v = ra->lower[i] + (((mask >> i) & 1U) ? ra->sides[i] : 0.0);
                if (d == 2) v -= (i == 0 ? bx : by);
                s += v * v;
            }
            if (std::sqrt(s) > br + eps) return false;
        }
        return true;
    }
    double ax = 0, ay = 0, ar = 0;
    if (const auto* t = std::get_if<TranslatedDisk2>(&a)) {
        ax = t->cx;
        ay = t->cy;
        ar = t->radius;
    } else {
        ar = *outer_radius(a);
    }
    return std::hypot(ax - bx, ay - by) + ar <= br + eps * std::max(1.0, br);
}

// Radii of a group of factors that are all disks centred at the origin.
std::optional<double> disk_group_norm(const std::vector<ShapeFactor>& group)
{
    double s = 0;
    for (const auto& f : group) {
        const auto* d = std::get_if<Disk2>(&f);
        if (d == nullptr) return std::nullopt;
        s += d->radius * d->radius;
    }
    return std::sqrt(s);
}

// A group of box factors as one box in the group's local order (x.., y..).
std::optional<Rectangle> merge_boxes(const std::vector<ShapeFactor>& group)
{
    std::vector<double> xl, xs, yl, ys;
    for (const auto& f : group) {
        const auto* r = std::get_if<Rectangle>(&f);
        if (r == nullptr) return std::nullopt;
        const std::size_t k = r->sides.size() / 2;
        xl.insert(xl.end(), r->lower.begin(), r->lower.begin() + static_cast<std::ptrdiff_t>(k));
        xs.insert(xs.end(), r->sides.begin(), r->sides.begin() + static_cast<std::ptrdiff_t>(k));
        yl.insert(yl.end(), r->lower.begin() + static_cast<std::ptrdiff_t>(k), r->lower.end());
        ys.insert(ys.end(), r->sides.begin() + static_cast<std::ptrdiff_t>(k), r->sides.end());
    }
    xl.insert(xl.end(), yl.begin(), yl.end());
    xs.insert(xs.end(), ys.begin(), ys.end());
    return Rectangle{xl, xs};
}

bool group_within(const std::vector<ShapeFactor>& a, const std::vector<ShapeFactor>& b)
{
    if (a.size() == 1 && b.size() == 1) return factor_within(a[0], b[0]);
    constexpr double eps = 1e-12;
    if (auto ra = merge_boxes(a)) {
        if (auto rb = merge_boxes(b)) return factor_within(*ra, *rb);
    }
    if (a.size() == 1 && std::holds_alternative<Ball>(a[0])) {
        // ball inside a product: each factor must contain the ball's projection
        const double r = std::get<Ball>(a[0]).radius;
        return std::all_of(b.begin(), b.end(), [&](const ShapeFactor& f) {
            return factor_within(Ball{factor_pairs(f), r}, f);
        });
    }
    if (b.size() == 1 && std::holds_alternative<Ball>(b[0])) {
        // product of disks inside a ball: |z|^2 < sum r_i^2
        const auto n = disk_group_norm(a);
        const double br = std::get<Ball>(b[0]).radius;
        return n && *n <= br + eps * std::max(1.0, br);
    }
    if (a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!factor_within(a[i], b[i])) return false;
        return true;
    }
    return false;
}

}  // namespace

bool shape_within(const ShapeDescriptor& a, const ShapeDescriptor& b)
{
    if (a.pairs() != b.pairs()) return false;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t ia = 0, ib = 0;
    while (ia < fa.size() && ib < fb.size()) {
        // grow the two groups until they cover the same number of pairs
        std::vector<ShapeFactor> ga{fa[ia++]}, gb{fb[ib++]};
        int pa = factor_pairs(ga.back()), pb = factor_pairs(gb.back());
        while (pa != pb) {
            if (pa < pb) {
                if (ia == fa.size()) return false;
                ga.push_back(fa[ia++]);
                pa += factor_pairs(ga.back());
            } else {
                if (ib == fb.size()) return false;
                gb.push_back(fb[ib++]);
                pb += factor_pairs(gb.back());
            }
        }
        if (!group_within(ga, gb)) return false;
    }
    return ia == fa.size() && ib == fb.size();
}

bool approx_equal(const ShapeDescriptor& a, const ShapeDescriptor& b, double tol)
{
    if (a.factors().size() != b.factors().size()) return false;
    for (std::size_t i = 0; i < a.factors().size(); ++i) {
        const auto& x = a.factors()[i];
        const auto& y = b.factors()[i];
        if (x.index() != y.index()) return false;
        const bool same = std::visit(
            overloaded{
                [&](const Disk2& d) { return close(d.radius, std::get<Disk2>(y).radius, tol); },
                [&](const Ball& d) {
                    const auto& e = std::get<Ball>(y);
                    return d.pairs == e.pairs && close(d.radius, e.radius, tol);
                },
                [&](const Rectangle& d) {
                    const auto& e = std::get<Rectangle>(y);
                    if (d.sides.size() != e.sides.size()) return false;
                    for (std::size_t k = 0; k < d.sides.size(); ++k)
                        if (!close(d.sides[k], e.sides[k], tol) || !close(d.lower[k], e.lower[k], tol)) return false;
                    return true;
                },
                [&](const Surface& d) { return close(d.area, std::get<Surface>(y).area, tol); },
                [&](const FullPlane&) { return true; },
                [&](const TranslatedDisk2& d) {
                    const auto& e = std::get<TranslatedDisk2>(y);
                    return close(d.cx, e.cx, tol) && close(d.cy, e.cy, tol) && close(d.radius, e.radius, tol);
                },
            },
            x);
        if (!same) return false;
    }
    return true;
}

std::pair<Vec, Vec> bounding_box(const ShapeDescriptor& shape, std::optional<double> plane_radius)
{
    Vec lo(shape.dimension()), hi(shape.dimension());
    int first = 0;
    for (const auto& f : shape.factors()) {
        const int k = factor_pairs(f);
        Vec l(2 * k), h(2 * k);
        std::visit(overloaded{
                       [&](const Disk2& d) { l.setConstant(-d.radius), h.setConstant(d.radius); },
                       [&](const Ball& b) { l.setConstant(-b.radius), h.setConstant(b.radius); },
                       [&](const Rectangle& r) {
                           for (Eigen::Index i = 0; i < l.size(); ++i) {
                               const auto u = static_cast<std::size_t>(i);
                               l[i] = r.lower[u];
                               h[i] = r.lower[u] + r.sides[u];
                           }
                       },
                       [&](const Surface& s) { l.setZero(), h.setConstant(std::sqrt(s.area)); },
                       [&](const FullPlane&) {
                           if (!plane_radius)
                               throw UnboundedShape("R^2 factor needs a bounding radius override");
                           l.setConstant(-*plane_radius), h.setConstant(*plane_radius);
                       },
                       [&](const TranslatedDisk2& d) {
                           l << d.cx - d.radius, d.cy - d.radius;
                           h << d.cx + d.radius, d.cy + d.radius;
                       },
                   },
                   f);
        scatter_pairs(lo, first, l);
        scatter_pairs(hi, first, h);
        first += k;
    }
    return {lo, hi};
}

double domain_diameter(const ShapeDescriptor& shape, std::optional<double> plane_radius)
{
    const auto [lo, hi] = bounding_box(shape, plane_radius);
    return (hi - lo).norm();
}

}  // namespace polyembed
