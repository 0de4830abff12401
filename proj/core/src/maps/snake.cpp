#include "polyembed/maps/snake.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussNodes = 20;

struct GaussLegendre {
    std::array<double, kGaussNodes> x{};
    std::array<double, kGaussNodes> w{};

    GaussLegendre()
    {
        const int n = kGaussNodes;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[static_cast<std::size_t>(i)] = z;
            w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre& gauss()
{
    static const GaussLegendre g;
    return g;
}

// smootherstep and its antiderivative
double ramp_shape(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double ramp_integral(double u) { return u * u * u * u * (2.5 + u * (-3.0 + u)); }

}  // namespace

UTurn::UTurn(double gap) : gap_(gap)
{
    if (!(gap > 0)) throw std::invalid_argument("U-turn gap must be positive");
    // unit middle curvature; each ramp turns pi/8, the middle 3pi/4
    kappa0_ = 1.0;
    ramp_ = kPi / 4.0;
    length_ = 2.0 * ramp_ + 3.0 * kPi / 4.0;
    ramp_end_ = ramp_point(ramp_);
    const double unit_gap = 2.0 * (ramp_end_.y() + std::cos(kPi / 8.0));
    const double scale = gap / unit_gap;
    kappa0_ /= scale;
    ramp_ *= scale;
    length_ *= scale;
    ramp_end_ *= scale;
}

double UTurn::angle(double s) const
{
    if (s <= ramp_) return kappa0_ * ramp_ * ramp_integral(s / ramp_);
    if (s <= length_ - ramp_) return kPi / 8.0 + kappa0_ * (s - ramp_);
    return kPi - angle(length_ - s);
}

double UTurn::curvature(double s) const
{
    if (s <= ramp_) return kappa0_ * ramp_shape(s / ramp_);
    if (s <= length_ - ramp_) return kappa0_;
    return curvature(length_ - s);
}

Vec2 UTurn::ramp_point(double s) const
{
    const auto& g = gauss();
    Vec2 acc = Vec2::Zero();
    for (int i = 0; i < kGaussNodes; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double t = 0.5 * s * (g.x[k] + 1.0);
        const double th = angle(t);
        acc += g.w[k] * Vec2(std::cos(th), std::sin(th));
    }
    return 0.5 * s * acc;
}

Vec2 UTurn::point(double s) const
{
    if (s <= ramp_) return ramp_point(s);
    if (s <= length_ - ramp_) {
        const double th = angle(s);
        constexpr double th0 = kPi / 8.0;
        return ramp_end_ + Vec2(std::sin(th) - std::sin(th0), std::cos(th0) - std::cos(th)) / kappa0_;
    }
    const Vec2 q = point(length_ - s);
    return {q.x(), gap_ - q.y()};
}

double UTurn::extent(double width) const
{
    // the offset curve is vertical where the angle is pi/2
    return point(0.5 * length_).x() + width;
}

SnakeNode::SnakeNode(double L1, double L2, double L1p, double L2p)
    : MapNode(ShapeDescriptor::rectangle({L1, L2}), ShapeDescriptor::rectangle({5.0 * L1p, 5.0 * L2p})),
      L1_(L1),
      L2_(L2),
      L1p_(L1p),
      L2p_(L2p),
      pitch_(3.0 * L1),
      turn_(2.0 * L1)
{
    const double W = 5.0 * L1p;
    const double H = 5.0 * L2p;
    if (L2 <= W * (1.0 - 1e-12)) {
        rows_ = 1;
        margin_ = 0.0;
        row_length_ = L2;
        x0_ = 0.5 * (W - L2);
        return;
    }
    margin_ = turn_.extent(L1);
    row_length_ = W - 2.0 * margin_ - 1e-9 * W;
    if (!(row_length_ > 0))
        throw HypothesisViolation("snake rows do not fit: width " + format_double(W) + " leaves no room beside U-turns of extent " +
                                  format_double(margin_));
    x0_ = margin_ + 0.5e-9 * W;
    const double period = row_length_ + turn_.length();
    const int needed = 1 + static_cast<int>(std::ceil((L2 - row_length_) / period - 1e-12));
    const int available = 1 + static_cast<int>(std::floor((H - L1) / pitch_));
    if (needed > available)
        throw HypothesisViolation("snake capacity: " + std::to_string(needed) + " rows needed but only " +
                                  std::to_string(available) + " fit in height " + format_double(H));
    rows_ = needed;
}

double SnakeNode::capacity() const
{
    if (rows_ == 1 && margin_ == 0.0) return 5.0 * L1p_;
    const int available = 1 + static_cast<int>(std::floor((5.0 * L2p_ - L1_) / pitch_));
    return available * (row_length_ + turn_.length()) - turn_.length();
}

SnakeNode::Local SnakeNode::evaluate(double u, double v) const
{
    Local out;
    if (rows_ == 1) {
        out.point = {x0_ + v, L1_ - u};
        out.jac << 0.0, 1.0, -1.0, 0.0;
        return out;
    }
    const double period = row_length_ + turn_.length();
    int j = static_cast<int>(std::floor(v / period));
    j = std::clamp(j, 0, rows_ - 1);
    const double w = v - j * period;
    const bool even = (j % 2) == 0;
    const double dist = even ? u : L1_ - u;
    const double dd = even ? 1.0 : -1.0;
    const double top = j * pitch_ + L1_;

    if (w <= row_length_ || j == rows_ - 1) {
        out.point = {even ? x0_ + w : x0_ + row_length_ - w, top - dist};
        out.jac << 0.0, (even ? 1.0 : -1.0), -dd, 0.0;
        return out;
    }
    const double s = w - row_length_;
    const double th = turn_.angle(s);
    const double kappa = turn_.curvature(s);
    const Vec2 g = turn_.point(s);
    const Vec2 n(std::sin(th), -std::cos(th));
    const Vec2 local = g + dist * n;
    const Vec2 tangent = (1.0 + dist * kappa) * Vec2(std::cos(th), std::sin(th));
    const double mirror = even ? 1.0 : -1.0;
    const double xe = even ? x0_ + row_length_ : x0_;
    out.point = {xe + mirror * local.x(), top + local.y()};
    out.jac << mirror * dd * n.x(), mirror * tangent.x(), dd * n.y(), tangent.y();
    return out;
}

Vec SnakeNode::eval(const Vec& p) const
{
    check_dimension(p);
    return Vec(evaluate(p[0], p[1]).point);
}

Mat SnakeNode::jacobian(const Vec& p) const
{
    check_dimension(p);
    return Mat(evaluate(p[0], p[1]).jac);
}

double SnakeNode::fd_step(const Vec& /*p*/) const { return 1e-5 * L1_; }

nlohmann::json SnakeNode::parameters() const
{
    return {{"L1", L1_}, {"L2", L2_}, {"L1p", L1p_}, {"L2p", L2p_}};
}

MapPtr snake_embedding(double L1, double L2, double L1p, double L2p)
{
    auto fail = [](const std::string& what) { throw HypothesisViolation("snake precondition " + what + " fails"); };
    if (!(L1 > 0 && L2 > 0 && L1p > 0 && L2p > 0)) fail("positive side lengths");
    if (!(L1 <= L2)) fail("L1 <= L2 (" + format_double(L1) + " > " + format_double(L2) + ")");
    if (!(L1p <= L2p)) fail("L1' <= L2' (" + format_double(L1p) + " > " + format_double(L2p) + ")");
    if (!(L1 <= L1p)) fail("L1 <= L1' (" + format_double(L1) + " > " + format_double(L1p) + ")");
    if (!(L1 * L2 <= L1p * L2p)) fail("L1 L2 <= L1' L2' (" + format_double(L1 * L2) + " > " + format_double(L1p * L2p) + ")");
    return std::make_shared<SnakeNode>(L1, L2, L1p, L2p);
}

}  // namespace polyembed
