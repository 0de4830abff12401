#include "polyembed/maps/map_node.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/symplectic.hpp"

namespace polyembed {

namespace {

constexpr std::array<std::pair<MapKind, const char*>, 10> kKindNames{{
    {MapKind::Linear, "linear"},
    {MapKind::PhiShear, "phi-shear"},
    {MapKind::ProductWithIdentity, "product-with-identity"},
    {MapKind::TorusQuotient, "torus-quotient"},
    {MapKind::StripLift, "strip-lift"},
    {MapKind::Snake, "snake"},
    {MapKind::CotangentLift, "cotangent-lift"},
    {MapKind::DiskRectangle, "disk-rectangle"},
    {MapKind::Composition, "composition"},
    {MapKind::Inclusion, "inclusion"},
}};

}  // namespace

const char* to_string(MapKind kind)
{
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

MapKind parse_map_kind(const std::string& s)
{
    for (const auto& [k, name] : kKindNames)
        if (s == name) return k;
    throw ParseError("unknown map kind '" + s + "'");
}

MapNode::MapNode(ShapeDescriptor domain, ShapeDescriptor target)
    : domain_(std::move(domain)), target_(std::move(target))
{
    if (domain_.dimension() != target_.dimension())
        throw DimensionMismatch("map domain and target dimensions differ");
}

void MapNode::check_dimension(const Vec& p) const
{
    if (p.size() != dimension())
        throw DimensionMismatch(std::string(to_string(kind())) + " map expects dimension " +
                                std::to_string(dimension()) + ", got " + std::to_string(p.size()));
}

Mat MapNode::jacobian(const Vec& p) const
{
    return finite_difference_jacobian(*this, p, fd_step(p));
}

double MapNode::fd_step(const Vec& /*p*/) const
{
    double scale = 1.0;
    if (domain_.bounded()) scale = domain_diameter(domain_);
    return 1e-5 * scale;
}

Mat finite_difference_jacobian(const MapNode& m, const Vec& p, double h)
{
    const Eigen::Index d = p.size();
    Mat D(d, d);
    Vec q = p;
    for (Eigen::Index j = 0; j < d; ++j) {
        q[j] = p[j] + h;
        const Vec fp = m.eval(q);
        q[j] = p[j] - h;
        const Vec fm = m.eval(q);
        q[j] = p[j];
        D.col(j) = (fp - fm) / (2.0 * h);
    }
    return D;
}

MapPtr make_identity(const ShapeDescriptor& shape)
{
    return std::make_shared<InclusionNode>(shape, shape);
}

MapPtr make_inclusion(const ShapeDescriptor& domain, const ShapeDescriptor& target)
{
    if (!shape_within(domain, target))
        throw ShapeChainError("inclusion " + to_literal(domain) + " ⊂ " + to_literal(target) + " does not hold");
    return std::make_shared<InclusionNode>(domain, target);
}

MapPtr compose(std::vector<MapPtr> nodes, std::optional<ShapeDescriptor> target)
{
    if (nodes.empty()) throw std::invalid_argument("compose needs at least one map");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const auto& outer = *nodes[k];
        const auto& inner = *nodes[k + 1];
        if (outer.dimension() != inner.dimension())
            throw ShapeChainError("composition step " + std::to_string(k) + ": dimensions " +
                                  std::to_string(inner.dimension()) + " and " + std::to_string(outer.dimension()) +
                                  " differ");
        if (!shape_within(inner.target(), outer.domain()))
            throw ShapeChainError("composition step " + std::to_string(k) + ": target " + to_literal(inner.target()) +
                                  " of " + to_string(inner.kind()) + " is not inside domain " +
                                  to_literal(outer.domain()) + " of " + to_string(outer.kind()));
    }
    ShapeDescriptor tgt = target ? *target : nodes.front()->target();
    return std::make_shared<CompositionNode>(std::move(nodes), std::move(tgt));
}

CompositionNode::CompositionNode(std::vector<MapPtr> nodes, ShapeDescriptor target)
    : MapNode(nodes.back()->domain(), std::move(target)), nodes_(std::move(nodes))
{
}

Vec CompositionNode::eval(const Vec& p) const
{
    Vec q = p;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) q = (*it)->eval(q);
    return q;
}

Mat CompositionNode::jacobian(const Vec& p) const
{
    Vec q = p;
    Mat D = Mat::Identity(p.size(), p.size());
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
        D = (*it)->jacobian(q) * D;
        q = (*it)->eval(q);
    }
    return D;
}

JacobianMode CompositionNode::jacobian_mode() const
{
    for (const auto& n : nodes_)
        if (n->jacobian_mode() == JacobianMode::FiniteDifference) return JacobianMode::FiniteDifference;
    return JacobianMode::Analytic;
}

bool CompositionNode::has_inverse() const
{
    for (const auto& n : nodes_)
        if (!n->has_inverse()) return false;
    return true;
}

std::optional<Vec> CompositionNode::inverse(const Vec& q) const
{
    Vec p = q;
    for (const auto& n : nodes_) {
        auto r = n->inverse(p);
        if (!r) return std::nullopt;
        p = std::move(*r);
    }
    return p;
}

double CompositionNode::fd_step(const Vec& p) const
{
    return nodes_.back()->fd_step(p);
}

MapPtr CompositionNode::without_outermost() const
{
    std::vector<MapPtr> rest(nodes_.begin() + 1, nodes_.end());
    if (rest.size() == 1) return rest.front();
    return std::make_shared<CompositionNode>(rest, rest.front()->target());
}

MapPtr product_with_identity(MapPtr m, const ShapeDescriptor& extra)
{
    return std::make_shared<ProductWithIdentityNode>(ShapeDescriptor{}, std::move(m), extra);
}

MapPtr product_with_identity(const ShapeDescriptor& before, MapPtr m, const ShapeDescriptor& after)
{
    return std::make_shared<ProductWithIdentityNode>(before, std::move(m), after);
}

ProductWithIdentityNode::ProductWithIdentityNode(ShapeDescriptor before, MapPtr inner, ShapeDescriptor after)
    : MapNode(before.times(inner->domain()).times(after), before.times(inner->target()).times(after)),
      before_(std::move(before)),
      inner_(std::move(inner)),
      after_(std::move(after))
{
}

Vec ProductWithIdentityNode::eval(const Vec& p) const
{
    check_dimension(p);
    const int k = inner_->dimension() / 2;
    Vec q = p;
    scatter_pairs(q, first_pair(), inner_->eval(gather_pairs(p, first_pair(), k)));
    return q;
}

Mat ProductWithIdentityNode::jacobian(const Vec& p) const
{
    check_dimension(p);
    const int k = inner_->dimension() / 2;
    const Eigen::Index n = p.size() / 2;
    const Mat Di = inner_->jacobian(gather_pairs(p, first_pair(), k));
    // global index of local coordinate i
    auto global = [&](Eigen::Index i) { return i < k ? first_pair() + i : n + first_pair() + (i - k); };
    Mat D = Mat::Identity(p.size(), p.size());
    for (Eigen::Index i = 0; i < 2 * k; ++i)
        for (Eigen::Index j = 0; j < 2 * k; ++j) D(global(i), global(j)) = Di(i, j);
    return D;
}

std::optional<Vec> ProductWithIdentityNode::inverse(const Vec& q) const
{
    const int k = inner_->dimension() / 2;
    auto local = inner_->inverse(gather_pairs(q, first_pair(), k));
    if (!local) return std::nullopt;
    Vec p = q;
    scatter_pairs(p, first_pair(), *local);
    return p;
}

double ProductWithIdentityNode::fd_step(const Vec& p) const
{
    return inner_->fd_step(gather_pairs(p, first_pair(), inner_->dimension() / 2));
}

nlohmann::json ProductWithIdentityNode::parameters() const
{
    return {{"before", to_literal(before_)}, {"after", to_literal(after_)}};
}

Vec torus_quotient(const Vec& p, double period)
{
    require_phase_point(p);
    const Eigen::Index n = p.size() / 2;
    Vec q = p;
    for (Eigen::Index idx : {Eigen::Index{0}, n}) {
        double r = std::fmod(p[idx], period);
        if (r < 0) r += period;
        if (r >= period) r = 0;  // fmod of a tiny negative can round up to period
        q[idx] = r;
    }
    return q;
}

MapPtr make_torus_quotient(int pairs, double period)
{
    return std::make_shared<TorusQuotientNode>(pairs, period);
}

TorusQuotientNode::TorusQuotientNode(int pairs, double period)
    : MapNode(ShapeDescriptor::plane(pairs),
              ShapeDescriptor({Surface{period * period}}).times(ShapeDescriptor::plane(pairs - 1))),
      period_(period)
{
    if (!(period > 0)) throw std::invalid_argument("lattice period must be positive");
}

nlohmann::json TorusQuotientNode::parameters() const
{
    return {{"pairs", dimension() / 2}, {"period", period_}};
}

}  // namespace polyembed
