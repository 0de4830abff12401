#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyembed/linalg.hpp"
#include "polyembed/shape.hpp"

namespace polyembed {

enum class MapKind {
    Linear,
    PhiShear,
    ProductWithIdentity,
    TorusQuotient,
    StripLift,
    Snake,
    CotangentLift,
    DiskRectangle,
    Composition,
    Inclusion,
};

enum class JacobianMode { Analytic, FiniteDifference };

const char* to_string(MapKind kind);
MapKind parse_map_kind(const std::string& s);

/// An evaluable map between subsets of R^d with a declared domain (where it
/// must be defined) and a declared target (the containment the construction
/// claims; checked, not assumed, by the verification engine).
///
/// Nodes are immutable after construction and every member is safe to call
/// concurrently.
class MapNode {
public:
    MapNode(ShapeDescriptor domain, ShapeDescriptor target);
    virtual ~MapNode() = default;

    virtual MapKind kind() const = 0;
    virtual Vec eval(const Vec& p) const = 0;

    /// Analytic differential by default; FiniteDifference nodes fall back to
    /// central differences with step fd_step(p).
    virtual Mat jacobian(const Vec& p) const;
    virtual JacobianMode jacobian_mode() const { return JacobianMode::Analytic; }

    virtual std::optional<Vec> inverse(const Vec& /*q*/) const { return std::nullopt; }
    virtual bool has_inverse() const { return false; }

    /// Central-difference step at p: 1e-5 times the domain diameter unless
    /// the node knows of finer structure near p.
    virtual double fd_step(const Vec& p) const;

    /// Kind-specific parameters for the build descriptor.
    virtual nlohmann::json parameters() const = 0;
    /// Child nodes (compositions and products), in descriptor order.
    virtual std::vector<std::shared_ptr<const MapNode>> children() const { return {}; }

    int dimension() const { return domain_.dimension(); }
    const ShapeDescriptor& domain() const { return domain_; }
    const ShapeDescriptor& target() const { return target_; }

protected:
    void check_dimension(const Vec& p) const;

private:
    ShapeDescriptor domain_;
    ShapeDescriptor target_;
};

using MapPtr = std::shared_ptr<const MapNode>;

/// Central differences, column j from eval(p +- h e_j).
Mat finite_difference_jacobian(const MapNode& m, const Vec& p, double h);

/// Identity on a shape (an inclusion of the shape into itself).
MapPtr make_identity(const ShapeDescriptor& shape);

/// Identity map recording the claim domain ⊂ target; throws ShapeChainError
/// when the inclusion is not provable factor-wise.
MapPtr make_inclusion(const ShapeDescriptor& domain, const ShapeDescriptor& target);

/// nodes[0] ∘ nodes[1] ∘ ... ∘ nodes.back(): the last node is applied first.
/// The differential is always the chain-rule product of the children's
/// differentials; the mode reports FiniteDifference if any child uses it.
/// Each node's declared target must lie in the declared domain of the node
/// applied after it; otherwise ShapeChainError. The composite's target is the
/// first node's target unless `target` is given.
MapPtr compose(std::vector<MapPtr> nodes, std::optional<ShapeDescriptor> target = std::nullopt);

/// m on its own pairs, identity on `extra` (placed after m's pairs).
MapPtr product_with_identity(MapPtr m, const ShapeDescriptor& extra);
/// identity on `before`, m, identity on `after`.
MapPtr product_with_identity(const ShapeDescriptor& before, MapPtr m, const ShapeDescriptor& after);

/// Reduction of (x_1, y_1) modulo period * Z^2 into [0, period)^2; other
/// coordinates unchanged. Target Surface(period^2) x R^{2n-2}.
MapPtr make_torus_quotient(int pairs, double period = 1.0);

/// Reduce (x_1, y_1) of p modulo period.
Vec torus_quotient(const Vec& p, double period = 1.0);

class CompositionNode : public MapNode {
public:
    CompositionNode(std::vector<MapPtr> nodes, ShapeDescriptor target);

    MapKind kind() const override { return MapKind::Composition; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    JacobianMode jacobian_mode() const override;
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override;
    double fd_step(const Vec& p) const override;
    nlohmann::json parameters() const override { return nlohmann::json::object(); }
    std::vector<MapPtr> children() const override { return nodes_; }

    /// Composition with the outermost (last applied) node removed.
    MapPtr without_outermost() const;

private:
    std::vector<MapPtr> nodes_;
};

class ProductWithIdentityNode : public MapNode {
public:
    ProductWithIdentityNode(ShapeDescriptor before, MapPtr inner, ShapeDescriptor after);

    MapKind kind() const override { return MapKind::ProductWithIdentity; }
    Vec eval(const Vec& p) const override;
    Mat jacobian(const Vec& p) const override;
    JacobianMode jacobian_mode() const override { return inner_->jacobian_mode(); }
    std::optional<Vec> inverse(const Vec& q) const override;
    bool has_inverse() const override { return inner_->has_inverse(); }
    double fd_step(const Vec& p) const override;
    nlohmann::json parameters() const override;
    std::vector<MapPtr> children() const override { return {inner_}; }

    const MapNode& inner() const { return *inner_; }
    int first_pair() const { return before_.pairs(); }

private:
    ShapeDescriptor before_;
    MapPtr inner_;
    ShapeDescriptor after_;
};

class TorusQuotientNode : public MapNode {
public:
    TorusQuotientNode(int pairs, double period);

    MapKind kind() const override { return MapKind::TorusQuotient; }
    Vec eval(const Vec& p) const override { return torus_quotient(p, period_); }
    Mat jacobian(const Vec& p) const override { return Mat::Identity(p.size(), p.size()); }
    nlohmann::json parameters() const override;

    double period() const { return period_; }

private:
    double period_;
};

class InclusionNode : public MapNode {
public:
    using MapNode::MapNode;

    MapKind kind() const override { return MapKind::Inclusion; }
    Vec eval(const Vec& p) const override { return p; }
    Mat jacobian(const Vec& p) const override { return Mat::Identity(p.size(), p.size()); }
    std::optional<Vec> inverse(const Vec& q) const override { return q; }
    bool has_inverse() const override { return true; }
    nlohmann::json parameters() const override { return nlohmann::json::object(); }
};

}  // namespace polyembed
