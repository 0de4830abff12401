#include "polyembed/maps/descriptor.hpp"

#include "polyembed/errors.hpp"
#include "polyembed/maps/cotangent_lift.hpp"
#include "polyembed/maps/disk_rectangle.hpp"
#include "polyembed/maps/linear.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/maps/snake.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

nlohmann::json to_descriptor(const MapNode& m)
{
    nlohmann::json j;
    j["kind"] = to_string(m.kind());
    j["params"] = m.parameters();
    j["domain"] = to_literal(m.domain());
    j["target"] = to_literal(m.target());
    auto kids = nlohmann::json::array();
    for (const auto& c : m.children()) kids.push_back(to_descriptor(*c));
    j["children"] = kids;
    return j;
}

namespace {

template <class T>
T field(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) throw ParseError(std::string("descriptor is missing '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("descriptor field '") + key + "' has the wrong type: " + e.what());
    }
}

std::vector<MapPtr> children_of(const nlohmann::json& j)
{
    std::vector<MapPtr> out;
    if (!j.contains("children")) return out;
    for (const auto& c : j.at("children")) out.push_back(map_from_descriptor(c));
    return out;
}

MapPtr single_child(const nlohmann::json& j)
{
    auto kids = children_of(j);
    if (kids.size() != 1) throw ParseError("descriptor node needs exactly one child");
    return kids.front();
}

}  // namespace

MapPtr map_from_descriptor(const nlohmann::json& j)
{
    if (!j.is_object()) throw ParseError("descriptor node must be an object");
    const MapKind kind = parse_map_kind(field<std::string>(j, "kind"));
    const nlohmann::json params = j.contains("params") ? j.at("params") : nlohmann::json::object();
    const ShapeDescriptor domain = parse_shape(field<std::string>(j, "domain"));
    const ShapeDescriptor target = parse_shape(field<std::string>(j, "target"));

    switch (kind) {
    case MapKind::Linear: {
        const auto rows = field<std::vector<std::vector<double>>>(params, "matrix");
        const auto off = field<std::vector<double>>(params, "offset");
        const auto n = static_cast<Eigen::Index>(rows.size());
        Mat M(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n)
                throw ParseError("linear map matrix must be square");
            for (Eigen::Index c = 0; c < n; ++c) M(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        Vec o = Eigen::Map<const Vec>(off.data(), static_cast<Eigen::Index>(off.size()));
        return std::make_shared<LinearNode>(M, o, domain, target);
    }
    case MapKind::PhiShear:
        return make_phi_shear(PeriodicDiffeo1D(field<double>(params, "rho"), field<double>(params, "delta"),
                                               field<double>(params, "peak")));
    case MapKind::ProductWithIdentity:
        return product_with_identity(parse_shape(field<std::string>(params, "before")), single_child(j),
                                     parse_shape(field<std::string>(params, "after")));
    case MapKind::TorusQuotient:
        return make_torus_quotient(field<int>(params, "pairs"), field<double>(params, "period"));
    case MapKind::StripLift:
        return strip_lift(field<double>(params, "w"), field<double>(params, "t"));
    case MapKind::Snake:
        return snake_embedding(field<double>(params, "L1"), field<double>(params, "L2"), field<double>(params, "L1p"),
                               field<double>(params, "L2p"));
    case MapKind::CotangentLift:
        return cotangent_lift(single_child(j), field<double>(params, "fiber_half_side"));
    case MapKind::DiskRectangle: {
        const auto c = field<std::vector<double>>(params, "center");
        if (c.size() != 2) throw ParseError("disk-rectangle center needs two coordinates");
        return std::make_shared<DiskRectangleNode>(field<double>(params, "R"), field<double>(params, "width"),
                                                   Vec2(c[0], c[1]), field<bool>(params, "reverse"));
    }
    case MapKind::Composition:
        return compose(children_of(j), target);
    case MapKind::Inclusion:
        return make_inclusion(domain, target);
    }
    throw ParseError("unhandled map kind");
}

}  // namespace polyembed
