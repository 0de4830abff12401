#include "polyembed/maps/linear.hpp"

#include <cmath>
#include <string>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/symplectic.hpp"

namespace polyembed {

LinearNode::LinearNode(Mat matrix, Vec offset, ShapeDescriptor domain, ShapeDescriptor target)
    : MapNode(std::move(domain), std::move(target)), matrix_(std::move(matrix)), offset_(std::move(offset))
{
    if (matrix_.rows() != dimension() || matrix_.cols() != dimension() || offset_.size() != dimension())
        throw DimensionMismatch("linear map matrix/offset do not match its domain dimension");
    inverse_ = matrix_.inverse();
}

Vec LinearNode::eval(const Vec& p) const
{
    check_dimension(p);
    return matrix_ * p + offset_;
}

std::optional<Vec> LinearNode::inverse(const Vec& q) const
{
    return inverse_ * (q - offset_);
}

nlohmann::json LinearNode::parameters() const
{
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < matrix_.cols(); ++j) row.push_back(matrix_(i, j));
        rows.push_back(row);
    }
    return {{"matrix", rows}, {"offset", std::vector<double>(offset_.data(), offset_.data() + offset_.size())}};
}

MapPtr make_linear(Mat matrix, std::optional<ShapeDescriptor> domain, std::optional<ShapeDescriptor> target,
                   std::optional<Vec> offset)
{
    const auto n = static_cast<int>(matrix.rows() / 2);
    ShapeDescriptor dom = domain ? *domain : ShapeDescriptor::plane(n);
    ShapeDescriptor tgt = target ? *target : ShapeDescriptor::plane(n);
    Vec off = offset ? *offset : Vec::Zero(matrix.rows());
    return std::make_shared<LinearNode>(std::move(matrix), std::move(off), std::move(dom), std::move(tgt));
}

double linear_symplectic_residual(const Mat& M)
{
    return symplectic_residual(M);
}

Mat symplectic_completion(const Vec& a, const Vec& b)
{
    auto unit = [](Eigen::Index i) {
        Vec e = Vec::Zero(4);
        e[i] = 1.0;
        return e;
    };
    // v - omega(v, b) a + omega(v, a) b is omega-orthogonal to a and b
    auto project = [&](const Vec& v) -> Vec { return v - form_eval(v, b) * a + form_eval(v, a) * b; };

    Vec w1 = project(unit(1));
    Vec w2 = project(unit(3));
    double s = form_eval(w1, w2);
    if (std::abs(s) < 1e-8) {
        w1 = project(unit(0));
        w2 = project(unit(2));
        s = form_eval(w1, w2);
        if (std::abs(s) < 1e-8) throw std::runtime_error("symplectic completion degenerate for both seed pairs");
    }
    w2 /= s;

    Mat A(4, 4);
    A.col(0) = a;
    A.col(1) = w1;
    A.col(2) = b;
    A.col(3) = w2;
    return A;
}

PolterovichLinear build_polterovich_linear(double R)
{
    if (!(R >= 1.0 / 3.0))
        throw HypothesisViolation("R below 1/3: the ball must have radius at least 1/3 (got " + format_double(R) + ")");

    PolterovichLinear out;
    out.radius = R;
    out.cos_theta = 1.0 / (9.0 * R * R);
    const double c = out.cos_theta;
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));

    // V = span{e_x1, c e_y1 + s e_x2}; coordinates (x1, x2, y1, y2)
    Vec u1 = Vec::Zero(4), u2 = Vec::Zero(4);
    u1[0] = 1.0;
    u2[2] = c;
    u2[1] = s;
    // V's radius-R disk goes to the radius-1/3 disk of the x1-y1 plane
    const double k = 1.0 / (3.0 * R);
    const Mat A = symplectic_completion(u1 / k, u2 / k);
    const Mat J = standard_J(2);
    Mat L = -J * A.transpose() * J;  // A^{-1} for symplectic A

    // round the (x2, y2) projection with an area-preserving map of that plane
    Mat P(2, 4);
    P.row(0) = L.row(1);
    P.row(1) = L.row(3);
    const Mat2 M = P * P.transpose();
    Eigen::SelfAdjointEigenSolver<Mat2> eig(M);
    const Mat2 inv_sqrt = eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          eig.eigenvectors().transpose();
    const double det_root4 = std::pow(M.determinant(), 0.25);
    const Mat2 G = det_root4 * inv_sqrt;
    Mat E = Mat::Identity(4, 4);
    E(1, 1) = G(0, 0);
    E(1, 3) = G(0, 1);
    E(3, 1) = G(1, 0);
    E(3, 3) = G(1, 1);
    L = E * L;

    out.matrix = L;
    out.section_radius = k * R;
    out.projection_radius = R * det_root4;
    Mat Q(2, 4);
    Q.row(0) = L.row(0);
    Q.row(1) = L.row(2);
    Eigen::JacobiSVD<Mat> svd(Q);
    out.x1y1_extent = R * svd.singularValues()[0];
    out.rho = std::ceil(out.x1y1_extent * 10.0 - 1e-9) / 10.0;
    if (out.rho <= out.x1y1_extent) out.rho += 0.1;

    out.map = make_linear(L, ShapeDescriptor::ball(2, R),
                          ShapeDescriptor({Disk2{out.rho}, Disk2{10.0 * R * R}}));
    return out;
}

}  // namespace polyembed
