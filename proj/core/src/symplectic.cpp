#include "polyembed/symplectic.hpp"

#include <string>

#include "polyembed/errors.hpp"

namespace polyembed {

Mat standard_J(int n)
{
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
    return J;
}

SymplecticForm::SymplecticForm(int n) : n_(n), J_(standard_J(n))
{
    if (n < 1)
        throw DimensionMismatch("symplectic form needs at least one conjugate pair");
}

double SymplecticForm::operator()(const Vec& u, const Vec& v) const
{
    if (u.size() != dimension() || v.size() != dimension())
        throw DimensionMismatch("tangent vectors must have length " + std::to_string(dimension()));
    const Eigen::Index n = n_;
    return u.head(n).dot(v.tail(n)) - u.tail(n).dot(v.head(n));
}

double form_eval(const Vec& u, const Vec& v)
{
    if (u.size() != v.size() || u.size() < 2 || u.size() % 2 != 0)
        throw DimensionMismatch("form_eval needs equal even lengths, got " + std::to_string(u.size()) +
                                " and " + std::to_string(v.size()));
    return SymplecticForm(static_cast<int>(u.size() / 2))(u, v);
}

double symplectic_residual(const Mat& D)
{
    if (D.rows() != D.cols() || D.rows() % 2 != 0)
        throw DimensionMismatch("symplectic residual needs a square even-dimensional Jacobian");
    const Mat J = standard_J(static_cast<int>(D.rows() / 2));
    return (D.transpose() * J * D - J).cwiseAbs().maxCoeff();
}

void require_phase_point(const Vec& p)
{
    if (p.size() < 2 || p.size() % 2 != 0)
        throw DimensionMismatch("phase point must have even length >= 2, got " + std::to_string(p.size()));
}

}  // namespace polyembed
