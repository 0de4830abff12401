#pragma once

#include "polyembed/linalg.hpp"

namespace polyembed {

/// The standard form omega = sum dx_i ^ dy_i on R^{2n}, coordinates ordered
/// (x_1..x_n, y_1..y_n) so that omega(u, v) = u^T J v with J = [[0, I], [-I, 0]].
class SymplecticForm {
public:
    explicit SymplecticForm(int n);

    int pairs() const { return n_; }
    int dimension() const { return 2 * n_; }

    double operator()(const Vec& u, const Vec& v) const;
    const Mat& matrix() const { return J_; }

private:
    int n_;
    Mat J_;
};

/// omega(u, v) for equal even-length vectors; throws DimensionMismatch otherwise.
double form_eval(const Vec& u, const Vec& v);

/// J for R^{2n}.
Mat standard_J(int n);

/// max |D^T J D - J| entrywise; D must be 2n x 2n.
double symplectic_residual(const Mat& D);

/// Throws DimensionMismatch unless p has even length >= 2.
void require_phase_point(const Vec& p);

}  // namespace polyembed
