// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion...]   (no arguments runs all ten)

#include <Eigen/SVD>

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyembed/certify/corollaries.hpp"
#include "polyembed/certify/planner.hpp"
#include "polyembed/certify/validate.hpp"
#include "polyembed/maps/cotangent_lift.hpp"
#include "polyembed/maps/linear.hpp"
#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/maps/snake.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/verify/checks.hpp"
#include "polyembed/verify/double_points.hpp"
#include "polyembed/verify/phi_checks.hpp"

using namespace polyembed;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " FAILED[" << what << "]";
        }
    }
};

std::string g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// J in (x1..xn, y1..yn) order, built here rather than taken from the library
Mat oracle_J(int n)
{
    Mat J = Mat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        J(i, n + i) = 1.0;
        J(n + i, i) = -1.0;
    }
    return J;
}

double oracle_residual(const Mat& D)
{
    const Mat J = oracle_J(static_cast<int>(D.rows()) / 2);
    return (D.transpose() * J * D - J).cwiseAbs().maxCoeff();
}

Vec2 in_disk(std::mt19937_64& rng, double r)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rad = r * std::sqrt(u(rng)) * (1.0 - 1e-12);
    const double th = 2.0 * kPi * u(rng);
    return {rad * std::cos(th), rad * std::sin(th)};
}

Vec in_ball(std::mt19937_64& rng, int dim, double r)
{
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = n(rng);
    return v * (r * std::pow(u(rng), 1.0 / dim) * (1.0 - 1e-12) / v.norm());
}

// distance to the nearest point of Z^2, or of Z^2 \ {0}
double lattice_distance(const Vec2& d, bool skip_origin)
{
    double best = INFINITY;
    const double rx = std::round(d.x()), ry = std::round(d.y());
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            const double kx = rx + i, ky = ry + j;
            if (skip_origin && kx == 0 && ky == 0) continue;
            best = std::min(best, std::hypot(d.x() - kx, d.y() - ky));
        }
    return best;
}

// ---------------------------------------------------------------- 1

Outcome criterion1()
{
    Outcome o;
    double worst_det = 0, worst_fd = 0, worst_spike = 0;
    auto fd_error = [](const PeriodicDiffeo1D& phi, const Vec2& p) {
        const Mat2 J = psi_jacobian(phi, p);
        const double hx = phi.fd_step(p.x()), hy = 1e-5 * std::max(1.0, std::abs(p.y()));
        Mat2 F;
        F.col(0) = (psi_eval(phi, p + Vec2(hx, 0)) - psi_eval(phi, p - Vec2(hx, 0))) / (2 * hx);
        F.col(1) = (psi_eval(phi, p + Vec2(0, hy)) - psi_eval(phi, p - Vec2(0, hy))) / (2 * hy);
        return (F - J).cwiseAbs().maxCoeff() / std::max(1.0, J.cwiseAbs().maxCoeff());
    };
    for (double rho : {1.0, 10.0, 100.0}) {
        const PeriodicDiffeo1D phi(rho);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        for (int k = 0; k < 10000; ++k) {
            const Vec2 p = in_disk(rng, rho);
            worst_det = std::max(worst_det, std::abs(psi_jacobian(phi, p).determinant() - 1.0));
            worst_fd = std::max(worst_fd, fd_error(phi, p));
            // stress points inside a spike: reported, not gated
            if (k % 10 == 0) {
                const Vec2 s(std::round(p.x()) + phi.delta() * u(rng), p.y());
                worst_det = std::max(worst_det, std::abs(psi_jacobian(phi, s).determinant() - 1.0));
                worst_spike = std::max(worst_spike, fd_error(phi, s));
            }
        }
    }
    o.detail << "max |det dPsi - 1| = " << g(worst_det) << ", max relative |FD - analytic| = " << g(worst_fd)
             << " (inside spikes " << g(worst_spike) << ", not gated)";
    o.require(worst_det <= 1e-10, "det");
    o.require(worst_fd <= 1e-6, "finite differences");
    return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2()
{
    Outcome o;
    std::size_t hits = 0;
    double ymin = INFINITY, ymax = -INFINITY, closest = INFINITY;
    for (double rho : {1.0, 10.0}) {
        const PeriodicDiffeo1D phi(rho);
        std::mt19937_64 rng(22);
        for (int k = 0; k < 1'000'000; ++k) {
            const double d = lattice_distance(psi_eval(phi, in_disk(rng, rho)), false);
            closest = std::min(closest, d);
            if (d < 1e-12) ++hits;
        }
        // Phi fixes the integers, so the fibers over Z are x = m
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int m = -static_cast<int>(std::ceil(rho)); m <= static_cast<int>(std::ceil(rho)); ++m) {
            if (std::abs(m) >= rho) continue;
            const double h = std::sqrt(rho * rho - m * m);
            for (int k = 0; k < 2000; ++k) {
                const double y = k < 2 ? (k == 0 ? -h : h) * (1 - 1e-12) : h * u(rng);
                const Vec2 q = psi_eval(phi, Vec2(m, y));
                o.require(std::abs(q.x() - m) <= 1e-12, "Phi(m) = m");
                ymin = std::min(ymin, q.y());
                ymax = std::max(ymax, q.y());
            }
        }
        PhiCheckOptions opt;
        opt.grid = 100'000;
        opt.property1_samples = 1'000'000;
        opt.property2_disks = 10;
        opt.property2_pairs = 100;
        PhiMeasurements m;
        check_phi_properties(phi, opt, &m);
        o.require(m.lattice_hits == 0, "library property 1 lattice hits");
        o.require(m.integer_fiber_y_min > 0.49 && m.integer_fiber_y_max < 0.51, "library integer fibers");
    }
    o.detail << "lattice hits = " << hits << " (closest " << g(closest) << "), integer-fiber y in [" << g(ymin)
             << ", " << g(ymax) << "]";
    o.require(hits == 0, "lattice hits");
    o.require(ymin > 0.49 && ymax < 0.51, "integer fibers");
    return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion3()
{
    Outcome o;
    const double third = 1.0 / 3.0;
    std::size_t near = 0;
    double dx = 0, dy = 0, gap = INFINITY;
    const PeriodicDiffeo1D phi(1.0);
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int disk = 0; disk < 1000; ++disk) {
        const Vec2 c(2.0 * u(rng), 2.0 * u(rng));
        for (int k = 0; k < 1000; ++k) {
            const Vec2 a = c + in_disk(rng, third), b = c + in_disk(rng, third);
            const Vec2 pa = psi_eval(phi, a), diff = pa - psi_eval(phi, b);
            dx = std::max(dx, std::abs(diff.x()));
            const double lg = lattice_distance(diff, true);
            gap = std::min(gap, lg);
            if (lg < 1e-3) ++near;
            const double h = std::sqrt(std::max(0.0, third * third - (a.x() - c.x()) * (a.x() - c.x())));
            const Vec2 same(a.x(), c.y() + h * u(rng) * (1 - 1e-12));
            dy = std::max(dy, std::abs(pa.y() - psi_eval(phi, same).y()));
        }
    }
    PhiCheckOptions opt;
    opt.grid = 100'000;
    opt.property1_samples = 1000;
    PhiMeasurements m;
    check_phi_properties(phi, opt, &m);
    o.detail << "near-lattice differences = " << near << " (min gap " << g(gap) << "), max |dx| = " << g(dx)
             << " <= " << g(2.0 / 3 + 2e-4) << ", max same-fiber |dy| = " << g(dy) << " <= " << g(20.0 / 27 + 1e-6);
    o.require(near == 0, "lattice");
    o.require(dx <= 2.0 / 3.0 + 2e-4, "dx");
    o.require(dy <= 20.0 / 27.0 + 1e-6, "dy");
    o.require(m.near_lattice == 0 && m.max_dx <= 2.0 / 3.0 + 2e-4 && m.max_dy_same_fiber <= 20.0 / 27.0 + 1e-6,
              "library property 2");
    return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion4()
{
    Outcome o;
    std::ostringstream d;
    for (double R : {1.0 / 3.0, 1.0, 2.0}) {
        const auto L = build_polterovich_linear(R);
        const Mat& M = L.matrix;
        const double res = oracle_residual(M);
        const Mat Minv = M.inverse();
        // slices with (x2, y2) fixed: |B u + v| < R for u = (x1, y1)
        Eigen::Matrix<double, 4, 2> B;
        B.col(0) = Minv.col(0);
        B.col(1) = Minv.col(2);
        const Eigen::JacobiSVD<Mat> svd(B);
        const double smin = svd.singularValues().minCoeff();
        // projection to (x2, y2): support function R |M^T e|
        double S = 0;
        for (int k = 0; k < 3600; ++k) {
            const double th = 2 * kPi * k / 3600.0;
            Vec e = Vec::Zero(4);
            e[1] = std::cos(th);
            e[3] = std::sin(th);
            S = std::max(S, R * (M.transpose() * e).norm());
        }
        double section = 0;
        std::mt19937_64 rng(44);
        for (int k = 0; k < 20000; ++k) {
            const Vec2 c = in_disk(rng, S);
            Vec q = Vec::Zero(4);
            q[1] = c.x();
            q[3] = c.y();
            const Vec v = Minv * q;
            const Vec along = B * (B.transpose() * B).inverse() * B.transpose() * v;
            const double rest = R * R - (v - along).squaredNorm();
            if (rest > 0) section = std::max(section, std::sqrt(rest) / smin);
        }
        d << " R=" << g(R) << ": residual " << g(res) << ", section " << g(section) << ", S " << g(S) << " (10R^2 "
          << g(10 * R * R) << ", sqrt72 R^2 " << g(std::sqrt(72.0) * R * R) << ");";
        o.require(res <= 1e-12, "symplectic");
        o.require(section <= 1.0 / 3.0 + 1e-6, "section radius");
        o.require(S < 10 * R * R && S <= std::sqrt(72.0) * R * R + 1e-6, "projection radius");
    }
    o.detail << d.str();
    return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion5()
{
    Outcome o;
    for (double R : {1.0 / 3.0, 1.0, 2.0}) {
        const auto ml = build_main_lemma_map(R);
        std::mt19937_64 rng(55);
        double res = 0, fiber = 0, lat = INFINITY;
        std::size_t hits = 0;
        for (int k = 0; k < 100000; ++k) {
            const Vec p = in_ball(rng, 4, R);
            const Vec q = ml.lifted->eval(p);
            if (k % 10 == 0) res = std::max(res, oracle_residual(ml.lifted->jacobian(p)));
            fiber = std::max(fiber, std::hypot(q[1], q[3]));
            const double dl = lattice_distance(Vec2(q[0], q[2]), false);
            lat = std::min(lat, dl);
            if (dl < 1e-12) ++hits;
        }
        SampleSpec spec;
        spec.count = 100000;
        spec.seed = 5;
        InjectivityOptions io;
        io.lattice_period = 1.0;
        io.min_lattice_margin = 0.2;
        const auto inj = check_injective(*ml.map, ml.map->domain(), spec, io);
        const auto sym = check_symplectic(*ml.map, ml.map->domain(), spec, 1e-10);
        const auto con = check_containment(*ml.map, ml.map->domain(), ml.map->target(), spec);
        o.detail << " R=" << g(R) << ": residual " << g(std::max(res, sym.margin)) << ", lattice hits " << hits
                 << " (min dist " << g(lat) << "), max|(x2,y2)| " << g(fiber) << " < " << g(10 * R * R)
                 << ", separation margin " << g(inj.margin) << ";";
        o.require(res <= 1e-10 && sym.passed(), "symplectic");
        o.require(hits == 0, "lattice hits");
        o.require(fiber < 10 * R * R && con.passed(), "fiber radius");
        o.require(inj.passed() && inj.margin >= 0.2, "injectivity");
    }
    return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6()
{
    Outcome o;
    for (double w : {0.05, 0.1}) {
        const auto m = strip_lift(w, 2 * w);
        std::mt19937_64 rng(66);
        std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(-w, w);
        double res = 0, y1max = 0, y2min_centre = INFINITY, outside = -INFINITY;
        for (int k = 0; k < 100000; ++k) {
            const Vec2 f = in_disk(rng, w);
            Vec p(4);
            p << ux(rng), f.x(), uy(rng), f.y();
            const Vec q = m->eval(p);
            res = std::max(res, oracle_residual(m->jacobian(p)));
            y1max = std::max(y1max, std::abs(q[2]));
            if (std::abs(p[0]) <= 1.0 / 6.0) y2min_centre = std::min(y2min_centre, q[3]);
            outside = std::max(outside, std::max(std::hypot(q[0], q[2]) - 1.0, std::hypot(q[1], q[3] - w) - 2 * w));
        }
        o.detail << " w=" << g(w) << ": residual " << g(res) << ", max|y1| " << g(y1max) << " <= " << g(w + 14 * w * w)
                 << ", min y2 (|x1|<=1/6) " << g(y2min_centre) << ", worst containment " << g(outside) << ";";
        o.require(res <= 1e-13, "symplectic");
        o.require(y1max <= w + 14 * w * w && w + 14 * w * w < 0.5, "y1 bound");
        o.require(y2min_centre > w, "y2 lift");
        o.require(outside < 0, "image");
    }
    return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion7()
{
    Outcome o;
    const std::vector<std::array<double, 4>> cases{{1, 1, 1, 1}, {1, 40, 2, 20}, {1, 100, 10, 10}};
    for (const auto& [L1, L2, L1p, L2p] : cases) {
        const auto snake = snake_embedding(L1, L2, L1p, L2p);
        const int side = 317;  // > 10^5 grid points
        std::vector<Vec> grid;
        double smin = INFINITY, outside = -INFINITY;
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) {
                Vec p(2);
                p << L1 * (i + 0.5) / side, L2 * (j + 0.5) / side;
                grid.push_back(p);
                const Eigen::JacobiSVD<Mat> svd(snake->jacobian(p));
                smin = std::min(smin, svd.singularValues().minCoeff());
                const Vec q = snake->eval(p);
                outside = std::max({outside, -q[0], -q[1], q[0] - 5 * L1p, q[1] - 5 * L2p});
            }
        const auto inj = check_injective_points(*snake, grid);

        const auto lift = cotangent_lift(snake);
        SampleSpec spec;
        spec.count = 5000;
        spec.seed = 7;
        const auto sym = check_symplectic(*lift, lift->domain(), spec, 1e-6);
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(0.0, 1.0), f(-std::sqrt(0.5), std::sqrt(0.5));
        double growth = 0;
        for (int k = 0; k < 20000; ++k) {
            Vec p(4);
            p << L1 * u(rng), L2 * u(rng), f(rng), f(rng);
            const Vec q = lift->eval(p);
            growth = std::max(growth, std::hypot(q[2], q[3]) - std::hypot(p[2], p[3]));
        }
        o.detail << " (" << L1 << "," << L2 << "," << L1p << "," << L2p << "): min sv " << g(smin)
                 << ", worst box excess " << g(outside) << ", collisions " << (inj.passed() ? "none" : "FOUND")
                 << ", lift residual " << g(sym.margin) << ", max fiber-norm growth " << g(growth) << ";";
        o.require(smin >= 1 - 1e-9, "expanding");
        o.require(outside < 0, "image in 5X'");
        o.require(inj.passed(), "collisions");
        o.require(sym.passed() && sym.margin <= 1e-6, "lift symplectic");
        o.require(growth <= 1e-12, "fiber norm");
    }
    return o;
}

// ---------------------------------------------------------------- 8

// lambda ranges recomputed from each step's source radii
bool lambdas_in_range(const std::vector<EmbeddingClaim>& steps)
{
    for (const auto& s : steps) {
        const auto Q = s.source.polydisk_radii();
        if (!Q || !s.params.count("lambda")) continue;
        const double lambda = s.param("lambda");
        const auto at = [&](const char* k) { return (*Q)[static_cast<std::size_t>(s.param(k))]; };
        double hi = INFINITY;
        if (s.step == "prop1") hi = std::sqrt(at("b") / at("a"));
        if (s.step == "prop2-factors") hi = at("a") / at("i0");
        if (!(lambda >= 1 - 1e-12 && lambda <= hi * (1 + 1e-12))) return false;
    }
    return true;
}

Outcome criterion8()
{
    Outcome o;
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> lr(-2.0, 2.0), slack(0.0, 0.7);
    std::bernoulli_distribution tight(0.2);
    auto draw = [&](int n) {
        std::vector<double> r(static_cast<std::size_t>(n));
        for (auto& x : r) x = std::exp(lr(rng));
        std::sort(r.begin(), r.end());
        return r;
    };
    auto logprod = [](const std::vector<double>& r) {
        double s = 0;
        for (double x : r) s += std::log(x);
        return s;
    };
    ValidationOptions vo;
    vo.check_evidence = false;
    std::size_t feasible_ok = 0, rejected_ok = 0, total = 0;
    for (int n = 2; n <= 5; ++n) {
        std::optional<double> C;
        bool same_C = true;
        for (int k = 0; k < 200; ++k) {
            const auto R = draw(n);
            auto Rp = draw(n);
            // scale P' up until both hypotheses hold, sometimes with equality
            const double need = std::max(std::log(R[0] / Rp[0]), (logprod(R) - logprod(Rp)) / n);
            const double s = std::exp(std::max(0.0, need) + (tight(rng) ? 0.0 : slack(rng)));
            for (auto& x : Rp) x *= s;
            const auto plan = plan_theorem1(R, Rp);
            const bool ok = plan.feasible && validate_chain(plan.steps, vo).passed() &&
                            validate_chain({plan.theorem}, vo).passed() && lambdas_in_range(plan.steps);
            if (ok) ++feasible_ok;
            else if (std::getenv("ACCEPTANCE_VERBOSE")) {
                std::cerr << to_literal(ShapeDescriptor::polydisk(R)) << " -> " << to_literal(ShapeDescriptor::polydisk(Rp))
                          << " feasible=" << plan.feasible << " " << plan.rejection << "\n";
                if (plan.feasible)
                    for (const auto& nline : validate_chain(plan.steps, vo).notes) std::cerr << "  " << nline << "\n";
                std::cerr << "  lambdas " << lambdas_in_range(plan.steps) << "\n";
            }
            if (plan.feasible) {
                if (!C) C = plan.constant;
                same_C = same_C && plan.constant == *C;
            }
            ++total;
        }
        o.detail << " C(" << n << ") = " << (C ? g(*C) : "none") << (same_C ? "" : " (varies)") << ";";
        o.require(same_C, "constant identical for n = " + std::to_string(n));
        for (int k = 0; k < 200; ++k) {
            const bool squeeze = k % 2 == 0;
            std::vector<double> R, Rp;
            if (squeeze) {
                // R1 > R1' with plenty of volume
                R = draw(n);
                Rp = draw(n);
                Rp[0] = R[0] * (0.3 + 0.69 * slack(rng));
                for (std::size_t i = 1; i < Rp.size(); ++i) Rp[i] = std::max(Rp[i], R[0]) * std::exp(5.0);
            } else {
                // R1 <= R1' but the target volume falls short by a factor exp(-m)
                const double m = 0.01 + slack(rng);
                double u = -1;
                while (u < 0) {
                    R = draw(n);
                    u = std::min(0.3 * slack(rng), (logprod(R) - m) / n - std::log(R[0]));
                }
                Rp.assign(static_cast<std::size_t>(n), 0.0);
                Rp[0] = R[0] * std::exp(u);
                const double rest = std::exp((logprod(R) - m - std::log(Rp[0])) / (n - 1));
                for (int i = 1; i < n; ++i) Rp[static_cast<std::size_t>(i)] = rest;
                for (int i = 1; i + 1 < n; ++i) {
                    const double s = 0.5 * slack(rng);
                    if (Rp[static_cast<std::size_t>(i)] * std::exp(-s) < Rp[0]) continue;
                    Rp[static_cast<std::size_t>(i)] *= std::exp(-s);
                    Rp[static_cast<std::size_t>(i + 1)] *= std::exp(s);
                }
            }
            std::sort(Rp.begin(), Rp.end());
            const auto plan = plan_theorem1(R, Rp);
            const std::string want = squeeze ? "non-squeezing" : "volume", other = squeeze ? "volume" : "non-squeezing";
            if (!plan.feasible && plan.rejection.find(want) != std::string::npos &&
                plan.rejection.find(other) == std::string::npos)
                ++rejected_ok;
            else
                o.require(false, "rejection of " + to_literal(ShapeDescriptor::polydisk(R)) + " -> " +
                                     to_literal(ShapeDescriptor::polydisk(Rp)) + ": '" + plan.rejection + "'");
            ++total;
        }
    }
    o.detail << " feasible chains validated " << feasible_ok << "/800, infeasible rejected correctly " << rejected_ok;
    o.require(feasible_ok == 800, "feasible chains");
    o.require(rejected_ok == 800, "rejections");
    return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion9()
{
    Outcome o;
    for (double delta : {0.05, 0.01}) {
        RuleOptions ro;
        ro.attach_evidence = true;
        const auto claim = catalyst_claim(delta, ro);
        ValidationOptions vo;
        vo.evidence_samples = 2000;
        const auto report = validate_chain({claim}, vo);
        const auto verdict = obstruction_check(claim.source, claim.target);
        const double src = delta * 1.0, tgt = (2 * delta) * (10 * delta);
        const double lib_src = verdict.source_partial_products.at(1), lib_tgt = verdict.target_partial_products.at(1);
        o.detail << " delta=" << g(delta) << ": chain " << (report.passed() ? "validates" : "INVALID")
                 << ", R1R2 = " << g(lib_src) << " vs R1'R2' = " << g(lib_tgt) << ";";
        o.require(report.passed(), "chain at delta " + g(delta));
        o.require(std::abs(lib_src - src) <= 1e-15 && std::abs(lib_tgt - tgt) <= 1e-15, "partial products");
        o.require(verdict.nonsqueeze_ok, "non-squeezing is satisfied");
        o.require(lib_src > lib_tgt, "R1R2 exceeds R1'R2' at delta " + g(delta));
    }
    return o;
}

// ---------------------------------------------------------------- 10

Outcome criterion10()
{
    Outcome o;
    std::size_t agree = 0, cells = 0;
    for (double eps : {1.0, 0.1, 0.01})
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double W = 0.1 * (i + 1), Rc = 0.1 * (j + 1);
                const auto r = corollary2_deduce(eps, W, Rc);
                const bool contradiction = r.verdict == Corollary2Verdict::Contradiction;
                agree += contradiction == (W > Rc);
                ++cells;
            }
    o.detail << "corollary 2 verdicts matching W > R_cyl: " << agree << "/" << cells << ";";
    o.require(agree == cells, "corollary 2 grid");

    for (double R : {1.0 / 3.0, 1.0, 2.0})
        for (double eps : {1.0, 0.1, 0.01}) {
            const auto b = corollary1_budget(R, eps);
            const double fiber_vol = kPi * std::pow(10 * R * R, 2);
            const double exact = 4 * b.w * b.w * fiber_vol;
            // S x fiber sampled uniformly; a double point lies over |x1| < w
            std::mt19937_64 rng(1010);
            std::uniform_real_distribution<double> ux(-0.5, 0.5);
            const int n = 200000;
            int in = 0;
            for (int k = 0; k < n; ++k) in += std::abs(ux(rng)) < b.w;
            const double box = 2 * b.w * fiber_vol, p = static_cast<double>(in) / n;
            const double est = p * box, sigma = box * std::sqrt(p * (1 - p) / n);
            SampleSpec spec;
            spec.count = 50000;
            const auto lib = estimate_double_point_volume(StripImmersionModel(b.w),
                                                          ShapeDescriptor::polydisk({b.fiber_radius}), spec, eps);
            o.require(exact < eps, "budget below eps");
            o.require(std::abs(est - exact) <= 3 * sigma, "Monte Carlo within 3 sigma");
            o.require(std::abs(b.double_volume - exact) <= 1e-12 * exact, "budget volume");
            o.require(lib.passed(), "library double-point estimate");
            if (R == 1.0 && eps == 0.01)
                o.detail << " corollary 1 at R=1, eps=0.01: w = " << g(b.w) << ", 4w^2 vol = " << g(exact)
                         << ", MC " << g(est) << " +- " << g(sigma);
        }
    return o;
}

struct Criterion {
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all{
        {"Psi symplecticity", 5, criterion1},       {"Property 1", 10, criterion2},
        {"Property 2", 20, criterion3},             {"Polterovich L", 10, criterion4},
        {"Main lemma end-to-end", 30, criterion5},  {"strip lift flow", 10, criterion6},
        {"snake and cotangent lift", 30, criterion7}, {"planner", 20, criterion8},
        {"catalyst certificate", 5, criterion9},    {"corollaries", 10, criterion10},
    };
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::stoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 10; ++i) which.push_back(i);

    int failed = 0;
    for (int k : which) {
        if (k < 1 || k > 10) {
            std::cerr << "no criterion " << k << "\n";
            return 2;
        }
        const auto& c = all[static_cast<std::size_t>(k - 1)];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " threw: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs < c.budget, "runtime over " + g(c.budget) + " s");
        failed += !o.pass;
        std::cout << "criterion " << k << " " << (o.pass ? "PASS" : "FAIL") << " (" << c.name << ", " << g(secs)
                  << " s): " << o.detail.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
