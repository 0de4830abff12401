#include "polyembed/verify/phi_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polyembed/rng.hpp"
#include "polyembed/verify/parallel.hpp"

namespace polyembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 in_disk(CounterRng& rng, const Vec2& c, double r)
{
    const double th = 2.0 * std::numbers::pi * rng.uniform();
    const double rad = r * std::sqrt(rng.uniform());
    return c + rad * Vec2(std::cos(th), std::sin(th));
}

double lattice_distance(const Vec2& v) { return (v - Vec2(std::round(v.x()), std::round(v.y()))).norm(); }

// Distance from v to the nonzero lattice vectors.
double nonzero_lattice_distance(const Vec2& v)
{
    const double bx = std::round(v.x()), by = std::round(v.y());
    double best = kInf;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            const double nx = bx + i, ny = by + j;
            if (nx == 0.0 && ny == 0.0) continue;
            best = std::min(best, std::hypot(v.x() - nx, v.y() - ny));
        }
    }
    return best;
}

}  // namespace

VerificationReport check_phi_properties(const PeriodicDiffeo1D& phi, const PhiCheckOptions& opt, PhiMeasurements* out)
{
    Stopwatch sw;
    VerificationReport r;
    r.check = "phi-properties";
    PhiMeasurements m{};
    const double rho = phi.rho();

    // invariants of Phi on a grid over one period plus a dense spike grid
    {
        const std::size_t spike = 10'000;
        const std::size_t total = opt.grid + spike;
        struct Part {
            double dmin = kInf, per = 0, disp = 0, inv = 0;
        };
        const auto parts = parallel_chunks(total, [&](std::size_t b, std::size_t e) {
            Part p;
            for (std::size_t i = b; i < e; ++i) {
                const double x = i < opt.grid
                                     ? static_cast<double>(i) / static_cast<double>(opt.grid)
                                     : phi.delta() * (-3.0 + 6.0 * static_cast<double>(i - opt.grid) / spike);
                const double v = phi.value(x);
                p.dmin = std::min(p.dmin, phi.deriv(x));
                p.per = std::max(p.per, std::abs(phi.value(x + 1.0) - v - 1.0));
                p.disp = std::max(p.disp, std::abs(v - x));
                if (i % 16 == 0 || i >= opt.grid) p.inv = std::max(p.inv, std::abs(phi.inverse(v) - x));
            }
            return p;
        });
        m.min_deriv = kInf;
        for (const auto& p : parts) {
            m.min_deriv = std::min(m.min_deriv, p.dmin);
            m.periodicity_error = std::max(m.periodicity_error, p.per);
            m.displacement = std::max(m.displacement, p.disp);
            m.inverse_error = std::max(m.inverse_error, p.inv);
        }
        for (int k = -10; k <= 10; ++k) m.integer_error = std::max(m.integer_error, std::abs(phi.value(k) - k));
        m.deriv_at_zero = phi.deriv(0.0);
    }

    // Property 1 on random points of the radius-rho disk
    std::optional<Vec> p1_witness;
    {
        struct Part {
            std::size_t hits = 0;
            double dist = kInf;
            std::optional<Vec2> first;
        };
        const auto parts = parallel_chunks(opt.property1_samples, [&](std::size_t b, std::size_t e) {
            Part p;
            for (std::size_t i = b; i < e; ++i) {
                CounterRng rng(opt.seed, i);
                const Vec2 z = in_disk(rng, Vec2::Zero(), rho * (1.0 - 1e-9));
                const double d = lattice_distance(psi_eval(phi, z));
                p.dist = std::min(p.dist, d);
                if (d < 1e-12 && p.hits++ == 0) p.first = z;
            }
            return p;
        });
        m.lattice_distance = kInf;
        for (const auto& p : parts) {
            if (p.first && !p1_witness) p1_witness = Vec(*p.first);
            m.lattice_hits += p.hits;
            m.lattice_distance = std::min(m.lattice_distance, p.dist);
        }
    }

    // Property 1 on the fibers x = m, where Phi(x) is an integer
    double fiber_margin = kInf;
    {
        std::vector<int> fibers;
        for (int k = -static_cast<int>(std::floor(rho)); k <= static_cast<int>(std::floor(rho)); ++k)
            if (std::abs(k) < rho) fibers.push_back(k);
        const std::size_t per = std::max<std::size_t>(2, opt.integer_fiber_samples / fibers.size());
        m.integer_fiber_y_min = kInf;
        m.integer_fiber_y_max = -kInf;
        for (int k : fibers) {
            const double Y = std::sqrt(rho * rho - static_cast<double>(k) * k);
            for (std::size_t j = 1; j < per; ++j) {
                const double y = -Y + 2.0 * Y * static_cast<double>(j) / static_cast<double>(per);
                const Vec2 q = psi_eval(phi, Vec2(k, y));
                m.integer_fiber_y_min = std::min(m.integer_fiber_y_min, q.y());
                m.integer_fiber_y_max = std::max(m.integer_fiber_y_max, q.y());
                const double d = lattice_distance(q);
                fiber_margin = std::min(fiber_margin, d);
                if (d < 1e-12) {
                    ++m.lattice_hits;
                    if (!p1_witness) p1_witness = Vec(Vec2(k, y));
                }
                if ((q.y() <= 0.49 || q.y() >= 0.51) && !p1_witness) p1_witness = Vec(Vec2(k, y));
            }
        }
        m.lattice_distance = std::min(m.lattice_distance, fiber_margin);
    }

    // Property 2 on random radius-1/3 disks inside the radius-rho disk
    std::optional<Vec> p2_witness;
    {
        const double third = 1.0 / 3.0;
        struct Part {
            double dx = 0, dy = 0, gap = kInf;
            std::size_t near = 0;
            std::optional<Vec> first;
        };
        const auto parts = parallel_chunks(
            opt.property2_disks,
            [&](std::size_t b, std::size_t e) {
                Part p;
                for (std::size_t k = b; k < e; ++k) {
                    CounterRng crng(opt.seed + 0x9e37ULL, k);
                    const Vec2 c = in_disk(crng, Vec2::Zero(), std::max(0.0, rho - third));
                    for (std::size_t t = 0; t < opt.property2_pairs; ++t) {
                        CounterRng rng(opt.seed + 0x51ULL + k, t);
                        const Vec2 a = in_disk(rng, c, third * (1.0 - 1e-9));
                        const Vec2 bpt = in_disk(rng, c, third * (1.0 - 1e-9));
                        const Vec2 pa = psi_eval(phi, a);
                        const Vec2 diff = pa - psi_eval(phi, bpt);
                        p.dx = std::max(p.dx, std::abs(diff.x()));
                        const double g = nonzero_lattice_distance(diff);
                        p.gap = std::min(p.gap, g);
                        if (g < 1e-3 && p.near++ == 0) {
                            Vec w(4);
                            w << a, bpt;
                            p.first = w;
                        }
                        // a partner on the same fiber x = a.x inside the disk
                        const double h = std::sqrt(std::max(0.0, third * third - (a.x() - c.x()) * (a.x() - c.x())));
                        const double y2 = c.y() + h * (2.0 * rng.uniform() - 1.0) * (1.0 - 1e-9);
                        const Vec2 same = psi_eval(phi, Vec2(a.x(), y2));
                        p.dy = std::max(p.dy, std::abs(pa.y() - same.y()));
                    }
                }
                return p;
            },
            8);
        m.min_lattice_gap = kInf;
        for (const auto& p : parts) {
            m.max_dx = std::max(m.max_dx, p.dx);
            m.max_dy_same_fiber = std::max(m.max_dy_same_fiber, p.dy);
            m.min_lattice_gap = std::min(m.min_lattice_gap, p.gap);
            if (p.first && !p2_witness) p2_witness = p.first;
            m.near_lattice += p.near;
        }
    }

    auto require = [&](bool ok, const std::string& what) {
        if (!ok) {
            r.verdict = Verdict::Fail;
            r.notes.push_back("failed: " + what);
        }
    };
    require(m.min_deriv >= 0.9, "dPhi >= 9/10");
    require(std::abs(m.deriv_at_zero - 100.0 * rho) <= 1e-9 * 100.0 * rho, "dPhi(0) = 100 rho");
    require(m.periodicity_error <= 1e-12, "Phi(x + 1) = Phi(x) + 1");
    require(m.integer_error <= 1e-12, "Phi(m) = m");
    require(m.displacement <= 1e-4 && phi.displacement_bound() <= 1e-4, "|Phi(x) - x| <= 1e-4");
    require(m.inverse_error <= 1e-10, "inverse round trip");
    const bool p1 = m.lattice_hits == 0 && m.integer_fiber_y_min > 0.49 && m.integer_fiber_y_max < 0.51;
    require(p1, "property 1 (no lattice hits, integer-fiber y in (0.49, 0.51))");
    const bool p2 = m.max_dx <= 2.0 / 3.0 + 2e-4 && m.max_dy_same_fiber <= 20.0 / 27.0 + 1e-6 && m.near_lattice == 0;
    require(p2, "property 2 (aperiodic radius-1/3 disks)");
    if (!p1 && p1_witness) r.witnesses.push_back(*p1_witness);
    if (!p2 && p2_witness) r.witnesses.push_back(*p2_witness);
    if (r.verdict == Verdict::Fail && r.witnesses.empty()) r.witnesses.push_back(Vec::Zero(2));

    r.samples = opt.grid + opt.property1_samples + opt.property2_disks * opt.property2_pairs;
    r.tolerance = 1e-4;
    r.margin = fiber_margin;
    r.metrics = {
        {"rho", rho},
        {"delta", phi.delta()},
        {"min_deriv", m.min_deriv},
        {"deriv_at_zero", m.deriv_at_zero},
        {"periodicity_error", m.periodicity_error},
        {"integer_error", m.integer_error},
        {"displacement", m.displacement},
        {"displacement_bound", phi.displacement_bound()},
        {"inverse_error", m.inverse_error},
        {"p1_lattice_hits", static_cast<double>(m.lattice_hits)},
        {"p1_lattice_distance", m.lattice_distance},
        {"p1_integer_fiber_y_min", m.integer_fiber_y_min},
        {"p1_integer_fiber_y_max", m.integer_fiber_y_max},
        {"p2_max_dx", m.max_dx},
        {"p2_max_dy_same_fiber", m.max_dy_same_fiber},
        {"p2_min_lattice_gap", m.min_lattice_gap},
        {"p2_near_lattice", static_cast<double>(m.near_lattice)},
    };
    if (out) *out = m;
    r.wall_time = sw.seconds();
    return r;
}

}  // namespace polyembed
