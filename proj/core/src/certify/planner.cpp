#include "polyembed/certify/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyembed/errors.hpp"

namespace polyembed {

namespace {

constexpr double kFixedTol = 1e-13;

// Radii tracked by factor identity; claims see them sorted.
class Tracker {
public:
    Tracker(std::vector<double> r, const RuleOptions& opt, std::vector<EmbeddingClaim>& out)
        : cur_(std::move(r)), opt_(opt), out_(out)
    {
    }

    double operator[](int id) const { return cur_[static_cast<std::size_t>(id)]; }

    std::vector<double> sorted() const
    {
        std::vector<double> s = cur_;
        std::sort(s.begin(), s.end());
        return s;
    }

    // factor a grows by lambda, factor b shrinks by lambda
    void prop1(int a, int b, double lambda)
    {
        const auto [Q, pos] = sorted_positions();
        int pa = pos[a], pb = pos[b];
        if (pa > pb) {  // equal radii: the lower position plays the role of a
            std::swap(pa, pb);
            std::swap(a, b);
        }
        out_.push_back(prop1_step_on(Q, pa, pb, lambda, opt_));
        at(a) = lambda * Q[static_cast<std::size_t>(pa)];
        at(b) = Q[static_cast<std::size_t>(pb)] / lambda;
    }

    // with i0 fixed, factor a shrinks by lambda and factor b grows by lambda
    void prop2(int i0, int a, int b, double lambda)
    {
        const auto [Q, pos] = sorted_positions();
        const int p0 = pos[i0], pa = pos[a], pb = pos[b];
        out_.push_back(prop2_step_on(Q, p0, pa, pb, lambda, opt_));
        at(a) = Q[static_cast<std::size_t>(pa)] / lambda;
        at(b) = lambda * Q[static_cast<std::size_t>(pb)];
    }

    // lambda = 1 on the three smallest positions
    void prop2_noop()
    {
        const auto Q = sorted();
        out_.push_back(prop2_step_on(Q, 0, 1, 2, 1.0, opt_));
    }

private:
    double& at(int id) { return cur_[static_cast<std::size_t>(id)]; }

    std::pair<std::vector<double>, std::vector<int>> sorted_positions() const
    {
        std::vector<int> ids(cur_.size());
        std::iota(ids.begin(), ids.end(), 0);
        std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return (*this)[x] < (*this)[y]; });
        std::vector<int> pos(ids.size());
        std::vector<double> Q(ids.size());
        for (std::size_t k = 0; k < ids.size(); ++k) {
            pos[static_cast<std::size_t>(ids[k])] = static_cast<int>(k);
            Q[k] = (*this)[ids[k]];
        }
        return {Q, pos};
    }

    std::vector<double> cur_;
    const RuleOptions& opt_;
    std::vector<EmbeddingClaim>& out_;
};

double log_product(const std::vector<double>& r, std::size_t from = 0)
{
    double s = 0;
    for (std::size_t i = from; i < r.size(); ++i) s += std::log(r[i]);
    return s;
}

// Phase (i): radii 2..n to their geometric mean G in n-2 two-factor steps.
void equalize(Tracker& t, int n)
{
    std::vector<int> open(static_cast<std::size_t>(n - 1));
    std::iota(open.begin(), open.end(), 1);
    double lg = 0;
    for (int id : open) lg += std::log(t[id]);
    const double G = std::exp(lg / (n - 1));
    for (int k = 0; k < n - 2; ++k) {
        const auto [lo_it, hi_it] =
            std::minmax_element(open.begin(), open.end(), [&](int x, int y) { return t[x] < t[y]; });
        int lo = *lo_it, hi = *hi_it;
        if (lo == hi) hi = (lo == open.front()) ? open.back() : open.front();
        if (t[hi] <= t[lo] * (1 + kFixedTol)) {
            t.prop1(lo, hi, 1.0);
            open.erase(std::find(open.begin(), open.end(), hi));
            continue;
        }
        const double up = G / t[lo], down = t[hi] / G;
        const double lambda = std::max(1.0, std::min(up, down));
        t.prop1(lo, hi, lambda);
        open.erase(std::find(open.begin(), open.end(), up <= down ? lo : hi));
    }
}

// Phase (ii): factor 1 up to `first` in n-1 equal steps against each other factor.
void transfer(Tracker& t, int n, double first)
{
    const double lambda = std::max(1.0, std::pow(first / t[0], 1.0 / (n - 1)));
    for (int j = 1; j < n; ++j) t.prop1(0, j, lambda);
}

// Phase (iii): radii 2..n to targets below P' in n-2 three-factor steps.
void distribute(Tracker& t, int n, const std::vector<double>& goal)
{
    for (int k = 0; k < n - 2; ++k) {
        int a = -1, b = -1;
        for (int id = 1; id < n; ++id) {
            const double g = goal[static_cast<std::size_t>(id)];
            if (a < 0 && t[id] > g * (1 + kFixedTol)) a = id;
            if (b < 0 && t[id] < g * (1 - kFixedTol)) b = id;
        }
        if (a < 0 || b < 0) {
            t.prop2_noop();
            continue;
        }
        const double lambda = std::min(t[a] / goal[static_cast<std::size_t>(a)], goal[static_cast<std::size_t>(b)] / t[b]);
        t.prop2(0, a, b, lambda);
    }
}

// Targets for radii 2..n: max(R'_1, mu R'_i) with mu chosen so that their
// product equals prod_{i >= 2} current radii. Assigned to factor ids 1..n-1.
std::vector<double> distribution_goal(const Tracker& t, int n, const std::vector<double>& Rp)
{
    double want = 0;
    for (int id = 1; id < n; ++id) want += std::log(t[id]);
    const double floor = Rp[0];
    auto total = [&](double log_mu) {
        double s = 0;
        for (int i = 1; i < n; ++i) s += std::log(std::max(floor, std::exp(log_mu) * Rp[static_cast<std::size_t>(i)]));
        return s;
    };
    double lo = std::log(floor / Rp.back()), hi = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (total(mid) < want ? lo : hi) = mid;
    }
    std::vector<double> goal(static_cast<std::size_t>(n), 0.0);
    goal[0] = t[0];
    for (int i = 1; i < n; ++i) goal[static_cast<std::size_t>(i)] = std::max(floor, std::exp(hi) * Rp[static_cast<std::size_t>(i)]);
    return goal;
}

}  // namespace

Theorem1Plan plan_theorem1(const std::vector<double>& R_in, const std::vector<double>& Rp_in, const RuleOptions& opt)
{
    if (R_in.size() != Rp_in.size())
        throw DimensionMismatch("planner needs polydisks of equal dimension, got " + std::to_string(R_in.size()) +
                                " and " + std::to_string(Rp_in.size()) + " factors");
    if (R_in.size() < 2) throw std::invalid_argument("planner needs at least two factors");
    for (double r : R_in)
        if (!std::isfinite(r)) throw std::invalid_argument("planner needs finite radii");
    for (double r : Rp_in)
        if (!std::isfinite(r)) throw std::invalid_argument("planner needs finite radii");

    Theorem1Plan plan;
    plan.obstruction = obstruction_check(R_in, Rp_in);
    if (!plan.obstruction.ok()) {
        for (const auto& v : plan.obstruction.violations) plan.rejection += (plan.rejection.empty() ? "" : "; ") + v;
        return plan;
    }

    std::vector<double> R = R_in, Rp = Rp_in;
    std::sort(R.begin(), R.end());
    std::sort(Rp.begin(), Rp.end());
    const int n = static_cast<int>(R.size());

    Tracker t(R, opt, plan.steps);
    equalize(t, n);
    plan.after_equalize = t.sorted();

    // factor 1 cannot pass the common value of the others
    const bool cube = n * std::log(Rp[0]) > log_product(R);
    const double first = cube ? std::exp(log_product(R) / n) : Rp[0];
    transfer(t, n, first);
    plan.after_transfer = t.sorted();

    std::vector<double> goal(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id) goal[static_cast<std::size_t>(id)] = t[id];
    if (!cube) goal = distribution_goal(t, n, Rp);
    distribute(t, n, goal);
    plan.after_distribute = t.sorted();

    plan.steps.push_back(inclusion_claim("final inclusion", ShapeDescriptor::polydisk(plan.after_distribute),
                                         ShapeDescriptor::polydisk(Rp)));
    for (const auto& s : plan.steps) plan.ledger.append(s.ledger);
    plan.constant = plan.ledger.product();
    plan.theorem = compose_claims("Theorem 1", plan.steps, scale_shape(ShapeDescriptor::polydisk(Rp), plan.constant));
    plan.feasible = true;
    return plan;
}

}  // namespace polyembed
