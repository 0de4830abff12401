#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "output.hpp"
#include "polyembed/certify/certificate_io.hpp"
#include "polyembed/certify/planner.hpp"
#include "polyembed/certify/validate.hpp"
#include "polyembed/errors.hpp"
#include "polyembed/maps/cotangent_lift.hpp"
#include "polyembed/maps/descriptor.hpp"
#include "polyembed/maps/disk_rectangle.hpp"
#include "polyembed/maps/main_lemma.hpp"
#include "polyembed/maps/periodic_diffeo.hpp"
#include "polyembed/maps/snake.hpp"
#include "polyembed/maps/strip.hpp"
#include "polyembed/sampling.hpp"
#include "polyembed/shape_literal.hpp"
#include "polyembed/verify/checks.hpp"

namespace polyembed::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out_dir;
    std::size_t N = 10000;
    std::uint64_t seed = 1;
};

fs::path output_dir(const Common& c)
{
    if (!c.out_dir.empty()) return c.out_dir;
    if (const char* e = std::getenv("POLYEMBED_OUT"); e != nullptr && *e != '\0') return e;
    return ".";
}

std::vector<double> parse_radii(const std::string& s)
{
    if (s.find('(') != std::string::npos) {
        const auto r = parse_shape(s).polydisk_radii();
        if (!r) throw ParseError("'" + s + "' is not a polydisk");
        return *r;
    }
    return parse_real_list(s);
}

std::pair<double, double> parse_pair(const std::string& s, const char* flag)
{
    const auto v = parse_real_list(s);
    if (v.size() != 2) throw UsageError(std::string(flag) + " needs two comma-separated numbers, got '" + s + "'");
    return {v[0], v[1]};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string kind;
    double R = 1.0;
    double rho = 1.0;
    double w = 0.1;
    double t = -1.0;
    std::string X, Xp, P, Pp;
    std::string out;
};

const std::vector<std::string> kBuildKinds{"main-lemma", "linear",  "phi-shear",     "strip-lift",
                                           "snake",      "cotangent-lift", "appendix", "disk-rectangle"};

MapPtr build_map(const BuildArgs& a, std::string& name)
{
    const auto f = [](double v) { return format_double(v); };
    if (a.kind == "main-lemma") {
        name = "main_lemma_R" + f(a.R);
        return build_main_lemma_map(a.R).map;
    }
    if (a.kind == "linear") {
        name = "linear_R" + f(a.R);
        return build_polterovich_linear(a.R).map;
    }
    if (a.kind == "phi-shear") {
        name = "phi_shear_rho" + f(a.rho);
        return make_phi_shear(PeriodicDiffeo1D(a.rho));
    }
    if (a.kind == "strip-lift") {
        const double t = a.t < 0 ? 2.0 * a.w : a.t;
        name = "strip_lift_w" + f(a.w) + "_t" + f(t);
        return strip_lift(a.w, t);
    }
    if (a.kind == "disk-rectangle") {
        name = "disk_rectangle_R" + f(a.R);
        return disk_rectangle_map(a.R);
    }
    if (a.kind == "snake" || a.kind == "cotangent-lift") {
        if (a.X.empty() || a.Xp.empty()) throw UsageError(a.kind + " needs --X and --Xp");
        const auto [L1, L2] = parse_pair(a.X, "--X");
        const auto [L1p, L2p] = parse_pair(a.Xp, "--Xp");
        const std::string dims = f(L1) + "_" + f(L2) + "_" + f(L1p) + "_" + f(L2p);
        auto snake = snake_embedding(L1, L2, L1p, L2p);
        if (a.kind == "snake") {
            name = "snake_" + dims;
            return snake;
        }
        name = "cotangent_lift_" + dims;
        return cotangent_lift(snake);
    }
    if (a.kind == "appendix") {
        if (a.P.empty() || a.Pp.empty()) throw UsageError("appendix needs --P and --Pp");
        const auto [r1, r2] = parse_pair(a.P, "--P");
        const auto [r1p, r2p] = parse_pair(a.Pp, "--Pp");
        name = "appendix_" + f(r1) + "_" + f(r2) + "_" + f(r1p) + "_" + f(r2p);
        return build_appendix_chain_for_radii(r1, r2, r1p, r2p).map;
    }
    throw UsageError("unknown map kind '" + a.kind + "' (expected one of " + join(kBuildKinds, ", ") + ")");
}

int cmd_build(const BuildArgs& a, const Common& c, std::ostream& out)
{
    std::string name;
    const MapPtr m = build_map(a, name);
    const fs::path path = a.out.empty() ? output_dir(c) / (name + ".json") : fs::path(a.out);
    write_atomic(path, to_descriptor(*m).dump(2) + "\n");
    out << "wrote " << path.string() << "\n";
    out << "kind=" << to_string(m->kind()) << " domain=" << to_literal(m->domain())
        << " target=" << to_literal(m->target()) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- verify / report

struct VerifyArgs {
    std::string map;
    std::string checks = "symplectic,injective,containment";
    std::string domain;
    std::string target;
    std::string mode = "uniform";
    double tol = -1.0;
    double plane_radius = -1.0;
    double min_margin = 0.0;
};

struct LoadedMap {
    MapPtr map;
    fs::path path;
    std::string stem;
};

LoadedMap load_map(const std::string& ref, const Common& c)
{
    fs::path p = ref;
    if (!fs::exists(p)) {
        const fs::path alt = output_dir(c) / (ref + ".json");
        if (!fs::exists(alt)) throw UsageError("map descriptor not found: '" + ref + "'");
        p = alt;
    }
    std::ifstream f(p);
    if (!f) throw UsageError("cannot read '" + p.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + p.string() + "' is not a JSON document: " + e.what());
    }
    return {map_from_descriptor(j), p, p.stem().string()};
}

std::optional<double> lattice_of(const MapNode& m)
{
    if (m.kind() != MapKind::Composition) return std::nullopt;
    const auto kids = m.children();
    if (kids.empty() || kids.front()->kind() != MapKind::TorusQuotient) return std::nullopt;
    return static_cast<const TorusQuotientNode&>(*kids.front()).period();
}

const std::vector<std::string> kChecks{"symplectic", "injective", "containment", "volume", "expanding"};

std::vector<VerificationReport> run_checks(const MapNode& m, const std::vector<std::string>& checks,
                                           const VerifyArgs& a, const Common& c)
{
    const ShapeDescriptor dom = a.domain.empty() ? m.domain() : parse_shape(a.domain);
    const ShapeDescriptor tgt = a.target.empty() ? m.target() : parse_shape(a.target);
    if (dom.dimension() != m.dimension() || tgt.dimension() != m.dimension())
        throw UsageError("domain/target dimension differs from the map's dimension " + std::to_string(m.dimension()));
    SampleSpec spec;
    spec.count = c.N;
    spec.seed = c.seed;
    spec.mode = parse_sample_mode(a.mode);
    if (a.plane_radius > 0) spec.plane_radius = a.plane_radius;

    std::vector<VerificationReport> out;
    for (const auto& name : checks) {
        if (name == "symplectic") {
            out.push_back(check_symplectic(m, dom, spec, a.tol > 0 ? std::optional<double>(a.tol) : std::nullopt));
        } else if (name == "injective") {
            InjectivityOptions io;
            io.lattice_period = lattice_of(m);
            io.min_lattice_margin = a.min_margin;
            out.push_back(check_injective(m, dom, spec, io));
        } else if (name == "containment") {
            out.push_back(check_containment(m, dom, tgt, spec));
        } else if (name == "volume") {
            out.push_back(check_volume_preserved(m, dom, spec));
        } else if (name == "expanding") {
            out.push_back(check_expanding(m, dom, spec));
        }
    }
    return out;
}

std::vector<std::string> parse_checks(const std::string& s)
{
    auto checks = split(s, ',');
    if (checks.empty()) throw UsageError("--checks is empty");
    for (const auto& name : checks)
        if (std::find(kChecks.begin(), kChecks.end(), name) == kChecks.end())
            throw UsageError("unknown check '" + name + "' (expected " + join(kChecks, ", ") + ")");
    return checks;
}

nlohmann::json config_json(const std::string& command, const LoadedMap& lm, const std::vector<std::string>& checks,
                           const VerifyArgs& a, const Common& c)
{
    return {{"command", command},
            {"map", lm.path.string()},
            {"checks", checks},
            {"N", c.N},
            {"seed", c.seed},
            {"mode", a.mode},
            {"domain", a.domain.empty() ? to_literal(lm.map->domain()) : a.domain},
            {"target", a.target.empty() ? to_literal(lm.map->target()) : a.target},
            {"tol", a.tol > 0 ? nlohmann::json(a.tol) : nlohmann::json("default")},
            {"min_lattice_margin", a.min_margin}};
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out)
{
    const auto checks = parse_checks(a.checks);
    const LoadedMap lm = load_map(a.map, c);
    const auto reports = run_checks(*lm.map, checks, a, c);
    const nlohmann::json cfg = config_json("verify", lm, checks, a, c);

    std::string text;
    for (const auto& [k, v] : cfg.items()) text += "# " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    nlohmann::json doc{{"config", cfg}, {"reports", nlohmann::json::array()}};
    for (const auto& r : reports) {
        text += "\n" + to_key_value(r);
        doc["reports"].push_back(to_json(r));
    }
    const Verdict v = combine(reports);
    doc["verdict"] = to_string(v);
    const fs::path dir = output_dir(c);
    write_atomic(dir / (lm.stem + ".verify.txt"), text);
    write_atomic(dir / (lm.stem + ".verify.json"), doc.dump(2) + "\n");

    for (const auto& r : reports) {
        out << r.check << ": " << to_string(r.verdict) << " margin=" << format_double(r.margin) << "\n";
        for (const auto& n : r.notes) out << "  " << n << "\n";
    }
    out << "verdict: " << to_string(v) << "\n";
    out << "reports: " << (dir / (lm.stem + ".verify.txt")).string() << "\n";
    return v == Verdict::Pass ? kExitOk : kExitFail;
}

int cmd_report(VerifyArgs a, const Common& c, std::ostream& out)
{
    const LoadedMap lm = load_map(a.map, c);
    std::vector<std::string> checks{"symplectic", "injective", "containment"};
    const ShapeDescriptor dom = a.domain.empty() ? lm.map->domain() : parse_shape(a.domain);
    if (dom.bounded() || a.plane_radius > 0) checks.push_back("volume");
    if (lm.map->kind() == MapKind::Snake) checks.push_back("expanding");
    const auto reports = run_checks(*lm.map, checks, a, c);
    nlohmann::json doc{{"config", config_json("report", lm, checks, a, c)},
                       {"descriptor", to_descriptor(*lm.map)},
                       {"reports", nlohmann::json::array()}};
    for (const auto& r : reports) doc["reports"].push_back(to_json(r));
    const Verdict v = combine(reports);
    doc["verdict"] = to_string(v);
    const std::string text = doc.dump(2) + "\n";
    write_atomic(output_dir(c) / (lm.stem + ".report.json"), text);
    out << text;
    return v == Verdict::Pass ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- plan

struct PlanArgs {
    std::string P, Pp;
    bool evidence = false;
    std::string out;
};

int cmd_plan(const PlanArgs& a, const Common& c, std::ostream& out)
{
    const auto R = parse_radii(a.P);
    const auto Rp = parse_radii(a.Pp);
    RuleOptions ro;
    ro.attach_evidence = a.evidence;
    const auto plan = plan_theorem1(R, Rp, ro);
    std::vector<std::string> header{"polyembed plan P=" + to_literal(ShapeDescriptor::polydisk(R)) +
                                    " P'=" + to_literal(ShapeDescriptor::polydisk(Rp))};
    if (!plan.feasible) {
        header.push_back("infeasible: " + plan.rejection);
        for (const auto& h : header) out << "# " << h << "\n";
        return kExitFail;
    }
    ValidationOptions vo;
    vo.seed = c.seed;
    const auto report = validate_chain(plan.steps, vo);
    header.push_back("feasible: " + std::to_string(plan.steps.size()) + " claims");
    header.push_back("achieved constant C(" + std::to_string(R.size()) + ") = " + format_double(plan.constant));
    for (const auto& [label, k] : plan.ledger.entries()) header.push_back("ledger " + label + " = " + format_double(k));
    header.push_back("validation: " + std::string(to_string(report.verdict)));
    for (const auto& n : report.notes) header.push_back("  " + n);
    const std::string doc = write_certificate(plan.steps, header);
    if (!a.out.empty()) write_atomic(a.out, doc);
    out << doc;
    return report.passed() ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- figure

struct FigureArgs {
    std::string kind;
    double rho = 3.0;
    double ball = 3.0;
    double w = 0.1;
    std::string X = "1,40";
    std::string Xp = "2,20";
    bool svg = false;
};

void emit_figure(const std::string& name, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, const std::vector<SvgLayer>& layers, bool svg,
                 const Common& c, std::ostream& out)
{
    const fs::path dir = output_dir(c);
    write_atomic(dir / (name + ".csv"), to_csv(columns, rows));
    out << "wrote " << (dir / (name + ".csv")).string() << " (" << rows.size() << " points)\n";
    if (svg) {
        write_atomic(dir / (name + ".svg"), to_svg(layers, name));
        out << "wrote " << (dir / (name + ".svg")).string() << "\n";
    }
}

int cmd_figure(const FigureArgs& a, const Common& c, std::ostream& out)
{
    SampleSpec spec;
    spec.count = c.N;
    spec.seed = c.seed;
    if (a.kind == "psi") {
        // image of a disk under Psi: spikes of Phi push x away from the integers
        if (!(a.ball > 0)) throw UsageError("--ball must be positive");
        const PeriodicDiffeo1D phi(a.rho);
        std::vector<std::vector<double>> rows;
        SvgLayer layer{{}, "steelblue", {}};
        for (const auto& p : sample(ShapeDescriptor::polydisk({a.ball}), spec)) {
            const Vec2 q = psi_eval(phi, Vec2(p[0], p[1]));
            rows.push_back({p[0], p[1], q[0], q[1]});
            layer.points.push_back({q[0], q[1]});
        }
        emit_figure("figure_psi", {"x", "y", "X", "Y"}, rows, {layer}, a.svg, c, out);
        return kExitOk;
    }
    if (a.kind == "snake") {
        const auto [L1, L2] = parse_pair(a.X, "--X");
        const auto [L1p, L2p] = parse_pair(a.Xp, "--Xp");
        const MapPtr m = snake_embedding(L1, L2, L1p, L2p);
        spec.mode = SampleMode::Grid;
        const auto [lo, hi] = bounding_box(m->target());
        SvgLayer layer{{}, "darkred", {{{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}}}};
        std::vector<std::vector<double>> rows;
        for (const auto& p : sample(m->domain(), spec)) {
            const Vec q = m->eval(p);
            rows.push_back({p[0], p[1], q[0], q[1]});
            layer.points.push_back({q[0], q[1]});
        }
        emit_figure("figure_snake", {"u", "v", "X", "Y"}, rows, {layer}, a.svg, c, out);
        return kExitOk;
    }
    if (a.kind == "strips") {
        // region codes: 1 horizontal strip, 2 vertical strip, 3 overlap, 4 connector
        const StripImmersionModel model(a.w);
        const auto side = static_cast<std::size_t>(std::max(2.0, std::sqrt(static_cast<double>(c.N))));
        std::vector<std::vector<double>> rows;
        std::vector<SvgLayer> layers{{{}, "royalblue", {}}, {{}, "seagreen", {}}, {{}, "crimson", {}},
                                     {{}, "gray", {}}};
        for (std::size_t k = 0; k < side * side; ++k) {
            const double x = -1.0 + 2.0 * static_cast<double>(k % side) / static_cast<double>(side - 1);
            const double y = -1.0 + 2.0 * static_cast<double>(k / side) / static_cast<double>(side - 1);
            int region = 0;
            if (model.in_overlap(x, y))
                region = 3;
            else if (model.in_horizontal(x, y))
                region = 1;
            else if (model.in_vertical(x, y))
                region = 2;
            else if (model.in_connector(x, y))
                region = 4;
            if (region == 0) continue;
            const int count = model.in_unit_square(x, y) ? model.preimage_count(x, y) : 1;
            rows.push_back({x, y, static_cast<double>(region), static_cast<double>(count)});
            layers[static_cast<std::size_t>(region - 1)].points.push_back({x, y});
        }
        emit_figure("figure_strips", {"x", "y", "region", "preimages"}, rows, layers, a.svg, c, out);
        return kExitOk;
    }
    throw UsageError("unknown figure '" + a.kind + "' (expected psi, snake or strips)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"polyembed: symplectic polydisk embeddings, their verification and embedding certificates", "polyembed"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file of option values (shape literals allowed)");
    Common common;
    app.add_option("--out-dir", common.out_dir, "Output directory (default $POLYEMBED_OUT or .)");
    app.add_option("--N", common.N, "Sample count")->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "Sampling seed");

    BuildArgs ba;
    auto* build = app.add_subcommand("build", "Build a map and write its descriptor");
    build->add_option("kind", ba.kind, join(kBuildKinds, " | "))->required();
    build->add_option("--R", ba.R, "Ball radius");
    build->add_option("--rho", ba.rho, "Disk radius for Phi");
    build->add_option("--w", ba.w, "Strip half-width");
    build->add_option("--t", ba.t, "Lift time (default 2w)");
    build->add_option("--X", ba.X, "Rectangle sides L1,L2");
    build->add_option("--Xp", ba.Xp, "Rectangle sides L1',L2'");
    build->add_option("--P", ba.P, "Source radii r1,r2");
    build->add_option("--Pp", ba.Pp, "Target radii r1',r2'");
    build->add_option("--out", ba.out, "Descriptor path");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run verification checks on a map descriptor");
    auto* report = app.add_subcommand("report", "Run every applicable check and print one document");
    for (auto* sub : {verify, report}) {
        sub->add_option("--map", va.map, "Descriptor file or name in the output directory")->required();
        sub->add_option("--domain", va.domain, "Sampling domain (shape literal)");
        sub->add_option("--target", va.target, "Containment target (shape literal)");
        sub->add_option("--mode", va.mode, "grid | uniform | boundary");
        sub->add_option("--tol", va.tol, "Symplectic residual tolerance");
        sub->add_option("--plane-radius", va.plane_radius, "Radius standing in for R^2 factors");
        sub->add_option("--min-lattice-margin", va.min_margin, "Required lattice margin");
    }
    verify->add_option("--checks", va.checks, join(kChecks, ","));

    PlanArgs pa;
    auto* plan = app.add_subcommand("plan", "Plan and validate a polydisk embedding certificate");
    plan->add_option("--P", pa.P, "Source radii")->required();
    plan->add_option("--Pp", pa.Pp, "Target radii")->required();
    plan->add_flag("--evidence", pa.evidence, "Attach explicit maps as evidence");
    plan->add_option("--out", pa.out, "Certificate path");

    FigureArgs fa;
    auto* figure = app.add_subcommand("figure", "Write image point clouds as CSV (and SVG)");
    figure->add_option("kind", fa.kind, "psi | snake | strips")->required();
    figure->add_option("--rho", fa.rho, "Phi parameter");
    figure->add_option("--ball", fa.ball, "Radius of the sampled disk");
    figure->add_option("--w", fa.w, "Strip half-width");
    figure->add_option("--X", fa.X, "Rectangle sides L1,L2");
    figure->add_option("--Xp", fa.Xp, "Rectangle sides L1',L2'");
    figure->add_flag("--svg", fa.svg, "Also write an SVG rendering");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (build->parsed()) return cmd_build(ba, common, out);
        if (verify->parsed()) return cmd_verify(va, common, out);
        if (report->parsed()) return cmd_report(va, common, out);
        if (plan->parsed()) return cmd_plan(pa, common, out);
        if (figure->parsed()) return cmd_figure(fa, common, out);
    } catch (const std::exception& e) {
        // bad literals, violated hypotheses, missing files
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace polyembed::cli
