#include "polyembed/certify/certificate_io.hpp"

#include <charconv>
#include <sstream>

#include "polyembed/errors.hpp"
#include "polyembed/shape_literal.hpp"

namespace polyembed {

namespace {

void write_claim(std::ostringstream& os, const EmbeddingClaim& c, int depth)
{
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string in = pad + "  ";
    os << pad << "begin claim\n";
    os << in << "label: " << c.label << "\n";
    if (!c.step.empty()) os << in << "step: " << c.step << "\n";
    os << in << "rule: " << to_string(c.rule) << "\n";
    if (c.citation != Citation::None) os << in << "citation: " << to_string(c.citation) << "\n";
    os << in << "source: " << to_literal(c.source) << "\n";
    os << in << "target: " << to_literal(c.target) << "\n";
    if (c.reshaped) os << in << "reshaped: " << to_literal(*c.reshaped) << "\n";
    os << in << "scale: " << format_double(c.scale) << "\n";
    for (const auto& [k, v] : c.params) os << in << "param " << k << " = " << format_double(v) << "\n";
    for (const auto& [label, v] : c.ledger.entries()) os << in << "ledger: " << label << " = " << format_double(v) << "\n";
    if (c.evidence) os << in << "evidence: " << c.evidence->dump() << "\n";
    if (c.evidence_domain) os << in << "evidence_domain: " << to_literal(*c.evidence_domain) << "\n";
    if (c.evidence_target) os << in << "evidence_target: " << to_literal(*c.evidence_target) << "\n";
    for (const auto& p : c.parts) write_claim(os, p, depth + 1);
    os << pad << "end\n";
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

class Parser {
public:
    explicit Parser(std::string_view text)
    {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t end = text.find('\n', start);
            const std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
            lines_.push_back(trim(line));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
    }

    std::vector<EmbeddingClaim> document()
    {
        std::vector<EmbeddingClaim> out;
        while (next()) {
            if (cur() != "begin claim") error("expected 'begin claim'");
            out.push_back(claim());
        }
        return out;
    }

private:
    // advance to the next non-blank, non-comment line
    bool next()
    {
        while (++at_ < lines_.size()) {
            const auto l = lines_[at_];
            if (!l.empty() && l.front() != '#') return true;
        }
        return false;
    }

    std::string_view cur() const { return lines_[at_]; }

    [[noreturn]] void error(const std::string& msg) const
    {
        throw ParseError("certificate line " + std::to_string(at_ + 1) + ": " + msg + " at '" + std::string(cur()) +
                         "'");
    }

    double number(std::string_view s) const
    {
        s = trim(s);
        double v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) error("bad number '" + std::string(s) + "'");
        return v;
    }

    ShapeDescriptor shape(std::string_view s) const
    {
        try {
            return parse_shape(s);
        } catch (const ParseError& e) {
            error(e.what());
        }
    }

    // "<label> = <number>" split at the last " = "
    std::pair<std::string, double> assignment(std::string_view s) const
    {
        const auto eq = s.rfind(" = ");
        if (eq == std::string_view::npos) error("expected 'name = value'");
        return {std::string(trim(s.substr(0, eq))), number(s.substr(eq + 3))};
    }

    EmbeddingClaim claim()
    {
        EmbeddingClaim c;
        bool have_source = false, have_target = false;
        while (true) {
            if (!next()) throw ParseError("certificate ends inside a claim block");
            const auto l = cur();
            if (l == "end") break;
            if (l == "begin claim") {
                c.parts.push_back(claim());
                continue;
            }
            if (l.rfind("param ", 0) == 0) {
                auto [k, v] = assignment(l.substr(6));
                c.params[k] = v;
                continue;
            }
            const auto colon = l.find(':');
            if (colon == std::string_view::npos) error("expected 'key: value'");
            const std::string key(l.substr(0, colon));
            const std::string_view val = trim(l.substr(colon + 1));
            try {
                if (key == "label") {
                    c.label = val;
                } else if (key == "step") {
                    c.step = val;
                } else if (key == "rule") {
                    c.rule = parse_rule(std::string(val));
                } else if (key == "citation") {
                    c.citation = parse_citation(std::string(val));
                } else if (key == "source") {
                    c.source = shape(val);
                    have_source = true;
                } else if (key == "target") {
                    c.target = shape(val);
                    have_target = true;
                } else if (key == "reshaped") {
                    c.reshaped = shape(val);
                } else if (key == "scale") {
                    c.scale = number(val);
                } else if (key == "ledger") {
                    auto [label, v] = assignment(val);
                    c.ledger.add(label, v);
                } else if (key == "evidence") {
                    c.evidence = nlohmann::json::parse(val);
                } else if (key == "evidence_domain") {
                    c.evidence_domain = shape(val);
                } else if (key == "evidence_target") {
                    c.evidence_target = shape(val);
                } else {
                    error("unknown key '" + key + "'");
                }
            } catch (const ParseError& e) {
                if (std::string_view(e.what()).rfind("certificate line", 0) == 0) throw;
                error(e.what());
            } catch (const std::exception& e) {
                error(e.what());
            }
        }
        if (!have_source || !have_target) error("claim block without source and target");
        return c;
    }

    std::vector<std::string_view> lines_;
    std::size_t at_ = static_cast<std::size_t>(-1);
};

}  // namespace

std::string write_certificate(const std::vector<EmbeddingClaim>& claims, const std::vector<std::string>& header)
{
    std::ostringstream os;
    for (const auto& h : header) os << "# " << h << "\n";
    for (const auto& c : claims) write_claim(os, c, 0);
    return os.str();
}

std::vector<EmbeddingClaim> parse_certificate(std::string_view text)
{
    return Parser(text).document();
}

}  // namespace polyembed
