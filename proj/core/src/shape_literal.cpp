#include "polyembed/shape_literal.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "polyembed/errors.hpp"

namespace polyembed {

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done()
    {
        skip_ws();
        return pos_ >= s_.size();
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a shape name");
        return std::string(s_.substr(start, pos_ - start));
    }
    double number()
    {
        skip_ws();
        double v = 0;
        const char* first = s_.data() + pos_;
        const char* last = s_.data() + s_.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc()) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - first);
        return v;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        const std::size_t end = std::min(s_.size(), pos_ + 12);
        throw ParseError(what + " at '" + std::string(s_.substr(pos_, end - pos_)) + "' (offset " +
                         std::to_string(pos_) + " in \"" + std::string(s_) + "\")");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<double> number_list(Lexer& lx)
{
    std::vector<double> v;
    lx.expect('(');
    if (lx.accept(')')) return v;
    do {
        v.push_back(lx.number());
    } while (lx.accept(','));
    lx.expect(')');
    return v;
}

void parse_factor(Lexer& lx, std::vector<ShapeFactor>& out)
{
    const std::string name = lx.ident();
    auto require = [&](bool ok, const char* what) {
        if (!ok) lx.fail(name + ": " + what);
    };
    if (name == "polydisk") {
        const auto r = number_list(lx);
        require(!r.empty(), "needs at least one radius");
        const auto pd = ShapeDescriptor::polydisk(r);
        for (const auto& f : pd.factors()) out.push_back(f);
    } else if (name == "disk") {
        const auto r = number_list(lx);
        require(r.size() == 1, "takes one radius");
        out.emplace_back(Disk2{r[0]});
    } else if (name == "tdisk") {
        const auto r = number_list(lx);
        require(r.size() == 3, "takes cx, cy, r");
        out.emplace_back(TranslatedDisk2{r[0], r[1], r[2]});
    } else if (name.rfind("ball", 0) == 0) {
        int dim = 0;
        const auto digits = std::string_view(name).substr(4);
        const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), dim);
        require(ec == std::errc() && p == digits.data() + digits.size() && dim >= 2 && dim % 2 == 0,
                "dimension must be even, e.g. ball4");
        const auto r = number_list(lx);
        require(r.size() == 1, "takes one radius");
        out.emplace_back(Ball{dim / 2, r[0]});
    } else if (name == "rect") {
        auto sides = number_list(lx);
        require(!sides.empty() && sides.size() % 2 == 0, "needs an even number of sides");
        out.emplace_back(Rectangle{std::vector<double>(sides.size(), 0.0), std::move(sides)});
    } else if (name == "box") {
        Rectangle r;
        lx.expect('(');
        do {
            const double lo = lx.number();
            lx.expect(':');
            const double hi = lx.number();
            require(hi > lo, "upper bound must exceed lower bound");
            r.lower.push_back(lo);
            r.sides.push_back(hi - lo);
        } while (lx.accept(','));
        lx.expect(')');
        require(r.sides.size() % 2 == 0, "needs an even number of intervals");
        out.emplace_back(std::move(r));
    } else if (name == "sigma") {
        const auto a = number_list(lx);
        require(a.size() == 1, "takes one area");
        out.emplace_back(Surface{a[0]});
    } else if (name == "plane") {
        require(number_list(lx).empty(), "takes no arguments");
        out.emplace_back(FullPlane{});
    } else if (name == "cyl") {
        const auto r = number_list(lx);
        require(r.size() == 1, "takes one radius");
        out.emplace_back(Disk2{r[0]});
        out.emplace_back(FullPlane{});
    } else {
        lx.fail("unknown shape '" + name + "'");
    }
}

}  // namespace

ShapeDescriptor parse_shape(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\n");
    const auto last = text.find_last_not_of(" \t\n");
    if (first != std::string_view::npos && text.substr(first, last - first + 1) == "none") return ShapeDescriptor{};
    Lexer lx(text);
    std::vector<ShapeFactor> factors;
    parse_factor(lx, factors);
    while (lx.accept('x') || lx.accept('*')) parse_factor(lx, factors);
    if (!lx.done()) lx.fail("trailing input");
    try {
        return ShapeDescriptor(std::move(factors));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in \"" + std::string(text) + "\"");
    }
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string to_literal(const ShapeDescriptor& shape)
{
    if (shape.factors().empty()) return "none";
    std::string out;
    for (const auto& f : shape.factors()) {
        if (!out.empty()) out += " x ";
        if (const auto* d = std::get_if<Disk2>(&f)) {
            out += "disk(" + format_double(d->radius) + ")";
        } else if (const auto* b = std::get_if<Ball>(&f)) {
            out += "ball" + std::to_string(2 * b->pairs) + "(" + format_double(b->radius) + ")";
        } else if (const auto* r = std::get_if<Rectangle>(&f)) {
            bool at_origin = true;
            for (double l : r->lower) at_origin = at_origin && l == 0.0;
            std::string body;
            for (std::size_t i = 0; i < r->sides.size(); ++i) {
                if (i) body += ",";
                body += at_origin ? format_double(r->sides[i])
                                  : format_double(r->lower[i]) + ":" + format_double(r->lower[i] + r->sides[i]);
            }
            out += (at_origin ? "rect(" : "box(") + body + ")";
        } else if (const auto* s = std::get_if<Surface>(&f)) {
            out += "sigma(" + format_double(s->area) + ")";
        } else if (std::holds_alternative<FullPlane>(f)) {
            out += "plane()";
        } else {
            const auto& t = std::get<TranslatedDisk2>(f);
            out += "tdisk(" + format_double(t.cx) + "," + format_double(t.cy) + "," + format_double(t.radius) + ")";
        }
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        std::string_view tok = text.substr(pos, comma - pos);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
        double v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("bad number '" + std::string(tok) + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

}  // namespace polyembed
