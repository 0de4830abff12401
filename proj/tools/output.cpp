#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "polyembed/shape_literal.hpp"

namespace polyembed::cli {

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
        if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string to_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ",";
            out += format_double(r[i]);
        }
        out += "\n";
    }
    return out;
}

std::string to_svg(const std::vector<SvgLayer>& layers, const std::string& title)
{
    constexpr double kSize = 800.0, kPad = 20.0;
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    auto grow = [&](const std::array<double, 2>& p) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    };
    for (const auto& l : layers) {
        for (const auto& p : l.points) grow(p);
        for (const auto& o : l.outlines)
            for (const auto& p : o) grow(p);
    }
    if (!(x1 > x0)) x0 -= 1, x1 += 1;
    if (!(y1 > y0)) y0 -= 1, y1 += 1;
    const double s = (kSize - 2 * kPad) / std::max(x1 - x0, y1 - y0);
    auto sx = [&](double x) { return format_double(std::round((kPad + (x - x0) * s) * 100) / 100); };
    auto sy = [&](double y) { return format_double(std::round((kSize - kPad - (y - y0) * s) * 100) / 100); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
       << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& l : layers) {
        for (const auto& o : l.outlines) {
            os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
            for (std::size_t i = 0; i < o.size(); ++i) os << (i ? " " : "") << sx(o[i][0]) << "," << sy(o[i][1]);
            os << "\"/>\n";
        }
    }
    for (const auto& l : layers) {
        os << "<g fill=\"" << l.color << "\">\n";
        for (const auto& p : l.points) os << "<circle cx=\"" << sx(p[0]) << "\" cy=\"" << sy(p[1]) << "\" r=\"1\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace polyembed::cli
