#include "grassfold/svg.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "grassfold/errors.hpp"

namespace grassfold {

namespace {

struct Mapper {
    const SvgOptions& o;
    double sx(double x) const { return (x - o.x0) / (o.x1 - o.x0) * o.width; }
    double sy(double y) const { return o.height - (y - o.y0) / (o.y1 - o.y0) * o.height; }
};

double to_double(const Rat& r) { return mpq_get_d(r.get_mpq_t()); }

// affine coordinates of a projective point (x0 : x1 : x2) with x0 != 0
std::optional<std::pair<double, double>> affine_point(const ProjPoint& p) {
    if (p.coords[0] == 0) return std::nullopt;
    return std::make_pair(to_double(p.coords[1] / p.coords[0]),
                          to_double(p.coords[2] / p.coords[0]));
}

// implicit form a + b x + c y = 0 of a projective line from its RREF basis
std::optional<std::array<double, 3>> line_coeffs(const Subspace& s) {
    if (s.dim() != 1 || s.ambient() != 2) return std::nullopt;
    const auto u = s.basis.row(0), v = s.basis.row(1);
    Rat a = u[1] * v[2] - u[2] * v[1];
    Rat b = u[2] * v[0] - u[0] * v[2];
    Rat c = u[0] * v[1] - u[1] * v[0];
    return std::array<double, 3>{to_double(a), to_double(b), to_double(c)};
}

// clip a + b x + c y = 0 against the window rectangle
std::optional<std::array<double, 4>> clip_line(double a, double b, double c,
                                               const SvgOptions& o) {
    std::vector<std::pair<double, double>> hits;
    auto push = [&](double x, double y) {
        for (auto& [px, py] : hits)
            if (std::abs(px - x) + std::abs(py - y) < 1e-9) return;
        hits.emplace_back(x, y);
    };
    if (std::abs(c) > 1e-12) {
        for (double x : {o.x0, o.x1}) {
            double y = -(a + b * x) / c;
            if (y >= o.y0 - 1e-9 && y <= o.y1 + 1e-9) push(x, y);
        }
    }
    if (std::abs(b) > 1e-12) {
        for (double y : {o.y0, o.y1}) {
            double x = -(a + c * y) / b;
            if (x >= o.x0 - 1e-9 && x <= o.x1 + 1e-9) push(x, y);
        }
    }
    if (hits.size() < 2) return std::nullopt;
    return std::array<double, 4>{hits[0].first, hits[0].second, hits[1].first, hits[1].second};
}

}  // namespace

std::string render_svg(const std::optional<Configuration>& points,
                       const std::optional<LinearConfiguration>& arrangement,
                       const SvgOptions& opt) {
    if (points && points->ambient != 2)
        throw precondition_error("render: only plane configurations are drawable");
    if (arrangement && arrangement->ambient != 2)
        throw precondition_error("render: only plane arrangements are drawable");
    Mapper mp{opt};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
       << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (arrangement) {
        for (const auto& s : arrangement->subspaces) {
            if (auto lc = line_coeffs(s)) {
                if (auto seg = clip_line((*lc)[0], (*lc)[1], (*lc)[2], opt)) {
                    os << "  <line x1=\"" << mp.sx((*seg)[0]) << "\" y1=\"" << mp.sy((*seg)[1])
                       << "\" x2=\"" << mp.sx((*seg)[2]) << "\" y2=\"" << mp.sy((*seg)[3])
                       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
                }
            }
        }
        for (const auto& s : arrangement->subspaces) {
            if (s.dim() != 0) continue;
            ProjPoint p = point_of_subspace(s);
            bool marked = false;
            if (points)
                for (const auto& q : points->points)
                    if (q == p) marked = true;
            if (marked) continue;
            if (auto a = affine_point(p)) {
                os << "  <circle cx=\"" << mp.sx(a->first) << "\" cy=\"" << mp.sy(a->second)
                   << "\" r=\"2.5\" fill=\"none\" stroke=\"gray\"/>\n";
            }
        }
    }
    if (points) {
        for (int j = 0; j < points->size(); ++j) {
            auto a = affine_point(points->points[j]);
            if (!a) continue;
            double cx = mp.sx(a->first), cy = mp.sy(a->second);
            os << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"4\" fill=\"black\"/>\n";
            if (opt.labels)
                os << "  <text x=\"" << cx + 6 << "\" y=\"" << cy - 6
                   << "\" font-size=\"14\">x" << j << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace grassfold
