#include "grassfold/projective.hpp"

#include <algorithm>

#include "grassfold/errors.hpp"

namespace grassfold {

std::strong_ordering ProjPoint::operator<=>(const ProjPoint& o) const {
    if (coords.size() != o.coords.size()) return coords.size() <=> o.coords.size();
    for (size_t i = 0; i < coords.size(); ++i) {
        int c = cmp(coords[i], o.coords[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

ProjPoint make_point(std::vector<Rat> coords) {
    int lead = -1;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) {
            lead = int(i);
            break;
        }
    }
    if (lead < 0) throw degenerate_input("projective point cannot be the zero vector");
    Rat inv = coords[lead];
    for (auto& c : coords) c /= inv;
    return ProjPoint{std::move(coords)};
}

Subspace subspace_from_rows(const ExactMatrix& rows) {
    RrefResult r = rref(rows);
    ExactMatrix b(r.rank, rows.cols());
    for (int i = 0; i < r.rank; ++i)
        for (int j = 0; j < rows.cols(); ++j) b.at(i, j) = r.reduced.at(i, j);
    return Subspace{std::move(b)};
}

Subspace subspace_of_point(const ProjPoint& p) {
    ExactMatrix m(1, int(p.coords.size()));
    m.set_row(0, p.coords);
    return subspace_from_rows(m);
}

Subspace whole_space(int ambient) { return Subspace{ExactMatrix::identity(ambient + 1)}; }

ProjPoint point_of_subspace(const Subspace& s) {
    if (s.dim() != 0) throw precondition_error("point_of_subspace: dimension is not 0");
    return make_point(s.basis.row(0));
}

Configuration config_from_coords(int ambient, const std::vector<std::vector<Rat>>& coords) {
    Configuration c;
    c.ambient = ambient;
    for (const auto& v : coords) {
        if (int(v.size()) != ambient + 1)
            throw malformed_input("point has wrong coordinate count");
        c.points.push_back(make_point(v));
    }
    return c;
}

Configuration plane_config(const std::vector<std::pair<Rat, Rat>>& affine) {
    Configuration c;
    c.ambient = 2;
    for (const auto& [x, y] : affine) c.points.push_back(make_point({Rat(1), x, y}));
    return c;
}

Configuration delete_point(const Configuration& c, int i) {
    Configuration out;
    out.ambient = c.ambient;
    for (int j = 0; j < c.size(); ++j)
        if (j != i) out.points.push_back(c.points[j]);
    return out;
}

Configuration insert_point(const Configuration& c, int i, const ProjPoint& p) {
    Configuration out;
    out.ambient = c.ambient;
    for (int j = 0; j < c.size(); ++j) {
        if (j == i) out.points.push_back(p);
        out.points.push_back(c.points[j]);
    }
    if (i == c.size()) out.points.push_back(p);
    return out;
}

Subspace span_points(int ambient, const std::vector<ProjPoint>& pts) {
    if (pts.empty()) throw precondition_error("span of an empty point set");
    ExactMatrix m(int(pts.size()), ambient + 1);
    for (size_t i = 0; i < pts.size(); ++i) m.set_row(int(i), pts[i].coords);
    return subspace_from_rows(m);
}

Subspace span_of(const Configuration& c, const std::vector<int>& subset) {
    std::vector<ProjPoint> pts;
    for (int i : subset) {
        if (i < 0 || i >= c.size()) throw malformed_input("span: point index out of range");
        pts.push_back(c.points[i]);
    }
    return span_points(c.ambient, pts);
}

Subspace join(const Subspace& a, const Subspace& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.ambient() != b.ambient()) throw precondition_error("join: ambient mismatch");
    return subspace_from_rows(stack_rows(a.basis, b.basis));
}

// Zassenhaus: row reduce [A|A; B|0]; rows with zero left half carry a basis
// of the intersection in the right half.
Subspace meet(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw precondition_error("meet: ambient mismatch");
    int n = a.ambient() + 1;
    if (a.empty() || b.empty()) return Subspace{ExactMatrix(0, n)};
    ExactMatrix z(a.basis.rows() + b.basis.rows(), 2 * n);
    for (int i = 0; i < a.basis.rows(); ++i)
        for (int j = 0; j < n; ++j) {
            z.at(i, j) = a.basis.at(i, j);
            z.at(i, n + j) = a.basis.at(i, j);
        }
    for (int i = 0; i < b.basis.rows(); ++i)
        for (int j = 0; j < n; ++j) z.at(a.basis.rows() + i, j) = b.basis.at(i, j);
    RrefResult r = rref(z);
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < z.rows(); ++i) {
        bool left_zero = true;
        for (int j = 0; j < n && left_zero; ++j)
            if (r.reduced.at(i, j) != 0) left_zero = false;
        if (!left_zero) continue;
        std::vector<Rat> right(n);
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            right[j] = r.reduced.at(i, n + j);
            if (right[j] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(right));
    }
    ExactMatrix m(int(rows.size()), n);
    for (size_t i = 0; i < rows.size(); ++i) m.set_row(int(i), rows[i]);
    return subspace_from_rows(m);
}

bool sub_contains(const Subspace& outer, const Subspace& inner) {
    if (inner.empty()) return true;
    if (outer.empty()) return false;
    return rank_of(stack_rows(outer.basis, inner.basis)) == outer.basis.rows();
}

bool contains_point(const Subspace& s, const ProjPoint& p) {
    if (s.empty()) return false;
    ExactMatrix m(1, int(p.coords.size()));
    m.set_row(0, p.coords);
    return rank_of(stack_rows(s.basis, m)) == s.basis.rows();
}

bool in_general_position(const Configuration& c, int p) {
    if (c.ambient != p - 1) throw precondition_error("in_general_position: ambient must be p-1");
    int n = c.size();
    if (n < p) return false;
    std::vector<int> idx(p);
    // enumerate p-subsets
    for (int i = 0; i < p; ++i) idx[i] = i;
    for (;;) {
        ExactMatrix m(p, p);
        for (int i = 0; i < p; ++i) m.set_row(i, c.points[idx[i]].coords);
        if (rank_of(m) < p) return false;
        int k = p - 1;
        while (k >= 0 && idx[k] == n - p + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < p; ++i) idx[i] = idx[i - 1] + 1;
    }
    return true;
}

PointProjection make_projection(const ProjPoint& center) {
    int drop = -1;
    for (int j = int(center.coords.size()) - 1; j >= 0; --j) {
        if (center.coords[j] != 0) {
            drop = j;
            break;
        }
    }
    return PointProjection{center, drop};
}

static std::vector<Rat> project_vector(const PointProjection& pr, const std::vector<Rat>& v) {
    const auto& c = pr.center.coords;
    Rat f = v[pr.drop] / c[pr.drop];
    std::vector<Rat> out;
    out.reserve(v.size() - 1);
    for (size_t j = 0; j < v.size(); ++j) {
        if (int(j) == pr.drop) continue;
        out.push_back(v[j] - f * c[j]);
    }
    return out;
}

ProjPoint project_point(const PointProjection& pr, const ProjPoint& x) {
    std::vector<Rat> v = project_vector(pr, x.coords);
    bool all_zero = std::all_of(v.begin(), v.end(), [](const Rat& r) { return r == 0; });
    if (all_zero) throw degenerate_input("projection of the center is undefined");
    return make_point(std::move(v));
}

Subspace project_subspace(const PointProjection& pr, const Subspace& s) {
    int n = int(pr.center.coords.size());
    if (s.empty()) return Subspace{ExactMatrix(0, n - 1)};
    ExactMatrix m(s.basis.rows(), n - 1);
    for (int i = 0; i < s.basis.rows(); ++i) m.set_row(i, project_vector(pr, s.basis.row(i)));
    return subspace_from_rows(m);
}

Subspace lift_subspace(const PointProjection& pr, const Subspace& s) {
    int n = int(pr.center.coords.size());
    ExactMatrix m(s.basis.rows() + 1, n);
    for (int i = 0; i < s.basis.rows(); ++i) {
        auto r = s.basis.row(i);
        std::vector<Rat> full(n);
        int k = 0;
        for (int j = 0; j < n; ++j) full[j] = (j == pr.drop) ? Rat(0) : r[k++];
        m.set_row(i, full);
    }
    m.set_row(s.basis.rows(), pr.center.coords);
    return subspace_from_rows(m);
}

Configuration project_from_point(const Configuration& c, int i) {
    if (i < 0 || i >= c.size()) throw precondition_error("project_from_point: index out of range");
    for (int j = 0; j < c.size(); ++j)
        if (j != i && c.points[j] == c.points[i])
            throw degenerate_input("projection center coincides with another point");
    PointProjection pr = make_projection(c.points[i]);
    Configuration out;
    out.ambient = c.ambient - 1;
    for (int j = 0; j < c.size(); ++j) {
        if (j == i) continue;
        out.points.push_back(project_point(pr, c.points[j]));
    }
    return out;
}

Configuration apply_transform(const ExactMatrix& g, const Configuration& c) {
    Configuration out;
    out.ambient = c.ambient;
    for (const auto& p : c.points) {
        ExactMatrix v(int(p.coords.size()), 1);
        for (size_t i = 0; i < p.coords.size(); ++i) v.at(int(i), 0) = p.coords[i];
        ExactMatrix w = mat_mul(g, v);
        std::vector<Rat> nc(w.rows());
        for (int i = 0; i < w.rows(); ++i) nc[i] = w.at(i, 0);
        out.points.push_back(make_point(std::move(nc)));
    }
    return out;
}

Subspace apply_transform(const ExactMatrix& g, const Subspace& s) {
    if (s.empty()) return s;
    return subspace_from_rows(mat_mul(s.basis, transpose(g)));
}

}  // namespace grassfold
