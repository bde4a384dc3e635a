#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "grassfold/matrix.hpp"

namespace grassfold {

// Point of P^m with exact homogeneous coordinates, canonicalized so the
// first nonzero coordinate equals 1.
struct ProjPoint {
    std::vector<Rat> coords;  // length m+1

    int ambient() const { return int(coords.size()) - 1; }
    bool operator==(const ProjPoint& o) const { return coords == o.coords; }
    std::strong_ordering operator<=>(const ProjPoint& o) const;
};

ProjPoint make_point(std::vector<Rat> coords);  // throws degenerate_input on the zero vector

// Linear subspace of P^m as the row space of a canonical RREF basis.
// rows = projective dimension + 1; zero rows = the empty subspace.
struct Subspace {
    ExactMatrix basis;

    int ambient() const { return basis.cols() - 1; }
    int dim() const { return basis.rows() - 1; }  // projective; -1 for empty
    bool empty() const { return basis.rows() == 0; }

    bool operator==(const Subspace& o) const { return basis == o.basis; }
    std::strong_ordering operator<=>(const Subspace& o) const { return basis <=> o.basis; }
};

Subspace subspace_from_rows(const ExactMatrix& rows);
Subspace subspace_of_point(const ProjPoint& p);
Subspace whole_space(int ambient);
ProjPoint point_of_subspace(const Subspace& s);  // dim 0 only

struct Configuration {
    int ambient = 0;
    std::vector<ProjPoint> points;

    int size() const { return int(points.size()); }
};

Configuration config_from_coords(int ambient, const std::vector<std::vector<Rat>>& coords);
// Affine plane points (x, y) homogenized as (1, x, y).
Configuration plane_config(const std::vector<std::pair<Rat, Rat>>& affine);
Configuration delete_point(const Configuration& c, int i);
Configuration insert_point(const Configuration& c, int i, const ProjPoint& p);

Subspace span_points(int ambient, const std::vector<ProjPoint>& pts);
Subspace span_of(const Configuration& c, const std::vector<int>& subset);

Subspace join(const Subspace& a, const Subspace& b);
Subspace meet(const Subspace& a, const Subspace& b);  // empty subspace when intersection is trivial
bool sub_contains(const Subspace& outer, const Subspace& inner);
bool contains_point(const Subspace& s, const ProjPoint& p);

// Every p-subset of points spans P^{p-1}.
bool in_general_position(const Configuration& c, int p);

// Linear projection away from a point, expressed in the coordinates of the
// complementary coordinate hyperplane {x_k = 0} where k is the largest index
// with a nonzero center coordinate.
struct PointProjection {
    ProjPoint center;
    int drop;  // coordinate index removed
};

PointProjection make_projection(const ProjPoint& center);
ProjPoint project_point(const PointProjection& pr, const ProjPoint& x);  // throws degenerate_input when x == center
Subspace project_subspace(const PointProjection& pr, const Subspace& s);
// Re-embeds a subspace of the image space and joins it with the center.
Subspace lift_subspace(const PointProjection& pr, const Subspace& s);

Configuration project_from_point(const Configuration& c, int i);

// Applies an invertible (m+1)x(m+1) matrix to all points (used by tests).
Configuration apply_transform(const ExactMatrix& g, const Configuration& c);
Subspace apply_transform(const ExactMatrix& g, const Subspace& s);

}  // namespace grassfold
