#pragma once

#include <vector>

#include "grassfold/poly.hpp"
#include "grassfold/projective.hpp"

namespace grassfold {

// Finite set of projective subspaces, deduplicated and kept in canonical
// order. Complete when closed under nonempty pairwise meets.
struct LinearConfiguration {
    int ambient = 0;
    std::vector<Subspace> subspaces;  // sorted, unique

    bool insert(const Subspace& s);  // keeps order; returns true when new
    bool contains_subspace(const Subspace& s) const;
    int index_of(const Subspace& s) const;  // -1 when absent
    std::vector<Subspace> hyperplanes() const;
};

LinearConfiguration make_config(int ambient, std::vector<Subspace> subs);
LinearConfiguration complete(const LinearConfiguration& h);
bool is_complete(const LinearConfiguration& h);

// Completion of all hyperplanes spanned by subconfigurations; the minimum of
// the derived set D(x). Throws degenerate_input when x does not span.
LinearConfiguration base_derived(const Configuration& x);

// Completion of h together with join(l, span(xsub)), which must be a
// hyperplane; throws precondition_error otherwise.
LinearConfiguration extend_derived(const LinearConfiguration& h, const Subspace& l,
                                   const Configuration& x, const std::vector<int>& xsub);

struct IntersectionPoset {
    std::vector<Subspace> elements;          // canonical order
    std::vector<int> rank;                   // projective dimension
    std::vector<std::vector<bool>> leq;      // reflexive-transitive inclusion
    std::vector<std::pair<int, int>> cover_pairs() const;
    int index_of(const Subspace& s) const;
};

IntersectionPoset intersection_poset(const LinearConfiguration& h);  // h must be complete

// --- central arrangements -------------------------------------------------
//
// A projective configuration in P^m is identified with its cone in affine
// dimension m+1; the basis rows of a projective subspace are literally a
// basis of the cone, so the same Subspace type serves with linear dims
// (linear dim = projective dim + 1).

// Moebius-sum characteristic polynomial of the cone over h:
//   pi(h, t) = sum_X mu(X) (-t)^{codim X}
// over the intersection lattice of the rank-(m-1) elements of h.
IntPoly poincare_polynomial(const LinearConfiguration& h);

struct FiberStage {
    ProjPoint center;               // projection center in P^{m} at this stage
    LinearConfiguration induced;    // hyperplanes through the center, projected
    int fiber_points = 0;           // hyperplanes meeting the generic fiber line
};

struct FiberTypeResult {
    bool ok = false;
    std::vector<FiberStage> chain;  // outermost projection first
    int fail_dim = -1;              // projective dimension where no center works
};

// Decides fiber type for the cone over the projective arrangement cut out by
// the hyperplanes of h. Candidate projection centers are the rank-0 elements
// of the intersection poset plus `marks`, in canonical order. Condition (c)
// is checked exactly: every codimension-2 meet of hyperplanes off the center
// must lie in a hyperplane through the center.
FiberTypeResult is_fiber_type(const LinearConfiguration& h,
                              const std::vector<ProjPoint>& marks = {});

// Re-checks a recorded chain against the arrangement.
bool replay_fiber_chain(const LinearConfiguration& h, const std::vector<FiberStage>& chain);

}  // namespace grassfold
