#pragma once

#include <string>
#include <vector>

namespace grassfold {

// Finite ranked poset with a marking of rank-0 elements, the combinatorial
// object templates are isomorphism classes of.
struct RankedPoset {
    int n = 0;
    std::vector<int> rank;
    std::vector<std::vector<bool>> leq;  // reflexive-transitive
    std::vector<int> marking;            // mark j -> element index

    bool leq_at(int a, int b) const { return leq[a][b]; }
};

// Isomorphism-class representative: elements relabeled into canonical order.
struct MarkedTemplate {
    int n_elements = 0;
    std::vector<int> rank;
    std::vector<std::pair<int, int>> order;  // strict covers, canonical ids
    std::vector<int> marking;
    std::string code;

    bool operator==(const MarkedTemplate& o) const { return code == o.code; }
};

// Canonical form under rank- and marking-preserving poset isomorphism.
// Iterative color refinement; ties among unmarked elements are broken by a
// backtracking search that keeps the lexicographically least code.
MarkedTemplate canonicalize(const RankedPoset& p);

// Poset-level least upper bound / greatest lower bound; -1 when absent.
int poset_lub(const RankedPoset& p, const std::vector<int>& elements);
int poset_glb(const RankedPoset& p, const std::vector<int>& elements);

}  // namespace grassfold
