#include "grassfold/arrangement.hpp"

#include <algorithm>
#include <map>

#include "grassfold/errors.hpp"

namespace grassfold {

bool LinearConfiguration::insert(const Subspace& s) {
    auto it = std::lower_bound(subspaces.begin(), subspaces.end(), s);
    if (it != subspaces.end() && *it == s) return false;
    subspaces.insert(it, s);
    return true;
}

bool LinearConfiguration::contains_subspace(const Subspace& s) const {
    return std::binary_search(subspaces.begin(), subspaces.end(), s);
}

int LinearConfiguration::index_of(const Subspace& s) const {
    auto it = std::lower_bound(subspaces.begin(), subspaces.end(), s);
    if (it == subspaces.end() || !(*it == s)) return -1;
    return int(it - subspaces.begin());
}

std::vector<Subspace> LinearConfiguration::hyperplanes() const {
    std::vector<Subspace> out;
    for (const auto& s : subspaces)
        if (s.dim() == ambient - 1) out.push_back(s);
    return out;
}

LinearConfiguration make_config(int ambient, std::vector<Subspace> subs) {
    LinearConfiguration h;
    h.ambient = ambient;
    for (auto& s : subs) {
        if (s.ambient() != ambient) throw precondition_error("subspace ambient mismatch");
        if (!s.empty()) h.insert(s);
    }
    return h;
}

LinearConfiguration complete(const LinearConfiguration& h) {
    LinearConfiguration out = h;
    // pairwise meets until closed; new elements are appended to the scan
    std::vector<Subspace> work(out.subspaces);
    for (size_t i = 0; i < work.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            Subspace m = meet(work[i], work[j]);
            if (m.empty() || m == work[i] || m == work[j]) continue;
            if (out.insert(m)) work.push_back(m);
        }
    }
    return out;
}

bool is_complete(const LinearConfiguration& h) {
    for (size_t i = 0; i < h.subspaces.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            Subspace m = meet(h.subspaces[i], h.subspaces[j]);
            if (!m.empty() && !h.contains_subspace(m)) return false;
        }
    return true;
}

LinearConfiguration base_derived(const Configuration& x) {
    int m = x.ambient;
    std::vector<int> all(x.size());
    for (int i = 0; i < x.size(); ++i) all[i] = i;
    if (x.size() == 0 || span_of(x, all).dim() != m)
        throw degenerate_input("configuration does not span the ambient space");
    LinearConfiguration h;
    h.ambient = m;
    if (m == 0) return h;
    // every hyperplane spanned by a subconfiguration is spanned by m of its
    // points, so m-subsets suffice
    if (x.size() >= m) {
        std::vector<int> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        for (;;) {
            Subspace s = span_of(x, idx);
            if (s.dim() == m - 1) h.insert(s);
            int k = m - 1;
            while (k >= 0 && idx[k] == x.size() - m + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int i = k + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return complete(h);
}

LinearConfiguration extend_derived(const LinearConfiguration& h, const Subspace& l,
                                   const Configuration& x, const std::vector<int>& xsub) {
    Subspace j = join(l, span_of(x, xsub));
    if (j.dim() != h.ambient - 1)
        throw precondition_error("extend_derived: join is not a hyperplane");
    if (h.contains_subspace(j)) return h;
    LinearConfiguration out = h;
    out.insert(j);
    return complete(out);
}

IntersectionPoset intersection_poset(const LinearConfiguration& h) {
    if (!is_complete(h)) throw precondition_error("intersection_poset: configuration not complete");
    IntersectionPoset p;
    p.elements = h.subspaces;
    int n = int(p.elements.size());
    p.rank.resize(n);
    p.leq.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        p.rank[i] = p.elements[i].dim();
        for (int j = 0; j < n; ++j)
            p.leq[i][j] = sub_contains(p.elements[j], p.elements[i]);
    }
    return p;
}

std::vector<std::pair<int, int>> IntersectionPoset::cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    int n = int(elements.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !leq[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < n && covered; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j]) covered = false;
            if (covered) out.emplace_back(i, j);
        }
    return out;
}

int IntersectionPoset::index_of(const Subspace& s) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    if (it == elements.end() || !(*it == s)) return -1;
    return int(it - elements.begin());
}

// --- Poincare polynomial ---------------------------------------------------

namespace {

// Intersection lattice of the hyperplanes (meets of subsets, empty allowed),
// including the whole space as bottom.
std::vector<Subspace> hyperplane_lattice(const std::vector<Subspace>& hyps, int ambient) {
    std::vector<Subspace> els{whole_space(ambient)};
    auto find = [&](const Subspace& s) {
        return std::find(els.begin(), els.end(), s) != els.end();
    };
    for (size_t i = 0; i < els.size(); ++i) {
        for (const auto& hp : hyps) {
            Subspace m = meet(els[i], hp);
            if (!find(m)) els.push_back(m);
        }
    }
    return els;
}

}  // namespace

IntPoly poincare_polynomial(const LinearConfiguration& h) {
    int m = h.ambient;
    std::vector<Subspace> hyps = h.hyperplanes();
    std::vector<Subspace> lat = hyperplane_lattice(hyps, m);
    int n = int(lat.size());
    // order by reverse inclusion; mu by decreasing dimension
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lat[a].dim() > lat[b].dim(); });
    std::vector<Intz> mu(n, 0);
    IntPoly pi;
    for (int oi = 0; oi < n; ++oi) {
        int i = order[oi];
        Intz s = (lat[i].dim() == m) ? Intz(1) : Intz(0);
        for (int oj = 0; oj < oi; ++oj) {
            int j = order[oj];
            if (i != j && sub_contains(lat[j], lat[i])) s -= mu[j];
        }
        mu[i] = s;
        poly_add_signed_power(pi, mu[i], m - lat[i].dim());
    }
    return pi;
}

// --- fiber type ------------------------------------------------------------

namespace {

struct CenterCheck {
    bool ok = false;
    std::vector<Subspace> induced;
    int count = 0;
};

// Conditions (a)-(c) for projecting away from `center`; exact.
CenterCheck check_center(const std::vector<Subspace>& hyps, const ProjPoint& center) {
    CenterCheck res;
    std::vector<int> through, off;
    for (int i = 0; i < int(hyps.size()); ++i) {
        if (contains_point(hyps[i], center))
            through.push_back(i);
        else
            off.push_back(i);
    }
    // (c): each codim-2 meet of two off-center hyperplanes must lie in a
    // hyperplane through the center
    for (size_t a = 0; a < off.size(); ++a) {
        for (size_t b = 0; b < a; ++b) {
            Subspace x = meet(hyps[off[a]], hyps[off[b]]);
            bool covered = false;
            for (int t : through) {
                if (sub_contains(hyps[t], x)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) return res;
        }
    }
    PointProjection pr = make_projection(center);
    for (int t : through) res.induced.push_back(project_subspace(pr, hyps[t]));
    std::sort(res.induced.begin(), res.induced.end());
    res.induced.erase(std::unique(res.induced.begin(), res.induced.end()), res.induced.end());
    res.count = int(off.size());
    res.ok = true;
    return res;
}

std::vector<ProjPoint> center_candidates(const std::vector<Subspace>& hyps, int m,
                                         const std::vector<ProjPoint>& marks) {
    LinearConfiguration h = complete(make_config(m, hyps));
    std::vector<ProjPoint> cands;
    for (const auto& s : h.subspaces)
        if (s.dim() == 0) cands.push_back(point_of_subspace(s));
    for (const auto& p : marks)
        if (std::find(cands.begin(), cands.end(), p) == cands.end()) cands.push_back(p);
    std::sort(cands.begin(), cands.end());
    return cands;
}

bool fiber_rec(std::vector<Subspace> hyps, int m, const std::vector<ProjPoint>& marks,
               std::vector<FiberStage>& chain, int& fail_dim) {
    if (m == 0) return true;  // arrangement in the affine line
    if (hyps.empty()) return true;
    std::vector<ProjPoint> cands = center_candidates(hyps, m, marks);
    for (const auto& c : cands) {
        CenterCheck cc = check_center(hyps, c);
        if (!cc.ok) continue;
        std::vector<FiberStage> sub;
        int sub_fail = -1;
        if (fiber_rec(cc.induced, m - 1, {}, sub, sub_fail)) {
            FiberStage st;
            st.center = c;
            // keep the zero subspace when the induced arrangement lives in
            // the affine line, so chain exponents stay faithful
            st.induced.ambient = m - 1;
            st.induced.subspaces = cc.induced;
            st.fiber_points = cc.count;
            chain.push_back(st);
            chain.insert(chain.end(), sub.begin(), sub.end());
            return true;
        }
    }
    fail_dim = m;
    return false;
}

}  // namespace

FiberTypeResult is_fiber_type(const LinearConfiguration& h, const std::vector<ProjPoint>& marks) {
    FiberTypeResult res;
    res.ok = fiber_rec(h.hyperplanes(), h.ambient, marks, res.chain, res.fail_dim);
    return res;
}

bool replay_fiber_chain(const LinearConfiguration& h, const std::vector<FiberStage>& chain) {
    std::vector<Subspace> hyps = h.hyperplanes();
    int m = h.ambient;
    for (const auto& st : chain) {
        if (m == 0) return false;
        CenterCheck cc = check_center(hyps, st.center);
        if (!cc.ok) return false;
        if (cc.count != st.fiber_points) return false;
        if (cc.induced != st.induced.subspaces) return false;
        hyps = cc.induced;
        --m;
    }
    // whatever remains must be a line arrangement (or nothing)
    return m == 0 || hyps.empty();
}

}  // namespace grassfold
