#include "grassfold/poset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "grassfold/errors.hpp"

namespace grassfold {

namespace {

// colors[i]: current color id of element i; refine until stable
std::vector<int> refine(const RankedPoset& p, std::vector<int> colors) {
    int n = p.n;
    for (;;) {
        // signature: (color, multiset of colors below, multiset of colors above)
        std::vector<std::pair<std::vector<int>, int>> sigs(n);
        for (int i = 0; i < n; ++i) {
            std::vector<int> below, above;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (p.leq[j][i]) below.push_back(colors[j]);
                if (p.leq[i][j]) above.push_back(colors[j]);
            }
            std::sort(below.begin(), below.end());
            std::sort(above.begin(), above.end());
            std::vector<int> sig;
            sig.push_back(colors[i]);
            sig.push_back(-1);
            sig.insert(sig.end(), below.begin(), below.end());
            sig.push_back(-2);
            sig.insert(sig.end(), above.begin(), above.end());
            sigs[i] = {std::move(sig), i};
        }
        std::map<std::vector<int>, int> dense;
        for (const auto& [sig, i] : sigs) dense.emplace(sig, 0);
        int next = 0;
        for (auto& [sig, id] : dense) id = next++;
        std::vector<int> fresh(n);
        for (const auto& [sig, i] : sigs) fresh[i] = dense[sig];
        if (fresh == colors) return colors;
        colors = std::move(fresh);
    }
}

std::string code_for_order(const RankedPoset& p, const std::vector<int>& pos) {
    // pos[i] = canonical id of element i
    int n = p.n;
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[pos[i]] = i;
    std::ostringstream os;
    os << "n" << n << ";r";
    for (int c = 0; c < n; ++c) os << p.rank[inv[c]] << ",";
    os << ";o";
    std::vector<std::pair<int, int>> rel;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && p.leq[inv[a]][inv[b]]) rel.emplace_back(a, b);
    std::sort(rel.begin(), rel.end());
    for (auto& [a, b] : rel) os << a << "<" << b << ",";
    os << ";m";
    for (int e : p.marking) os << pos[e] << ",";
    return os.str();
}

struct CanonicalSearch {
    const RankedPoset& p;
    std::string best;
    std::vector<int> best_pos;

    void run(std::vector<int> colors) {
        colors = refine(p, colors);
        std::vector<std::vector<int>> classes;
        int maxc = 0;
        for (int c : colors) maxc = std::max(maxc, c);
        classes.assign(maxc + 1, {});
        for (int i = 0; i < p.n; ++i) classes[colors[i]].push_back(i);
        int split = -1;
        for (int c = 0; c < int(classes.size()); ++c)
            if (classes[c].size() > 1) {
                split = c;
                break;
            }
        if (split < 0) {
            std::string code = code_for_order(p, colors);
            if (best_pos.empty() || code < best) {
                best = std::move(code);
                best_pos = colors;
            }
            return;
        }
        for (int e : classes[split]) {
            std::vector<int> nxt(colors);
            for (int i = 0; i < p.n; ++i)
                if (nxt[i] >= split) ++nxt[i];
            nxt[e] = split;
            run(nxt);
        }
    }
};

}  // namespace

MarkedTemplate canonicalize(const RankedPoset& p) {
    int n = p.n;
    for (int e : p.marking) {
        if (e < 0 || e >= n) throw precondition_error("marking out of range");
        if (p.rank[e] != 0) throw precondition_error("marking must hit rank-0 elements");
    }
    // initial colors: (rank, exact set of marks mapping here); markings are
    // preserved pointwise, so marked elements pin themselves
    std::vector<std::pair<std::vector<int>, int>> init(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> key{p.rank[i]};
        key.push_back(-1);
        for (int j = 0; j < int(p.marking.size()); ++j)
            if (p.marking[j] == i) key.push_back(j);
        init[i] = {std::move(key), i};
    }
    std::map<std::vector<int>, int> dense;
    for (const auto& [k, i] : init) dense.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : dense) id = next++;
    std::vector<int> colors(n);
    for (const auto& [k, i] : init) colors[i] = dense[k];

    CanonicalSearch search{p, {}, {}};
    search.run(colors);

    MarkedTemplate t;
    t.n_elements = n;
    t.code = search.best;
    const std::vector<int>& pos = search.best_pos;
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[pos[i]] = i;
    t.rank.resize(n);
    for (int c = 0; c < n; ++c) t.rank[c] = p.rank[inv[c]];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !p.leq[inv[a]][inv[b]]) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                if (k != inv[a] && k != inv[b] && p.leq[inv[a]][k] && p.leq[k][inv[b]])
                    cover = false;
            if (cover) t.order.emplace_back(a, b);
        }
    std::sort(t.order.begin(), t.order.end());
    t.marking.resize(p.marking.size());
    for (size_t j = 0; j < p.marking.size(); ++j) t.marking[j] = pos[p.marking[j]];
    return t;
}

int poset_lub(const RankedPoset& p, const std::vector<int>& elements) {
    int n = p.n;
    std::vector<int> uppers;
    for (int u = 0; u < n; ++u) {
        bool all = true;
        for (int e : elements)
            if (!p.leq[e][u]) {
                all = false;
                break;
            }
        if (all) uppers.push_back(u);
    }
    // unique minimal upper bound
    int found = -1;
    for (int u : uppers) {
        bool minimal = true;
        for (int v : uppers)
            if (v != u && p.leq[v][u]) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        if (found >= 0) return -1;
        found = u;
    }
    return found;
}

int poset_glb(const RankedPoset& p, const std::vector<int>& elements) {
    int n = p.n;
    std::vector<int> lowers;
    for (int u = 0; u < n; ++u) {
        bool all = true;
        for (int e : elements)
            if (!p.leq[u][e]) {
                all = false;
                break;
            }
        if (all) lowers.push_back(u);
    }
    int found = -1;
    for (int u : lowers) {
        bool maximal = true;
        for (int v : lowers)
            if (v != u && p.leq[u][v]) {
                maximal = false;
                break;
            }
        if (!maximal) continue;
        if (found >= 0) return -1;
        found = u;
    }
    return found;
}

}  // namespace grassfold
