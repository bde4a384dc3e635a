#include "grassfold/script.hpp"

#include <algorithm>

#include "grassfold/errors.hpp"

namespace grassfold {

ElementRef ElementRef::span(std::vector<int> marks) {
    ElementRef r;
    r.kind = Kind::span;
    std::sort(marks.begin(), marks.end());
    r.span_marks = std::move(marks);
    return r;
}

ElementRef ElementRef::step(int k) {
    ElementRef r;
    r.kind = Kind::step;
    r.step_index = k;
    return r;
}

ElementRef ElementRef::meet_of(std::vector<ElementRef> args) {
    ElementRef r;
    r.kind = Kind::meet;
    r.meet_args = std::move(args);
    return r;
}

bool ElementRef::operator==(const ElementRef& o) const {
    return kind == o.kind && span_marks == o.span_marks && step_index == o.step_index &&
           meet_args == o.meet_args;
}

static std::vector<int> shift_indices(const std::vector<int>& v, int at) {
    std::vector<int> out;
    out.reserve(v.size());
    for (int i : v) out.push_back(i >= at ? i + 1 : i);
    return out;
}

static ElementRef reindex_ref(const ElementRef& r, int at, bool cone_spans) {
    switch (r.kind) {
        case ElementRef::Kind::span: {
            std::vector<int> marks = shift_indices(r.span_marks, at);
            if (cone_spans) marks.push_back(at);
            return ElementRef::span(std::move(marks));
        }
        case ElementRef::Kind::step:
            return r;
        case ElementRef::Kind::meet: {
            std::vector<ElementRef> args;
            for (const auto& a : r.meet_args) args.push_back(reindex_ref(a, at, cone_spans));
            return ElementRef::meet_of(std::move(args));
        }
    }
    return r;
}

DerivationScript reindex_script_insert(const DerivationScript& s, int at, bool cone_spans) {
    DerivationScript out;
    for (const auto& st : s.steps) {
        ScriptStep ns;
        ns.base = reindex_ref(st.base, at, cone_spans);
        ns.points = shift_indices(st.points, at);
        std::sort(ns.points.begin(), ns.points.end());
        out.steps.push_back(std::move(ns));
    }
    return out;
}

Subspace resolve_ref(const ElementRef& ref, const Configuration& x,
                     const std::vector<Subspace>& steps) {
    switch (ref.kind) {
        case ElementRef::Kind::span: {
            if (ref.span_marks.empty()) throw malformed_input("span reference with no points");
            for (int i : ref.span_marks)
                if (i < 0 || i >= x.size())
                    throw malformed_input("span reference index out of range");
            return span_of(x, ref.span_marks);
        }
        case ElementRef::Kind::step: {
            if (ref.step_index < 0 || ref.step_index >= int(steps.size()))
                throw malformed_input("step reference out of range");
            return steps[ref.step_index];
        }
        case ElementRef::Kind::meet: {
            if (ref.meet_args.empty()) throw malformed_input("meet reference with no arguments");
            Subspace cur = resolve_ref(ref.meet_args[0], x, steps);
            for (size_t i = 1; i < ref.meet_args.size(); ++i)
                cur = meet(cur, resolve_ref(ref.meet_args[i], x, steps));
            return cur;
        }
    }
    throw malformed_input("unknown reference kind");
}

static void validate_ref_steps(const ElementRef& r, int limit) {
    if (r.kind == ElementRef::Kind::step) {
        if (r.step_index < 0 || r.step_index >= limit)
            throw malformed_input("step reference out of range");
    }
    for (const auto& a : r.meet_args) validate_ref_steps(a, limit);
}

ReplayResult evaluate_script(const DerivationScript& s, const Configuration& x) {
    ReplayResult res;
    res.config = base_derived(x);
    for (size_t k = 0; k < s.steps.size(); ++k) {
        const ScriptStep& st = s.steps[k];
        for (int i : st.points)
            if (i < 0 || i >= x.size()) throw malformed_input("step point index out of range");
        if (st.points.empty()) throw malformed_input("step with empty point set");
        validate_ref_steps(st.base, int(k));
        Subspace base = resolve_ref(st.base, x, res.step_hyperplanes);
        if (base.empty()) {
            res.diagnostic = "step " + std::to_string(k) + ": base reference degenerates";
            return res;
        }
        Subspace j = join(base, span_of(x, st.points));
        if (j.dim() != x.ambient - 1) {
            res.diagnostic = "step " + std::to_string(k) + ": join is not a hyperplane";
            return res;
        }
        res.step_hyperplanes.push_back(j);
        if (!res.config.contains_subspace(j)) {
            res.config.insert(j);
            res.config = complete(res.config);
        }
    }
    res.ok = true;
    return res;
}

ElementRef ref_for_element(const Subspace& el, const Configuration& x,
                           const LinearConfiguration& config,
                           const std::vector<Subspace>& step_hyperplanes) {
    int m = x.ambient;
    auto hyperplane_ref = [&](const Subspace& hp) -> ElementRef {
        for (int k = 0; k < int(step_hyperplanes.size()); ++k)
            if (step_hyperplanes[k] == hp) return ElementRef::step(k);
        std::vector<int> marks;
        for (int i = 0; i < x.size(); ++i)
            if (contains_point(hp, x.points[i])) marks.push_back(i);
        return ElementRef::span(std::move(marks));
    };
    if (el.dim() == m - 1) return hyperplane_ref(el);
    std::vector<ElementRef> covers;
    for (const auto& s : config.subspaces)
        if (s.dim() == m - 1 && sub_contains(s, el)) covers.push_back(hyperplane_ref(s));
    if (covers.empty()) throw precondition_error("element is not a meet of hyperplanes");
    return ElementRef::meet_of(std::move(covers));
}

std::optional<DerivationScript> derive_script(const Configuration& x,
                                              const LinearConfiguration& target) {
    ScriptSearchStart start;
    start.config = base_derived(x);
    return derive_script(x, target, start);
}

std::optional<DerivationScript> derive_script(const Configuration& x,
                                              const LinearConfiguration& target,
                                              const ScriptSearchStart& start) {
    int m = x.ambient;
    LinearConfiguration cur = start.config;
    DerivationScript script = start.script;
    std::vector<Subspace> steps = start.step_hyperplanes;
    for (const auto& s : cur.subspaces)
        if (!target.contains_subspace(s)) return std::nullopt;

    auto missing_hyperplanes = [&]() {
        std::vector<Subspace> out;
        for (const auto& s : target.subspaces)
            if (s.dim() == m - 1 && !cur.contains_subspace(s)) out.push_back(s);
        return out;
    };

    // subsets of marks in (size, lex) order, capped at m points
    std::vector<std::vector<int>> subsets;
    {
        int n = x.size();
        for (int sz = 1; sz <= std::min(n, m); ++sz) {
            std::vector<int> idx(sz);
            for (int i = 0; i < sz; ++i) idx[i] = i;
            for (;;) {
                subsets.push_back(idx);
                int k = sz - 1;
                while (k >= 0 && idx[k] == n - sz + k) --k;
                if (k < 0) break;
                ++idx[k];
                for (int i = k + 1; i < sz; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
    }

    for (;;) {
        std::vector<Subspace> miss = missing_hyperplanes();
        if (miss.empty()) break;
        bool progress = false;
        for (const auto& target_hp : miss) {
            for (const auto& base_el : cur.subspaces) {
                if (progress) break;
                if (base_el.dim() >= m - 1) continue;
                for (const auto& sub : subsets) {
                    Subspace j = join(base_el, span_of(x, sub));
                    if (j.dim() == m - 1 && j == target_hp) {
                        ScriptStep st;
                        st.base = ref_for_element(base_el, x, cur, steps);
                        st.points = sub;
                        script.steps.push_back(st);
                        steps.push_back(j);
                        cur.insert(j);
                        cur = complete(cur);
                        progress = true;
                        break;
                    }
                }
            }
            if (progress) break;
        }
        if (!progress) return std::nullopt;
    }
    // all hyperplanes reached; completions must agree
    if (!(cur.subspaces == target.subspaces)) return std::nullopt;
    return script;
}

FiberCompletionResult fiber_type_completion(const Configuration& x, const LinearConfiguration& h,
                                            const DerivationScript& h_script) {
    int m = x.ambient;
    FiberCompletionResult out;
    if (m <= 1) {
        out.config = h;
        out.script = h_script;
        return out;
    }
    int n = x.size();
    if (n == 0) throw degenerate_input("empty configuration");
    int ci = n - 1;
    for (int j = 0; j < n - 1; ++j)
        if (x.points[j] == x.points[ci])
            throw degenerate_input("projection center coincides with another point");
    PointProjection pr = make_projection(x.points[ci]);
    Configuration z = project_from_point(x, ci);

    // induced arrangement: elements through the center, projected
    LinearConfiguration hbar;
    hbar.ambient = m - 1;
    for (const auto& s : h.subspaces) {
        if (s.dim() < 1) continue;
        if (!contains_point(s, x.points[ci])) continue;
        hbar.insert(project_subspace(pr, s));
    }

    LinearConfiguration hbar_done;
    if (m - 1 <= 1) {
        hbar_done = hbar;  // arrangements in the line are already fiber type
    } else {
        auto sbar = derive_script(z, hbar);
        if (!sbar)
            throw degenerate_input("induced arrangement is not derivable from the projection");
        FiberCompletionResult rec = fiber_type_completion(z, hbar, *sbar);
        hbar_done = rec.config;
    }

    // pull back the completed induced arrangement
    LinearConfiguration h1 = h;
    for (const auto& s : hbar_done.subspaces) {
        if (s.dim() != m - 2) continue;
        h1.insert(lift_subspace(pr, s));
    }
    h1 = complete(h1);

    // adjoin joins of the center with codimension-2 strata until stable;
    // a single pass suffices through ambient dimension 2
    for (int round = 0; round < 4; ++round) {
        std::vector<Subspace> joins;
        for (const auto& s : h1.subspaces) {
            if (s.dim() != m - 2) continue;
            if (contains_point(s, x.points[ci])) continue;
            Subspace j = join(s, subspace_of_point(x.points[ci]));
            if (j.dim() == m - 1 && !h1.contains_subspace(j)) joins.push_back(j);
        }
        if (joins.empty()) break;
        for (const auto& j : joins) h1.insert(j);
        h1 = complete(h1);
    }

    // rebuild the full script from the given prefix
    ReplayResult pre = evaluate_script(h_script, x);
    if (!pre.ok) throw degenerate_input("input script does not replay on its configuration");
    ScriptSearchStart start{pre.config, h_script, pre.step_hyperplanes};
    auto script = derive_script(x, h1, start);
    if (!script) throw degenerate_input("fiber-type completion is not derivable");
    out.config = h1;
    out.script = *script;
    return out;
}

}  // namespace grassfold
