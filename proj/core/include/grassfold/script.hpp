#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grassfold/arrangement.hpp"

namespace grassfold {

// Replayable reference to an element of an evolving derived configuration.
// Every element of a completion of hyperplanes is a meet of hyperplanes, and
// every hyperplane is either a span of marked points or the result of an
// earlier script step, so this little grammar reaches everything.
struct ElementRef {
    enum class Kind { span, step, meet };
    Kind kind = Kind::span;
    std::vector<int> span_marks;         // kind == span: sorted point indices
    int step_index = -1;                 // kind == step
    std::vector<ElementRef> meet_args;   // kind == meet

    static ElementRef span(std::vector<int> marks);
    static ElementRef step(int k);
    static ElementRef meet_of(std::vector<ElementRef> args);

    bool operator==(const ElementRef& o) const;
};

struct ScriptStep {
    ElementRef base;          // the L of "adjoin L * span(X)"
    std::vector<int> points;  // the X, sorted indices into the configuration

    bool operator==(const ScriptStep& o) const { return base == o.base && points == o.points; }
};

struct DerivationScript {
    std::vector<ScriptStep> steps;

    bool operator==(const DerivationScript& o) const { return steps == o.steps; }
};

// Shifts point indices >= at by one (insertion of a new point); when
// cone_spans is set, every span reference also gains the new index (the
// dual coface, which lifts spans through the new center).
DerivationScript reindex_script_insert(const DerivationScript& s, int at, bool cone_spans);

struct ReplayResult {
    bool ok = false;               // false: geometric degeneracy, see diagnostic
    std::string diagnostic;
    LinearConfiguration config;
    std::vector<Subspace> step_hyperplanes;
};

// Resolves a reference over a configuration given the step results so far.
// Total: meets may come out empty. Throws malformed_input on structural
// errors (bad indices).
Subspace resolve_ref(const ElementRef& ref, const Configuration& x,
                     const std::vector<Subspace>& steps);

// Starts from base_derived(x) and applies the extension steps.
ReplayResult evaluate_script(const DerivationScript& s, const Configuration& x);

// Greedy reconstruction of a derivation script for a complete target
// configuration generated by its hyperplanes. `start` may carry an already
// derived prefix. Returns nullopt when the target is not reachable.
struct ScriptSearchStart {
    LinearConfiguration config;
    DerivationScript script;
    std::vector<Subspace> step_hyperplanes;
};
std::optional<DerivationScript> derive_script(const Configuration& x,
                                              const LinearConfiguration& target);
std::optional<DerivationScript> derive_script(const Configuration& x,
                                              const LinearConfiguration& target,
                                              const ScriptSearchStart& start);

// Canonical reference for an element of a configuration built by a script:
// spans of the witness marks for base hyperplanes, step indices for added
// ones, meets of the covering hyperplanes otherwise.
ElementRef ref_for_element(const Subspace& el, const Configuration& x,
                           const LinearConfiguration& config,
                           const std::vector<Subspace>& step_hyperplanes);

struct FiberCompletionResult {
    LinearConfiguration config;
    DerivationScript script;
};

// Constructive fiber-type completion: project from the last point, recurse,
// pull the result back, adjoin joins of the last point with codimension-2
// strata, and complete. The returned script derives the result from
// base_derived(x).
FiberCompletionResult fiber_type_completion(const Configuration& x, const LinearConfiguration& h,
                                            const DerivationScript& h_script);

}  // namespace grassfold
