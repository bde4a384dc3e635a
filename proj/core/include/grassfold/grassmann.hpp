#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grassfold/templates.hpp"

namespace grassfold {

// Point of the generic part G^p_q: a p x (p+q+1) matrix with every p
// columns linearly independent, modulo GL_p and column scaling.
struct GrassPoint {
    int p = 0, q = 0;
    ExactMatrix m;  // p rows, p+q+1 columns
};

bool is_generic(const ExactMatrix& m, int p);

// Unique gauge-fixed representative: columns 0..p-1 the standard basis,
// column p all ones, later columns with first coordinate 1.
GrassPoint normal_form(const GrassPoint& v);

Configuration point_config(const GrassPoint& v);

GrassPoint face_map(const GrassPoint& v, int i);       // delete column i, shape (p, q-1)
GrassPoint dual_face_map(const GrassPoint& v, int i);  // project from column i, shape (p-1, q)

GrassPoint vandermonde_section(const std::vector<Rat>& t, int p);  // throws on repeated t

bool stratum_member(const GrassPoint& v, const ScriptedTemplate& st);
Tri closure_member(const GrassPoint& v, const ScriptedTemplate& st);

struct ConstructibleSet {
    int p = 0, q = 0;
    std::vector<ScriptedTemplate> excluded;
};

// true iff closure membership fails for every excluded template; an
// indeterminate evaluation propagates as an error.
bool in_constructible_open(const GrassPoint& v, const ConstructibleSet& u);

// --- the U search ------------------------------------------------------------

struct SearchBudget {
    int max_q = -1;        // levels to process; default p
    int samples = 12;      // verification samples per record
    int agree = 3;         // consecutive agreeing generic-proxy samples
    long height = 64;      // rational height for sampling
    int max_attempts = 64; // sampling attempts before giving up
};

struct ULevel {
    int q = 0;
    bool trivial = false;  // level carries no geometric content (p = 1, or q = 0)
    std::vector<ScriptedTemplate> excluded;
    std::optional<ScriptedTemplate> fiber_template;  // shape (p, q-1), fiber type
    std::vector<FiberStage> chain;
    IntPoly poincare;
    std::vector<int> exponents;             // nonzero chain exponents
    std::vector<GrassPoint> base_samples;   // level q-1 proxies with agreeing combinatorics
    std::vector<GrassPoint> member_samples; // level q points inside U_q
};

struct FaceCheckRecord {
    int q = 0;
    int i = 0;
    GrassPoint sample;  // in U_q, with A_i(sample) verified in U_{q-1}
};

struct UCertificate {
    int p = 0;
    uint64_t seed = 0;
    SearchBudget budget;
    std::vector<ULevel> levels;  // q = 0 .. max_q
    std::vector<FaceCheckRecord> face_checks;
    bool completed = true;
    int failure_level = -1;
};

UCertificate search_u(int p, const SearchBudget& budget, uint64_t seed);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

VerifyReport verify_certificate(const UCertificate& cert);

// Random generic point in normal form (deterministic in the rng state).
GrassPoint random_generic_point(int p, int q, class Rng& rng, long height, int max_attempts);

}  // namespace grassfold
