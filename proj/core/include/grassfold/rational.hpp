#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace grassfold {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;
using Intz = mpz_class;

// Parses "num/den" or "num". Throws malformed_input on anything else.
Rat rat_parse(const std::string& s);

// Canonical form "num/den"; the "/den" part is omitted when den == 1.
std::string rat_str(const Rat& r);

std::vector<Rat> rat_vec(std::initializer_list<long> xs);

}  // namespace grassfold
