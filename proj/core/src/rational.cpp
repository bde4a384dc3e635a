#include "grassfold/rational.hpp"

#include "grassfold/errors.hpp"

namespace grassfold {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw malformed_input("empty rational literal");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw malformed_input("bad rational literal: " + s);
    }
    try {
        Rat r(s);
        if (r.get_den() == 0) throw malformed_input("zero denominator: " + s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw malformed_input("bad rational literal: " + s);
    }
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<Rat> rat_vec(std::initializer_list<long> xs) {
    std::vector<Rat> v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace grassfold
