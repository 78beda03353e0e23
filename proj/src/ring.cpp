#include "lgcalc/ring.hpp"

#include <cctype>
#include <set>

namespace lg {

namespace {

bool valid_var_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

std::size_t RingSpec::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return i;
    throw Error("ring: unknown variable \"" + name + "\"");
}

RingPtr make_ring(RingSpec spec) {
    if (spec.variables.empty()) throw Error("ring: needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : spec.variables) {
        if (!valid_var_name(v)) throw Error("ring: invalid variable name \"" + v + "\"");
        if (!seen.insert(v).second) throw Error("ring: duplicate variable \"" + v + "\"");
    }
    if (spec.grading == Grading::Z) {
        if (!spec.rcharge_weights)
            throw Error("ring: Z grading requires rcharge weights");
        for (long w : *spec.rcharge_weights)
            if (w % 2 != 0) throw Error("ring: Z-graded rcharge weights must be even");
    }
    if (spec.rcharge_weights && spec.rcharge_weights->size() != spec.variables.size())
        throw Error("ring: rcharge weight count != variable count");
    if (spec.qh_weights) {
        if (spec.qh_weights->size() != spec.variables.size())
            throw Error("ring: qh weight count != variable count");
        for (const auto& w : *spec.qh_weights)
            if (w.sign() <= 0) throw Error("ring: qh weights must be positive");
    }
    return std::make_shared<const RingSpec>(std::move(spec));
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (!same_ring(a, b)) throw Error(std::string("ring mismatch: ") + where);
}

}  // namespace lg
