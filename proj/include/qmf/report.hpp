#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qmf/numeric.hpp"

namespace qmf {

// Sentinel valuation for an exactly-zero difference.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

// Structured verdict returned by every identity / congruence checker.
// pass is true iff every checked index met the stated bound.
struct CongruenceReport {
    std::string check;                  // checker id, e.g. "ramanujan-691"
    std::string modulus;                // "691", "5^2", ... ("" for plain identities)
    bool pass = false;
    std::optional<std::size_t> first_fail;
    std::optional<long> min_valuation;  // minimum finite p-adic valuation seen
    std::vector<long> valuations;       // per-index valuations where meaningful
    std::vector<std::size_t> exponents; // surviving exponents (identity checks)
    bool hypothesis_ok = true;          // kummer: hypothesis verdict
    bool conclusion_ok = true;          // kummer: conclusion verdict
    std::string note;

    void record_valuation(std::size_t index, std::optional<long> v, long bound) {
        long stored = v.value_or(kInfiniteValuation);
        valuations.push_back(stored);
        if (v) min_valuation = min_valuation ? std::min(*min_valuation, *v) : *v;
        if (stored < bound && !first_fail) first_fail = index;
    }
};

}  // namespace qmf
