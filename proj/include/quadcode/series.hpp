#pragma once

#include <cstdint>
#include <stdexcept>

namespace quadcode {

/// base^exp for exp >= 0.
constexpr std::int64_t ipow(std::int64_t base, int exp) {
    if (exp < 0) throw std::domain_error("negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// q^lo + q^(lo+1) + ... + q^hi, and 0 when lo > hi.
///
/// Every "q^a + ... + q^b" tail in the size formulas goes through here with
/// explicit endpoints, so a row's transcription can be audited in one place.
constexpr std::int64_t power_sum(std::int64_t q, int lo, int hi) {
    if (lo > hi) return 0;
    if (lo < 0) throw std::domain_error("power_sum with negative exponent");
    std::int64_t total = 0;
    for (int j = lo; j <= hi; ++j) total += ipow(q, j);
    return total;
}

}  // namespace quadcode
