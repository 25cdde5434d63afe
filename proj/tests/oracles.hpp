#pragma once

#include <vector>

#include "qmf/numeric.hpp"

namespace qmf_test {

// Brute-force lattice counter for r_k(n): recursion over the last coordinate
// with memoization. Independent of all series arithmetic.
class LatticeOracle {
  public:
    LatticeOracle(unsigned k_max, long long n_max)
        : memo_(k_max + 1, std::vector<qmf::Int>(n_max + 1, -1)) {
        for (long long n = 0; n <= n_max; ++n) memo_[0][n] = (n == 0) ? 1 : 0;
    }

    qmf::Int count(unsigned k, long long n) {
        qmf::Int& slot = memo_[k][n];
        if (slot >= 0) return slot;
        qmf::Int acc = 0;
        for (long long t = 0; t * t <= n; ++t) {
            qmf::Int ways = count(k - 1, n - t * t);
            acc += (t == 0) ? ways : 2 * ways;
        }
        slot = acc;
        return acc;
    }

  private:
    std::vector<std::vector<qmf::Int>> memo_;
};

}  // namespace qmf_test
