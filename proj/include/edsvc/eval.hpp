#ifndef EDSVC_EVAL_HPP
#define EDSVC_EVAL_HPP

#include <cstddef>
#include <vector>

#include "edsvc/ensemble.hpp"
#include "edsvc/labeling.hpp"

namespace edsvc {

struct ContingencyTable {
    std::vector<std::size_t> counts;  // k_a x k_b, row-major
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t k_a = 0, k_b = 0;
    std::size_t total = 0;

    std::size_t at(std::size_t u, std::size_t v) const { return counts[u * k_b + v]; }
};

ContingencyTable contingency(const std::vector<int>& a, const std::vector<int>& b);

// NMI = I(a,b) / sqrt(H(a) H(b)), natural log. When one side has zero entropy
// the score is 1 for identical single-cluster partitions and 0 otherwise.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

inline double nmi(const Labeling& a, const Labeling& b) {
    return nmi(a.assignments, b.assignments);
}

// Mean NMI between the candidate and every ensemble member.
double anmi(const Labeling& candidate, const Ensemble& ensemble);

}  // namespace edsvc

#endif
