#include "edsvc/eval.hpp"

#include <algorithm>
#include <cmath>

namespace edsvc {

ContingencyTable contingency(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw DataError("contingency: label vectors differ in length");
    ContingencyTable t;
    int ka = 0, kb = 0;
    for (int v : a) ka = std::max(ka, v + 1);
    for (int v : b) kb = std::max(kb, v + 1);
    t.k_a = static_cast<std::size_t>(ka);
    t.k_b = static_cast<std::size_t>(kb);
    t.counts.assign(t.k_a * t.k_b, 0);
    t.row_sums.assign(t.k_a, 0);
    t.col_sums.assign(t.k_b, 0);
    t.total = a.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t u = static_cast<std::size_t>(a[i]);
        std::size_t v = static_cast<std::size_t>(b[i]);
        ++t.counts[u * t.k_b + v];
        ++t.row_sums[u];
        ++t.col_sums[v];
    }
    return t;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    // canonical argument order keeps the score bit-identical under swaps
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()))
        return nmi(b, a);
    const ContingencyTable t = contingency(a, b);
    const double n = static_cast<double>(t.total);

    double h_a = 0.0, h_b = 0.0;
    for (std::size_t u = 0; u < t.k_a; ++u)
        if (t.row_sums[u]) {
            double p = static_cast<double>(t.row_sums[u]) / n;
            h_a -= p * std::log(p);
        }
    for (std::size_t v = 0; v < t.k_b; ++v)
        if (t.col_sums[v]) {
            double p = static_cast<double>(t.col_sums[v]) / n;
            h_b -= p * std::log(p);
        }

    if (h_a * h_b == 0.0) {
        // zero-entropy side: 1 only when both are the same single-cluster
        // partition, else 0
        return h_a == 0.0 && h_b == 0.0 ? 1.0 : 0.0;
    }

    double mi = 0.0;
    for (std::size_t u = 0; u < t.k_a; ++u)
        for (std::size_t v = 0; v < t.k_b; ++v) {
            std::size_t c = t.at(u, v);
            if (!c) continue;
            double p_uv = static_cast<double>(c) / n;
            double p_u = static_cast<double>(t.row_sums[u]) / n;
            double p_v = static_cast<double>(t.col_sums[v]) / n;
            mi += p_uv * std::log(p_uv / (p_u * p_v));
        }
    double score = mi / std::sqrt(h_a * h_b);
    return std::clamp(score, 0.0, 1.0);
}

double anmi(const Labeling& candidate, const Ensemble& ensemble) {
    if (ensemble.members.empty()) throw DataError("anmi: empty ensemble");
    double sum = 0.0;
    for (const Labeling& member : ensemble.members)
        sum += nmi(member, candidate);
    return sum / static_cast<double>(ensemble.members.size());
}

}  // namespace edsvc
