#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "edsvc/eval.hpp"
#include "edsvc/labeling.hpp"
#include "edsvc/rng.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using namespace edsvc;

namespace {

// Dense-sampling reference for the segment test, independent of the
// production sampling and of the distance-matrix identity.
bool dense_segment_oracle(const SphereModel& m, const DataMatrix& data,
                          std::size_t i, std::size_t j, double slack,
                          std::size_t samples = 1000) {
    const std::size_t n = data.n_points(), d = data.n_dims();
    const double limit = m.sq_radius() * (1.0 + slack);
    for (std::size_t s = 1; s <= samples; ++s) {
        const double t = static_cast<double>(s) / static_cast<double>(samples + 1);
        std::vector<double> y(d);
        for (std::size_t k = 0; k < d; ++k)
            y[k] = (1.0 - t) * data(i, k) + t * data(j, k);
        std::vector<double> sq(n);
        for (std::size_t p = 0; p < n; ++p) {
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                double diff = y[k] - data(p, k);
                acc += diff * diff;
            }
            sq[p] = acc;
        }
        if (m.sq_radius_at(sq) > limit) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("segment_connected is reflexive, symmetric, and blob-consistent") {
    auto blob = synth::blobs({{0.0, 0.0}}, 20, 0.05, 5);
    auto dists = pairwise_sq_dists(blob.data);
    auto model = solve_wolfe_dual(dists, 1.0, 1.0);
    LabelingConfig cfg;

    CHECK(segment_connected(model, blob.data, 3, 3, cfg));
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        std::size_t i = rng.next_below(20), j = rng.next_below(20);
        const bool ij = segment_connected(model, blob.data, i, j, cfg);
        CHECK(ij == segment_connected(model, blob.data, j, i, cfg));
        // denser sampling can only remove edges, never add them
        if (dense_segment_oracle(model, blob.data, i, j, cfg.radius_slack))
            CHECK(ij);
    }
}

TEST_CASE("interpolated squared distances match direct geometry") {
    // the production segment test never materializes the interpolated point;
    // its squared distances come from the endpoint rows of the matrix
    auto data = synth::blobs({{0.0, 0.0}, {3.0, 1.0}}, 10, 0.8, 11);
    auto dists = pairwise_sq_dists(data.data);
    const std::size_t n = data.data.n_points(), d = data.data.n_dims();
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t i = rng.next_below(n), j = rng.next_below(n);
        const double t = rng.next_double();
        for (std::size_t k = 0; k < n; ++k) {
            const double via_identity = (1.0 - t) * dists(i, k) +
                                        t * dists(j, k) -
                                        t * (1.0 - t) * dists(i, j);
            double direct = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double y = (1.0 - t) * data.data(i, c) + t * data.data(j, c);
                const double diff = y - data.data(k, c);
                direct += diff * diff;
            }
            CHECK(std::abs(via_identity - direct) <= 1e-9);
        }
    }
}

TEST_CASE("segments between distant blobs leave the sphere") {
    auto two = synth::blobs({{0.0, 0.0}, {10.0, 0.0}}, 10, 0.05, 6);
    auto dists = pairwise_sq_dists(two.data);
    auto model = solve_wolfe_dual(dists, 1.0, 1.0);
    LabelingConfig cfg;
    CHECK(!segment_connected(model, two.data, 0, 10, cfg));
    CHECK(!dense_segment_oracle(model, two.data, 0, 10, cfg.radius_slack));
    CHECK(segment_connected(model, two.data, 0, 1, cfg));
}

TEST_CASE("build_adjacency on degenerate and complete cases") {
    DataMatrix one(1, 2, {0.5, 0.5});
    auto d1 = pairwise_sq_dists(one);
    auto m1 = solve_wolfe_dual(d1, 1.0, 1.0);
    auto g1 = build_adjacency(m1, one, {});
    CHECK(g1.n_nodes == 1);
    CHECK(g1.edges.empty());

    auto blob = synth::blobs({{0.0, 0.0}}, 12, 0.02, 8);
    auto d2 = pairwise_sq_dists(blob.data);
    auto m2 = solve_wolfe_dual(d2, 1.0, 1.0);
    auto g2 = build_adjacency(m2, blob.data, {});
    CHECK(g2.n_nodes == 12);
    CHECK(g2.edges.size() == 12 * 11 / 2);
}

TEST_CASE("two blobs give two complete components with no cross edges") {
    auto two = synth::blobs({{0.0, 0.0}, {10.0, 0.0}}, 8, 0.05, 10);
    auto dists = pairwise_sq_dists(two.data);
    auto model = solve_wolfe_dual(dists, 1.0, 1.0);
    auto g = build_adjacency(model, two.data, {});
    for (auto [a, b] : g.edges) {
        std::size_t pa = g.node_index_map[a], pb = g.node_index_map[b];
        CHECK((pa < 8) == (pb < 8));  // never across blobs
    }
    CHECK(g.edges.size() == 2 * (8 * 7 / 2));
}

TEST_CASE("connected_components matches Floyd-Warshall on random graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 + rng.next_below(11);  // 2..12 nodes
        AdjacencyGraph g;
        g.n_nodes = n;
        for (std::size_t i = 0; i < n; ++i) g.node_index_map.push_back(i);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng.next_double() < 0.2) g.edges.emplace_back(i, j);

        auto mine = connected_components(g, n);
        auto ref = oracles::floyd_warshall_components(n, g.edges);
        CHECK(mine.assignments == ref);
        CHECK(mine.n_clusters == 1 + *std::max_element(ref.begin(), ref.end()));
    }
}

TEST_CASE("component ids follow the smallest member index") {
    AdjacencyGraph g;
    g.n_nodes = 4;
    g.node_index_map = {0, 1, 2, 3};
    g.edges = {{0, 1}, {1, 2}};
    auto lab = connected_components(g, 4);
    CHECK(lab.assignments == std::vector<int>{0, 0, 0, 1});
    CHECK(lab.n_clusters == 2);

    AdjacencyGraph iso;
    iso.n_nodes = 3;
    iso.node_index_map = {0, 1, 2};
    auto singles = connected_components(iso, 3);
    CHECK(singles.assignments == std::vector<int>{0, 1, 2});
}

TEST_CASE("assign_bsvs attaches outliers to the nearest labeled point") {
    // no BSVs: identity
    Labeling partial{{0, 0, 1}, 2};
    DistanceMatrix d3(3, {0, 1, 4, 1, 0, 4, 4, 4, 0});
    SphereModel dummy = solve_wolfe_dual(d3, 1.0, 1.0);
    auto same = assign_bsvs(partial, dummy, d3);
    CHECK(same.labeling.assignments == partial.assignments);
    CHECK(!same.all_bsv_fallback);

    // point 2 unlabeled, nearest labeled neighbor decides; tie toward the
    // smaller index
    Labeling with_hole{{0, 1, -1}, 2};
    DistanceMatrix tie(3, {0, 2, 1, 2, 0, 1, 1, 1, 0});
    auto fixed = assign_bsvs(with_hole, dummy, tie);
    CHECK(fixed.labeling.assignments == std::vector<int>{0, 1, 0});

    // all BSV: single cluster plus warning flag
    Labeling none{{-1, -1, -1}, 0};
    auto fallback = assign_bsvs(none, dummy, d3);
    CHECK(fallback.all_bsv_fallback);
    CHECK(fallback.labeling.assignments == std::vector<int>{0, 0, 0});
    CHECK(fallback.labeling.n_clusters == 1);
}

TEST_CASE("svc_cluster finds blob structure without a cluster count") {
    auto one = synth::blobs({{0.0, 0.0}}, 15, 0.05, 31);
    auto d1 = pairwise_sq_dists(one.data);
    CHECK(svc_cluster(one.data, d1, 0.5, 1.0).labeling.n_clusters == 1);

    auto two = synth::blobs({{0.0, 0.0}, {10.0, 0.0}}, 10, 0.05, 32);
    auto d2 = pairwise_sq_dists(two.data);
    auto res = svc_cluster(two.data, d2, 1.0, 1.0);
    CHECK(res.labeling.n_clusters == 2);
    CHECK(nmi(res.labeling.assignments, two.truth) == doctest::Approx(1.0));
}

TEST_CASE("svc_cluster separates concentric rings at a suitable width") {
    auto rings = synth::rings(60, 1.0, 4.0, 0.02, 33);
    auto dists = pairwise_sq_dists(rings.data);
    auto res = svc_cluster(rings.data, dists, 0.4, 1.0);
    CHECK(res.labeling.n_clusters == 2);
    CHECK(nmi(res.labeling.assignments, rings.truth) == doctest::Approx(1.0));
}

TEST_CASE("raising the slack never removes an edge") {
    auto data = synth::blobs({{0.0, 0.0}, {2.5, 0.0}}, 10, 0.4, 34);
    auto dists = pairwise_sq_dists(data.data);
    auto model = solve_wolfe_dual(dists, 1.0, 1.0);
    std::set<std::pair<std::size_t, std::size_t>> prev;
    for (double slack : {0.0, 1e-7, 1e-3}) {
        LabelingConfig cfg;
        cfg.radius_slack = slack;
        auto g = build_adjacency(model, data.data, cfg);
        std::set<std::pair<std::size_t, std::size_t>> now(g.edges.begin(),
                                                          g.edges.end());
        CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
        prev = std::move(now);
    }
}

TEST_CASE("labelings cover all points with contiguous ids") {
    auto data = synth::blobs({{0.0, 0.0}, {3.0, 3.0}}, 12, 0.3, 35);
    auto dists = pairwise_sq_dists(data.data);
    auto res = svc_cluster(data.data, dists, 2.0, 0.1);
    REQUIRE(res.labeling.assignments.size() == 24);
    std::set<int> seen(res.labeling.assignments.begin(),
                       res.labeling.assignments.end());
    CHECK(static_cast<int>(seen.size()) == res.labeling.n_clusters);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == res.labeling.n_clusters - 1);
}
