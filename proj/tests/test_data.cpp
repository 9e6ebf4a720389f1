#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "edsvc/data.hpp"
#include "synth.hpp"

using namespace edsvc;

TEST_CASE("parse_csv splits off the label column") {
    auto loaded = parse_csv("1,2,a\n3,4,a\n5,6,b", LabelColumn::last());
    CHECK(loaded.data.n_points() == 3);
    CHECK(loaded.data.n_dims() == 2);
    REQUIRE(loaded.labels.has_value());
    CHECK(loaded.labels->labels == std::vector<int>{0, 0, 1});
    CHECK(loaded.labels->class_names == std::vector<std::string>{"a", "b"});
    CHECK(loaded.data(2, 1) == 6.0);
}

TEST_CASE("parse_csv without label column") {
    auto loaded = parse_csv("1,2\n3,4", LabelColumn::none());
    CHECK(loaded.data.n_points() == 2);
    CHECK(!loaded.labels.has_value());
}

TEST_CASE("parse_csv auto-detects a header row") {
    auto loaded = parse_csv("x,y,class\n1,2,a\n3,4,b", LabelColumn::last());
    CHECK(loaded.data.n_points() == 2);
    CHECK(loaded.labels->labels == std::vector<int>{0, 1});
}

TEST_CASE("parse_csv errors carry row and column locations") {
    CHECK_THROWS_WITH_AS(parse_csv("1,x\n2,3", LabelColumn::none()),
                         doctest::Contains("row 1, column 2"), DataError);
    CHECK_THROWS_WITH_AS(parse_csv("1,2\n3,4,5", LabelColumn::none()),
                         doctest::Contains("row 2"), DataError);
    CHECK_THROWS_AS(parse_csv("1,2\n3,4", LabelColumn::at(5)), DataError);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", LabelColumn::none()),
                    DataError);
}

TEST_CASE("wine dataset loads as 178x13 with 3 classes") {
    auto loaded = load_csv(std::string(EDSVC_DATA_DIR) + "/wine.csv",
                           LabelColumn::last());
    CHECK(loaded.data.n_points() == 178);
    CHECK(loaded.data.n_dims() == 13);
    REQUIRE(loaded.labels.has_value());
    CHECK(loaded.labels->class_names.size() == 3);
}

TEST_CASE("normalize_minmax maps columns onto [0,1]") {
    DataMatrix m(3, 1, {2, 4, 6});
    auto out = normalize_minmax(m);
    CHECK(out(0, 0) == 0.0);
    CHECK(out(1, 0) == 0.5);
    CHECK(out(2, 0) == 1.0);

    DataMatrix constant(2, 1, {7, 7});
    auto cz = normalize_minmax(constant);
    CHECK(cz(0, 0) == 0.0);
    CHECK(cz(1, 0) == 0.0);
}

TEST_CASE("normalize_minmax is idempotent") {
    auto data = synth::random_points(40, 5, 7);
    auto once = normalize_minmax(data);
    auto twice = normalize_minmax(once);
    for (std::size_t i = 0; i < once.n_points(); ++i)
        for (std::size_t k = 0; k < once.n_dims(); ++k)
            CHECK(once(i, k) == twice(i, k));
    // every entry in range
    for (double v : once.values()) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("pairwise_sq_dists basics") {
    DataMatrix m(2, 2, {0, 0, 3, 4});
    auto d = pairwise_sq_dists(m);
    CHECK(d(0, 1) == 25.0);
    CHECK(d(1, 0) == 25.0);
    CHECK(d(0, 0) == 0.0);

    DataMatrix single(1, 3, {1, 2, 3});
    auto ds = pairwise_sq_dists(single);
    CHECK(ds.size() == 1);
    CHECK(ds(0, 0) == 0.0);
}

TEST_CASE("pairwise_sq_dists matches the naive double loop") {
    auto data = synth::random_points(5, 3, 11);
    auto d = pairwise_sq_dists(data);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                double diff = data(i, k) - data(j, k);
                s += diff * diff;
            }
            CHECK(d(i, j) == s);
            CHECK(d(i, j) == d(j, i));
        }
}

TEST_CASE("sqrt distances satisfy the triangle inequality") {
    auto data = synth::random_points(12, 4, 13);
    auto d = pairwise_sq_dists(data);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j)
            for (std::size_t k = 0; k < 12; ++k)
                CHECK(std::sqrt(d(i, j)) <=
                      std::sqrt(d(i, k)) + std::sqrt(d(k, j)) + 1e-9);
}

TEST_CASE("distance cache sidecar round-trips and rejects a wrong key") {
    auto data = synth::random_points(9, 2, 17);
    auto d = pairwise_sq_dists(data);
    auto path = (std::filesystem::temp_directory_path() / "edsvc_test.dists").string();
    write_distance_cache(path, 0xabcdef, d);
    auto back = read_distance_cache(path, 0xabcdef);
    REQUIRE(back.has_value());
    CHECK(back->sq_dists() == d.sq_dists());
    CHECK(!read_distance_cache(path, 0x123456).has_value());
    std::remove(path.c_str());
    CHECK(!read_distance_cache(path, 0xabcdef).has_value());
}
