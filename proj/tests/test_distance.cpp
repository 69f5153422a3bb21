#include "support.hpp"

#include "cellshape/distance.hpp"
#include "cellshape/error.hpp"

#include <doctest.h>

#include <numbers>

using namespace cellshape;
using namespace testsupport;

TEST_CASE("option parsing") {
    CHECK(parse_space("s1") == Space::S1);
    CHECK(parse_space("S2") == Space::S2);
    CHECK(parse_method("Reparam") == Method::Reparam);
    CHECK(parse_rotation("procrustes") == srvf::RotationMode::Procrustes);
    CHECK(parse_rotation("flip") == srvf::RotationMode::FlipOnly);
    CHECK_THROWS_AS(parse_space("S3"), InputError);
    CHECK_THROWS_AS(parse_method("elastic-ish"), InputError);
    CHECK(to_string(Space::S1) == "S1");
}

TEST_CASE("distance matrix basics") {
    const auto c = circle();
    for (Space s : {Space::S1, Space::S2}) {
        DistanceOptions o;
        o.space = s;
        auto copy = c;
        copy.meta.source_id = "copy";
        const auto dm2 = distance_matrix(std::vector<NormalizedCurve>{c, copy}, o);
        CHECK(dm2(0, 1) < 1e-6);
        CHECK(dm2(0, 0) == 0.0);

        const auto dm = distance_matrix(std::vector<NormalizedCurve>{c, ellipse(), copy}, o);
        CHECK(dm(0, 2) < 1e-6);
        CHECK(dm(0, 1) > 1e-6);
        CHECK(dm.ids[1] == "ellipse");
    }
    DistanceOptions o;
    CHECK_THROWS_AS(distance_matrix(std::vector<NormalizedCurve>{c}, o), Error);
}

TEST_CASE("pair failures name the pair") {
    auto a = circle(), b = circle(100);
    a.meta.source_id = "first";
    b.meta.source_id = "second";
    DistanceOptions o;
    CHECK_THROWS_WITH_AS(distance_matrix(std::vector<NormalizedCurve>{a, b}, o), doctest::Contains("'first', 'second'"),
                         Error);
    CHECK_THROWS_WITH_AS(distance_matrix_serial(std::vector<NormalizedCurve>{a, b}, o),
                         doctest::Contains("'first', 'second'"), Error);
}

TEST_CASE("matrix is symmetric, finite, zero on the diagonal, and parallel equals serial") {
    const auto cs = random_curves(16, 61);
    for (Space s : {Space::S1, Space::S2}) {
        for (Method m : {Method::Fixed, Method::Reparam}) {
            DistanceOptions o;
            o.space = s;
            o.method = m;
            o.shift_step = 7;
            const auto p = distance_matrix(cs, o);
            const auto q = distance_matrix_serial(cs, o);
            CHECK(p.d == q.d);
            CHECK(p.symmetrized == needs_symmetrization(o, 295));
            for (std::size_t i = 0; i < p.size(); ++i) {
                CHECK(p(i, i) == 0.0);
                for (std::size_t j = 0; j < p.size(); ++j) {
                    CHECK(p(i, j) == p(j, i));
                    CHECK(std::isfinite(p(i, j)));
                }
            }
        }
    }
}

TEST_CASE("symmetrization rules") {
    DistanceOptions o;
    CHECK_FALSE(needs_symmetrization(o, 295));
    o.method = Method::Reparam;
    o.shift_step = 5;
    CHECK_FALSE(needs_symmetrization(o, 295));  // 5 divides 295
    o.shift_step = 7;
    CHECK(needs_symmetrization(o, 295));
    o.shift_step = 5;
    o.use_dp = true;
    CHECK(needs_symmetrization(o, 295));
}

TEST_CASE("euclidean feature distances") {
    const auto dm = euclidean_distance_matrix({{0, 0}, {3, 4}}, {"a", "b"});
    CHECK(dm(0, 1) == doctest::Approx(5.0));
    CHECK(dm(1, 0) == doctest::Approx(5.0));
}

TEST_CASE("property suite on random curves") {
    const auto cs = random_curves(40, 67);
    const auto g = prepare_all(cs, Space::S1);
    const auto q = prepare_all(cs, Space::S2);
    DistanceOptions o1, o2;
    o1.space = Space::S1;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        CHECK(pair_distance(g[i], g[i], o1) < 1e-6);
        CHECK(pair_distance(q[i], q[i], o2) < 1e-6);
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            CHECK(pair_distance(g[i], g[j], o1) <= grassmann::kMaxDistance);
            CHECK(pair_distance(q[i], q[j], o2) <= std::numbers::pi);
        }
    }
}
