#include "support.hpp"

#include "cellshape/error.hpp"
#include "cellshape/grassmann.hpp"
#include "cellshape/templates.hpp"

#include <doctest.h>

#include <numbers>

using namespace cellshape;
using namespace testsupport;

namespace {

DistanceOptions opts(Space s, Method m) {
    DistanceOptions o;
    o.space = s;
    o.method = m;
    return o;
}

}  // namespace

TEST_CASE("make_templates") {
    const auto t = make_templates(295, 4.0);
    CHECK(t.circle.size() == 295);
    CHECK(perimeter(t.ellipse.points) == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& p : t.circle.points) CHECK(norm(p) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-5));
    CHECK(principal_axis(t.ellipse.points).angle == doctest::Approx(0.0));
    CHECK_THROWS_AS(make_templates(295, 1.0), Error);
    CHECK_THROWS_AS(make_templates(295, 0.5), Error);
    CHECK_THROWS_AS(make_templates(2, 4.0), Error);

    // Built at twice the resolution and resampled: same shape.
    const auto fine = make_templates(590, 4.0);
    const auto coarse = normalize(as_raw(fine.circle), 295);
    CHECK(grassmann::distance(grassmann::to_grassmann(coarse), grassmann::to_grassmann(t.circle)).d < 1e-3);
}

TEST_CASE("template features") {
    const auto t = make_templates();
    for (Space s : {Space::S1, Space::S2}) {
        for (Method m : {Method::Fixed, Method::Reparam}) {
            const auto o = opts(s, m);
            const auto fc = template_features(t.circle, t, o);
            CHECK(fc.d_circle < 1e-6);
            CHECK(fc.d_ellipse > 0.1);
            const auto fe = template_features(t.ellipse, t, o);
            CHECK(fe.d_ellipse < 1e-6);
        }
    }
    const auto cells = random_curves(15, 51);
    for (Space s : {Space::S1, Space::S2}) {
        const auto fixed = template_features(cells, t, opts(s, Method::Fixed));
        const auto reparam = template_features(cells, t, opts(s, Method::Reparam));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            CHECK(reparam[i].d_circle <= fixed[i].d_circle + 1e-12);
            CHECK(reparam[i].d_ellipse <= fixed[i].d_ellipse + 1e-12);
            CHECK(fixed[i].cell_id == cells[i].meta.source_id);
        }
    }
    CHECK_THROWS_AS(template_features(circle(100), t, opts(Space::S2, Method::Fixed)), Error);
}

TEST_CASE("parallel and serial template features agree") {
    const auto t = make_templates();
    const auto cells = random_curves(12, 53);
    const auto o = opts(Space::S2, Method::Reparam);
    const auto p = template_features(cells, t, o), s = template_features_serial(cells, t, o);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(p[i].d_circle == s[i].d_circle);
        CHECK(p[i].d_ellipse == s[i].d_ellipse);
    }
}

TEST_CASE("circles and ellipses separate on template distances") {
    std::mt19937_64 rng(57);
    const auto t = make_templates();
    for (Space s : {Space::S1, Space::S2}) {
        for (int k = 0; k < 10; ++k) {
            const auto c = canonical(synthetic::with_radial_noise(synthetic::ellipse(1, 1, 300, 0.1 * k), 0.02, rng));
            const auto e = canonical(synthetic::with_radial_noise(synthetic::ellipse(4, 1, 300, 0.1 * k), 0.02, rng));
            const auto fc = template_features(c, t, opts(s, Method::Fixed));
            const auto fe = template_features(e, t, opts(s, Method::Fixed));
            CHECK(fc.d_circle < fc.d_ellipse);
            CHECK(fe.d_ellipse < fe.d_circle);
        }
    }
}
