#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "monic/tensor222.hpp"

using namespace monic;

namespace {

Tensor222 random_sum(int k, Rng& rng, std::vector<std::array<Complex, 3>>* out = nullptr) {
    Tensor222 t{};
    for (int i = 0; i < k; ++i) {
        std::array<Complex, 3> p{rng.small_complex(), rng.small_complex(), rng.small_complex()};
        if (out) out->push_back(p);
        t = t + Tensor222::x1_point(p[0], p[1], p[2]);
    }
    return t;
}

}  // namespace

TEST_CASE("chart points and arithmetic") {
    Tensor222 p = Tensor222::x1_point(Complex(2, 0), Complex(3, 0), Complex(5, 0));
    CHECK(p.a11 == Complex(1, 0));
    CHECK(p.a22 == Complex(6, 0));
    CHECK(p.b22 == Complex(30, 0));
    CHECK((p - p).max_abs() == 0.0);
    CHECK(Tensor222::unit().entries()[0] == Complex(1, 0));
}

TEST_CASE("json round trip") {
    Rng rng(2);
    Tensor222 t = random_sum(3, rng);
    Tensor222 back = Tensor222::from_json(t.to_json());
    CHECK((t - back).max_abs() == 0.0);
}

TEST_CASE("action translates the chart") {
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        Complex a = rng.small_complex(), b = rng.small_complex(), c = rng.small_complex();
        std::array<Complex, 3> u{rng.small_complex(), rng.small_complex(), rng.small_complex()};
        Tensor222 moved = apply_action(u, Tensor222::x1_point(a, b, c));
        Tensor222 expect = Tensor222::x1_point(a + u[0], b + u[1], c + u[2]);
        CHECK((moved - expect).max_abs() <= 1e-9 * std::max(1.0, expect.max_abs()));
    }
}

TEST_CASE("action is additive and fixes a11") {
    Rng rng(4);
    Tensor222 t = random_sum(2, rng);
    std::array<Complex, 3> u{rng.small_complex(), rng.small_complex(), rng.small_complex()};
    std::array<Complex, 3> w{rng.small_complex(), rng.small_complex(), rng.small_complex()};
    Tensor222 one = apply_action(u, apply_action(w, t));
    std::array<Complex, 3> uw{u[0] + w[0], u[1] + w[1], u[2] + w[2]};
    Tensor222 two = apply_action(uw, t);
    CHECK((one - two).max_abs() <= 1e-9 * std::max(1.0, two.max_abs()));
    CHECK(one.a11 == t.a11);
}

TEST_CASE("normalization zeroes the three marked entries and inverts") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        Tensor222 t = random_sum(3, rng);
        auto nrm = tensor222_normalize(t);
        CHECK(nrm.canonical.a12 == Complex(0, 0));
        CHECK(nrm.canonical.a21 == Complex(0, 0));
        CHECK(nrm.canonical.b11 == Complex(0, 0));
        std::array<Complex, 3> inv{-nrm.u[0], -nrm.u[1], -nrm.u[2]};
        Tensor222 back = apply_action(inv, nrm.canonical);
        CHECK((back - t).max_abs() <= 1e-12 * std::max(1.0, t.max_abs()));
    }
    Tensor222 zero_top{};
    CHECK_THROWS_WITH(tensor222_normalize(zero_top), Catch::Matchers::ContainsSubstring("normalization undefined"));
}

TEST_CASE("sums of two chart points satisfy the sigma_2 equation") {
    Rng rng(6);
    for (int rep = 0; rep < 200; ++rep) {
        Tensor222 t = random_sum(2, rng);
        auto rep2 = tensor222_sigma2_membership(t, 1e-9);
        CHECK(rep2.in_sigma2);
    }
}

TEST_CASE("generic rank-three sums violate the sigma_2 equation") {
    Rng rng(7);
    int violations = 0;
    for (int rep = 0; rep < 50; ++rep) {
        Tensor222 t = random_sum(3, rng);
        // rescale a11 from 3 to 2 along the cone to test the hypersurface
        Tensor222 s = t.scaled(Complex(2, 0) / Complex(3, 0));
        if (!tensor222_sigma2_membership(s, 1e-9).in_sigma2) ++violations;
    }
    CHECK(violations >= 45);
}

TEST_CASE("mu pattern: exactly one zero lies outside the open secant") {
    // canonical tensor with mu = (d23, d13, d12) = (1, 0, 0): two zeros, inside
    Tensor222 two_zero{Complex(2, 0), {}, {}, {}, {}, {}, Complex(1, 0), {}};
    auto r2 = tensor222_sigma2_membership(two_zero, 1e-9);
    CHECK(r2.in_sigma2);
    CHECK(r2.in_osec2);
    // mu = (1, 1, 0): exactly one zero, in sigma_2 but not osec_2
    Tensor222 one_zero{Complex(2, 0), {}, {}, {}, {}, Complex(1, 0), Complex(1, 0), {}};
    auto r1 = tensor222_sigma2_membership(one_zero, 1e-9);
    CHECK(r1.in_sigma2);
    CHECK_FALSE(r1.in_osec2);
}

TEST_CASE("k=2 decomposition round trips on the open secant") {
    Rng rng(8);
    int done = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Tensor222 t = random_sum(2, rng);
        if (!tensor222_sigma2_membership(t, 1e-9).in_osec2) continue;
        Certificate cert = tensor222_monic_decompose(t, 2, 1e-9, rng);
        REQUIRE(cert.tensor_summands.size() == 2);
        CHECK(cert.residual <= 1e-8);
        CHECK(cert.all_checks());
        ++done;
    }
    CHECK(done >= 90);
}

TEST_CASE("k=2 exactly-one-zero obstruction") {
    Tensor222 one_zero{Complex(2, 0), {}, {}, {}, {}, Complex(1, 0), Complex(1, 0), {}};
    Rng rng(9);
    CHECK_THROWS_WITH(tensor222_monic_decompose(one_zero, 2, 1e-9, rng),
                      Catch::Matchers::ContainsSubstring("exactly-one-zero"));
}

TEST_CASE("k=2 rejects targets off the hypersurface") {
    Tensor222 t{Complex(2, 0), {}, {}, {}, {}, {}, {}, Complex(1, 0)};  // e != 0
    Rng rng(10);
    CHECK_THROWS_WITH(tensor222_monic_decompose(t, 2, 1e-9, rng),
                      Catch::Matchers::ContainsSubstring("not in the second"));
}

TEST_CASE("k=3 decomposition round trips everywhere in 3H") {
    Rng rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        Tensor222 t = random_sum(3, rng);
        Certificate cert = tensor222_monic_decompose(t, 3, 1e-9, rng);
        REQUIRE(cert.tensor_summands.size() == 3);
        CHECK(cert.residual <= 1e-8);
        CHECK(cert.all_checks());
    }
    // the class of 3 * unit: all-zero triples
    Tensor222 triple{Complex(3, 0), {}, {}, {}, {}, {}, {}, {}};
    Certificate cert = tensor222_monic_decompose(triple, 3, 1e-9, rng);
    REQUIRE(cert.tensor_summands.size() == 3);
    CHECK(cert.residual == 0.0);
}

TEST_CASE("k=3 handles degenerate targets a two-point method cannot") {
    // canonical (3, 0 | 0, 0 / 0, 1 | 1, 0): mu-pattern has exactly one zero
    // after rescaling to 2H, but 3H decomposition succeeds
    Tensor222 t{Complex(3, 0), {}, {}, {}, {}, Complex(1, 0), Complex(1, 0), {}};
    Rng rng(12);
    Certificate cert = tensor222_monic_decompose(t, 3, 1e-9, rng);
    CHECK(cert.residual <= 1e-8);
}

TEST_CASE("decompose guards") {
    Rng rng(13);
    Tensor222 t = random_sum(2, rng);
    CHECK_THROWS_AS(tensor222_monic_decompose(t, 4, 1e-9, rng), Error);
    CHECK_THROWS_WITH(tensor222_monic_decompose(t, 3, 1e-9, rng),
                      Catch::Matchers::ContainsSubstring("a11 must equal"));
}
