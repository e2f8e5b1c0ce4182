#include <catch2/catch_amalgamated.hpp>

#include "monic/shapiro.hpp"

using namespace monic;

namespace {
const std::uint64_t P = 101;
}

TEST_CASE("expansion: k=1, d=1, e=1") {
    auto r = expand_monic_powersum(1, 1, 1, P);
    REQUIRE(r.size() == 1);
    VarUniverse u{1, 1};
    CHECK(r[0] == MultiPoly::variable(u, P, 0));
}

TEST_CASE("expansion: k=2, d=2, e=1") {
    // (x + c11 y)^2 + (x + c21 y)^2 = 2x^2 + 2(c11+c21)xy + (c11^2+c21^2)y^2
    auto r = expand_monic_powersum(2, 2, 1, P);
    REQUIRE(r.size() == 2);
    VarUniverse u{2, 1};
    MultiPoly c11 = MultiPoly::variable(u, P, 0), c21 = MultiPoly::variable(u, P, 1);
    CHECK(r[0] == (c11 + c21).scaled(2));
    CHECK(r[1] == c11 * c11 + c21 * c21);
}

TEST_CASE("expansion: leading coefficient r_1 = d * sum of c_{i,1}") {
    auto r = expand_monic_powersum(3, 3, 2, P);
    REQUIRE(r.size() == 6);
    VarUniverse u{3, 2};
    MultiPoly sum = MultiPoly::zero(u, P);
    for (int i = 0; i < 3; ++i) sum = sum + MultiPoly::variable(u, P, u.var_index(i, 0));
    CHECK(r[0] == sum.scaled(3));
}

TEST_CASE("expansion: each r_l is weighted homogeneous of weight l") {
    for (auto [k, d, e] : {std::tuple<int, int, int>{2, 2, 2}, {3, 3, 2}, {2, 3, 3}}) {
        auto r = expand_monic_powersum(k, d, e, P);
        REQUIRE(static_cast<int>(r.size()) == d * e);
        for (int l = 1; l <= d * e; ++l) CHECK(is_weighted_homogeneous(r[l - 1], l));
    }
}

TEST_CASE("expansion: symmetric under permuting the forms") {
    auto r = expand_monic_powersum(3, 2, 2, P);
    std::vector<int> cyc{1, 2, 0};
    for (const auto& f : r) CHECK(f.permute_blocks(cyc) == f);
}

TEST_CASE("expansion: specializing the variables matches scalar arithmetic") {
    // substitute f_1 = x^2 + xy + 2y^2, f_2 = x^2 + 3xy + 5y^2 and compare
    // (f_1^2 + f_2^2) computed directly over F_101
    auto r = expand_monic_powersum(2, 2, 2, P);
    std::vector<std::uint64_t> vals{1, 2, 3, 5};  // c11,c12,c21,c22
    auto eval = [&](const MultiPoly& f) {
        Fp acc(0, P);
        for (const auto& t : f.terms()) {
            Fp term(t.coeff, P);
            for (std::size_t v = 0; v < t.mono.e.size(); ++v)
                for (int rep = 0; rep < t.mono.e[v]; ++rep) term = term * Fp(vals[v], P);
            acc = acc + term;
        }
        return acc.value();
    };
    // coefficients of (x^2+xy+2y^2)^2 + (x^2+3xy+5y^2)^2 at y^1..y^4
    std::vector<Fp> f1{Fp(1, P), Fp(1, P), Fp(2, P)}, f2{Fp(1, P), Fp(3, P), Fp(5, P)};
    auto square = [&](const std::vector<Fp>& f) {
        std::vector<Fp> s(5, Fp(0, P));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) s[a + b] = s[a + b] + f[a] * f[b];
        return s;
    };
    auto s1 = square(f1), s2 = square(f2);
    for (int l = 1; l <= 4; ++l) CHECK(eval(r[l - 1]) == (s1[l] + s2[l]).value());
}

TEST_CASE("expansion guards") {
    CHECK_THROWS_AS(expand_monic_powersum(0, 1, 1, P), Error);
    CHECK_THROWS_AS(expand_monic_powersum(2, 2, 1, 100), Error);  // not prime
    CHECK_THROWS_AS(expand_monic_powersum(10, 11, 1, P), Error);  // p <= k*d
}

TEST_CASE("base case") {
    for (int d = 1; d <= 8; ++d) CHECK(base_case_power_sums(d));
}

TEST_CASE("verify_step: proved instances") {
    auto r332 = verify_step(3, 3, 2, 101);
    CHECK(r332.verdict == Verdict::PROVED);
    CHECK(r332.basis_size == 1);
    auto r222 = verify_step(2, 2, 2, 101);
    CHECK(r222.verdict == Verdict::PROVED);
    auto r442 = verify_step(4, 4, 2, 101);
    CHECK(r442.verdict == Verdict::PROVED);
}

TEST_CASE("verify_step guards and timeout") {
    CHECK_THROWS_AS(verify_step(2, 2, 1, 101), Error);
    StepBudget tight;
    tight.time_limit = std::chrono::seconds(0);
    auto r = verify_step(3, 3, 2, 101, tight);
    CHECK(r.verdict == Verdict::TIMEOUT);
}

TEST_CASE("verify_chain") {
    auto one = verify_chain(1, 1, 5, 101);
    CHECK(one.base_case_ok);
    CHECK(one.overall == Verdict::PROVED);
    CHECK(one.steps.size() == 4);

    auto two = verify_chain(2, 2, 5, 101);
    CHECK(two.overall == Verdict::PROVED);

    CHECK_THROWS_AS(verify_chain(3, 2, 3, 101), Error);
    CHECK_THROWS_AS(verify_chain(2, 3, 3, 101), Error);
}

TEST_CASE("step report json") {
    auto r = verify_step(2, 2, 2, 101);
    auto j = r.to_json();
    CHECK(j.at("k") == 2);
    CHECK(j.at("p") == 101);
    CHECK(j.at("verdict") == "PROVED");
    CHECK(j.contains("basis"));
    CHECK(j.contains("spairs"));
    CHECK(j.contains("elapsed_ms"));
}
