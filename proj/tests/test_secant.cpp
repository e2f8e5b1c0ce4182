#include <algorithm>
#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "monic/secant.hpp"

using namespace monic;

TEST_CASE("variety dimensions") {
    auto pw = VarietySpec::powers_binary_forms(3, 2);
    CHECK(pw.dim_x1() == 2);
    CHECK(pw.dim_h() == 6);
    CHECK(pw.ambient_dim() == 7);
    CHECK(pw.name() == "powers(3,2)");

    auto mx = VarietySpec::rank_one_matrix(3, 4);
    CHECK(mx.dim_x1() == 5);
    CHECK(mx.dim_h() == 11);

    auto sy = VarietySpec::sym_rank_one(3);
    CHECK(sy.dim_x1() == 2);
    CHECK(sy.dim_h() == 5);

    auto tn = VarietySpec::tensor222_spec();
    CHECK(tn.dim_x1() == 3);
    CHECK(tn.dim_h() == 7);
    CHECK(tn.ambient_dim() == 8);

    auto sl = VarietySpec::sln_min_orbit(3);
    CHECK(sl.dim_x1() == 3);
    CHECK(sl.dim_h() == 7);
    CHECK(sl.name() == "sln(3)");
}

TEST_CASE("from_string parses every family") {
    CHECK(VarietySpec::from_string("powers(3,2)").name() == "powers(3,2)");
    CHECK(VarietySpec::from_string("matrix(2,5)").name() == "matrix(2,5)");
    CHECK(VarietySpec::from_string("symmetric(4)").name() == "symmetric(4)");
    CHECK(VarietySpec::from_string("tensor222").name() == "tensor222");
    CHECK(VarietySpec::from_string("sln(4)").name() == "sln(4)");
    CHECK_THROWS_AS(VarietySpec::from_string("cubic(3)"), Error);
    CHECK_THROWS_AS(VarietySpec::from_string("powers(3)"), Error);
}

TEST_CASE("charts satisfy their defining structure") {
    // powers: chart of powers(2,1) at a is (x + a y)^2 = (1, 2a, a^2)
    auto pw = VarietySpec::powers_binary_forms(2, 1);
    auto img = pw.chart({3.0});
    REQUIRE(img.size() == 3);
    CHECK(img[0] == 1.0);
    CHECK(img[1] == 6.0);
    CHECK(img[2] == 9.0);

    // matrix chart is rank one with corner 1
    auto mx = VarietySpec::rank_one_matrix(2, 2);
    auto m = mx.chart({2.0, 5.0});
    CHECK(m[0] == 1.0);
    CHECK(m[3] == 10.0);  // v2 * a2
    CHECK(m[1] * m[2] == m[0] * m[3]);

    // sln chart is rank one, trace zero, corner 1
    auto sl = VarietySpec::sln_min_orbit(3);
    auto s = sl.chart({2.0, -1.0, 4.0});
    double tr = s[0] + s[4] + s[8];
    CHECK(std::abs(tr) <= 1e-12);
    CHECK(s[2] == 1.0);  // top-right corner

    // tensor chart agrees with the monomial pattern
    auto tn = VarietySpec::tensor222_spec();
    auto t = tn.chart({2.0, 3.0, 5.0});
    CHECK(t == std::vector<double>{1, 2, 3, 6, 5, 10, 15, 30});

    CHECK_THROWS_AS(tn.chart({1.0}), Error);
}

TEST_CASE("staircase: powers(3,2) fills at k=3 through (2,4,6)") {
    auto spec = VarietySpec::powers_binary_forms(3, 2);
    std::vector<int> expect{2, 4, 6};
    for (int k = 1; k <= 3; ++k) {
        auto rep = monic_secant_dim(spec, k, 7, 1000 + k);
        CHECK(rep.estimated_dim == expect[k - 1]);
        CHECK(rep.agreement == 1.0);
    }
    CHECK(generic_monic_rank(spec, 5, 7, 1000) == 3);
}

TEST_CASE("staircase: matrix(3,3) is defective at k=2 with (4,7,8)") {
    auto spec = VarietySpec::rank_one_matrix(3, 3);
    std::vector<int> expect{4, 7, 8};
    for (int k = 1; k <= 3; ++k)
        CHECK(monic_secant_dim(spec, k, 7, 2000 + k).estimated_dim == expect[k - 1]);
    CHECK(generic_monic_rank(spec, 5, 7, 2000) == 3);
}

TEST_CASE("staircase: tensor222 gives (3,6,7)") {
    auto spec = VarietySpec::tensor222_spec();
    std::vector<int> expect{3, 6, 7};
    for (int k = 1; k <= 3; ++k)
        CHECK(monic_secant_dim(spec, k, 7, 3000 + k).estimated_dim == expect[k - 1]);
    CHECK(generic_monic_rank(spec, 5, 7, 3000) == 3);
}

TEST_CASE("staircase: sln(3) gives (3,6,7)") {
    auto spec = VarietySpec::sln_min_orbit(3);
    std::vector<int> expect{3, 6, 7};
    for (int k = 1; k <= 3; ++k)
        CHECK(monic_secant_dim(spec, k, 7, 4000 + k).estimated_dim == expect[k - 1]);
    CHECK(generic_monic_rank(spec, 5, 7, 4000) == 3);
}

TEST_CASE("symmetric(2) fills at k=2") {
    auto spec = VarietySpec::sym_rank_one(2);
    CHECK(monic_secant_dim(spec, 1, 7, 5001).estimated_dim == 1);
    CHECK(generic_monic_rank(spec, 4, 7, 5000) == 2);
}

TEST_CASE("k0 exceeding the budget throws") {
    auto spec = VarietySpec::rank_one_matrix(3, 3);
    CHECK_THROWS_WITH(generic_monic_rank(spec, 2, 5, 6000),
                      Catch::Matchers::ContainsSubstring("exceeds budget"));
}

TEST_CASE("staircase csv shape") {
    auto spec = VarietySpec::powers_binary_forms(2, 1);
    std::string csv = staircase_csv(spec, 2, 5, 7000);
    CHECK(csv.rfind("variety,k,estimated_dim,agreement\n", 0) == 0);
    CHECK(csv.find("powers(2,1),1,1,") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("dim report json and determinism") {
    auto spec = VarietySpec::tensor222_spec();
    auto a = monic_secant_dim(spec, 2, 9, 42);
    auto b = monic_secant_dim(spec, 2, 9, 42);
    CHECK(a.to_json() == b.to_json());
    auto j = a.to_json();
    CHECK(j.at("variety") == "tensor222");
    CHECK(j.at("k") == 2);
    CHECK(j.at("trials") == 9);
}
