#include <catch2/catch_amalgamated.hpp>

#include "monic/binary_form.hpp"
#include "monic/matrix_decompose.hpp"
#include "monic/sln.hpp"
#include "monic/tensor222.hpp"
#include "monic/verify.hpp"

using namespace monic;

TEST_CASE("family names round trip") {
    for (Family f : {Family::binary, Family::matrix, Family::symmetric, Family::tensor, Family::sln})
        CHECK(family_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(family_from_string("sextic"), Error);
}

TEST_CASE("complex json encoding") {
    Complex z(1.5, -2.25);
    CHECK(complex_from_json(complex_to_json(z)) == z);
}

TEST_CASE("binary certificate json round trip and reverify") {
    BinaryForm q(3, {Complex(3, 0), Complex(3, 0), Complex(5, 0), Complex(9, 0)});
    Certificate cert = waring_monic_binary(q);
    cert.seed = 17;
    Certificate back = Certificate::from_json(cert.to_json());
    CHECK(back.family == Family::binary);
    CHECK(back.seed == 17);
    CHECK(back.summand_count() == cert.summand_count());
    auto rep = verify_certificate(back, q, 1e-8);
    CHECK(rep.ok());
    CHECK(rep.to_json().at("ok") == true);
}

TEST_CASE("matrix certificate json round trip and reverify") {
    Rng rng(23);
    CMat v = CMat::column({Complex(1, 0), Complex(2, 1)});
    CMat al = CMat::column({Complex(1, 0), Complex(-3, 0), Complex(0, 2)});
    CMat a = outer(v, al).scaled(Complex(2, 0));
    Certificate cert = matrix_monic_decompose(a, 2, 1e-9, rng);
    Certificate back = Certificate::from_json(cert.to_json());
    auto rep = verify_certificate(back, a, 1e-7);
    CHECK(rep.ok());
    CHECK(verify_certificate(back, a, 1e-300).residual_ok == (rep.residual <= 1e-300));
}

TEST_CASE("tensor certificate json round trip and reverify") {
    Rng rng(29);
    Tensor222 t = Tensor222::x1_point(Complex(1, 0), Complex(2, 0), Complex(3, 0)) +
                  Tensor222::x1_point(Complex(-1, 0), Complex(0, 1), Complex(2, 0)) +
                  Tensor222::x1_point(Complex(0, 0), Complex(4, 0), Complex(-2, 0));
    Certificate cert = tensor222_monic_decompose(t, 3, 1e-9, rng);
    Certificate back = Certificate::from_json(cert.to_json());
    CHECK(back.tensor_summands.size() == 3);
    CHECK(verify_certificate(back, t, 1e-7).ok());
}

TEST_CASE("sln certificate reverify catches tampering") {
    Rng rng(31);
    CMat a(3, 3, Complex(0, 0));
    a.at(0, 2) = Complex(3, 0);
    a.at(1, 0) = Complex(1, 0);
    a.at(2, 1) = Complex(1, 0);
    Certificate cert = sln_monic_decompose(a, 1e-9, rng);
    CHECK(verify_certificate(cert, a, 1e-6).ok());
    Certificate tampered = cert;
    tampered.matrix_summands[0].v.at(1, 0) += Complex(0.5, 0);
    CHECK_FALSE(verify_certificate(tampered, a, 1e-6).ok());
}

TEST_CASE("verify rejects family mismatches") {
    Certificate cert;
    cert.family = Family::binary;
    CMat a(2, 2, Complex(0, 0));
    CHECK_THROWS_AS(verify_certificate(cert, a, 1e-9), Error);
    cert.family = Family::tensor;
    BinaryForm q = BinaryForm::zero(2);
    CHECK_THROWS_AS(verify_certificate(cert, q, 1e-9), Error);
    Tensor222 t{};
    cert.family = Family::matrix;
    CHECK_THROWS_AS(verify_certificate(cert, t, 1e-9), Error);
}

TEST_CASE("verdict comes from the recheck, not the stored fields") {
    // certificate claiming zero residual for a wrong summand must fail
    Certificate cert;
    cert.family = Family::binary;
    cert.binary_roots = {Complex(5, 0)};
    cert.residual = 0.0;
    cert.monic_checks = cert.rank_checks = cert.structure_checks = {true};
    BinaryForm q(1, {Complex(1, 0), Complex(0, 0)});  // x; summand says x + 5y
    auto rep = verify_certificate(cert, q, 1e-9);
    CHECK_FALSE(rep.ok());
    CHECK(rep.residual > 1.0);
}
