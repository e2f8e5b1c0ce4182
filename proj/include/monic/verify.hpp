#ifndef MONIC_VERIFY_HPP
#define MONIC_VERIFY_HPP

#include <nlohmann/json.hpp>

#include "monic/binary_form.hpp"
#include "monic/certificate.hpp"
#include "monic/matrix_decompose.hpp"
#include "monic/sln.hpp"
#include "monic/tensor222.hpp"

namespace monic {

// Outcome of re-checking a certificate against its target, computed from the
// summands alone: nothing from the decomposer run is trusted.
struct VerifyReport {
    double residual = 0;
    std::vector<bool> monic_checks, rank_checks, structure_checks;
    bool residual_ok = false;

    bool ok() const {
        auto all = [](const std::vector<bool>& v) {
            for (bool b : v)
                if (!b) return false;
            return true;
        };
        return residual_ok && all(monic_checks) && all(rank_checks) && all(structure_checks);
    }

    nlohmann::json to_json() const {
        return {{"residual", residual},
                {"residual_ok", residual_ok},
                {"checks",
                 {{"monic", monic_checks}, {"rank_one", rank_checks}, {"structure", structure_checks}}},
                {"ok", ok()}};
    }
};

namespace verify_detail {

inline VerifyReport from_certificate(const Certificate& rechecked, double tol) {
    VerifyReport rep;
    rep.residual = rechecked.residual;
    rep.monic_checks = rechecked.monic_checks;
    rep.rank_checks = rechecked.rank_checks;
    rep.structure_checks = rechecked.structure_checks;
    rep.residual_ok = rechecked.residual <= tol;
    return rep;
}

}  // namespace verify_detail

inline VerifyReport verify_certificate(const Certificate& cert, const BinaryForm& target, double tol) {
    if (cert.family != Family::binary) throw Error("verify_certificate: family mismatch");
    Certificate c = cert;
    binary_checks(c, target, tol);
    return verify_detail::from_certificate(c, tol);
}

inline VerifyReport verify_certificate(const Certificate& cert, const CMat& target, double tol) {
    if (cert.family != Family::matrix && cert.family != Family::symmetric && cert.family != Family::sln)
        throw Error("verify_certificate: family mismatch");
    Certificate c = cert;
    decomp_detail::matrix_like_checks(c, target, tol, cert.family == Family::symmetric,
                                      cert.family == Family::sln);
    return verify_detail::from_certificate(c, tol);
}

inline VerifyReport verify_certificate(const Certificate& cert, const Tensor222& target, double tol) {
    if (cert.family != Family::tensor) throw Error("verify_certificate: family mismatch");
    Certificate c = cert;
    tensor_detail::tensor_checks(c, target, tol);
    return verify_detail::from_certificate(c, tol);
}

}  // namespace monic

#endif
