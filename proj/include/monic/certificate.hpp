#ifndef MONIC_CERTIFICATE_HPP
#define MONIC_CERTIFICATE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monic/matrix.hpp"

namespace monic {

enum class Family { binary, matrix, symmetric, tensor, sln };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::binary: return "binary";
        case Family::matrix: return "matrix";
        case Family::symmetric: return "symmetric";
        case Family::tensor: return "tensor";
        default: return "sln";
    }
}

inline Family family_from_string(const std::string& s) {
    if (s == "binary") return Family::binary;
    if (s == "matrix") return Family::matrix;
    if (s == "symmetric") return Family::symmetric;
    if (s == "tensor") return Family::tensor;
    if (s == "sln") return Family::sln;
    throw Error("unknown certificate family: " + s);
}

inline nlohmann::json complex_to_json(const Complex& z) { return {z.real(), z.imag()}; }
inline Complex complex_from_json(const nlohmann::json& j) { return Complex(j.at(0), j.at(1)); }

// One monic rank-one summand: vector pairs for the matrix-like families,
// a single root for binary forms, a parameter triple for 2x2x2 tensors.
struct MatrixSummand {
    CMat v;      // column vector
    CMat alpha;  // column vector; summand is v alpha^T (alpha = v for symmetric)
};

struct TensorSummand {
    Complex a, b, c;  // the X1 point (1, a | c, ac / b, ab | bc, abc)
};

// Proof-of-work for a monic decomposition: the summands, the reconstruction
// residual and per-summand checks. All checks are recomputable from scratch
// by verify_certificate; nothing here depends on decomposer state.
struct Certificate {
    Family family = Family::matrix;
    std::vector<Complex> binary_roots;         // binary: forms x + a_i y
    std::vector<MatrixSummand> matrix_summands;  // matrix / symmetric / sln
    std::vector<TensorSummand> tensor_summands;  // tensor
    double residual = 0;  // ||target - sum|| / max(1, ||target||), max-abs norm
    std::vector<bool> monic_checks;
    std::vector<bool> rank_checks;
    std::vector<bool> structure_checks;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;

    std::size_t summand_count() const {
        switch (family) {
            case Family::binary: return binary_roots.size();
            case Family::tensor: return tensor_summands.size();
            default: return matrix_summands.size();
        }
    }

    bool all_checks() const {
        auto ok = [](const std::vector<bool>& v) {
            for (bool b : v)
                if (!b) return false;
            return true;
        };
        return ok(monic_checks) && ok(rank_checks) && ok(structure_checks);
    }

    nlohmann::json to_json() const {
        nlohmann::json summands = nlohmann::json::array();
        switch (family) {
            case Family::binary:
                for (const auto& r : binary_roots) summands.push_back({{"root", complex_to_json(r)}});
                break;
            case Family::tensor:
                for (const auto& t : tensor_summands)
                    summands.push_back({{"a", complex_to_json(t.a)},
                                        {"b", complex_to_json(t.b)},
                                        {"c", complex_to_json(t.c)}});
                break;
            default:
                for (const auto& s : matrix_summands) {
                    nlohmann::json v = nlohmann::json::array(), a = nlohmann::json::array();
                    for (std::size_t i = 0; i < s.v.rows(); ++i) v.push_back(complex_to_json(s.v.at(i, 0)));
                    for (std::size_t i = 0; i < s.alpha.rows(); ++i)
                        a.push_back(complex_to_json(s.alpha.at(i, 0)));
                    summands.push_back({{"v", v}, {"alpha", a}});
                }
        }
        return {{"family", to_string(family)},
                {"summands", summands},
                {"residual", residual},
                {"checks",
                 {{"monic", monic_checks}, {"rank_one", rank_checks}, {"structure", structure_checks}}},
                {"seed", seed},
                {"tolerance", tolerance}};
    }

    static Certificate from_json(const nlohmann::json& j) {
        Certificate c;
        c.family = family_from_string(j.at("family").get<std::string>());
        for (const auto& s : j.at("summands")) {
            switch (c.family) {
                case Family::binary:
                    c.binary_roots.push_back(complex_from_json(s.at("root")));
                    break;
                case Family::tensor:
                    c.tensor_summands.push_back({complex_from_json(s.at("a")), complex_from_json(s.at("b")),
                                                 complex_from_json(s.at("c"))});
                    break;
                default: {
                    MatrixSummand ms;
                    std::vector<Complex> v, a;
                    for (const auto& x : s.at("v")) v.push_back(complex_from_json(x));
                    for (const auto& x : s.at("alpha")) a.push_back(complex_from_json(x));
                    ms.v = CMat::column(v);
                    ms.alpha = CMat::column(a);
                    c.matrix_summands.push_back(std::move(ms));
                }
            }
        }
        c.residual = j.at("residual").get<double>();
        c.monic_checks = j.at("checks").at("monic").get<std::vector<bool>>();
        c.rank_checks = j.at("checks").at("rank_one").get<std::vector<bool>>();
        c.structure_checks = j.at("checks").at("structure").get<std::vector<bool>>();
        c.seed = j.value("seed", std::uint64_t(0));
        c.tolerance = j.value("tolerance", 1e-9);
        return c;
    }
};

}  // namespace monic

#endif
