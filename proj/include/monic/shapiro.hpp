#ifndef MONIC_SHAPIRO_HPP
#define MONIC_SHAPIRO_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monic/groebner.hpp"
#include "monic/newton.hpp"
#include "monic/poly.hpp"

namespace monic {

// Coefficients r_1..r_{de} of sum_i f_i^d = k x^{de} + sum_l r_l x^{de-l} y^l
// for monic forms f_i = x^e + c_{i,1} x^{e-1} y + ... + c_{i,e} y^e.
// Each r_l is weighted-homogeneous of weight l.
inline std::vector<MultiPoly> expand_monic_powersum(int k, int d, int e, std::uint64_t p) {
    if (k < 1 || d < 1 || e < 1) throw Error("expand_monic_powersum: k, d, e must be >= 1");
    if (!is_prime_u64(p)) throw Error("expand_monic_powersum: p is not prime");
    if (p <= static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(d))
        throw Error("expand_monic_powersum: prime too small");
    VarUniverse u{k, e};
    // f_i as a vector of coefficient polynomials in y-degree 0..e
    std::vector<MultiPoly> total(d * e + 1, MultiPoly::zero(u, p));
    for (int i = 0; i < k; ++i) {
        std::vector<MultiPoly> f(e + 1, MultiPoly::zero(u, p));
        f[0] = MultiPoly::constant(u, p, 1);
        for (int j = 1; j <= e; ++j) f[j] = MultiPoly::variable(u, p, u.var_index(i, j - 1));
        // f^d by repeated convolution in the y-degree
        std::vector<MultiPoly> pw(1, MultiPoly::constant(u, p, 1));
        for (int rep = 0; rep < d; ++rep) {
            std::vector<MultiPoly> next(pw.size() + e, MultiPoly::zero(u, p));
            for (std::size_t a = 0; a < pw.size(); ++a) {
                if (pw[a].is_zero()) continue;
                for (int b = 0; b <= e; ++b)
                    if (!f[b].is_zero()) next[a + b] = next[a + b] + pw[a] * f[b];
            }
            pw = std::move(next);
        }
        for (int l = 0; l <= d * e; ++l) total[l] = total[l] + pw[l];
    }
    return std::vector<MultiPoly>(total.begin() + 1, total.end());
}

enum class Verdict { PROVED, INCONCLUSIVE, TIMEOUT };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::PROVED: return "PROVED";
        case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
        default: return "TIMEOUT";
    }
}

struct StepReport {
    int k = 0, d = 0, e = 0;
    std::uint64_t prime = 101;
    Verdict verdict = Verdict::INCONCLUSIVE;
    std::size_t basis_size = 0;
    std::uint64_t spairs_processed = 0;
    std::int64_t elapsed_ms = 0;
    std::vector<std::string> basis_text;

    nlohmann::json to_json() const {
        return {{"k", k},           {"d", d},
                {"e", e},           {"p", prime},
                {"verdict", to_string(verdict)}, {"basis", basis_text},
                {"spairs", spairs_processed},    {"elapsed_ms", elapsed_ms}};
    }
};

struct StepBudget {
    std::chrono::seconds time_limit{3600};
};

// One induction step: the ideal generated by r_1..r_{de} for forms of degree e
// together with c_{1,e} - 1, over F_p. Basis {1} proves the step (no points
// over the algebraic closure of F_p, hence none in characteristic zero since
// the system is defined over the integers). Any other basis is reported as
// INCONCLUSIVE, never as a counterexample.
inline StepReport verify_step(int k, int d, int e, std::uint64_t p, StepBudget budget = {}) {
    if (e < 2) throw Error("verify_step: e >= 2 required (degree-1 base case is handled by verify_chain)");
    StepReport rep;
    rep.k = k;
    rep.d = d;
    rep.e = e;
    rep.prime = p;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<MultiPoly> gens = expand_monic_powersum(k, d, e, p);
    VarUniverse u = gens.front().universe();
    MultiPoly normalizer =
        MultiPoly::variable(u, p, u.var_index(0, e - 1)) - MultiPoly::constant(u, p, 1);
    gens.push_back(normalizer);
    auto deadline = t0 + budget.time_limit;
    try {
        GroebnerBasis gb = reduced_groebner(
            gens, [&] { return std::chrono::steady_clock::now() < deadline; });
        rep.basis_size = gb.generators.size();
        rep.spairs_processed = gb.spairs_processed;
        rep.verdict = gb.is_trivial() ? Verdict::PROVED : Verdict::INCONCLUSIVE;
        for (const auto& g : gb.generators) rep.basis_text.push_back(g.to_text());
    } catch (const TimeoutError&) {
        rep.verdict = Verdict::TIMEOUT;
    }
    rep.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct ChainReport {
    bool base_case_ok = false;
    std::vector<StepReport> steps;
    Verdict overall = Verdict::INCONCLUSIVE;

    nlohmann::json to_json() const {
        nlohmann::json st = nlohmann::json::array();
        for (const auto& s : steps) st.push_back(s.to_json());
        return {{"base_case_ok", base_case_ok}, {"steps", st}, {"overall", to_string(overall)}};
    }
};

// Degree-1 base case for k = d: the coefficients of sum_i (x + a_i y)^d at
// x^{d-1}y..y^d are scalar multiples of the power sums p_1..p_d, which
// generate the symmetric invariants. The fiber over d x^d is therefore the
// single point with all a_i = 0, which is what Newton inversion of the
// all-zero power-sum vector certifies.
inline bool base_case_power_sums(int d) {
    std::vector<Rational> zeros(static_cast<std::size_t>(d), Rational(0));
    std::vector<Rational> elem = newton_power_to_elementary(zeros);
    for (const auto& e : elem)
        if (e != 0) return false;
    // the identities are a triangular system, so the solution is unique
    return newton_elementary_to_power(elem) == zeros;
}

inline ChainReport verify_chain(int k, int d, int e_max, std::uint64_t p, StepBudget budget = {}) {
    if (k > d) throw Error("verify_chain: k <= d required");
    if (k != d) throw Error("verify_chain: base case only automated for k=d");
    if (e_max < 1) throw Error("verify_chain: e_max >= 1 required");
    ChainReport rep;
    rep.base_case_ok = base_case_power_sums(d);
    bool all = rep.base_case_ok;
    bool timeout = false;
    for (int e = 2; e <= e_max; ++e) {
        rep.steps.push_back(verify_step(k, d, e, p, budget));
        if (rep.steps.back().verdict == Verdict::TIMEOUT) timeout = true;
        if (rep.steps.back().verdict != Verdict::PROVED) all = false;
    }
    rep.overall = all ? Verdict::PROVED : (timeout ? Verdict::TIMEOUT : Verdict::INCONCLUSIVE);
    return rep;
}

}  // namespace monic

#endif
