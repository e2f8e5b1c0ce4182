#ifndef MONIC_SECANT_HPP
#define MONIC_SECANT_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monic/matrix.hpp"
#include "monic/rng.hpp"

namespace monic {

// One of the five families, given by its monic chart: a polynomial
// parametrization of a dense open subset of X1 with the monic coordinate
// pinned to 1.
struct VarietySpec {
    enum class Tag { powers_binary_forms, rank_one_matrix, sym_rank_one, tensor222, sln_min_orbit };
    Tag tag = Tag::tensor222;
    int p1 = 0, p2 = 0;  // (d, e) / (m, n) / (n) / unused / (n)

    static VarietySpec powers_binary_forms(int d, int e) {
        if (d < 1 || e < 1) throw Error("VarietySpec: need d, e >= 1");
        return {Tag::powers_binary_forms, d, e};
    }
    static VarietySpec rank_one_matrix(int m, int n) {
        if (m < 1 || n < 1) throw Error("VarietySpec: need m, n >= 1");
        return {Tag::rank_one_matrix, m, n};
    }
    static VarietySpec sym_rank_one(int n) {
        if (n < 1) throw Error("VarietySpec: need n >= 1");
        return {Tag::sym_rank_one, n, 0};
    }
    static VarietySpec tensor222_spec() { return {Tag::tensor222, 0, 0}; }
    static VarietySpec sln_min_orbit(int n) {
        if (n < 2) throw Error("VarietySpec: need n >= 2");
        return {Tag::sln_min_orbit, n, 0};
    }

    // parameter count of the monic chart
    int dim_x1() const {
        switch (tag) {
            case Tag::powers_binary_forms: return p2;
            case Tag::rank_one_matrix: return p1 + p2 - 2;
            case Tag::sym_rank_one: return p1 - 1;
            case Tag::tensor222: return 3;
            default: return 2 * p1 - 3;
        }
    }

    // dimension of the ambient affine hyperplane kH
    int dim_h() const {
        switch (tag) {
            case Tag::powers_binary_forms: return p1 * p2;
            case Tag::rank_one_matrix: return p1 * p2 - 1;
            case Tag::sym_rank_one: return p1 * (p1 + 1) / 2 - 1;
            case Tag::tensor222: return 7;
            default: return p1 * p1 - 2;
        }
    }

    // coordinates of the flattened ambient space the chart maps into
    int ambient_dim() const {
        switch (tag) {
            case Tag::powers_binary_forms: return p1 * p2 + 1;
            case Tag::rank_one_matrix: return p1 * p2;
            case Tag::sym_rank_one: return p1 * p1;
            case Tag::tensor222: return 8;
            default: return p1 * p1;
        }
    }

    std::string name() const {
        std::ostringstream s;
        switch (tag) {
            case Tag::powers_binary_forms: s << "powers(" << p1 << "," << p2 << ")"; break;
            case Tag::rank_one_matrix: s << "matrix(" << p1 << "," << p2 << ")"; break;
            case Tag::sym_rank_one: s << "symmetric(" << p1 << ")"; break;
            case Tag::tensor222: s << "tensor222"; break;
            default: s << "sln(" << p1 << ")";
        }
        return s.str();
    }

    // names accepted by the CLI: powers(d,e), matrix(m,n), symmetric(n),
    // tensor222, sln(n)
    static VarietySpec from_string(const std::string& text) {
        auto args = [&](std::size_t expect) {
            std::size_t open = text.find('('), close = text.find(')');
            if (open == std::string::npos || close == std::string::npos || close < open)
                throw Error("VarietySpec: malformed variety '" + text + "'");
            std::vector<int> vals;
            std::string inner = text.substr(open + 1, close - open - 1);
            std::istringstream in(inner);
            std::string tok;
            while (std::getline(in, tok, ',')) vals.push_back(std::stoi(tok));
            if (vals.size() != expect) throw Error("VarietySpec: wrong arity in '" + text + "'");
            return vals;
        };
        if (text == "tensor222") return tensor222_spec();
        if (text.rfind("powers", 0) == 0) {
            auto v = args(2);
            return powers_binary_forms(v[0], v[1]);
        }
        if (text.rfind("matrix", 0) == 0) {
            auto v = args(2);
            return rank_one_matrix(v[0], v[1]);
        }
        if (text.rfind("symmetric", 0) == 0) return sym_rank_one(args(1)[0]);
        if (text.rfind("sln", 0) == 0) return sln_min_orbit(args(1)[0]);
        throw Error("VarietySpec: unknown variety '" + text + "'");
    }

    // chart evaluation at a real parameter vector of length dim_x1()
    std::vector<double> chart(const std::vector<double>& p) const {
        if (static_cast<int>(p.size()) != dim_x1()) throw Error("VarietySpec: bad parameter count");
        switch (tag) {
            case Tag::powers_binary_forms: {
                int d = p1, e = p2;
                std::vector<double> f(e + 1, 0.0);
                f[0] = 1.0;
                for (int j = 1; j <= e; ++j) f[j] = p[j - 1];
                std::vector<double> pow{1.0};
                for (int rep = 0; rep < d; ++rep) {
                    std::vector<double> next(pow.size() + e, 0.0);
                    for (std::size_t i = 0; i < pow.size(); ++i)
                        for (int j = 0; j <= e; ++j) next[i + j] += pow[i] * f[j];
                    pow = std::move(next);
                }
                return pow;
            }
            case Tag::rank_one_matrix: {
                int m = p1, n = p2;
                std::vector<double> v(m, 1.0), a(n, 1.0);
                for (int i = 1; i < m; ++i) v[i] = p[i - 1];
                for (int j = 1; j < n; ++j) a[j] = p[m - 1 + j - 1];
                std::vector<double> out(m * n);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < n; ++j) out[i * n + j] = v[i] * a[j];
                return out;
            }
            case Tag::sym_rank_one: {
                int n = p1;
                std::vector<double> v(n, 1.0);
                for (int i = 1; i < n; ++i) v[i] = p[i - 1];
                std::vector<double> out(n * n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) out[i * n + j] = v[i] * v[j];
                return out;
            }
            case Tag::tensor222: {
                double a = p[0], b = p[1], c = p[2];
                return {1.0, a, b, a * b, c, a * c, b * c, a * b * c};
            }
            default: {
                int n = p1;
                std::vector<double> v(n, 1.0), a(n, 0.0);
                for (int i = 1; i < n; ++i) v[i] = p[i - 1];
                a[n - 1] = 1.0;
                for (int j = 1; j < n - 1; ++j) a[j] = p[n - 1 + j - 1];
                double dot = v[n - 1];  // alpha_n v_n contribution
                for (int j = 1; j < n - 1; ++j) dot += a[j] * v[j];
                a[0] = -dot;  // forces <v, alpha> = 0 (v_1 = 1)
                std::vector<double> out(n * n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) out[i * n + j] = v[i] * a[j];
                return out;
            }
        }
    }
};

struct DimReport {
    VarietySpec spec;
    int k = 1;
    int estimated_dim = 0;
    int trials = 0;
    double agreement = 0;  // fraction of trials attaining the modal rank

    nlohmann::json to_json() const {
        return {{"variety", spec.name()},
                {"k", k},
                {"estimated_dim", estimated_dim},
                {"trials", trials},
                {"agreement", agreement}};
    }
};

namespace secant_detail {

// numerical rank of the forward-difference Jacobian of the k-fold addition
// map at one random chart point tuple
inline int jacobian_rank(const VarietySpec& spec, int k, Rng& rng, double step, double rank_tol) {
    const int dx = spec.dim_x1(), da = spec.ambient_dim();
    std::vector<double> params(static_cast<std::size_t>(k) * dx);
    for (int resample = 0;; ++resample) {
        for (auto& p : params) {
            double v = 0;
            while (v == 0) v = static_cast<double>(rng.integer(-9, 9));
            p = v;
        }
        // integer sampling hits coordinate collisions between summands with
        // positive probability; such tuples are non-generic (the Jacobian loses
        // rank exactly, not by noise) and are thrown away
        bool degenerate = false;
        for (int a = 0; a < k && !degenerate; ++a)
            for (int b = a + 1; b < k && !degenerate; ++b)
                for (int j = 0; j < dx && !degenerate; ++j)
                    degenerate = params[static_cast<std::size_t>(a) * dx + j] ==
                                 params[static_cast<std::size_t>(b) * dx + j];
        if (!degenerate || resample >= 100) break;
    }
    auto eval = [&](const std::vector<double>& q) {
        std::vector<double> sum(da, 0.0);
        for (int part = 0; part < k; ++part) {
            std::vector<double> local(q.begin() + static_cast<std::ptrdiff_t>(part) * dx,
                                      q.begin() + static_cast<std::ptrdiff_t>(part + 1) * dx);
            auto img = spec.chart(local);
            for (int i = 0; i < da; ++i) sum[i] += img[i];
        }
        return sum;
    };
    auto base = eval(params);
    CMat jac(da, static_cast<std::size_t>(k) * dx, Complex(0, 0));
    for (std::size_t col = 0; col < params.size(); ++col) {
        auto bumped = params;
        bumped[col] += step;
        auto img = eval(bumped);
        for (int i = 0; i < da; ++i) jac.at(i, col) = Complex((img[i] - base[i]) / step, 0);
    }
    return static_cast<int>(rank(jac, rank_tol));
}

}  // namespace secant_detail

// Modal Jacobian rank of the k-fold addition map over seeded trials.
inline DimReport monic_secant_dim(const VarietySpec& spec, int k, int trials, std::uint64_t seed,
                                  double step = 1e-6, double rank_tol = 1e-6) {
    if (k < 1 || trials < 1) throw Error("monic_secant_dim: need k >= 1 and trials >= 1");
    Rng rng(seed);
    std::map<int, int> counts;
    for (int t = 0; t < trials; ++t)
        ++counts[secant_detail::jacobian_rank(spec, k, rng, step, rank_tol)];
    int best = 0, best_count = 0;
    for (auto [r, c] : counts)
        if (c > best_count || (c == best_count && r > best)) {
            best = r;
            best_count = c;
        }
    DimReport rep;
    rep.spec = spec;
    rep.k = k;
    rep.estimated_dim = best;
    rep.trials = trials;
    rep.agreement = static_cast<double>(best_count) / trials;
    return rep;
}

// Smallest k whose secant fills kH (by the numerical dimension estimate).
inline int generic_monic_rank(const VarietySpec& spec, int k_max, int trials, std::uint64_t seed) {
    for (int k = 1; k <= k_max; ++k)
        if (monic_secant_dim(spec, k, trials, seed + static_cast<std::uint64_t>(k)).estimated_dim ==
            spec.dim_h())
            return k;
    throw Error("generic_monic_rank: k0 exceeds budget");
}

// staircase as CSV rows "k,estimated_dim,agreement"
inline std::string staircase_csv(const VarietySpec& spec, int k_max, int trials, std::uint64_t seed) {
    std::ostringstream out;
    out << "variety,k,estimated_dim,agreement\n";
    for (int k = 1; k <= k_max; ++k) {
        auto rep = monic_secant_dim(spec, k, trials, seed + static_cast<std::uint64_t>(k));
        out << spec.name() << "," << rep.k << "," << rep.estimated_dim << "," << rep.agreement << "\n";
    }
    return out.str();
}

}  // namespace monic

#endif
