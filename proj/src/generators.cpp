#include "chernweil/generators.hpp"

#include <map>

#include "chernweil/errors.hpp"
#include "chernweil/rng.hpp"

namespace chernweil {

namespace {

using nlohmann::json;

void check_param_keys(const json& params, std::initializer_list<const char*> allowed) {
    if (params.is_null()) return;
    if (!params.is_object()) throw SchemaError("generator.params", "params must be an object");
    for (const auto& [key, value] : params.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok)
            throw SchemaError("generator.params." + key, "unknown generator parameter '" + key + "'");
    }
}

std::vector<double> poly_param(const json& params, const std::string& key, Rng& rng,
                               int default_degree, double amp) {
    if (params.contains(key)) {
        if (!params[key].is_array())
            throw SchemaError("generator.params." + key, "expected an array of numbers");
        std::vector<double> c;
        for (const auto& v : params[key]) {
            if (!v.is_number())
                throw SchemaError("generator.params." + key, "expected an array of numbers");
            c.push_back(v.get<double>());
        }
        if (c.empty()) throw SchemaError("generator.params." + key, "empty polynomial");
        return c;
    }
    std::vector<double> c;
    for (int j = 0; j <= default_degree; ++j) c.push_back(rng.range(-amp, amp));
    return c;
}

int int_param(const json& params, const std::string& key, int fallback, int lo, int hi) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_number_integer())
        throw SchemaError("generator.params." + key, "expected an integer");
    int v = params[key].get<int>();
    if (v < lo || v > hi)
        throw SchemaError("generator.params." + key, "value out of range");
    return v;
}

double num_param(const json& params, const std::string& key, double fallback) {
    if (!params.contains(key)) return fallback;
    if (!params[key].is_number())
        throw SchemaError("generator.params." + key, "expected a number");
    return params[key].get<double>();
}

ConnectionSheet constant_in_s(ConnectionPath path) {
    std::vector<std::vector<MatrixValuedForm>> coeffs;
    coeffs.push_back(path.coeffs());
    return ConnectionSheet(std::move(coeffs));
}

/// Commuting constant matrices M_j = g D_j g^+ with imaginary diagonal D_j.
std::vector<Mat> commuting_frame(Rng& rng, int rank, int count) {
    Mat g = random_unitary(rng, rank);
    std::vector<Mat> ms;
    for (int j = 0; j < count; ++j) {
        Mat d = Mat::Zero(rank, rank);
        for (int a = 0; a < rank; ++a) d(a, a) = Complex(0.0, rng.range(-0.9, 0.9));
        ms.push_back(g * d * g.adjoint());
    }
    return ms;
}

MatrixValuedForm constant_one_form(const TorusChart& chart, int axis, const Mat& m) {
    MatrixValuedForm f(chart, int(m.rows()), 1);
    f.add_term(1u << axis, freq_zero(), m);
    return f;
}

GeneratedFamily abelian_t2(const json& params, const TorusChart& chart, int rank,
                           uint64_t seed) {
    check_param_keys(params, {"a", "b"});
    if (chart.dim < 2)
        throw SchemaError("chart.dim", "abelian_t2 needs a torus of dimension >= 2");
    if (rank != 1) throw SchemaError("rank", "abelian_t2 is a rank-1 family");
    Rng rng(seed_mix(seed, "abelian_t2"));
    auto a = poly_param(params, "a", rng, 2, 0.9);
    auto b = poly_param(params, "b", rng, 2, 0.9);
    int deg = int(std::max(a.size(), b.size())) - 1;
    Mat one(1, 1);
    one(0, 0) = Complex(0.0, 1.0);
    std::vector<MatrixValuedForm> coeffs;
    for (int j = 0; j <= deg; ++j) {
        MatrixValuedForm c(chart, 1, 1);
        if (j < int(a.size()) && a[size_t(j)] != 0.0)
            c.add_term(1u << 0, freq_zero(), a[size_t(j)] * one);
        if (j < int(b.size()) && b[size_t(j)] != 0.0)
            c.add_term(1u << 1, freq_zero(), b[size_t(j)] * one);
        coeffs.push_back(std::move(c));
    }
    return {constant_in_s(ConnectionPath(std::move(coeffs)))};
}

GeneratedFamily commuting(const json& params, const TorusChart& chart, int rank,
                          uint64_t seed, int want_dim, const char* name) {
    check_param_keys(params, {"degree"});
    if (chart.dim != want_dim)
        throw SchemaError("chart.dim",
                          std::string(name) + " needs a torus of dimension " +
                              std::to_string(want_dim));
    if (rank < 2) throw SchemaError("rank", std::string(name) + " needs rank >= 2");
    int degree = int_param(params, "degree", 2, 1, kMaxPathDegree);
    Rng rng(seed_mix(seed, name));
    auto ms = commuting_frame(rng, rank, chart.dim);
    // A(t) = sum_j f_j(t) M_j dx_j with random real polynomials f_j
    std::vector<std::vector<double>> f;
    for (int j = 0; j < chart.dim; ++j) {
        std::vector<double> c;
        for (int d = 0; d <= degree; ++d) c.push_back(rng.range(-0.9, 0.9));
        f.push_back(std::move(c));
    }
    std::vector<MatrixValuedForm> coeffs;
    for (int d = 0; d <= degree; ++d) {
        MatrixValuedForm c(chart, rank, 1);
        for (int j = 0; j < chart.dim; ++j)
            if (f[size_t(j)][size_t(d)] != 0.0)
                c.add_term(1u << j, freq_zero(), f[size_t(j)][size_t(d)] * ms[size_t(j)]);
        coeffs.push_back(std::move(c));
    }
    return {constant_in_s(ConnectionPath(std::move(coeffs)))};
}

GeneratedFamily perturbed_nonflat(const json& params, const TorusChart& chart, int rank,
                                  uint64_t seed) {
    check_param_keys(params, {"degree", "modes", "amplitude"});
    int degree = int_param(params, "degree", 2, 1, 4);
    int modes = int_param(params, "modes", 1, 0, chart.k_max);
    double amp = num_param(params, "amplitude", 0.5);
    Rng rng(seed_mix(seed, "perturbed_nonflat"));

    // base path P(t), then the bump s * t(1-t) * Q(t) keeps endpoints fixed
    std::vector<MatrixValuedForm> base;
    for (int d = 0; d <= degree; ++d)
        base.push_back(random_form(rng, chart, rank, 1, modes, amp, true));
    std::vector<MatrixValuedForm> q;
    for (int d = 0; d <= 1; ++d)
        q.push_back(random_form(rng, chart, rank, 1, modes, amp, true));

    int dt = std::max(degree, int(q.size()) + 1);
    auto zero = [&] { return MatrixValuedForm(chart, rank, 1); };
    std::vector<MatrixValuedForm> row0(size_t(dt) + 1, zero());
    std::vector<MatrixValuedForm> row1(size_t(dt) + 1, zero());
    for (int d = 0; d <= degree; ++d) row0[size_t(d)] = base[size_t(d)];
    // t(1-t) Q(t) = sum_d q_d (t^{d+1} - t^{d+2})
    for (size_t d = 0; d < q.size(); ++d) {
        row1[d + 1] = linear_combine(1.0, row1[d + 1], 1.0, q[d]);
        row1[d + 2] = linear_combine(1.0, row1[d + 2], -1.0, q[d]);
    }
    return {ConnectionSheet({std::move(row0), std::move(row1)})};
}

GeneratedFamily flat_sheet_bump(const json& params, const TorusChart& chart, int rank,
                                uint64_t seed) {
    check_param_keys(params, {"degree", "bump"});
    if (chart.dim < 2)
        throw SchemaError("chart.dim", "flat_sheet_bump needs a torus of dimension >= 2");
    int degree = int_param(params, "degree", 2, 1, 4);
    double bump = num_param(params, "bump", 0.8);
    Rng rng(seed_mix(seed, "flat_sheet_bump"));

    std::vector<Mat> ms;
    if (rank == 1) {
        Mat one(1, 1);
        one(0, 0) = Complex(0.0, 1.0);
        for (int j = 0; j < chart.dim; ++j) ms.push_back(one);
    } else {
        ms = commuting_frame(rng, rank, chart.dim);
    }

    auto zero = [&] { return MatrixValuedForm(chart, rank, 1); };
    int dt = std::max(degree, 2);
    std::vector<MatrixValuedForm> row0(size_t(dt) + 1, zero());
    std::vector<MatrixValuedForm> row1(size_t(dt) + 1, zero());
    for (int j = 0; j < chart.dim; ++j) {
        for (int d = 0; d <= degree; ++d) {
            double c = rng.range(-0.9, 0.9);
            row0[size_t(d)] = linear_combine(1.0, row0[size_t(d)], c,
                                             constant_one_form(chart, j, ms[size_t(j)]));
        }
        // bump h_j s t(1-t) M_j dx_j stays inside the commuting span
        double h = rng.range(-bump, bump);
        MatrixValuedForm dir = constant_one_form(chart, j, ms[size_t(j)]);
        row1[1] = linear_combine(1.0, row1[1], h, dir);
        row1[2] = linear_combine(1.0, row1[2], -h, dir);
    }
    return {ConnectionSheet({std::move(row0), std::move(row1)})};
}

}  // namespace

GeneratedFamily make_family(const std::string& name, const nlohmann::json& params,
                            const TorusChart& chart, int rank, uint64_t seed) {
    validate_chart(chart);
    if (name == "abelian_t2") return abelian_t2(params, chart, rank, seed);
    if (name == "commuting_t3") return commuting(params, chart, rank, seed, 3, "commuting_t3");
    if (name == "commuting_t4") return commuting(params, chart, rank, seed, 4, "commuting_t4");
    if (name == "commuting_t5") return commuting(params, chart, rank, seed, 5, "commuting_t5");
    if (name == "perturbed_nonflat") return perturbed_nonflat(params, chart, rank, seed);
    if (name == "flat_sheet_bump") return flat_sheet_bump(params, chart, rank, seed);
    throw SchemaError("generator.name", "unknown generator '" + name + "'");
}

std::vector<std::string> generator_names() {
    return {"abelian_t2",  "commuting_t3",      "commuting_t4",
            "commuting_t5", "perturbed_nonflat", "flat_sheet_bump"};
}

std::string generator_doc(const std::string& name) {
    static const std::map<std::string, std::string> docs = {
        {"abelian_t2",
         "rank-1 flat family A(t) = i(a(t) dx1 + b(t) dx2); params: a, b "
         "(polynomial coefficient arrays, random when omitted)"},
        {"commuting_t3",
         "rank-r flat family from commuting constant matrices on T^3; params: "
         "degree"},
        {"commuting_t4", "as commuting_t3 on T^4"},
        {"commuting_t5", "as commuting_t3 on T^5"},
        {"perturbed_nonflat",
         "random trigonometric skew-hermitian family, non-flat, endpoint-fixed "
         "sheet; params: degree, modes, amplitude"},
        {"flat_sheet_bump",
         "flat sheet inside a commuting family with an s*t*(1-t) bump; params: "
         "degree, bump"},
    };
    auto it = docs.find(name);
    if (it == docs.end()) throw SchemaError("generator.name", "unknown generator");
    return it->second;
}

}  // namespace chernweil
