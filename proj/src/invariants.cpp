#include "chernweil/invariants.hpp"

#include <algorithm>
#include <numeric>

#include "chernweil/errors.hpp"

namespace chernweil {

namespace {

long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions(int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(p, p, cur, out);
    return out;
}

}  // namespace

InvariantPolynomial::InvariantPolynomial(int degree) : degree_(degree) {
    if (degree < 1 || degree > kMaxPolyDegree)
        throw EngineError("invariant polynomial degree must be in 1.." +
                          std::to_string(kMaxPolyDegree));
    // e_p = sum over partitions lambda of p of
    //       (-1)^{p - length(lambda)} / z_lambda * prod_i p_{lambda_i},
    // z_lambda = prod_m m^{mult_m} mult_m!
    for (const auto& lam : partitions(degree)) {
        long long z = 1;
        int run = 0;
        std::vector<int> sorted = lam;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (i > 0 && sorted[i] != sorted[i - 1]) run = 0;
            ++run;
            z *= sorted[i] * run;
        }
        long long sign = ((degree - int(lam.size())) % 2 == 0) ? 1 : -1;
        long long num = sign, den = z;
        long long g = gcd_ll(num, den);
        table_.push_back({lam, num / g, den / g});
    }
}

Complex InvariantPolynomial::normalization() const {
    Complex c(0.0, 1.0 / kTwoPi);  // i / (2 pi)
    Complex r(1.0, 0.0);
    for (int i = 0; i < degree_; ++i) r *= c;
    return r;
}

namespace {

// Algebra adapters so one polarization routine serves forms on X and on IxX.
struct FormOps {
    using F = MatrixValuedForm;
    static F wedge2(const F& a, const F& b) { return wedge(a, b); }
    static F trace(const F& a) { return trace_form(a); }
    static void axpy(Complex c, const F& x, F& into) {
        into = linear_combine(1.0, into, c, x);
    }
    static F scale_all(Complex c, const F& a) { return scaled(c, a); }
    static F zero_scalar(const F& proto, int grade) {
        return F(proto.chart(), 1, grade);
    }
    static int grade_of(const F& a) { return a.grade(); }
};

struct CylOps {
    using F = CylinderForm;
    static F wedge2(const F& a, const F& b) { return cyl_wedge(a, b); }
    static F trace(const F& a) { return cyl_trace(a); }
    static void axpy(Complex c, const F& x, F& into) {
        into = cyl_linear_combine(1.0, into, c, x);
    }
    static F scale_all(Complex c, const F& a) { return cyl_scale(c, a); }
    static F zero_scalar(const F& proto, int grade) {
        return F(proto.chart(), 1, grade);
    }
    static int grade_of(const F& a) { return a.grade(); }
};

// Distinct sequences of the argument multiset. Arguments are grouped by
// pointer identity; each distinct sequence carries the weight
// prod(mult_i!) / p! of the permutations that realize it.
struct Arrangements {
    std::vector<std::vector<int>> seqs;  // entries are argument slots
    double weight;
};

void sequences_rec(std::vector<int>& counts, const std::vector<int>& reps,
                   std::vector<int>& cur, int total,
                   std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == total) {
        out.push_back(cur);
        return;
    }
    for (size_t g = 0; g < counts.size(); ++g) {
        if (counts[g] == 0) continue;
        --counts[g];
        cur.push_back(reps[g]);
        sequences_rec(counts, reps, cur, total, out);
        cur.pop_back();
        ++counts[g];
    }
}

template <class Ops>
typename Ops::F polarize(const InvariantPolynomial& P,
                         const std::vector<const typename Ops::F*>& args,
                         int odd_limit) {
    using F = typename Ops::F;
    int p = P.degree();
    if (int(args.size()) != p)
        throw EngineError("polarized P_p needs exactly p arguments");

    int total_grade = 0;
    int odd_count = 0;
    std::vector<int> odd_slots;
    for (size_t i = 0; i < args.size(); ++i) {
        int g = Ops::grade_of(*args[i]);
        total_grade += g;
        if (g % 2 != 0) {
            ++odd_count;
            odd_slots.push_back(int(i));
        }
    }
    if (odd_count > odd_limit)
        throw TooManyOddArguments("polarization limited to " +
                                  std::to_string(odd_limit) + " odd-grade slots");

    // group equal (by pointer) even arguments; odd slots always stay distinct
    std::vector<int> reps, counts;
    for (size_t i = 0; i < args.size(); ++i) {
        bool odd = Ops::grade_of(*args[i]) % 2 != 0;
        bool grouped = false;
        if (!odd) {
            for (size_t g = 0; g < reps.size(); ++g) {
                if (args[size_t(reps[g])] == args[i] &&
                    Ops::grade_of(*args[size_t(reps[g])]) % 2 == 0) {
                    ++counts[g];
                    grouped = true;
                    break;
                }
            }
        }
        if (!grouped) {
            reps.push_back(int(i));
            counts.push_back(1);
        }
    }
    double weight = 1.0;
    for (int c : counts)
        for (int j = 2; j <= c; ++j) weight *= double(j);
    for (int j = 2; j <= p; ++j) weight /= double(j);

    std::vector<std::vector<int>> seqs;
    std::vector<int> cur;
    sequences_rec(counts, reps, cur, p, seqs);

    F acc = Ops::zero_scalar(*args[0], total_grade);
    for (const auto& term : P.girard_table()) {
        Complex coeff = Complex(double(term.num) / double(term.den), 0.0);
        for (const auto& seq : seqs) {
            double sign = 1.0;
            if (odd_slots.size() == 2) {
                // Koszul sign: -1 when the two odd slots appear swapped
                int first = -1;
                for (int s : seq) {
                    if (s == odd_slots[0] || s == odd_slots[1]) {
                        first = s;
                        break;
                    }
                }
                if (first == odd_slots[1]) sign = -1.0;
            }
            // consecutive blocks of the partition: wedge within each trace
            F prod = Ops::zero_scalar(*args[0], 0);
            bool started = false;
            int pos = 0;
            for (int part : term.parts) {
                F block = *args[size_t(seq[size_t(pos)])];
                for (int i = 1; i < part; ++i)
                    block = Ops::wedge2(block, *args[size_t(seq[size_t(pos + i)])]);
                pos += part;
                F tr = Ops::trace(block);
                prod = started ? Ops::wedge2(prod, tr) : tr;
                started = true;
            }
            Ops::axpy(coeff * weight * sign, prod, acc);
        }
    }
    return Ops::scale_all(P.normalization(), acc);
}

}  // namespace

MatrixValuedForm polarized_chern(const InvariantPolynomial& P,
                                 const std::vector<const MatrixValuedForm*>& args) {
    return polarize<FormOps>(P, args, 1);
}

MatrixValuedForm polarized_chern_two_odd(const InvariantPolynomial& P,
                                         const MatrixValuedForm& u,
                                         const MatrixValuedForm& v,
                                         const MatrixValuedForm& theta) {
    if (u.grade() % 2 == 0 || v.grade() % 2 == 0)
        throw GradeMismatch("the first two slots must have odd grade");
    if (theta.grade() % 2 != 0)
        throw GradeMismatch("the repeated slot must have even grade");
    std::vector<const MatrixValuedForm*> args{&u, &v};
    for (int i = 0; i < P.degree() - 2; ++i) args.push_back(&theta);
    return polarize<FormOps>(P, args, 2);
}

CylinderForm polarized_chern_cyl(const InvariantPolynomial& P,
                                 const std::vector<const CylinderForm*>& args) {
    return polarize<CylOps>(P, args, 1);
}

MatrixValuedForm chern_form(const Connection& c, int p) {
    InvariantPolynomial P(p);
    MatrixValuedForm theta = curvature(c);
    if (2 * p > c.chart().dim) return MatrixValuedForm(c.chart(), 1, 2 * p);
    std::vector<const MatrixValuedForm*> args(size_t(p), &theta);
    return polarized_chern(P, args);
}

std::vector<MatrixValuedForm> total_chern_oracle(const Connection& c) {
    int r = c.rank();
    int n = c.chart().dim;
    if (r > 3 || n > kMaxDim)
        throw EngineError("determinant oracle supports rank <= 3");
    MatrixValuedForm theta = curvature(c);

    // scalar entry forms Theta_{ab}
    std::vector<std::vector<MatrixValuedForm>> entry(
        size_t(r), std::vector<MatrixValuedForm>(size_t(r),
                                                 MatrixValuedForm(c.chart(), 1, 2)));
    for (const auto& [comp, f] : theta.components()) {
        for (const auto& [k, m] : f.terms()) {
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    if (m(a, b) == Complex(0.0, 0.0)) continue;
                    Mat one(1, 1);
                    one(0, 0) = m(a, b);
                    entry[size_t(a)][size_t(b)].add_term(comp, k, one);
                }
        }
    }

    // det(I + c Theta) = sum_p c^p sum_{|S|=p} sum_{sigma in Sym(S)} sgn(sigma)
    //                    Theta_{s1 sigma(s1)} ^ ... (entries are even, so the
    //                    wedge order does not matter)
    std::vector<MatrixValuedForm> out;
    Complex norm(0.0, 1.0 / kTwoPi);
    Complex cp(1.0, 0.0);
    for (int p = 1; p <= r; ++p) {
        cp *= norm;
        MatrixValuedForm acc(c.chart(), 1, 2 * p);
        if (2 * p <= n) {
            // iterate over p-subsets of {0..r-1}
            std::vector<int> subset;
            subset.resize(size_t(p));
            std::iota(subset.begin(), subset.end(), 0);
            while (true) {
                std::vector<int> perm = subset;
                std::sort(perm.begin(), perm.end());
                do {
                    int sgn = 1;
                    for (size_t i = 0; i < perm.size(); ++i)
                        for (size_t j = i + 1; j < perm.size(); ++j)
                            if (perm[i] > perm[j]) sgn = -sgn;
                    MatrixValuedForm prod =
                        entry[size_t(subset[0])][size_t(perm[0])];
                    for (int i = 1; i < p; ++i)
                        prod = wedge(prod, entry[size_t(subset[size_t(i)])]
                                                [size_t(perm[size_t(i)])]);
                    acc = linear_combine(1.0, acc, double(sgn), prod);
                } while (std::next_permutation(perm.begin(), perm.end()));
                // next subset
                int i = p - 1;
                while (i >= 0 && subset[size_t(i)] == r - p + i) --i;
                if (i < 0) break;
                ++subset[size_t(i)];
                for (int j = i + 1; j < p; ++j)
                    subset[size_t(j)] = subset[size_t(j - 1)] + 1;
            }
        }
        out.push_back(scaled(cp, acc));
    }
    return out;
}

}  // namespace chernweil
