#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bentforge/cyclo.hpp"
#include "bentforge/gf.hpp"

namespace bentforge {

struct WalshSpectrum {
    std::vector<CycInt> values; // indexed by packed lambda
    bool is_bent = false;
    bool is_regular = false;
    std::optional<std::vector<int64_t>> dual; // f*(lambda) when regular
};

// W_f(lambda) = sum_x w^(f(x) - Tr(lambda x)); f given as a truth table of
// F_p values indexed by packed element.
CycInt walsh(const FieldCtx& ctx, std::span<const uint8_t> f, Elem lambda);

WalshSpectrum walsh_spectrum_naive(const FieldCtx& ctx, std::span<const uint8_t> f);

// Exact butterfly transform over the additive group: the p^n points are an
// n-dimensional p-ary grid in the polynomial basis, and Tr(lambda x) splits
// digit-wise after remapping lambda. Identical values to the naive sum.
class WalshPlan {
public:
    explicit WalshPlan(std::shared_ptr<const FieldCtx> ctx);
    const FieldCtx& ctx() const { return *ctx_; }
    WalshSpectrum spectrum(std::span<const uint8_t> f) const;

private:
    std::shared_ptr<const FieldCtx> ctx_;
    std::vector<uint32_t> mu_index_; // lambda -> digit tuple of Tr(lambda alpha^j)
};

WalshSpectrum walsh_spectrum(const FieldCtx& ctx, std::span<const uint8_t> f);

// Exact Parseval identity sum_lambda |W(lambda)|^2 = p^(2n).
bool parseval_holds(const FieldCtx& ctx, const WalshSpectrum& s);

// K_m(alpha) = sum_{x in F_{p^m}} w^(Tr_1^m(alpha x + x^(p^m-2))), where the
// sum ranges over the degree-m subfield of ctx. The x = 0 term contributes 1.
CycInt kloosterman(const FieldCtx& ctx, Elem alpha, int m);
CycInt kloosterman(const FieldCtx& ctx, Elem alpha);

// Dickson polynomial coefficients over F_2, constant-first, length r+1.
std::vector<int> dickson_closed(int r);
std::vector<int> dickson_recurrence(int r);
std::vector<int> dickson(int r);

// E_{m,d}(abar) = sum_{x in F_{2^m}} (-1)^(Tr_1^m(abar * D_d(x))). p = 2 only.
CycInt e_md(const FieldCtx& ctx, Elem abar, uint64_t d, int m);
CycInt e_md(const FieldCtx& ctx, Elem abar, uint64_t d);

// S_i(a) = sum_{x in V_0} w^(Tr_1^n(a xi^i x)) for the index-d subgroup V_0.
CycInt partial_sum(const FieldCtx& ctx, Elem a, uint64_t i, uint64_t d);

// The constant I of the d = 2 closed forms: p^(m/2)/2 times a fourth root of
// unity depending on p mod 4 and m. Imaginary exactly when p = 3 mod 4, m odd.
std::complex<double> closed_form_i(int64_t p, int m);

// Q(a) = 2 Tr_1^m(a^((p^m+1)/2)) lifted to {0..p-1}. Requires a in C_0
// (even discrete log), which makes a^((p^m+1)/2) land in F_{p^m}.
int64_t q_exponent(const FieldCtx& ctx, Elem a);

// Float-valued closed forms for d = 2 and d = 4 (verification tools only;
// exact sums remain the ground truth).
struct ClosedD2 {
    std::complex<double> s0, s1;
    bool c0_plus = false;
    int64_t q = 0;
};
ClosedD2 partial_sum_closed_d2(const FieldCtx& ctx, Elem a);

struct ClosedD4 {
    std::complex<double> s1s3;
    bool c0_plus = false;
    int64_t q = 0;
};
ClosedD4 partial_sum_closed_d4(const FieldCtx& ctx, Elem a);

// S(a_1, ..., b) = sum_{x in U} w^(sum_i Tr_1^n(a_i x^i) + Tr_1^o(b x^((p^m+1)/d))),
// with o = o_of_d. Keys of `a` are circle exponents, taken mod p^m + 1.
CycInt dillon_sum(const FieldCtx& ctx, const std::map<uint64_t, Elem>& a, Elem b, uint64_t d);

} // namespace bentforge
