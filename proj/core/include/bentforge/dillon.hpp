#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bentforge/charsum.hpp"
#include "bentforge/cyclo.hpp"
#include "bentforge/gf.hpp"

namespace bentforge {

// Criteria are conditional statements; parameters outside a hypothesis get
// the third verdict instead of a boolean.
enum class Verdict { True, False, Inapplicable };
const char* to_string(Verdict v);

// f(x) = sum_i Tr_1^n(a_i x^(i(p^m-1))) + Tr_1^o(d)(b x^((p^n-1)/d)), f(0) = 0.
// Keys of `a` are the circle exponents i, canonical in [0, p^m].
struct DillonFunction {
    std::shared_ptr<const FieldCtx> ctx;
    std::map<uint64_t, Elem> a;
    Elem b{};
    uint64_t d = 1;

    std::vector<uint8_t> table() const;
    std::string key() const; // normalized identity (for deduplication)
};

// One Tr_1^deg(coeff * x^exponent) term; the building block shared by
// DillonFunction evaluation and raw exponent-variant searches.
struct TraceTerm {
    uint64_t exponent = 0;
    Elem coeff{};
    int trace_degree = 1;
};
std::vector<uint8_t> eval_trace_terms(const FieldCtx& ctx, std::span<const TraceTerm> terms);

// sum_{i=0}^{d-1} Tr_1^n(a_i x^((l + i(2^m+1)/d)(2^m-1))) + Tr_1^o(d)(b x^((2^n-1)/d))
struct FamilyB1 {
    std::shared_ptr<const FieldCtx> ctx;
    uint64_t d = 1;
    int64_t l = 1;
    std::vector<Elem> a; // size d
    Elem b{};
};
FamilyB1 family_b1(std::shared_ptr<const FieldCtx> ctx, uint64_t d, int64_t l,
                   std::vector<Elem> a, Elem b);

// sum_{i=1}^{(2^m+1)/r - 1} Tr_1^n(a x^((ri+s)(2^m-1)))
struct FamilyB2 {
    std::shared_ptr<const FieldCtx> ctx;
    uint64_t r = 1;
    int64_t s = 1;
    Elem a{};
};
FamilyB2 family_b2(std::shared_ptr<const FieldCtx> ctx, uint64_t r, int64_t s, Elem a);

// Tr_1^n(a x^(l(p^m-1))) + Tr_1^2(b x^((p^n-1)/4)); odd p, p^m = 3 mod 4
struct FamilyP1 {
    std::shared_ptr<const FieldCtx> ctx;
    int64_t l = 1;
    Elem a{};
    Elem b{};
};
FamilyP1 family_p1(std::shared_ptr<const FieldCtx> ctx, int64_t l, Elem a, Elem b);

// sum_{i=1}^{(p^m+1)/r - 1} Tr_1^n(a x^((ri+s)(p^m-1))) + b x^((p^n-1)/2); odd p
struct FamilyP2 {
    std::shared_ptr<const FieldCtx> ctx;
    uint64_t r = 1;
    int64_t s = 1;
    Elem a{};
    int64_t b = 0; // element of F_p
};
FamilyP2 family_p2(std::shared_ptr<const FieldCtx> ctx, uint64_t r, int64_t s, Elem a, int64_t b);

DillonFunction to_dillon(const FamilyB1& f);
DillonFunction to_dillon(const FamilyB2& f);
DillonFunction to_dillon(const FamilyP1& f);
DillonFunction to_dillon(const FamilyP2& f);

struct BentResult {
    bool bent = false;
    bool regular = false;
    WalshSpectrum spectrum;
};
BentResult is_bent(const DillonFunction& f);
BentResult is_bent(const DillonFunction& f, const WalshPlan& plan);

struct CriterionReport {
    Verdict verdict = Verdict::Inapplicable;
    std::string branch;
    bool exact = true;
    double tol = 0.0;
    std::optional<CycInt> lhs_exact, rhs_exact;
    std::complex<double> lhs_num{}, rhs_num{};
    bool crosscheck_ok = true;
};

// Circle-sum test S(...) = 1: equivalent to bent for p = 2 and to regular
// bent for odd p.
CriterionReport criterion_general(const DillonFunction& f);

CriterionReport criterion_b1_general(const FamilyB1& f);
CriterionReport criterion_b1_klm(const FamilyB1& f);
CriterionReport criterion_b1_b_nonzero(const FamilyB1& f);
CriterionReport criterion_b2(const FamilyB2& f);
CriterionReport criterion_p1_general(const FamilyP1& f);
CriterionReport criterion_p1_klm(const FamilyP1& f, double tol = 1e-6);
CriterionReport criterion_p2(const FamilyP2& f, double tol = 1e-6);

} // namespace bentforge
