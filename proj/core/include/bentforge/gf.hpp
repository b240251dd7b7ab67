#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "bentforge/errors.hpp"

namespace bentforge {

// Element of F_{p^n} in polynomial basis, packed as sum coeff[i] * p^i.
// Only meaningful together with the FieldCtx that produced it.
struct Elem {
    uint32_t v = 0;
    constexpr bool operator==(const Elem&) const = default;
    constexpr auto operator<=>(const Elem&) const = default;
};

struct FieldSpec {
    int64_t p = 0;
    int n = 0;
    std::vector<int64_t> modulus; // constant-first, length n+1, monic
    bool operator==(const FieldSpec&) const = default;
};

// Immutable description of the tower F_p < F_{p^m} < F_{p^n} (n = 2m when n
// is even), with exp/log tables built once at construction. All member
// functions are const and safe to call concurrently.
class FieldCtx {
public:
    // Smallest primitive modulus of degree n over F_p, ordered by the
    // numeric value sum coeff[i]*p^i. `skip` selects the (skip+1)-th hit,
    // used to re-run searches under an alternative field representation.
    static FieldCtx build(int64_t p, int n, int skip = 0);
    static FieldCtx from_spec(const FieldSpec& spec);

    static constexpr uint64_t kMaxOrder = 1u << 20;

    const FieldSpec& spec() const { return spec_; }
    int64_t p() const { return spec_.p; }
    int n() const { return spec_.n; }
    bool has_m() const { return spec_.n % 2 == 0; }
    int m() const;
    uint64_t order() const { return q_; }       // p^n
    uint64_t units() const { return q_ - 1; }   // p^n - 1

    Elem zero() const { return {0}; }
    Elem one() const { return {1}; }
    Elem alpha() const { return exp(1); }
    Elem xi() const; // alpha^(p^m - 1); n even only

    Elem from_prime(int64_t c) const;
    Elem from_coeffs(std::span<const int64_t> coeffs) const;
    std::vector<int64_t> coeffs(Elem x) const;
    Elem exp(uint64_t k) const { return exp_[k % (q_ - 1)]; }
    uint64_t log(Elem x) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, int64_t e) const; // 0^0 = 1, 0^e = 0 for e > 0

    // Tr_1^n lifted to {0..p-1}; table-backed.
    int64_t tr1(Elem x) const { return tr1_[x.v]; }
    // Tr_{to}^{from}; x must lie in the degree-`from` subfield, to | from | n.
    Elem trace(Elem x, int from, int to) const;
    // Tr_1^k(x) for x in F_{p^k}, lifted to {0..p-1}.
    int64_t trace_to_prime(Elem x, int k) const;
    bool in_subfield(Elem x, int k) const;
    int64_t as_prime(Elem x) const;
    // All p^k elements of the degree-k subfield: zero, then by ascending log.
    std::vector<Elem> subfield(int k) const;
    Elem frobenius(Elem x, int k = 1) const; // x^(p^k)

    // U = {x : x^(p^m+1) = 1}, enumerated as xi^0 .. xi^(p^m). n even only.
    std::vector<Elem> unit_circle() const;
    // V_k = xi^k * V_0 for the index-d subgroup V_0 of U; d | p^m + 1.
    std::vector<std::vector<Elem>> v_partition(uint64_t d) const;
    // Transversal {alpha^0, ..., alpha^(p^m)} of F_{p^m}* in F_{p^n}*.
    std::vector<Elem> coset_reps() const;
    // The unique coset representative u with Tr_m^n(lambda * u) = 0.
    Elem tr_zero_rep(Elem lambda) const;
    // a = abar * xi^k with abar in F_{p^m}*, smallest k >= 0. For p = 2 the
    // representation exists for every nonzero a; for odd p only when a is a
    // square (throws std::invalid_argument otherwise).
    std::pair<Elem, uint64_t> dillon_decompose(Elem a) const;
    // Even discrete log. Odd p only.
    bool is_square(Elem a) const;

private:
    FieldCtx() = default;
    void init_tables();

    FieldSpec spec_;
    uint64_t q_ = 0;
    std::vector<Elem> exp_;      // size q-1
    std::vector<uint32_t> log_;  // size q, log_[0] unused
    std::vector<int64_t> tr1_;   // size q
};

bool is_prime(int64_t p);
// Smallest o with o | n and d | p^o - 1.
uint64_t o_of_d(int64_t p, int n, uint64_t d);
uint64_t pow_u64(uint64_t base, unsigned e);

std::shared_ptr<const FieldCtx> make_field(int64_t p, int n, int skip = 0);

} // namespace bentforge
