#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bentforge/errors.hpp"

namespace bentforge {

// Exact element of Z[w], w = exp(2*pi*i/p), stored in the canonical basis
// {1, w, ..., w^(p-2)} after reduction by 1 + w + ... + w^(p-1) = 0.
// Canonical form is unique, so operator== is coefficient-wise. All integer
// arithmetic is overflow-checked and throws rather than wrapping.
class CycInt {
public:
    explicit CycInt(int64_t p);
    static CycInt integer(int64_t p, int64_t v);
    static CycInt root_power(int64_t p, int64_t k); // w^(k mod p)
    // Reduce a redundant length-p count vector (coefficients of w^0..w^(p-1)).
    static CycInt from_counts(int64_t p, std::span<const int64_t> counts);

    int64_t p() const { return p_; }
    const std::vector<int64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_integer(int64_t v) const;

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator-() const;
    CycInt operator*(const CycInt& o) const;
    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    bool operator==(const CycInt&) const = default;

    CycInt conj() const;               // w^j -> w^(p-j)
    CycInt scaled(int64_t k) const;    // integer scaling
    CycInt norm_sq() const;            // z * conj(z)
    // k with z = c * w^k, if z is such a scaled root (c > 0 required).
    std::optional<int64_t> as_scaled_root(int64_t c) const;
    std::complex<double> to_complex() const;

private:
    int64_t p_;
    std::vector<int64_t> c_; // length p-1
};

// Overflow-checked int64 helpers shared by the character-sum code.
int64_t ck_add(int64_t a, int64_t b);
int64_t ck_sub(int64_t a, int64_t b);
int64_t ck_mul(int64_t a, int64_t b);

} // namespace bentforge
