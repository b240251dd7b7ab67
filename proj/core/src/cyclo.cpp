#include "bentforge/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bentforge {

int64_t ck_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in Z[w] add");
    return r;
}

int64_t ck_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer overflow in Z[w] sub");
    return r;
}

int64_t ck_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in Z[w] mul");
    return r;
}

CycInt::CycInt(int64_t p) : p_(p) {
    if (p < 2) throw std::invalid_argument("cyclotomic order must be a prime >= 2");
    c_.assign(size_t(p - 1), 0);
}

CycInt CycInt::integer(int64_t p, int64_t v) {
    CycInt z(p);
    z.c_[0] = v;
    return z;
}

CycInt CycInt::root_power(int64_t p, int64_t k) {
    CycInt z(p);
    k %= p;
    if (k < 0) k += p;
    if (k == p - 1) {
        for (auto& c : z.c_) c = -1;
    } else {
        z.c_[size_t(k)] = 1;
    }
    return z;
}

CycInt CycInt::from_counts(int64_t p, std::span<const int64_t> counts) {
    if (counts.size() != size_t(p)) throw std::invalid_argument("count vector must have length p");
    CycInt z(p);
    const int64_t top = counts[size_t(p - 1)];
    for (int64_t j = 0; j < p - 1; ++j) z.c_[size_t(j)] = ck_sub(counts[size_t(j)], top);
    return z;
}

bool CycInt::is_zero() const {
    for (int64_t c : c_)
        if (c != 0) return false;
    return true;
}

bool CycInt::is_integer(int64_t v) const {
    if (c_[0] != v) return false;
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

CycInt CycInt::operator+(const CycInt& o) const {
    CycInt r = *this;
    r += o;
    return r;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    if (p_ != o.p_) throw std::invalid_argument("mismatched cyclotomic orders");
    for (size_t j = 0; j < c_.size(); ++j) c_[j] = ck_add(c_[j], o.c_[j]);
    return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
    CycInt r = *this;
    r -= o;
    return r;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    if (p_ != o.p_) throw std::invalid_argument("mismatched cyclotomic orders");
    for (size_t j = 0; j < c_.size(); ++j) c_[j] = ck_sub(c_[j], o.c_[j]);
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt r(p_);
    for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = ck_sub(0, c_[j]);
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mismatched cyclotomic orders");
    std::vector<int64_t> counts(size_t(p_), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            size_t k = (i + j) % size_t(p_);
            counts[k] = ck_add(counts[k], ck_mul(c_[i], o.c_[j]));
        }
    }
    return from_counts(p_, counts);
}

CycInt CycInt::conj() const {
    std::vector<int64_t> counts(size_t(p_), 0);
    for (size_t j = 0; j < c_.size(); ++j)
        counts[(size_t(p_) - j) % size_t(p_)] = c_[j];
    return from_counts(p_, counts);
}

CycInt CycInt::scaled(int64_t k) const {
    CycInt r(p_);
    for (size_t j = 0; j < c_.size(); ++j) r.c_[j] = ck_mul(c_[j], k);
    return r;
}

CycInt CycInt::norm_sq() const { return *this * conj(); }

std::optional<int64_t> CycInt::as_scaled_root(int64_t c) const {
    if (c <= 0) throw std::invalid_argument("scale must be positive");
    for (int64_t k = 0; k < p_ - 1; ++k) {
        bool match = true;
        for (int64_t j = 0; j < p_ - 1 && match; ++j)
            match = c_[size_t(j)] == (j == k ? c : 0);
        if (match) return k;
    }
    bool all_neg = true;
    for (int64_t v : c_) all_neg = all_neg && v == -c;
    if (all_neg) return p_ - 1;
    return std::nullopt;
}

std::complex<double> CycInt::to_complex() const {
    std::complex<double> z{0.0, 0.0};
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        double arg = 2.0 * std::numbers::pi * double(j) / double(p_);
        z += double(c_[j]) * std::complex<double>{std::cos(arg), std::sin(arg)};
    }
    return z;
}

} // namespace bentforge
