#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bentforge/cyclo.hpp"

using namespace bentforge;

namespace {

CycInt random_cyc(std::mt19937& rng, int64_t p, int64_t bound) {
    std::uniform_int_distribution<int64_t> dist(-bound, bound);
    std::vector<int64_t> counts(size_t(p), 0);
    for (auto& c : counts) c = dist(rng);
    return CycInt::from_counts(p, counts);
}

} // namespace

TEST_SUITE("cyclo") {

TEST_CASE("root powers") {
    CHECK(CycInt::root_power(3, 2).coeffs() == std::vector<int64_t>{-1, -1}); // w^2 = -1 - w
    CHECK(CycInt::root_power(2, 1).coeffs() == std::vector<int64_t>{-1});
    CHECK(CycInt::root_power(5, 5) == CycInt::integer(5, 1));
    CHECK(CycInt::root_power(3, -1) == CycInt::root_power(3, 2));
}

TEST_CASE("ring identities") {
    // (1 + w)(1 + w^2) = 1 for p = 3
    CycInt a = CycInt::integer(3, 1) + CycInt::root_power(3, 1);
    CHECK(a * a.conj() == CycInt::integer(3, 1));

    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        int64_t p = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 3 : 5;
        CycInt z = random_cyc(rng, p, 1000);
        CHECK(z.conj().conj() == z);
        CHECK((z + (-z)).is_zero());
        CHECK(z - z == CycInt(p));
    }
    CHECK_THROWS_AS(CycInt::integer(3, 1) + CycInt::integer(5, 1), std::invalid_argument);
}

TEST_CASE("canonical reduction is idempotent") {
    // feeding a canonical vector (top count 0) back through from_counts is a no-op
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        CycInt z = random_cyc(rng, 7, 500);
        std::vector<int64_t> counts(z.coeffs());
        counts.push_back(0);
        CHECK(CycInt::from_counts(7, counts) == z);
    }
}

TEST_CASE("norm_sq") {
    // full character sum vanishes
    for (int64_t p : {2, 3, 5, 7}) {
        CycInt full(p);
        for (int64_t x = 0; x < p; ++x) full += CycInt::root_power(p, x);
        CHECK(full.is_zero());
        CHECK(full.norm_sq().is_zero());
    }
    // constants square up
    CHECK(CycInt::integer(3, 27).norm_sq() == CycInt::integer(3, 729));
    CHECK((CycInt::integer(3, 1) + CycInt::root_power(3, 1)).norm_sq() == CycInt::integer(3, 1));

    std::mt19937 rng(23);
    for (int i = 0; i < 10000; ++i) {
        int64_t p = (i % 2) ? 3 : 5;
        CycInt z = random_cyc(rng, p, 50);
        auto ns = z.norm_sq().to_complex();
        CHECK(std::abs(ns.imag()) < 1e-7);
        CHECK(ns.real() > -1e-7);
    }
}

TEST_CASE("real elements have symmetric coefficients") {
    std::mt19937 rng(31);
    for (int i = 0; i < 300; ++i) {
        int64_t p = (i % 2) ? 5 : 7;
        CycInt w = random_cyc(rng, p, 100);
        CycInt z = w + w.conj(); // real by construction
        CHECK(z.conj() == z);
        const auto& c = z.coeffs();
        // with c_{p-1} read as 0: c_j = c_{p-j} for 1 <= j <= p-2
        for (int64_t j = 1; j <= p - 2; ++j) {
            int64_t mirror = (p - j == p - 1) ? 0 : c[size_t(p - j)];
            CHECK(c[size_t(j)] == mirror);
        }
    }
}

TEST_CASE("as_scaled_root") {
    CHECK(CycInt::integer(5, 9).as_scaled_root(9) == 0);
    CycInt z = CycInt::from_counts(3, std::vector<int64_t>{0, 0, 4}); // 4 w^2
    CHECK(z.coeffs() == std::vector<int64_t>{-4, -4});
    CHECK(z.as_scaled_root(4) == 2);
    CycInt mixed = CycInt::root_power(3, 1).scaled(4) + CycInt::integer(3, 1);
    CHECK(!mixed.as_scaled_root(4).has_value());
    CHECK(!CycInt(3).as_scaled_root(1).has_value());
    CHECK_THROWS_AS(CycInt::integer(3, 1).as_scaled_root(0), std::invalid_argument);
    // every root power is recovered
    for (int64_t p : {2, 3, 7})
        for (int64_t k = 0; k < p; ++k)
            CHECK(CycInt::root_power(p, k).scaled(8).as_scaled_root(8) == k);
}

TEST_CASE("complex embedding") {
    CHECK(CycInt::integer(3, 1).to_complex() == std::complex<double>{1.0, 0.0});
    auto w3 = CycInt::root_power(3, 1).to_complex();
    CHECK(w3.real() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(w3.imag() == doctest::Approx(0.8660254037844386).epsilon(1e-12));

    // embedding is a ring homomorphism
    std::mt19937 rng(47);
    for (int i = 0; i < 500; ++i) {
        int64_t p = (i % 2) ? 3 : 7;
        CycInt a = random_cyc(rng, p, 1000), b = random_cyc(rng, p, 1000);
        auto lhs = (a * b).to_complex();
        auto rhs = a.to_complex() * b.to_complex();
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));
        CHECK(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-9);
    }
}

TEST_CASE("overflow fails loudly") {
    const int64_t big = int64_t(1) << 62;
    CycInt a = CycInt::integer(3, big);
    CHECK_THROWS_AS(a + a, overflow_error);
    CHECK_THROWS_AS(a * CycInt::integer(3, 4), overflow_error);
    CHECK_THROWS_AS(a.scaled(16), overflow_error);
    CHECK_NOTHROW(a + CycInt::integer(3, 1));
}

} // TEST_SUITE
