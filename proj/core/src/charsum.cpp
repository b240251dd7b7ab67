#include "bentforge/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bentforge {

namespace {

void check_table(const FieldCtx& ctx, std::span<const uint8_t> f) {
    if (f.size() != ctx.order()) throw std::invalid_argument("truth table size != p^n");
    for (uint8_t v : f)
        if (v >= ctx.p()) throw std::invalid_argument("truth table value not in F_p");
}

// Classify a finished spectrum: bent, regular, dual.
void classify(const FieldCtx& ctx, WalshSpectrum& s) {
    const int64_t p = ctx.p();
    const int64_t qn = int64_t(ctx.order());
    CycInt parseval(p);
    bool bent = true;
    for (const CycInt& w : s.values) {
        CycInt ns = w.norm_sq();
        parseval += ns;
        bent = bent && ns.is_integer(qn);
    }
    if (!parseval.is_integer(ck_mul(qn, qn)))
        throw internal_error("Parseval identity violated in Walsh spectrum");
    s.is_bent = bent;
    s.is_regular = false;
    s.dual.reset();
    if (bent && ctx.has_m()) {
        const int64_t pm = int64_t(pow_u64(uint64_t(p), unsigned(ctx.m())));
        std::vector<int64_t> dual(s.values.size());
        bool regular = true;
        for (size_t i = 0; i < s.values.size() && regular; ++i) {
            auto k = s.values[i].as_scaled_root(pm);
            if (k) dual[i] = *k;
            else regular = false;
        }
        s.is_regular = regular;
        if (regular) s.dual = std::move(dual);
    }
}

} // namespace

CycInt walsh(const FieldCtx& ctx, std::span<const uint8_t> f, Elem lambda) {
    check_table(ctx, f);
    const int64_t p = ctx.p();
    std::vector<int64_t> counts(size_t(p), 0);
    for (uint64_t x = 0; x < ctx.order(); ++x) {
        int64_t e = f[x] - ctx.tr1(ctx.mul(lambda, Elem{uint32_t(x)}));
        counts[size_t((e % p + p) % p)]++;
    }
    return CycInt::from_counts(p, counts);
}

WalshSpectrum walsh_spectrum_naive(const FieldCtx& ctx, std::span<const uint8_t> f) {
    WalshSpectrum s;
    s.values.reserve(ctx.order());
    for (uint64_t l = 0; l < ctx.order(); ++l)
        s.values.push_back(walsh(ctx, f, Elem{uint32_t(l)}));
    classify(ctx, s);
    return s;
}

WalshPlan::WalshPlan(std::shared_ptr<const FieldCtx> ctx) : ctx_(std::move(ctx)) {
    const FieldCtx& c = *ctx_;
    const uint64_t q = c.order();
    const int64_t p = c.p();
    const int n = c.n();
    mu_index_.assign(q, 0);
    for (uint64_t l = 1; l < q; ++l) {
        // digit j of the remapped index is Tr(lambda * alpha^j)
        uint64_t idx = 0, mult = 1;
        uint64_t lg = c.log(Elem{uint32_t(l)});
        for (int j = 0; j < n; ++j) {
            idx += mult * uint64_t(c.tr1(c.exp(lg + uint64_t(j))));
            mult *= uint64_t(p);
        }
        mu_index_[l] = uint32_t(idx);
    }
}

WalshSpectrum WalshPlan::spectrum(std::span<const uint8_t> f) const {
    const FieldCtx& c = *ctx_;
    check_table(c, f);
    const uint64_t q = c.order();
    const size_t p = size_t(c.p());
    const int n = c.n();

    // buf[x*p + j] = count of w^j at grid point x
    std::vector<int64_t> buf(q * p, 0);
    for (uint64_t x = 0; x < q; ++x) buf[x * p + f[x]] = 1;

    std::vector<int64_t> block(p * p);
    uint64_t stride = 1;
    for (int dim = 0; dim < n; ++dim) {
        const uint64_t outer = q / (stride * p);
        for (uint64_t hi = 0; hi < outer; ++hi) {
            for (uint64_t lo = 0; lo < stride; ++lo) {
                const uint64_t base = hi * stride * p + lo;
                // out[t] = sum_s in[s] * w^(-t*s): rotate counts by -t*s mod p
                std::fill(block.begin(), block.end(), 0);
                for (size_t s = 0; s < p; ++s) {
                    const int64_t* in = &buf[(base + s * stride) * p];
                    for (size_t t = 0; t < p; ++t) {
                        size_t rot = (t * s) % p;
                        int64_t* out = &block[t * p];
                        for (size_t j = 0; j < p; ++j)
                            out[(j + p - rot) % p] += in[j];
                    }
                }
                for (size_t t = 0; t < p; ++t) {
                    int64_t* out = &buf[(base + t * stride) * p];
                    std::copy_n(&block[t * p], p, out);
                }
            }
        }
        stride *= p;
    }

    WalshSpectrum s;
    s.values.reserve(q);
    for (uint64_t l = 0; l < q; ++l) {
        std::span<const int64_t> counts(&buf[uint64_t(mu_index_[l]) * p], p);
        s.values.push_back(CycInt::from_counts(int64_t(p), counts));
    }
    classify(c, s);
    return s;
}

WalshSpectrum walsh_spectrum(const FieldCtx& ctx, std::span<const uint8_t> f) {
    // one-shot plan; reuse a WalshPlan when computing many spectra
    auto shared = std::make_shared<const FieldCtx>(ctx);
    return WalshPlan(shared).spectrum(f);
}

bool parseval_holds(const FieldCtx& ctx, const WalshSpectrum& s) {
    CycInt acc(ctx.p());
    for (const CycInt& w : s.values) acc += w.norm_sq();
    const int64_t qn = int64_t(ctx.order());
    return acc.is_integer(ck_mul(qn, qn));
}

CycInt kloosterman(const FieldCtx& ctx, Elem alpha, int m) {
    if (!ctx.in_subfield(alpha, m))
        throw std::invalid_argument("kloosterman argument not in the degree-m subfield");
    const int64_t p = ctx.p();
    std::vector<int64_t> counts(size_t(p), 0);
    counts[0]++; // x = 0: both monomials vanish
    for (Elem x : ctx.subfield(m)) {
        if (x.v == 0) continue;
        Elem t = ctx.add(ctx.mul(alpha, x), ctx.inv(x));
        counts[size_t(ctx.trace_to_prime(t, m))]++;
    }
    return CycInt::from_counts(p, counts);
}

CycInt kloosterman(const FieldCtx& ctx, Elem alpha) { return kloosterman(ctx, alpha, ctx.n()); }

std::vector<int> dickson_closed(int r) {
    if (r < 2) throw std::invalid_argument("Dickson degree must be >= 2");
    std::vector<int> out(size_t(r) + 1, 0);
    for (int i = 0; i <= r / 2; ++i) {
        // r/(r-i) * binom(r-i, i), computed exactly before reducing mod 2
        unsigned __int128 binom = 1;
        for (int j = 1; j <= i; ++j) {
            binom = binom * unsigned(r - i - i + j);
            binom /= unsigned(j);
        }
        unsigned __int128 term = binom * unsigned(r) / unsigned(r - i);
        out[size_t(r - 2 * i)] = int(term % 2);
    }
    return out;
}

std::vector<int> dickson_recurrence(int r) {
    if (r < 2) throw std::invalid_argument("Dickson degree must be >= 2");
    std::vector<int> prev{0};    // D_0 = 2 = 0 mod 2
    std::vector<int> cur{0, 1};  // D_1 = x
    for (int k = 2; k <= r; ++k) {
        std::vector<int> next(size_t(k) + 1, 0);
        for (size_t j = 0; j < cur.size(); ++j) next[j + 1] ^= cur[j];
        for (size_t j = 0; j < prev.size(); ++j) next[j] ^= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<int> dickson(int r) { return dickson_recurrence(r); }

CycInt e_md(const FieldCtx& ctx, Elem abar, uint64_t d, int m) {
    if (ctx.p() != 2) throw std::invalid_argument("E_{m,d} is defined over F_2 only");
    if (d < 2) throw std::invalid_argument("E_{m,d} requires d >= 2");
    if (!ctx.in_subfield(abar, m))
        throw std::invalid_argument("E_{m,d} argument not in the degree-m subfield");
    const std::vector<int> D = dickson(int(d));
    int64_t counts[2] = {0, 0};
    for (Elem x : ctx.subfield(m)) {
        Elem acc = ctx.zero();
        for (size_t j = D.size(); j-- > 0;) {
            acc = ctx.mul(acc, x);
            if (D[j]) acc = ctx.add(acc, ctx.one());
        }
        counts[ctx.trace_to_prime(ctx.mul(abar, acc), m)]++;
    }
    return CycInt::from_counts(2, counts);
}

CycInt e_md(const FieldCtx& ctx, Elem abar, uint64_t d) { return e_md(ctx, abar, d, ctx.n()); }

CycInt partial_sum(const FieldCtx& ctx, Elem a, uint64_t i, uint64_t d) {
    const uint64_t pm = pow_u64(uint64_t(ctx.p()), unsigned(ctx.m()));
    if (d == 0 || (pm + 1) % d != 0) throw std::invalid_argument("d does not divide p^m + 1");
    if (i >= d) throw std::invalid_argument("coset index out of range");
    const int64_t p = ctx.p();
    std::vector<int64_t> counts(size_t(p), 0);
    Elem shifted = ctx.mul(a, ctx.pow(ctx.xi(), int64_t(i)));
    const uint64_t xi_log = pm - 1;
    for (uint64_t j = 0; j < (pm + 1) / d; ++j) {
        Elem x = ctx.exp(d * j % (pm + 1) * xi_log);
        counts[size_t(ctx.tr1(ctx.mul(shifted, x)))]++;
    }
    return CycInt::from_counts(p, counts);
}

std::complex<double> closed_form_i(int64_t p, int m) {
    if (p % 2 == 0) throw std::invalid_argument("closed-form constant is defined for odd p");
    double mag = std::pow(double(p), double(m) / 2.0) / 2.0;
    if (p % 4 == 3) {
        switch ((3 * m) % 4) { // i^(3m)
            case 0: return {mag, 0.0};
            case 1: return {0.0, mag};
            case 2: return {-mag, 0.0};
            default: return {0.0, -mag};
        }
    }
    return {m % 2 == 0 ? mag : -mag, 0.0};
}

int64_t q_exponent(const FieldCtx& ctx, Elem a) {
    if (!ctx.is_square(a)) throw std::invalid_argument("Q is defined on even-log elements");
    const int m = ctx.m();
    const uint64_t pm = pow_u64(uint64_t(ctx.p()), unsigned(m));
    Elem h = ctx.pow(a, int64_t((pm + 1) / 2));
    return 2 * ctx.trace_to_prime(h, m) % ctx.p();
}

namespace {

std::complex<double> omega_pow(int64_t p, int64_t e) {
    double arg = 2.0 * std::numbers::pi * double(((e % p) + p) % p) / double(p);
    return {std::cos(arg), std::sin(arg)};
}

} // namespace

ClosedD2 partial_sum_closed_d2(const FieldCtx& ctx, Elem a) {
    if (ctx.p() == 2) throw std::invalid_argument("d = 2 closed form requires odd p");
    if (a.v == 0) throw std::invalid_argument("closed form requires nonzero a");
    const int m = ctx.m();
    const uint64_t pm = pow_u64(uint64_t(ctx.p()), unsigned(m));
    const int64_t p = ctx.p();

    Elem norm = ctx.pow(a, int64_t(pm + 1));
    double K = kloosterman(ctx, norm, m).to_complex().real();
    double R = (1.0 - K) / 2.0;

    ClosedD2 out;
    bool in_c0 = ctx.is_square(a);
    if (in_c0) out.q = q_exponent(ctx, a);
    out.c0_plus = in_c0 && out.q != 0;
    if (out.c0_plus) {
        std::complex<double> term =
            closed_form_i(p, m) * (omega_pow(p, out.q) - omega_pow(p, -out.q));
        out.s0 = R + term;
        out.s1 = R - term;
    } else {
        out.s0 = out.s1 = R;
    }
    return out;
}

ClosedD4 partial_sum_closed_d4(const FieldCtx& ctx, Elem a) {
    if (ctx.p() == 2) throw std::invalid_argument("d = 4 closed form requires odd p");
    const int m = ctx.m();
    const uint64_t pm = pow_u64(uint64_t(ctx.p()), unsigned(m));
    if (pm % 4 != 3) throw std::invalid_argument("d = 4 closed form requires p^m = 3 mod 4");
    if (a.v == 0 || !ctx.in_subfield(a, m))
        throw std::invalid_argument("argument must lie in F_{p^m}*");
    const int64_t p = ctx.p();

    Elem norm = ctx.pow(a, int64_t(pm + 1)); // = a^2 for a in F_{p^m}
    double K = kloosterman(ctx, norm, m).to_complex().real();
    double R = (1.0 - K) / 2.0;

    ClosedD4 out;
    out.q = q_exponent(ctx, a); // subfield elements always have even log
    out.c0_plus = out.q != 0;
    std::complex<double> term =
        closed_form_i(p, m) * (omega_pow(p, out.q) - omega_pow(p, -out.q));
    out.s1s3 = (R - term) / 2.0;
    return out;
}

CycInt dillon_sum(const FieldCtx& ctx, const std::map<uint64_t, Elem>& a, Elem b, uint64_t d) {
    const int64_t p = ctx.p();
    const uint64_t pm = pow_u64(uint64_t(p), unsigned(ctx.m()));
    if (d == 0 || (pm + 1) % d != 0) throw std::invalid_argument("d does not divide p^m + 1");
    const int o = int(o_of_d(p, ctx.n(), d));
    if (!ctx.in_subfield(b, o))
        throw std::invalid_argument("b not in F_{p^o(d)}");

    const uint64_t xi_log = pm - 1;
    const uint64_t b_exp = (pm + 1) / d;
    std::vector<int64_t> counts(size_t(p), 0);
    for (uint64_t j = 0; j <= pm; ++j) {
        Elem x = ctx.exp(j * xi_log);
        int64_t e = 0;
        for (const auto& [i, ai] : a)
            e += ctx.tr1(ctx.mul(ai, ctx.pow(x, int64_t(i % (pm + 1)))));
        if (b.v != 0)
            e += ctx.trace_to_prime(ctx.mul(b, ctx.pow(x, int64_t(b_exp))), o);
        counts[size_t(e % p)]++;
    }
    return CycInt::from_counts(p, counts);
}

} // namespace bentforge
