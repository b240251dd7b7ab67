#include "bentforge/gf.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bentforge {

namespace {

std::string fmt_field(int64_t p, int n) {
    return "F_{" + std::to_string(p) + "^" + std::to_string(n) + "}";
}

// --- dense polynomial arithmetic over F_p, used only by the primitive scan ---

using Poly = std::vector<int64_t>; // ascending coefficients

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, int64_t p) {
    const size_t n = mod.size() - 1;
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // mod is monic, reduce from the top
    for (size_t i = r.size(); i-- > n;) {
        int64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < n; ++j)
            r[i - n + j] = ((r[i - n + j] - c * mod[j]) % p + p) % p;
    }
    r.resize(n);
    return r;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& mod, int64_t p) {
    Poly r(mod.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

bool poly_is_one(const Poly& a) {
    if (a.empty() || a[0] != 1) return false;
    return std::all_of(a.begin() + 1, a.end(), [](int64_t c) { return c == 0; });
}

std::vector<uint64_t> prime_factors(uint64_t v) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            fs.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) fs.push_back(v);
    return fs;
}

// The residue class of x has full order p^n - 1 iff x^(p^n-1) = 1 and
// x^((p^n-1)/q) != 1 for every prime q | p^n - 1. Full order forces the
// quotient ring to be a field, so this is also the primitivity test.
bool x_is_primitive(const Poly& mod, int64_t p, uint64_t q,
                    const std::vector<uint64_t>& factors) {
    if (mod[0] == 0) return false;
    Poly x(mod.size() - 1, 0);
    if (x.size() < 2) {
        // degree 1: residue of x is the constant -c0
        int64_t g = ((-mod[0]) % p + p) % p;
        if (g == 0) return false;
        uint64_t e = 1, acc = g % p;
        while (acc != 1) { acc = acc * g % p; ++e; }
        return e == q - 1;
    }
    x[1] = 1;
    if (!poly_is_one(poly_powmod(x, q - 1, mod, p))) return false;
    for (uint64_t f : factors)
        if (poly_is_one(poly_powmod(x, (q - 1) / f, mod, p))) return false;
    return true;
}

} // namespace

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

uint64_t pow_u64(uint64_t base, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

uint64_t o_of_d(int64_t p, int n, uint64_t d) {
    if (d == 0) throw std::invalid_argument("o_of_d: d must be positive");
    for (int o = 1; o <= n; ++o) {
        if (n % o != 0) continue;
        if ((pow_u64(uint64_t(p), unsigned(o)) - 1) % d == 0) return uint64_t(o);
    }
    throw std::invalid_argument("o_of_d: no o | " + std::to_string(n) +
                                " with " + std::to_string(d) + " | p^o - 1");
}

int FieldCtx::m() const {
    if (!has_m()) throw std::invalid_argument("field degree is odd, no quadratic subfield");
    return spec_.n / 2;
}

FieldCtx FieldCtx::build(int64_t p, int n, int skip) {
    if (!is_prime(p)) throw std::invalid_argument("p not prime: " + std::to_string(p));
    if (n < 1) throw std::invalid_argument("degree must be >= 1");
    long double sz = 1;
    for (int i = 0; i < n; ++i) sz *= static_cast<long double>(p);
    if (sz > static_cast<long double>(kMaxOrder))
        throw std::invalid_argument("field too large: p^n exceeds 2^20");

    const uint64_t q = pow_u64(uint64_t(p), unsigned(n));
    const auto factors = prime_factors(q - 1);

    int hits = 0;
    for (uint64_t k = 0; k < q; ++k) {
        if (k % uint64_t(p) == 0) continue; // constant term must be nonzero
        Poly mod(size_t(n) + 1, 0);
        uint64_t t = k;
        for (int i = 0; i < n; ++i) { mod[size_t(i)] = int64_t(t % uint64_t(p)); t /= uint64_t(p); }
        mod[size_t(n)] = 1;
        if (!x_is_primitive(mod, p, q, factors)) continue;
        if (hits++ < skip) continue;
        FieldCtx ctx;
        ctx.spec_ = FieldSpec{p, n, std::move(mod)};
        ctx.q_ = q;
        ctx.init_tables();
        return ctx;
    }
    throw std::invalid_argument("no primitive polynomial found for " + fmt_field(p, n));
}

FieldCtx FieldCtx::from_spec(const FieldSpec& spec) {
    if (!is_prime(spec.p)) throw std::invalid_argument("p not prime: " + std::to_string(spec.p));
    if (spec.n < 1) throw std::invalid_argument("degree must be >= 1");
    if (spec.modulus.size() != size_t(spec.n) + 1 || spec.modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree n");
    for (int64_t c : spec.modulus)
        if (c < 0 || c >= spec.p) throw std::invalid_argument("modulus coefficient out of range");
    long double sz = 1;
    for (int i = 0; i < spec.n; ++i) sz *= static_cast<long double>(spec.p);
    if (sz > static_cast<long double>(kMaxOrder))
        throw std::invalid_argument("field too large: p^n exceeds 2^20");
    const uint64_t q = pow_u64(uint64_t(spec.p), unsigned(spec.n));
    if (!x_is_primitive(spec.modulus, spec.p, q, prime_factors(q - 1)))
        throw std::invalid_argument("modulus is not primitive over F_p");
    FieldCtx ctx;
    ctx.spec_ = spec;
    ctx.q_ = q;
    ctx.init_tables();
    return ctx;
}

void FieldCtx::init_tables() {
    const int64_t p = spec_.p;
    const int n = spec_.n;
    const uint64_t q = q_;

    exp_.assign(q - 1, Elem{});
    log_.assign(q, 0);

    std::vector<int64_t> cur(size_t(n), 0);
    cur[0] = 1;
    auto pack = [&](const std::vector<int64_t>& c) {
        uint64_t v = 0;
        for (int i = n - 1; i >= 0; --i) v = v * uint64_t(p) + uint64_t(c[size_t(i)]);
        return uint32_t(v);
    };
    for (uint64_t k = 0; k < q - 1; ++k) {
        exp_[k] = Elem{pack(cur)};
        log_[exp_[k].v] = uint32_t(k);
        // multiply by x, reduce by the monic modulus
        int64_t top = cur[size_t(n) - 1];
        for (int i = n - 1; i > 0; --i) cur[size_t(i)] = cur[size_t(i) - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < n; ++i)
                cur[size_t(i)] = ((cur[size_t(i)] - top * spec_.modulus[size_t(i)]) % p + p) % p;
    }
    if (!((cur[0] == 1 && std::all_of(cur.begin() + 1, cur.end(), [](int64_t c) { return c == 0; }))))
        throw internal_error("alpha does not have order p^n - 1");

    // Tr_1^n on the basis, then extend linearly.
    std::vector<int64_t> basis_tr(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Elem acc = zero();
        uint64_t lg = uint64_t(i); // log of alpha^i
        for (int j = 0; j < n; ++j) {
            uint64_t pj = pow_u64(uint64_t(p), unsigned(j)) % (q - 1);
            acc = add(acc, exp_[(lg * pj) % (q - 1)]);
        }
        if (acc.v >= uint64_t(p)) throw internal_error("trace of basis element not in F_p");
        basis_tr[size_t(i)] = int64_t(acc.v);
    }
    tr1_.assign(q, 0);
    for (uint64_t x = 0; x < q; ++x) {
        uint64_t t = x;
        int64_t s = 0;
        for (int i = 0; i < n; ++i) {
            s += int64_t(t % uint64_t(p)) * basis_tr[size_t(i)];
            t /= uint64_t(p);
        }
        tr1_[x] = s % p;
    }
}

Elem FieldCtx::xi() const {
    return exp(pow_u64(uint64_t(p()), unsigned(m())) - 1);
}

Elem FieldCtx::from_prime(int64_t c) const {
    c %= p();
    if (c < 0) c += p();
    return Elem{uint32_t(c)};
}

Elem FieldCtx::from_coeffs(std::span<const int64_t> coeffs) const {
    if (coeffs.size() > size_t(n()))
        throw std::invalid_argument("too many coefficients for degree-" + std::to_string(n()) + " field");
    uint64_t v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        int64_t c = coeffs[i] % p();
        if (c < 0) c += p();
        v = v * uint64_t(p()) + uint64_t(c);
    }
    return Elem{uint32_t(v)};
}

std::vector<int64_t> FieldCtx::coeffs(Elem x) const {
    std::vector<int64_t> c(static_cast<size_t>(n()));
    uint64_t t = x.v;
    for (int i = 0; i < n(); ++i) { c[size_t(i)] = int64_t(t % uint64_t(p())); t /= uint64_t(p()); }
    return c;
}

uint64_t FieldCtx::log(Elem x) const {
    if (x.v == 0) throw std::invalid_argument("log of zero");
    if (x.v >= q_) throw std::invalid_argument("element out of range");
    return log_[x.v];
}

Elem FieldCtx::add(Elem a, Elem b) const {
    if (p() == 2) return Elem{a.v ^ b.v};
    uint64_t va = a.v, vb = b.v, r = 0, mult = 1;
    for (int i = 0; i < n(); ++i) {
        uint64_t da = va % uint64_t(p()), db = vb % uint64_t(p());
        r += mult * ((da + db) % uint64_t(p()));
        va /= uint64_t(p());
        vb /= uint64_t(p());
        mult *= uint64_t(p());
    }
    return Elem{uint32_t(r)};
}

Elem FieldCtx::neg(Elem a) const {
    if (p() == 2) return a;
    uint64_t va = a.v, r = 0, mult = 1;
    for (int i = 0; i < n(); ++i) {
        uint64_t d = va % uint64_t(p());
        r += mult * (d == 0 ? 0 : uint64_t(p()) - d);
        va /= uint64_t(p());
        mult *= uint64_t(p());
    }
    return Elem{uint32_t(r)};
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::mul(Elem a, Elem b) const {
    if (a.v == 0 || b.v == 0) return zero();
    return exp((uint64_t(log_[a.v]) + uint64_t(log_[b.v])) % (q_ - 1));
}

Elem FieldCtx::inv(Elem a) const {
    if (a.v == 0) throw std::invalid_argument("inverse of zero");
    return exp((q_ - 1 - uint64_t(log_[a.v])) % (q_ - 1));
}

Elem FieldCtx::pow(Elem a, int64_t e) const {
    if (a.v == 0) {
        if (e > 0) return zero();
        if (e == 0) return one();
        throw std::invalid_argument("inverse of zero");
    }
    int64_t g = int64_t(q_ - 1);
    int64_t r = e % g;
    if (r < 0) r += g;
    return exp((uint64_t(log_[a.v]) * uint64_t(r)) % uint64_t(g));
}

Elem FieldCtx::frobenius(Elem x, int k) const {
    if (x.v == 0) return x;
    uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk = pk * uint64_t(p()) % (q_ - 1);
    return exp((uint64_t(log_[x.v]) * pk) % (q_ - 1));
}

bool FieldCtx::in_subfield(Elem x, int k) const {
    if (k < 1 || n() % k != 0) throw std::invalid_argument("not a subfield degree: " + std::to_string(k));
    if (x.v == 0) return true;
    uint64_t sub_units = pow_u64(uint64_t(p()), unsigned(k)) - 1;
    return uint64_t(log_[x.v]) % ((q_ - 1) / sub_units) == 0;
}

Elem FieldCtx::trace(Elem x, int from, int to) const {
    if (to < 1 || from % to != 0 || n() % from != 0)
        throw std::invalid_argument("trace degrees must satisfy to | from | n");
    if (!in_subfield(x, from))
        throw std::invalid_argument("element not in the degree-" + std::to_string(from) + " subfield");
    Elem acc = zero();
    for (int i = 0; i < from / to; ++i) acc = add(acc, frobenius(x, to * i));
    if (!in_subfield(acc, to)) throw internal_error("trace left its target subfield");
    return acc;
}

int64_t FieldCtx::as_prime(Elem x) const {
    if (x.v >= uint64_t(p())) throw std::invalid_argument("element not in the prime subfield");
    return int64_t(x.v);
}

int64_t FieldCtx::trace_to_prime(Elem x, int k) const {
    if (k == n()) return tr1(x);
    return as_prime(trace(x, k, 1));
}

std::vector<Elem> FieldCtx::subfield(int k) const {
    if (k < 1 || n() % k != 0) throw std::invalid_argument("not a subfield degree: " + std::to_string(k));
    uint64_t sub_units = pow_u64(uint64_t(p()), unsigned(k)) - 1;
    uint64_t stride = (q_ - 1) / sub_units;
    std::vector<Elem> out;
    out.reserve(sub_units + 1);
    out.push_back(zero());
    for (uint64_t j = 0; j < sub_units; ++j) out.push_back(exp(j * stride));
    return out;
}

std::vector<Elem> FieldCtx::unit_circle() const {
    const uint64_t pm = pow_u64(uint64_t(p()), unsigned(m()));
    std::vector<Elem> out;
    out.reserve(pm + 1);
    for (uint64_t j = 0; j <= pm; ++j) out.push_back(exp(j * (pm - 1) % (q_ - 1)));
    return out;
}

std::vector<std::vector<Elem>> FieldCtx::v_partition(uint64_t d) const {
    const uint64_t pm = pow_u64(uint64_t(p()), unsigned(m()));
    if (d == 0 || (pm + 1) % d != 0)
        throw std::invalid_argument("d does not divide p^m + 1");
    const uint64_t xi_log = pm - 1;
    const uint64_t csize = (pm + 1) / d;
    std::vector<std::vector<Elem>> cosets(d);
    for (uint64_t k = 0; k < d; ++k) {
        cosets[k].reserve(csize);
        for (uint64_t i = 0; i < csize; ++i)
            cosets[k].push_back(exp((k + d * i) % (pm + 1) * xi_log % (q_ - 1)));
    }
    return cosets;
}

std::vector<Elem> FieldCtx::coset_reps() const {
    const uint64_t pm = pow_u64(uint64_t(p()), unsigned(m()));
    std::vector<Elem> out;
    out.reserve(pm + 1);
    for (uint64_t i = 0; i <= pm; ++i) out.push_back(exp(i));
    return out;
}

Elem FieldCtx::tr_zero_rep(Elem lambda) const {
    if (lambda.v == 0) throw std::invalid_argument("lambda must be nonzero");
    const int mm = m();
    Elem found = zero();
    int count = 0;
    for (Elem u : coset_reps()) {
        Elem z = mul(lambda, u);
        if (add(z, frobenius(z, mm)).v == 0) {
            found = u;
            ++count;
        }
    }
    if (count != 1)
        throw internal_error("expected exactly one trace-zero representative, found " +
                             std::to_string(count));
    return found;
}

std::pair<Elem, uint64_t> FieldCtx::dillon_decompose(Elem a) const {
    if (a.v == 0) throw std::invalid_argument("cannot decompose zero");
    const int mm = m();
    const uint64_t pm = pow_u64(uint64_t(p()), unsigned(mm));
    Elem inv_xi = inv(xi());
    Elem y = a;
    for (uint64_t k = 0; k <= pm; ++k) {
        if (in_subfield(y, mm)) return {y, k};
        y = mul(y, inv_xi);
    }
    throw std::invalid_argument("element has no abar * xi^k representation (non-square, odd p)");
}

bool FieldCtx::is_square(Elem a) const {
    if (p() == 2) throw std::invalid_argument("square classes are defined for odd p only");
    if (a.v == 0) throw std::invalid_argument("zero has no square class");
    return log_[a.v] % 2 == 0;
}

std::shared_ptr<const FieldCtx> make_field(int64_t p, int n, int skip) {
    return std::make_shared<const FieldCtx>(FieldCtx::build(p, n, skip));
}

} // namespace bentforge
