#include "bentforge/dillon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bentforge {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "inapplicable";
    }
}

namespace {

// keeps products like j * l inside int64 for every coset index j
constexpr int64_t kMaxShift = int64_t(1) << 40;

int64_t pm_of(const FieldCtx& ctx) {
    return int64_t(pow_u64(uint64_t(ctx.p()), unsigned(ctx.m())));
}

uint64_t norm_mod(int64_t v, uint64_t mod) {
    int64_t r = v % int64_t(mod);
    if (r < 0) r += int64_t(mod);
    return uint64_t(r);
}

std::complex<double> omega_pow(int64_t p, int64_t e) {
    double arg = 2.0 * std::numbers::pi * double(norm_mod(e, uint64_t(p))) / double(p);
    return {std::cos(arg), std::sin(arg)};
}

// integer value of a p = 2 character sum
int64_t as_int(const CycInt& z) { return z.coeffs()[0]; }

CriterionReport not_applicable(std::string why) {
    CriterionReport r;
    r.verdict = Verdict::Inapplicable;
    r.branch = std::move(why);
    return r;
}

} // namespace

std::vector<uint8_t> eval_trace_terms(const FieldCtx& ctx, std::span<const TraceTerm> terms) {
    const int64_t p = ctx.p();
    const uint64_t q = ctx.order();
    std::vector<uint8_t> f(q, 0);
    for (uint64_t t = 0; t < q - 1; ++t) {
        Elem x = ctx.exp(t);
        int64_t e = 0;
        for (const TraceTerm& term : terms) {
            Elem v = ctx.mul(term.coeff, ctx.pow(x, int64_t(term.exponent)));
            e += term.trace_degree == ctx.n() ? ctx.tr1(v)
                                              : ctx.trace_to_prime(v, term.trace_degree);
        }
        f[x.v] = uint8_t(e % p);
    }
    return f; // f(0) = 0 by construction
}

std::vector<uint8_t> DillonFunction::table() const {
    const FieldCtx& c = *ctx;
    const uint64_t pm = uint64_t(pm_of(c));
    const int o = int(o_of_d(c.p(), c.n(), d));
    std::vector<TraceTerm> terms;
    terms.reserve(a.size() + 1);
    for (const auto& [i, ai] : a) {
        if (ai.v == 0) continue;
        terms.push_back({(i % (pm + 1)) * (pm - 1) % c.units(), ai, c.n()});
    }
    if (b.v != 0) terms.push_back({c.units() / d, b, o});
    return eval_trace_terms(c, terms);
}

std::string DillonFunction::key() const {
    const uint64_t pm1 = uint64_t(pm_of(*ctx)) + 1;
    std::map<uint64_t, Elem> norm;
    for (const auto& [i, ai] : a)
        if (ai.v != 0) norm[i % pm1] = ai;
    std::ostringstream os;
    os << "d=" << d << ";b=" << b.v;
    for (const auto& [i, ai] : norm) os << ";" << i << ":" << ai.v;
    return os.str();
}

FamilyB1 family_b1(std::shared_ptr<const FieldCtx> ctx, uint64_t d, int64_t l,
                   std::vector<Elem> a, Elem b) {
    const FieldCtx& c = *ctx;
    if (c.p() != 2) throw std::invalid_argument("family requires p = 2");
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    if (d == 0 || pm1 % d != 0) throw std::invalid_argument("d must divide 2^m + 1");
    if (l < 1 || l > kMaxShift) throw std::invalid_argument("l out of range");
    if (std::gcd(uint64_t(l), pm1 / d) != 1)
        throw std::invalid_argument("gcd(l, (2^m+1)/d) must be 1");
    if (a.size() != d) throw std::invalid_argument("need exactly d coefficients");
    const int o = int(o_of_d(c.p(), c.n(), d));
    if (!c.in_subfield(b, o)) throw std::invalid_argument("b not in F_{2^o(d)}");
    return {std::move(ctx), d, l, std::move(a), b};
}

FamilyB2 family_b2(std::shared_ptr<const FieldCtx> ctx, uint64_t r, int64_t s, Elem a) {
    const FieldCtx& c = *ctx;
    if (c.p() != 2) throw std::invalid_argument("family requires p = 2");
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    if (r == 0 || pm1 % r != 0) throw std::invalid_argument("r must divide 2^m + 1");
    if (s < -kMaxShift || s > kMaxShift) throw std::invalid_argument("s out of range");
    if (a.v == 0) throw std::invalid_argument("a must be nonzero");
    return {std::move(ctx), r, s, a};
}

FamilyP1 family_p1(std::shared_ptr<const FieldCtx> ctx, int64_t l, Elem a, Elem b) {
    const FieldCtx& c = *ctx;
    if (c.p() == 2) throw std::invalid_argument("family requires odd p");
    const int64_t pm = pm_of(c);
    if (pm % 4 != 3) throw std::invalid_argument("family requires p^m = 3 mod 4");
    if (l < 1 || l > kMaxShift) throw std::invalid_argument("l out of range");
    if (std::gcd(uint64_t(l), uint64_t(pm + 1) / 4) != 1)
        throw std::invalid_argument("gcd(l, (p^m+1)/4) must be 1");
    if (a.v == 0) throw std::invalid_argument("a must be nonzero");
    if (b.v == 0 || !c.in_subfield(b, 2)) throw std::invalid_argument("b must be in F_{p^2}*");
    return {std::move(ctx), l, a, b};
}

FamilyP2 family_p2(std::shared_ptr<const FieldCtx> ctx, uint64_t r, int64_t s, Elem a, int64_t b) {
    const FieldCtx& c = *ctx;
    if (c.p() == 2) throw std::invalid_argument("family requires odd p");
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    if (r == 0 || pm1 % r != 0) throw std::invalid_argument("r must divide p^m + 1");
    if (s < -kMaxShift || s > kMaxShift) throw std::invalid_argument("s out of range");
    if (std::gcd(norm_mod(s, pm1), pm1) != 1)
        throw std::invalid_argument("gcd(s, p^m+1) must be 1");
    if (a.v == 0) throw std::invalid_argument("a must be nonzero");
    if (b < 0 || b >= c.p()) throw std::invalid_argument("b must be an F_p value");
    return {std::move(ctx), r, s, a, b};
}

DillonFunction to_dillon(const FamilyB1& f) {
    family_b1(f.ctx, f.d, f.l, f.a, f.b); // revalidate
    const uint64_t pm1 = uint64_t(pm_of(*f.ctx)) + 1;
    DillonFunction out{f.ctx, {}, f.b, f.d};
    for (uint64_t i = 0; i < f.d; ++i) {
        if (f.a[i].v == 0) continue;
        uint64_t idx = (uint64_t(f.l) + i * (pm1 / f.d)) % pm1;
        auto [it, fresh] = out.a.emplace(idx, f.a[i]);
        if (!fresh) it->second = f.ctx->add(it->second, f.a[i]);
    }
    return out;
}

DillonFunction to_dillon(const FamilyB2& f) {
    family_b2(f.ctx, f.r, f.s, f.a);
    const uint64_t pm1 = uint64_t(pm_of(*f.ctx)) + 1;
    DillonFunction out{f.ctx, {}, f.ctx->zero(), 1};
    for (uint64_t i = 1; i < pm1 / f.r; ++i) {
        uint64_t idx = norm_mod(int64_t(f.r * i) + f.s, pm1);
        auto [it, fresh] = out.a.emplace(idx, f.a);
        if (!fresh) it->second = f.ctx->add(it->second, f.a);
    }
    return out;
}

DillonFunction to_dillon(const FamilyP1& f) {
    family_p1(f.ctx, f.l, f.a, f.b);
    const uint64_t pm1 = uint64_t(pm_of(*f.ctx)) + 1;
    DillonFunction out{f.ctx, {}, f.b, 4};
    out.a.emplace(uint64_t(f.l) % pm1, f.a);
    return out;
}

DillonFunction to_dillon(const FamilyP2& f) {
    family_p2(f.ctx, f.r, f.s, f.a, f.b);
    const uint64_t pm1 = uint64_t(pm_of(*f.ctx)) + 1;
    DillonFunction out{f.ctx, {}, f.ctx->from_prime(f.b), 2};
    for (uint64_t i = 1; i < pm1 / f.r; ++i) {
        uint64_t idx = norm_mod(int64_t(f.r * i) + f.s, pm1);
        auto [it, fresh] = out.a.emplace(idx, f.a);
        if (!fresh) it->second = f.ctx->add(it->second, f.a);
    }
    return out;
}

BentResult is_bent(const DillonFunction& f) {
    WalshPlan plan(f.ctx);
    return is_bent(f, plan);
}

BentResult is_bent(const DillonFunction& f, const WalshPlan& plan) {
    BentResult r;
    r.spectrum = plan.spectrum(f.table());
    r.bent = r.spectrum.is_bent;
    r.regular = r.spectrum.is_regular;
    return r;
}

CriterionReport criterion_general(const DillonFunction& f) {
    CriterionReport r;
    CycInt s = dillon_sum(*f.ctx, f.a, f.b, f.d);
    r.verdict = s.is_integer(1) ? Verdict::True : Verdict::False;
    r.branch = "circle-sum";
    r.exact = true;
    r.lhs_exact = s;
    r.rhs_exact = CycInt::integer(f.ctx->p(), 1);
    return r;
}

CriterionReport criterion_b1_general(const FamilyB1& f) {
    const FieldCtx& c = *f.ctx;
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    const int o = int(o_of_d(c.p(), c.n(), f.d));
    const Elem xi = c.xi();

    int64_t total = 0;
    for (uint64_t j = 0; j < f.d; ++j) {
        Elem cj = c.zero();
        for (uint64_t i = 0; i < f.d; ++i) {
            Elem rot = c.pow(xi, int64_t(j * (i * (pm1 / f.d) % pm1) % pm1));
            cj = c.add(cj, c.mul(f.a[i], rot));
        }
        cj = c.mul(cj, c.pow(xi, int64_t(j) * f.l));
        int64_t inner = as_int(partial_sum(c, cj, 0, f.d));
        int64_t outer = 1;
        if (f.b.v != 0) {
            Elem arg = c.mul(f.b, c.pow(xi, int64_t(j * (pm1 / f.d))));
            outer = c.trace_to_prime(arg, o) ? -1 : 1;
        }
        total += outer * inner;
    }

    CriterionReport r;
    r.verdict = total == 1 ? Verdict::True : Verdict::False;
    r.branch = "coset-expansion";
    r.lhs_exact = CycInt::integer(2, total);
    r.rhs_exact = CycInt::integer(2, 1);
    return r;
}

namespace {

// Coefficient pattern a_0 in F_{2^m}*, a_1 = ... = a_{d-1} in F_{2^m},
// a_0 != a_1, shared by the two Kloosterman-form tests.
bool b1_pattern(const FamilyB1& f, Elem& a0, Elem& a1) {
    const FieldCtx& c = *f.ctx;
    if (f.d < 2) return false;
    a0 = f.a[0];
    a1 = f.a[1];
    if (a0.v == 0 || !c.in_subfield(a0, c.m())) return false;
    if (!c.in_subfield(a1, c.m()) || a0 == a1) return false;
    for (uint64_t i = 2; i < f.d; ++i)
        if (!(f.a[i] == a1)) return false;
    return true;
}

} // namespace

CriterionReport criterion_b1_klm(const FamilyB1& f) {
    const FieldCtx& c = *f.ctx;
    Elem a0, a1;
    if (f.b.v != 0) return not_applicable("requires b = 0");
    if (!b1_pattern(f, a0, a1)) return not_applicable("coefficient pattern not matched");
    const int m = c.m();
    const int64_t d = int64_t(f.d);

    const int64_t K0 = as_int(kloosterman(c, a0, m));
    const int64_t K1 = as_int(kloosterman(c, c.add(a0, a1), m));
    const int64_t E0 = as_int(e_md(c, a0, f.d, m));
    const int64_t E1 = as_int(e_md(c, c.add(a0, a1), f.d, m));

    CriterionReport r;
    int64_t lhs = K0 + (d - 1) * K1;
    int64_t rhs;
    if (f.l % d == 0) {
        r.branch = "d|l";
        rhs = 2 * (E0 + (d - 1) * E1);
    } else if (std::gcd(uint64_t(f.l), f.d) == 1) {
        r.branch = "gcd(d,l)=1";
        rhs = 2 * (E0 - E1);
    } else {
        return not_applicable("gcd(d,l) strictly between 1 and d");
    }
    r.verdict = lhs == rhs ? Verdict::True : Verdict::False;
    r.lhs_exact = CycInt::integer(2, lhs);
    r.rhs_exact = CycInt::integer(2, rhs);
    return r;
}

CriterionReport criterion_b1_b_nonzero(const FamilyB1& f) {
    const FieldCtx& c = *f.ctx;
    Elem a0, a1;
    if (f.b.v == 0) return not_applicable("requires b != 0");
    if (f.d < 2 || f.l % int64_t(f.d) != 0) return not_applicable("requires d | l");
    if (!b1_pattern(f, a0, a1)) return not_applicable("coefficient pattern not matched");
    const int m = c.m();
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    const int o = int(o_of_d(c.p(), c.n(), f.d));
    const int64_t d = int64_t(f.d);

    const int64_t rho = c.trace_to_prime(f.b, o) ? -1 : 1;
    int64_t sigma = 0;
    for (uint64_t j = 1; j < f.d; ++j) {
        Elem arg = c.mul(f.b, c.pow(c.xi(), int64_t(j * (pm1 / f.d))));
        sigma += c.trace_to_prime(arg, o) ? -1 : 1;
    }

    const int64_t K0 = as_int(kloosterman(c, a0, m));
    const int64_t K1 = as_int(kloosterman(c, c.add(a0, a1), m));
    const int64_t E0 = as_int(e_md(c, a0, f.d, m));
    const int64_t E1 = as_int(e_md(c, c.add(a0, a1), f.d, m));

    int64_t lhs = rho * K0 + sigma * K1;
    int64_t rhs = 2 * (rho * E0 + sigma * E1) + rho + sigma - d;

    CriterionReport r;
    r.branch = "b!=0, d|l";
    r.verdict = lhs == rhs ? Verdict::True : Verdict::False;
    r.lhs_exact = CycInt::integer(2, lhs);
    r.rhs_exact = CycInt::integer(2, rhs);
    return r;
}

CriterionReport criterion_b2(const FamilyB2& f) {
    const FieldCtx& c = *f.ctx;
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    const uint64_t g = std::gcd(norm_mod(f.s, pm1), pm1);
    const Elem xi = c.xi();

    auto [abar, k] = c.dillon_decompose(f.a);

    CriterionReport r;
    if (g == 1) {
        int64_t sum = 0;
        for (uint64_t j = 0; j < f.r; ++j)
            sum += c.tr1(c.mul(f.a, c.pow(xi, int64_t(j * (pm1 / f.r))))) ? -1 : 1;
        int64_t lhs = as_int(kloosterman(c, abar, c.m()));
        int64_t rhs = int64_t(f.r) - sum;
        r.branch = "gcd(s,2^m+1)=1";
        r.verdict = lhs == rhs ? Verdict::True : Verdict::False;
        r.lhs_exact = CycInt::integer(2, lhs);
        r.rhs_exact = CycInt::integer(2, rhs);
        return r;
    }
    if (k % g != 0) return not_applicable("a is not abar * xi^(kd) with d | k");
    int64_t sum = 0;
    for (uint64_t j = 0; j < f.r; ++j) {
        Elem x = c.pow(xi, int64_t(j * (pm1 / f.r)));
        sum += c.tr1(c.mul(f.a, c.pow(x, f.s))) ? -1 : 1;
    }
    int64_t lhs = int64_t(g) * as_int(partial_sum(c, abar, 0, g));
    int64_t rhs = sum + 1 - int64_t(f.r);
    r.branch = "gcd(s,2^m+1)=d";
    r.verdict = lhs == rhs ? Verdict::True : Verdict::False;
    r.lhs_exact = CycInt::integer(2, lhs);
    r.rhs_exact = CycInt::integer(2, rhs);
    return r;
}

CriterionReport criterion_p1_general(const FamilyP1& f) {
    const FieldCtx& c = *f.ctx;
    const int64_t p = c.p();
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    const Elem xi = c.xi();

    CycInt total(p);
    for (uint64_t j = 0; j < 4; ++j) {
        int64_t tj = c.trace_to_prime(c.mul(f.b, c.pow(xi, int64_t(j * (pm1 / 4)))), 2);
        Elem shifted = c.mul(f.a, c.pow(xi, int64_t(j) * f.l));
        total += CycInt::root_power(p, tj) * partial_sum(c, shifted, 0, 4);
    }

    CriterionReport r;
    r.verdict = total.is_integer(1) ? Verdict::True : Verdict::False;
    r.branch = "coset-expansion";
    r.lhs_exact = total;
    r.rhs_exact = CycInt::integer(p, 1);
    return r;
}

CriterionReport criterion_p1_klm(const FamilyP1& f, double tol) {
    const FieldCtx& c = *f.ctx;
    const int64_t p = c.p();
    const int m = c.m();
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;

    if (f.l % 4 != 0) return not_applicable("requires 4 | l");
    Elem abar;
    uint64_t k;
    try {
        std::tie(abar, k) = c.dillon_decompose(f.a);
    } catch (const std::invalid_argument&) {
        return not_applicable("a has no abar * xi^k representation");
    }
    if (!c.in_subfield(abar, m) || abar.v == 0) return not_applicable("abar not in F_{p^m}*");
    if (k % 2 == 0) return not_applicable("requires k = 1 or 3 mod 4");

    const double K = kloosterman(c, c.mul(abar, abar), m).to_complex().real();
    const int64_t q = q_exponent(c, abar);
    const std::complex<double> I = closed_form_i(p, m);
    const double sinq = std::sin(2.0 * std::numbers::pi * double(q) / double(p));

    const int64_t t0 = c.trace_to_prime(f.b, 2);
    const int64_t t1 = c.trace_to_prime(c.mul(f.b, c.pow(c.xi(), int64_t(pm1 / 4))), 2);
    const double cos_sum = std::cos(2.0 * std::numbers::pi * double(t0) / double(p)) +
                           std::cos(2.0 * std::numbers::pi * double(t1) / double(p));
    if (std::abs(cos_sum) < 1e-12) return not_applicable("vanishing cosine denominator");

    const std::complex<double> i_unit{0.0, 1.0};
    const std::complex<double> rhs = 1.0 - 4.0 * I * i_unit * sinq - 2.0 / cos_sum;

    CriterionReport r;
    r.branch = "kloosterman-form";
    r.exact = false;
    r.tol = tol;
    r.lhs_num = K;
    r.rhs_num = rhs;
    r.verdict = std::abs(K - rhs) <= tol ? Verdict::True : Verdict::False;

    // pre-division form: sum_j w^(t_j) * (1 - K - 4 I sqrt(-1) sin) = 4
    std::complex<double> char_sum = 0.0;
    for (uint64_t j = 0; j < 4; ++j) {
        int64_t tj = c.trace_to_prime(c.mul(f.b, c.pow(c.xi(), int64_t(j * (pm1 / 4)))), 2);
        char_sum += omega_pow(p, tj);
    }
    std::complex<double> lhs4 = char_sum * (1.0 - K - 4.0 * I * i_unit * sinq);
    bool equal4 = std::abs(lhs4 - 4.0) <= tol * (1.0 + std::abs(lhs4));
    r.crosscheck_ok = equal4 == (r.verdict == Verdict::True);
    return r;
}

CriterionReport criterion_p2(const FamilyP2& f, double tol) {
    const FieldCtx& c = *f.ctx;
    const int64_t p = c.p();
    const int m = c.m();
    const uint64_t pm1 = uint64_t(pm_of(c)) + 1;
    const Elem xi = c.xi();

    const int64_t half_coeff = int64_t((pm1 / f.r - 1) % uint64_t(p));
    CycInt eps = CycInt::integer(p, 1);
    for (uint64_t j = 0; j < f.r; ++j) {
        Elem x = c.pow(xi, int64_t(j * (pm1 / f.r)));
        Elem xs = c.pow(x, f.s);
        int64_t sgn = c.as_prime(c.pow(x, int64_t(pm1 / 2))); // 1 or p-1
        int64_t bshift = f.b * sgn % p;
        int64_t e1 = (c.tr1(c.mul(c.neg(f.a), xs)) + bshift) % p;
        int64_t e2 = (half_coeff * c.tr1(c.mul(f.a, xs)) + bshift) % p;
        eps += CycInt::root_power(p, e1);
        eps -= CycInt::root_power(p, e2);
    }

    const double K = kloosterman(c, c.pow(f.a, int64_t(pm1)), m).to_complex().real();
    const double cosb = std::cos(2.0 * std::numbers::pi * double(f.b) / double(p));
    const std::complex<double> lhs = (1.0 - K) * cosb;

    Elem ma = c.neg(f.a);
    bool c0_plus = c.is_square(ma) && q_exponent(c, ma) != 0;
    std::complex<double> rhs = eps.to_complex();
    std::string branch = "-a outside C_0^+";
    if (c0_plus) {
        const std::complex<double> I = closed_form_i(p, m);
        const double sinb = std::sin(2.0 * std::numbers::pi * double(f.b) / double(p));
        const double sinq =
            std::sin(2.0 * std::numbers::pi * double(q_exponent(c, ma)) / double(p));
        rhs += 4.0 * I * sinb * sinq;
        branch = "-a in C_0^+";
    }

    CriterionReport r;
    r.branch = branch;
    r.exact = false;
    r.tol = tol;
    r.lhs_num = lhs;
    r.rhs_num = rhs;
    r.verdict = std::abs(lhs - rhs) <= tol ? Verdict::True : Verdict::False;
    return r;
}

} // namespace bentforge
