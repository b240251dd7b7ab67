#include "bentforge/search.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "bentforge/serial.hpp"

namespace bentforge {

namespace {

std::vector<int64_t> slot_values(const FieldCtx& ctx, const SlotRange& s) {
    if (s.mode == SlotRange::Mode::Fixed) return {s.fixed_log};
    const int deg = s.degree == 0 ? ctx.n() : s.degree;
    if (deg < 1 || ctx.n() % deg != 0)
        throw std::invalid_argument("slot degree is not a subfield degree");
    const uint64_t sub_units = pow_u64(uint64_t(ctx.p()), unsigned(deg)) - 1;
    const uint64_t stride = ctx.units() / sub_units;
    std::vector<int64_t> out;
    out.reserve(sub_units + 1);
    if (s.mode == SlotRange::Mode::All) out.push_back(-1);
    for (uint64_t j = 0; j < sub_units; ++j) out.push_back(int64_t(j * stride));
    return out;
}

Elem elem_of(const FieldCtx& ctx, int64_t log) {
    return log < 0 ? ctx.zero() : ctx.exp(uint64_t(log));
}

bool truth_flag(const FieldCtx& ctx, const BentResult& truth) {
    return ctx.p() == 2 ? truth.bent : truth.regular;
}

void apply_criterion(SearchRecord& rec, bool truth, const std::string& name,
                     const CriterionReport& rep) {
    rec.criteria.emplace_back(name, rep.verdict);
    if (rep.verdict != Verdict::Inapplicable)
        rec.agreement = rec.agreement && (rep.verdict == Verdict::True) == truth;
}

// a0 in F_{2^m}*, a1 = ... = a_{d-1} in F_{2^m}, a0 != a1
bool b1_side_pattern(const FieldCtx& ctx, const FamilyB1& fam, Elem& a0, Elem& a1) {
    if (fam.d < 2) return false;
    a0 = fam.a[0];
    a1 = fam.a[1];
    if (a0.v == 0 || !ctx.in_subfield(a0, ctx.m())) return false;
    if (!ctx.in_subfield(a1, ctx.m()) || a0 == a1) return false;
    for (uint64_t i = 2; i < fam.d; ++i)
        if (!(fam.a[i] == a1)) return false;
    return true;
}

SearchRecord compute_record(const SearchJob& job, std::shared_ptr<const FieldCtx> ctx,
                            const WalshPlan& plan, uint64_t index,
                            const std::vector<int64_t>& logs) {
    const FieldCtx& c = *ctx;
    SearchRecord rec;
    rec.index = index;
    rec.params = logs;

    if (job.family == "b1") {
        Elem a0 = elem_of(c, logs[0]), a1 = elem_of(c, logs[1]), b = elem_of(c, logs[2]);
        std::vector<Elem> coeffs(job.d, a1);
        coeffs[0] = a0;
        FamilyB1 fam = family_b1(ctx, job.d, job.l, std::move(coeffs), b);
        DillonFunction f = to_dillon(fam);
        rec.func_key = f.key();
        BentResult truth = is_bent(f, plan);
        rec.bent = truth.bent;
        rec.regular = truth.regular;
        const bool flag = truth_flag(c, truth);
        apply_criterion(rec, flag, "general", criterion_general(f));
        apply_criterion(rec, flag, "b1_general", criterion_b1_general(fam));
        apply_criterion(rec, flag, "b1_klm", criterion_b1_klm(fam));
        apply_criterion(rec, flag, "b1_b_nonzero", criterion_b1_b_nonzero(fam));
        Elem pa0, pa1;
        if (b1_side_pattern(c, fam, pa0, pa1)) {
            rec.side.emplace_back("K_a0", kloosterman(c, pa0, c.m()));
            rec.side.emplace_back("K_a0a1", kloosterman(c, c.add(pa0, pa1), c.m()));
        }
        return rec;
    }

    if (job.family == "b2") {
        Elem a = elem_of(c, logs[0]);
        FamilyB2 fam = family_b2(ctx, job.r, job.s, a);
        DillonFunction f = to_dillon(fam);
        rec.func_key = f.key();
        BentResult truth = is_bent(f, plan);
        rec.bent = truth.bent;
        rec.regular = truth.regular;
        const bool flag = truth_flag(c, truth);
        apply_criterion(rec, flag, "general", criterion_general(f));
        apply_criterion(rec, flag, "b2", criterion_b2(fam));
        auto [abar, k] = c.dillon_decompose(a);
        (void)k;
        rec.side.emplace_back("K_abar", kloosterman(c, abar, c.m()));
        if (job.r == 3) {
            const uint64_t pm1 = pow_u64(uint64_t(c.p()), unsigned(c.m())) + 1;
            for (uint64_t j = 0; j < 3; ++j) {
                Elem arg = c.mul(a, c.pow(c.xi(), int64_t(j * (pm1 / 3))));
                rec.side.emplace_back("t" + std::to_string(j),
                                      CycInt::integer(c.p(), c.tr1(arg)));
            }
        }
        return rec;
    }

    if (job.family == "p1") {
        Elem b = elem_of(c, logs[1]);
        Elem a;
        if (job.slots[0].name == "abar")
            a = c.mul(elem_of(c, logs[0]), c.pow(c.xi(), job.xi_power));
        else
            a = elem_of(c, logs[0]);

        if (job.exponent_override) {
            // raw-exponent variant: ground truth only
            std::vector<TraceTerm> terms{{*job.exponent_override, a, c.n()},
                                         {c.units() / 4, b, 2}};
            std::ostringstream key;
            key << "raw;e=" << *job.exponent_override << ";a=" << a.v << ";b=" << b.v;
            rec.func_key = key.str();
            WalshSpectrum sp = plan.spectrum(eval_trace_terms(c, terms));
            rec.bent = sp.is_bent;
            rec.regular = sp.is_regular;
            return rec;
        }

        FamilyP1 fam = family_p1(ctx, job.l, a, b);
        DillonFunction f = to_dillon(fam);
        rec.func_key = f.key();
        BentResult truth = is_bent(f, plan);
        rec.bent = truth.bent;
        rec.regular = truth.regular;
        const bool flag = truth_flag(c, truth);
        apply_criterion(rec, flag, "general", criterion_general(f));
        apply_criterion(rec, flag, "p1_general", criterion_p1_general(fam));
        apply_criterion(rec, flag, "p1_klm", criterion_p1_klm(fam));
        try {
            auto [abar, k] = c.dillon_decompose(a);
            (void)k;
            rec.side.emplace_back("K_abar_sq", kloosterman(c, c.mul(abar, abar), c.m()));
        } catch (const std::invalid_argument&) {
        }
        return rec;
    }

    if (job.family == "p2") {
        Elem a = elem_of(c, logs[0]);
        Elem b = elem_of(c, logs[1]);
        FamilyP2 fam = family_p2(ctx, job.r, job.s, a, c.as_prime(b));
        DillonFunction f = to_dillon(fam);
        rec.func_key = f.key();
        BentResult truth = is_bent(f, plan);
        rec.bent = truth.bent;
        rec.regular = truth.regular;
        const bool flag = truth_flag(c, truth);
        apply_criterion(rec, flag, "general", criterion_general(f));
        apply_criterion(rec, flag, "p2", criterion_p2(fam));
        const uint64_t pm1 = pow_u64(uint64_t(c.p()), unsigned(c.m())) + 1;
        rec.side.emplace_back("K_norm", kloosterman(c, c.pow(a, int64_t(pm1)), c.m()));
        return rec;
    }

    throw std::invalid_argument("unknown family: " + job.family);
}

std::string cycint_csv(const CycInt& z) {
    const auto& cs = z.coeffs();
    bool plain = std::all_of(cs.begin() + 1, cs.end(), [](int64_t c) { return c == 0; });
    if (plain) return std::to_string(cs[0]);
    std::string out;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(cs[i]);
    }
    return out;
}

std::vector<std::string> criteria_names(const SearchJob& job) {
    if (job.exponent_override) return {};
    if (job.family == "b1") return {"general", "b1_general", "b1_klm", "b1_b_nonzero"};
    if (job.family == "b2") return {"general", "b2"};
    if (job.family == "p1") return {"general", "p1_general", "p1_klm"};
    if (job.family == "p2") return {"general", "p2"};
    throw std::invalid_argument("unknown family: " + job.family);
}

std::vector<std::string> side_names(const SearchJob& job) {
    if (job.exponent_override) return {};
    if (job.family == "b1") return {"K_a0", "K_a0a1"};
    if (job.family == "b2") {
        std::vector<std::string> out{"K_abar"};
        if (job.r == 3) {
            out.push_back("t0");
            out.push_back("t1");
            out.push_back("t2");
        }
        return out;
    }
    if (job.family == "p1") return {"K_abar_sq"};
    if (job.family == "p2") return {"K_norm"};
    throw std::invalid_argument("unknown family: " + job.family);
}

} // namespace

std::vector<SearchRecord> run_search(const SearchJob& job, int threads) {
    auto ctx = std::make_shared<const FieldCtx>(FieldCtx::from_spec(job.field));
    if (job.slots.empty()) throw std::invalid_argument("job has no slots");

    std::vector<std::vector<int64_t>> values;
    uint64_t grid = 1;
    for (const auto& s : job.slots) {
        values.push_back(slot_values(*ctx, s));
        grid *= values.back().size();
    }
    if (grid > job.grid_cap)
        throw std::invalid_argument("grid size " + std::to_string(grid) +
                                    " exceeds cap " + std::to_string(job.grid_cap));

    // kept grid positions in lexicographic order, decoded per record
    auto decode = [&](uint64_t flat) {
        std::vector<int64_t> logs(job.slots.size());
        for (size_t s = job.slots.size(); s-- > 0;) {
            logs[s] = values[s][flat % values[s].size()];
            flat /= values[s].size();
        }
        return logs;
    };
    std::vector<uint64_t> kept;
    kept.reserve(grid);
    for (uint64_t flat = 0; flat < grid; ++flat) {
        auto logs = decode(flat);
        bool keep = true;
        for (size_t s = 1; s < job.slots.size(); ++s)
            if (job.slots[s].distinct_from_first && logs[s] == logs[0]) keep = false;
        if (keep) kept.push_back(flat);
    }

    WalshPlan plan(ctx);
    std::vector<SearchRecord> records(kept.size());
    const int t_count = std::max(1, threads);
    if (t_count == 1) {
        for (size_t i = 0; i < kept.size(); ++i)
            records[i] = compute_record(job, ctx, plan, i, decode(kept[i]));
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr first_error;
        std::mutex err_mu;
        for (int w = 0; w < t_count; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = size_t(w); i < kept.size(); i += size_t(t_count))
                        records[i] = compute_record(job, ctx, plan, i, decode(kept[i]));
                } catch (...) {
                    std::scoped_lock lk(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    if (job.dedupe) {
        std::unordered_set<std::string> seen;
        std::vector<SearchRecord> kept;
        kept.reserve(records.size());
        for (auto& rec : records)
            if (seen.insert(rec.func_key).second) kept.push_back(std::move(rec));
        return kept;
    }
    return records;
}

SearchSummary summarize(std::span<const SearchRecord> records, double wall_ms) {
    SearchSummary s;
    s.total = records.size();
    s.wall_ms = wall_ms;
    for (const auto& r : records) {
        s.bent += r.bent;
        s.regular += r.regular;
        s.disagreements += !r.agreement;
    }
    if (s.regular > s.bent) throw internal_error("regular count exceeded bent count");
    return s;
}

std::string records_to_csv(const SearchJob& job, std::span<const SearchRecord> records) {
    const auto crits = criteria_names(job);
    const auto sides = side_names(job);
    std::ostringstream os;
    os << "family";
    for (const auto& s : job.slots) os << ',' << s.name;
    os << ",bent,regular";
    for (const auto& c : crits) os << ',' << c;
    os << ",agreement";
    for (const auto& s : sides) os << ',' << s;
    os << '\n';
    for (const auto& rec : records) {
        os << job.family;
        for (int64_t v : rec.params) os << ',' << v;
        os << ',' << (rec.bent ? "true" : "false") << ',' << (rec.regular ? "true" : "false");
        for (const auto& name : crits) {
            auto it = std::find_if(rec.criteria.begin(), rec.criteria.end(),
                                   [&](const auto& kv) { return kv.first == name; });
            os << ',' << (it == rec.criteria.end() ? "na"
                          : it->second == Verdict::True ? "true"
                          : it->second == Verdict::False ? "false"
                                                          : "na");
        }
        os << ',' << (rec.agreement ? "true" : "false");
        for (const auto& name : sides) {
            auto it = std::find_if(rec.side.begin(), rec.side.end(),
                                   [&](const auto& kv) { return kv.first == name; });
            os << ',' << (it == rec.side.end() ? "" : cycint_csv(it->second));
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const SearchJob& job) {
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : job.slots) {
        slots.push_back({{"name", s.name},
                         {"degree", s.degree},
                         {"mode", s.mode == SlotRange::Mode::All      ? "all"
                                  : s.mode == SlotRange::Mode::Nonzero ? "nonzero"
                                                                        : "fixed"},
                         {"fixed_log", s.fixed_log},
                         {"distinct_from_first", s.distinct_from_first}});
    }
    nlohmann::json j{{"field", to_json(job.field)}, {"family", job.family},
                     {"d", job.d},     {"l", job.l},
                     {"r", job.r},     {"s", job.s},
                     {"xi_power", job.xi_power},
                     {"slots", slots}, {"dedupe", job.dedupe},
                     {"grid_cap", job.grid_cap}};
    if (job.exponent_override) j["exponent_override"] = *job.exponent_override;
    return j;
}

SearchJob job_from_json(const nlohmann::json& j) {
    SearchJob job;
    job.field = field_spec_from_json(j.at("field"));
    job.family = j.at("family").get<std::string>();
    job.d = j.at("d").get<uint64_t>();
    job.l = j.at("l").get<int64_t>();
    job.r = j.at("r").get<uint64_t>();
    job.s = j.at("s").get<int64_t>();
    job.xi_power = j.at("xi_power").get<int64_t>();
    if (j.contains("exponent_override"))
        job.exponent_override = j.at("exponent_override").get<uint64_t>();
    for (const auto& js : j.at("slots")) {
        SlotRange s;
        s.name = js.at("name").get<std::string>();
        s.degree = js.at("degree").get<int>();
        const std::string mode = js.at("mode").get<std::string>();
        s.mode = mode == "all"      ? SlotRange::Mode::All
                 : mode == "nonzero" ? SlotRange::Mode::Nonzero
                                     : SlotRange::Mode::Fixed;
        s.fixed_log = js.at("fixed_log").get<int64_t>();
        s.distinct_from_first = js.at("distinct_from_first").get<bool>();
        job.slots.push_back(std::move(s));
    }
    job.dedupe = j.at("dedupe").get<bool>();
    job.grid_cap = j.at("grid_cap").get<uint64_t>();
    return job;
}

nlohmann::json to_json(const SearchSummary& s) {
    return {{"total", s.total},
            {"bent", s.bent},
            {"regular", s.regular},
            {"disagreements", s.disagreements},
            {"wall_ms", s.wall_ms}};
}

nlohmann::json records_to_json(const SearchJob& job, std::span<const SearchRecord> records,
                               const SearchSummary& summary) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json criteria = nlohmann::json::array();
        for (const auto& [name, v] : r.criteria)
            criteria.push_back(nlohmann::json::array({name, to_string(v)}));
        nlohmann::json side = nlohmann::json::array();
        for (const auto& [name, z] : r.side)
            side.push_back(nlohmann::json::array({name, to_json(z)}));
        recs.push_back({{"index", r.index},
                        {"params", r.params},
                        {"bent", r.bent},
                        {"regular", r.regular},
                        {"criteria", criteria},
                        {"agreement", r.agreement},
                        {"side", side},
                        {"func_key", r.func_key}});
    }
    return {{"job", to_json(job)}, {"records", recs}, {"summary", to_json(summary)}};
}

std::vector<SearchRecord> records_from_json(const nlohmann::json& j) {
    std::vector<SearchRecord> out;
    for (const auto& jr : j.at("records")) {
        SearchRecord r;
        r.index = jr.at("index").get<uint64_t>();
        r.params = jr.at("params").get<std::vector<int64_t>>();
        r.bent = jr.at("bent").get<bool>();
        r.regular = jr.at("regular").get<bool>();
        for (const auto& entry : jr.at("criteria")) {
            const std::string vs = entry[1].get<std::string>();
            r.criteria.emplace_back(entry[0].get<std::string>(),
                                    vs == "true"    ? Verdict::True
                                    : vs == "false" ? Verdict::False
                                                    : Verdict::Inapplicable);
        }
        r.agreement = jr.at("agreement").get<bool>();
        for (const auto& entry : jr.at("side"))
            r.side.emplace_back(entry[0].get<std::string>(), cycint_from_json(entry[1]));
        r.func_key = jr.at("func_key").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

void persist(const SearchJob& job, std::span<const SearchRecord> records,
             const SearchSummary& summary, const std::string& format, const std::string& path) {
    if (format == "csv") {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << records_to_csv(job, records);
        if (!f) throw std::runtime_error("write failed: " + path);
        std::ofstream fs(path + ".summary");
        if (!fs) throw std::runtime_error("cannot write " + path + ".summary");
        fs << to_json(summary).dump(2) << '\n';
        return;
    }
    if (format == "json") {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << records_to_json(job, records, summary).dump(2) << '\n';
        if (!f) throw std::runtime_error("write failed: " + path);
        return;
    }
    throw std::invalid_argument("unknown format: " + format);
}

uint64_t unordered_bent_pairs(std::span<const SearchRecord> records) {
    std::set<std::pair<int64_t, int64_t>> pairs;
    for (const auto& r : records) {
        if (!r.bent) continue;
        if (r.params.size() < 2) throw std::invalid_argument("records have fewer than two slots");
        pairs.emplace(std::min(r.params[0], r.params[1]), std::max(r.params[0], r.params[1]));
    }
    return pairs.size();
}

bool bent_swap_closed(std::span<const SearchRecord> records) {
    std::set<std::pair<int64_t, int64_t>> bent;
    for (const auto& r : records)
        if (r.bent) bent.emplace(r.params[0], r.params[1]);
    for (const auto& [x, y] : bent)
        if (!bent.contains({y, x})) return false;
    return true;
}

SearchJob golden_job(int which) {
    SearchJob job;
    switch (which) {
        case 1: {
            job.field = FieldCtx::build(2, 6).spec();
            job.family = "b1";
            job.d = 9;
            job.l = 1;
            job.slots = {{"a0", 3, SlotRange::Mode::Nonzero, -1, false},
                         {"a1", 3, SlotRange::Mode::Nonzero, -1, false},
                         {"b", 6, SlotRange::Mode::Fixed, -1, false}};
            return job;
        }
        case 2: {
            job.field = FieldCtx::build(2, 4).spec();
            job.family = "b1";
            job.d = 5;
            job.l = 5;
            job.slots = {{"a0", 2, SlotRange::Mode::Nonzero, -1, false},
                         {"a1", 2, SlotRange::Mode::Nonzero, -1, true},
                         {"b", 4, SlotRange::Mode::Nonzero, -1, false}};
            return job;
        }
        case 3: {
            job.field = FieldCtx::build(2, 6).spec();
            job.family = "b2";
            job.r = 3;
            job.s = 1;
            job.slots = {{"a", 0, SlotRange::Mode::Nonzero, -1, false}};
            return job;
        }
        case 4: {
            job.field = FieldCtx::build(3, 6).spec();
            job.family = "p1";
            job.l = 4;
            job.xi_power = 1;
            job.slots = {{"abar", 3, SlotRange::Mode::Nonzero, -1, false},
                         {"b", 2, SlotRange::Mode::Nonzero, -1, false}};
            return job;
        }
        default:
            throw std::invalid_argument("golden jobs are numbered 1..4");
    }
}

uint64_t golden_expected(int which) {
    switch (which) {
        case 1: return 9;
        case 2: return 60;
        case 3: return 36;
        case 4: return 48;
        default: throw std::invalid_argument("golden jobs are numbered 1..4");
    }
}

} // namespace bentforge
