#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bentforge/dillon.hpp"
#include "bentforge/gf.hpp"

namespace bentforge {

// One free coefficient of a parameter grid. Values are enumerated by
// ascending discrete log in the ambient field, with -1 denoting zero.
struct SlotRange {
    enum class Mode { All, Nonzero, Fixed };
    std::string name;
    int degree = 0; // subfield degree; 0 means the full field
    Mode mode = Mode::Nonzero;
    int64_t fixed_log = -1;
    bool distinct_from_first = false;
};

struct SearchJob {
    FieldSpec field;
    std::string family; // b1 | b2 | p1 | p2
    uint64_t d = 1;
    int64_t l = 1;
    uint64_t r = 1;
    int64_t s = 1;
    // p1 with an "abar" slot: a = abar * xi^xi_power
    int64_t xi_power = 1;
    // p1 only: evaluate the a-term with this raw field exponent instead of
    // l*(p^m-1). Ground truth only; criteria are skipped.
    std::optional<uint64_t> exponent_override;
    std::vector<SlotRange> slots;
    bool dedupe = false;
    uint64_t grid_cap = 10'000'000;
};

struct SearchRecord {
    uint64_t index = 0;
    std::vector<int64_t> params; // discrete logs, aligned with job.slots
    bool bent = false;
    bool regular = false;
    std::vector<std::pair<std::string, Verdict>> criteria;
    bool agreement = true;
    std::vector<std::pair<std::string, CycInt>> side;
    std::string func_key; // normalized function identity
};

struct SearchSummary {
    uint64_t total = 0;
    uint64_t bent = 0;
    uint64_t regular = 0;
    uint64_t disagreements = 0;
    double wall_ms = 0.0;
};

// Deterministic enumeration of the job grid; records carry ground truth and
// every applicable criterion verdict. Grids larger than job.grid_cap are
// rejected up front.
std::vector<SearchRecord> run_search(const SearchJob& job, int threads = 1);

SearchSummary summarize(std::span<const SearchRecord> records, double wall_ms = 0.0);

// CSV data section; byte-identical across runs of the same job.
std::string records_to_csv(const SearchJob& job, std::span<const SearchRecord> records);
nlohmann::json to_json(const SearchJob& job);
SearchJob job_from_json(const nlohmann::json& j);
nlohmann::json records_to_json(const SearchJob& job, std::span<const SearchRecord> records,
                               const SearchSummary& summary);
std::vector<SearchRecord> records_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SearchSummary& s);

// format is "csv" (writes path plus path + ".summary") or "json".
void persist(const SearchJob& job, std::span<const SearchRecord> records,
             const SearchSummary& summary, const std::string& format, const std::string& path);

// Bent parameter points counted as unordered {first, second} slot pairs
// (the reference count for the first built-in search is at pair level).
uint64_t unordered_bent_pairs(std::span<const SearchRecord> records);
// True when the bent set is invariant under swapping the first two slots.
bool bent_swap_closed(std::span<const SearchRecord> records);

// Built-in reference searches with known exact bent counts.
SearchJob golden_job(int which); // 1..4
uint64_t golden_expected(int which);

} // namespace bentforge
