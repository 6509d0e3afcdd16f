#ifndef FFPROJ_SWEEP_HPP
#define FFPROJ_SWEEP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ffproj/constructions.hpp"
#include "ffproj/verify.hpp"

namespace ffproj {

// A sweep grid: records are emitted in config order
// (n:k pair, then a, then s entry, then p, then seed).
struct SweepConfig {
    std::vector<std::uint64_t> primes;
    std::vector<std::pair<std::size_t, std::size_t>> nk_pairs;
    std::vector<double> a_values;
    std::vector<double> s_values;      // absolute s values, or
    std::vector<double> s_rel_values;  // multipliers of (a+2k-n)/2
    std::vector<std::uint64_t> seeds{0};
    ConstructionKind construction = ConstructionKind::random_kind;
    unsigned threads = 1;
    bool override_guard = false;

    // Line-oriented key=value; '#' comments; section headers in [brackets]
    // are accepted and ignored. Keys: p, nk, a, s, s_rel, seeds,
    // construction, threads.
    static SweepConfig parse(std::istream& in);
};

struct SlopeEstimate {
    std::size_t n = 0, k = 0;
    double a = 0;
    double s_entry = 0;  // the configured s or s_rel value
    double slope = 0;    // fit of ln(max-over-seeds #E / ln p) against ln p
    double t_bound = 0;  // t(a,s) at the largest p in the fit
};

struct SweepSummary {
    double max_falconer_ratio = 0;
    double max_falconer_remark_ratio = 0;
    std::vector<SlopeEstimate> slopes;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    SweepSummary summary;
};

SweepResult run_sweep(const SweepConfig& config);

// Versioned CSV with a fixed column order; doubles printed with %.17g so the
// stream round-trips exactly.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& in);
std::string csv_string(const std::vector<SweepRecord>& records);

void write_json(std::ostream& out, const SweepResult& result);
void write_summary(std::ostream& out, const SweepSummary& summary);

}  // namespace ffproj

#endif
