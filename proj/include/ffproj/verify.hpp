#ifndef FFPROJ_VERIFY_HPP
#define FFPROJ_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ffproj/exponents.hpp"
#include "ffproj/projlab.hpp"

namespace ffproj {

// One row of an experiment table.
struct SweepRecord {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    double a = 0;
    double s = 0;
    std::size_t cardinality = 0;
    std::size_t e_count = 0;
    std::size_t overlap_m = 0;
    double main_ratio = 0;            // #E / (ln p * p^t)
    double falconer_ratio = 0;        // #E / (M * p^(n-k+s-a))
    double falconer_remark_ratio = 0; // #E / p^(k(n-k)+s-a)
    bool in_range = false;            // s < (a+2k-n)/2 and 0 < s < min{k,a}
    std::string construction;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct FalconerCheck {
    std::size_t e_count = 0;
    std::size_t overlap_m = 0;
    double rhs_m_form = 0;
    double ratio_m_form = 0;
    double rhs_remark = 0;
    double ratio_remark = 0;
};

struct SliceBoundRow {
    std::size_t slice_index = 0;
    std::size_t slice_cardinality = 0;
    std::size_t lhs = 0;   // sum over Theta of #pi_V(A_i)
    double rhs = 0;        // #Theta * min{p^(k-1), #A_i p^(-(n-k)(k-1)) #Theta}
    double ratio = 0;      // lhs / rhs
};

struct HyperLemmaReport {
    std::size_t theta_size = 0;
    std::optional<PointIndex> xi0;
    std::size_t overlap_m = 0;
    double lemma_m_rhs = 0;    // log p * p^((n-k)(k-1)+s-a)
    double lemma_m_ratio = 0;  // M / rhs
    std::optional<Subspace> h0;
    std::vector<SliceBoundRow> slices;
    std::optional<unsigned> best_beta;
    std::vector<std::size_t> best_class_indices;
};

SweepRecord verify_theorem(const PointSet& a, std::size_t k, double s,
                           const std::string& construction = "explicit",
                           std::uint64_t seed = 0, unsigned threads = 1,
                           bool override_guard = false);

FalconerCheck verify_falconer(const PointSet& a, std::size_t k, double s,
                              unsigned threads = 1, bool override_guard = false);

HyperLemmaReport verify_hyper_lemmas(const PointSet& a, std::size_t k, double s,
                                     unsigned threads = 1,
                                     bool override_guard = false);

}  // namespace ffproj

#endif
