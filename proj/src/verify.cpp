#include "ffproj/verify.hpp"

#include <algorithm>
#include <cmath>

namespace ffproj {

namespace {

SweepRecord record_from_report(const PointSet& a, const ExceptionalReport& rep,
                               const std::string& construction, std::uint64_t seed) {
    SweepRecord rec;
    rec.p = a.modulus().value();
    rec.n = a.ambient_dim();
    rec.k = rep.k;
    rec.a = rep.a;
    rec.s = rep.s;
    rec.cardinality = a.cardinality();
    rec.e_count = rep.exceptional.size();
    rec.overlap_m = rep.overlap_m;
    rec.construction = construction;
    rec.seed = seed;

    double p = static_cast<double>(rec.p);
    double t = main_exponent(rec.n, rec.k, rec.a, rec.s);
    rec.main_ratio = static_cast<double>(rec.e_count) / (std::log(p) * std::pow(p, t));
    if (rec.e_count > 0) {
        rec.falconer_ratio = static_cast<double>(rec.e_count) /
                             falconer_rhs(a, rec.k, rec.s, rec.overlap_m);
        double kk = static_cast<double>(rec.k), nn = static_cast<double>(rec.n);
        rec.falconer_remark_ratio =
            static_cast<double>(rec.e_count) /
            std::pow(p, kk * (nn - kk) + rec.s - rec.a);
    }
    double half = (rec.a + 2.0 * static_cast<double>(rec.k) -
                   static_cast<double>(rec.n)) / 2.0;
    rec.in_range = rec.s < half && rec.s > 0 &&
                   rec.s < std::min(static_cast<double>(rec.k), rec.a);
    return rec;
}

}  // namespace

SweepRecord verify_theorem(const PointSet& a, std::size_t k, double s,
                           const std::string& construction, std::uint64_t seed,
                           unsigned threads, bool override_guard) {
    ExceptionalReport rep = exceptional_set(a, k, s, threads, override_guard);
    return record_from_report(a, rep, construction, seed);
}

FalconerCheck verify_falconer(const PointSet& a, std::size_t k, double s,
                              unsigned threads, bool override_guard) {
    ExceptionalReport rep = exceptional_set(a, k, s, threads, override_guard);
    FalconerCheck out;
    out.e_count = rep.exceptional.size();
    out.overlap_m = rep.overlap_m;
    if (out.e_count == 0) return out;

    out.rhs_m_form = falconer_rhs(a, k, s, rep.overlap_m);
    out.ratio_m_form = static_cast<double>(out.e_count) / out.rhs_m_form;
    double p = static_cast<double>(a.modulus().value());
    double kk = static_cast<double>(k), nn = static_cast<double>(a.ambient_dim());
    out.rhs_remark = std::pow(p, kk * (nn - kk) + s - rep.a);
    out.ratio_remark = static_cast<double>(out.e_count) / out.rhs_remark;
    return out;
}

HyperLemmaReport verify_hyper_lemmas(const PointSet& a, std::size_t k, double s,
                                     unsigned threads, bool override_guard) {
    ExceptionalReport rep = exceptional_set(a, k, s, threads, override_guard);
    HyperLemmaReport out;
    out.theta_size = rep.theta.size();
    out.xi0 = rep.xi0;
    out.overlap_m = rep.overlap_m;
    if (rep.theta.empty()) return out;

    const PrimeModulus& p = a.modulus();
    std::size_t n = a.ambient_dim();
    double pd = static_cast<double>(p.value());
    double kk = static_cast<double>(k), nn = static_cast<double>(n);
    out.lemma_m_rhs =
        std::log(pd) * std::pow(pd, (nn - kk) * (kk - 1) + s - rep.a);
    out.lemma_m_ratio = static_cast<double>(rep.overlap_m) / out.lemma_m_rhs;

    // H0 = dual of the line through xi0, sliced into its p parallel translates.
    std::vector<Residue> xi = decode_point(*rep.xi0, p, n);
    FpMatrix line(1, n);
    for (std::size_t c = 0; c < n; ++c) line.at(0, c) = xi[c];
    Subspace h0 = dual(Subspace::from_span(p, n, line));
    out.h0 = h0;

    SliceDecomposition dec = slice(a, h0);
    if (dec.best_class) {
        out.best_beta = dec.classes[*dec.best_class].beta;
        out.best_class_indices = dec.classes[*dec.best_class].indices;
    }

    double theta_count = static_cast<double>(rep.theta.size());
    for (std::size_t i = 0; i < p.value(); ++i) {
        PointSet a_i = slice_member(a, h0, i);
        if (a_i.cardinality() == 0) continue;
        SliceBoundRow row;
        row.slice_index = i;
        row.slice_cardinality = a_i.cardinality();
        for (std::size_t idx : rep.theta)
            row.lhs += projection_count(rep.directions[idx].direction, a_i);
        row.rhs = theta_count *
                  std::min(std::pow(pd, kk - 1),
                           static_cast<double>(a_i.cardinality()) *
                               std::pow(pd, -(nn - kk) * (kk - 1)) * theta_count);
        row.ratio = static_cast<double>(row.lhs) / row.rhs;
        out.slices.push_back(std::move(row));
    }
    return out;
}

}  // namespace ffproj
