#include "ffproj/projlab.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace ffproj {

PointSet::PointSet(const PrimeModulus& p, std::size_t n) : p_(p), n_(n) {
    std::uint64_t size = pow_u64(p.value(), n);
    if (size > max_points_guard())
        throw GuardError("instance too large: p^n exceeds the point guard");
    members_.assign(size, 0);
}

void PointSet::insert(PointIndex x) {
    if (x >= members_.size()) throw std::invalid_argument("point index out of range");
    if (!members_[x]) {
        members_[x] = 1;
        ++cardinality_;
    }
}

void PointSet::erase(PointIndex x) {
    if (x >= members_.size()) throw std::invalid_argument("point index out of range");
    if (members_[x]) {
        members_[x] = 0;
        --cardinality_;
    }
}

std::vector<PointIndex> PointSet::points() const {
    std::vector<PointIndex> out;
    out.reserve(cardinality_);
    for (PointIndex i = 0; i < members_.size(); ++i)
        if (members_[i]) out.push_back(i);
    return out;
}

double PointSet::log_p_cardinality() const {
    if (cardinality_ == 0) return 0.0;
    return std::log(static_cast<double>(cardinality_)) / std::log(static_cast<double>(p_.value()));
}

PointSet PointSet::load(std::istream& in) {
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            std::size_t h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                line.pop_back();
            if (line.empty()) continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw std::invalid_argument("point set file: missing header");
    std::istringstream hs(header);
    std::uint64_t p_val = 0;
    std::size_t n = 0;
    if (!(hs >> p_val >> n)) throw std::invalid_argument("point set file: bad header");

    PrimeModulus p(p_val);
    PointSet set(p, n);
    std::string point_line;
    while (next_line(point_line)) {
        std::vector<Residue> coords;
        std::istringstream ps(point_line);
        std::string cell;
        while (std::getline(ps, cell, ',')) {
            std::uint64_t v = std::stoull(cell);
            if (v >= p_val) throw std::invalid_argument("point coordinate out of range");
            coords.push_back(static_cast<Residue>(v));
        }
        if (coords.size() != n)
            throw std::invalid_argument("point with wrong number of coordinates");
        set.insert(encode_point(coords, p, n));
    }
    return set;
}

void PointSet::save(std::ostream& out) const {
    out << p_.value() << ' ' << n_ << '\n';
    for (PointIndex i = 0; i < members_.size(); ++i) {
        if (!members_[i]) continue;
        std::vector<Residue> coords = decode_point(i, p_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            if (j) out << ',';
            out << coords[j];
        }
        out << '\n';
    }
}

std::vector<PointIndex> project(const Subspace& v, const PointSet& a) {
    if (!(v.modulus() == a.modulus()) || v.ambient_dim() != a.ambient_dim())
        throw std::invalid_argument("project: mismatched ambient space");
    std::vector<PointIndex> reps;
    reps.reserve(a.cardinality());
    for (PointIndex x = 0; x < a.universe_size(); ++x)
        if (a.contains(x)) reps.push_back(coset_rep(v, x));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

std::size_t projection_count(const Subspace& v, const PointSet& a) {
    return project(v, a).size();
}

std::pair<std::size_t, std::optional<PointIndex>> overlap_number(
    const std::vector<Subspace>& e) {
    if (e.empty()) return {0, std::nullopt};
    const PrimeModulus& p = e.front().modulus();
    std::size_t n = e.front().ambient_dim();
    std::vector<std::uint32_t> hits(pow_u64(p.value(), n), 0);
    for (const Subspace& v : e)
        for (PointIndex xi : dual(v).elements()) ++hits[xi];
    std::size_t best = 0;
    std::optional<PointIndex> arg;
    for (PointIndex xi = 1; xi < hits.size(); ++xi) {
        if (hits[xi] > best) {
            best = hits[xi];
            arg = xi;
        }
    }
    return {best, arg};
}

double falconer_rhs(const PointSet& a, std::size_t k, double s, std::size_t m) {
    if (a.cardinality() == 0) throw std::invalid_argument("falconer_rhs: empty set");
    double exp = static_cast<double>(a.ambient_dim()) - static_cast<double>(k) + s -
                 a.log_p_cardinality();
    return static_cast<double>(m) *
           std::pow(static_cast<double>(a.modulus().value()), exp);
}

ExceptionalReport exceptional_set(const PointSet& a, std::size_t k, double s,
                                  unsigned threads, bool override_guard) {
    std::size_t n = a.ambient_dim();
    if (k == 0 || k >= n) throw std::invalid_argument("exceptional_set: need 0 < k < n");
    if (s <= 0) throw std::invalid_argument("exceptional_set: need s > 0");

    ExceptionalReport report;
    report.k = k;
    report.s = s;
    report.a = a.log_p_cardinality();
    report.out_of_range =
        !(s < std::min(static_cast<double>(k), report.a)) || a.cardinality() == 0;

    std::vector<Subspace> dirs =
        enumerate_subspaces(a.modulus(), n, n - k, override_guard);
    std::vector<std::size_t> counts(dirs.size(), 0);

    // Static block partition: counts land at fixed indices, so the result is
    // independent of the worker count.
    unsigned workers = std::max(1u, threads);
    if (workers > 1 && dirs.size() > 1) {
        std::vector<std::thread> pool;
        std::size_t chunk = (dirs.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t lo = std::min(dirs.size(), w * chunk);
            std::size_t hi = std::min(dirs.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i)
                    counts[i] = projection_count(dirs[i], a);
            });
        }
        for (std::thread& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < dirs.size(); ++i)
            counts[i] = projection_count(dirs[i], a);
    }

    double threshold = std::pow(static_cast<double>(a.modulus().value()), s);
    std::vector<Subspace> exceptional_dirs;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        report.directions.push_back({dirs[i], counts[i]});
        if (static_cast<double>(counts[i]) < threshold) {
            report.exceptional.push_back(i);
            exceptional_dirs.push_back(dirs[i]);
        }
    }

    auto [m, xi0] = overlap_number(exceptional_dirs);
    report.overlap_m = m;
    report.xi0 = xi0;
    if (xi0) {
        std::vector<Residue> xi = decode_point(*xi0, a.modulus(), n);
        for (std::size_t idx : report.exceptional) {
            // xi in V* iff the basis of V annihilates xi.
            std::vector<Residue> y =
                mat_vec(report.directions[idx].direction.basis(), xi, a.modulus());
            if (std::all_of(y.begin(), y.end(), [](Residue r) { return r == 0; }))
                report.theta.push_back(idx);
        }
    }
    return report;
}

namespace {

// H0 has exactly one non-pivot column; the slice index of x is the value of
// its canonical coset representative at that column.
std::size_t slice_free_column(const Subspace& h0) {
    if (h0.dim() + 1 != h0.ambient_dim())
        throw std::invalid_argument("slice: direction must be a hyperplane");
    std::vector<bool> is_piv(h0.ambient_dim(), false);
    for (std::size_t c : h0.pivots()) is_piv[c] = true;
    for (std::size_t c = 0; c < h0.ambient_dim(); ++c)
        if (!is_piv[c]) return c;
    throw std::logic_error("slice: no free column");
}

std::size_t slice_index(const Subspace& h0, std::size_t free_col, PointIndex x) {
    PointIndex rep = coset_rep(h0, x);
    return static_cast<std::size_t>(rep / pow_u64(h0.modulus().value(), free_col));
}

}  // namespace

SliceDecomposition slice(const PointSet& a, const Subspace& h0) {
    std::size_t free_col = slice_free_column(h0);
    SliceDecomposition dec{h0, std::vector<std::size_t>(h0.modulus().value(), 0), {}, {}};
    for (PointIndex x = 0; x < a.universe_size(); ++x)
        if (a.contains(x)) ++dec.slice_sizes[slice_index(h0, free_col, x)];

    // Dyadic classes over the nonempty slices.
    std::vector<std::vector<std::size_t>> by_beta;
    for (std::size_t i = 0; i < dec.slice_sizes.size(); ++i) {
        std::size_t sz = dec.slice_sizes[i];
        if (sz == 0) continue;
        unsigned beta = 0;
        while ((std::size_t{2} << beta) <= sz) ++beta;
        if (by_beta.size() <= beta) by_beta.resize(beta + 1);
        by_beta[beta].push_back(i);
    }
    for (unsigned beta = 0; beta < by_beta.size(); ++beta)
        if (!by_beta[beta].empty())
            dec.classes.push_back({beta, std::move(by_beta[beta])});

    std::uint64_t best_mass = 0;
    for (std::size_t c = 0; c < dec.classes.size(); ++c) {
        std::uint64_t mass = static_cast<std::uint64_t>(dec.classes[c].indices.size())
                             << dec.classes[c].beta;
        if (mass > best_mass) {
            best_mass = mass;
            dec.best_class = c;
        }
    }
    return dec;
}

PointSet slice_member(const PointSet& a, const Subspace& h0, std::size_t i) {
    std::size_t free_col = slice_free_column(h0);
    PointSet out(a.modulus(), a.ambient_dim());
    for (PointIndex x = 0; x < a.universe_size(); ++x)
        if (a.contains(x) && slice_index(h0, free_col, x) == i) out.insert(x);
    return out;
}

bool fubini_check(const PointSet& a, const Subspace& v, const Subspace& h0) {
    if (!contains(h0, v))
        throw std::invalid_argument("fubini_check: V must be contained in H0");
    std::size_t lhs = projection_count(v, a);
    std::size_t rhs = 0;
    for (std::size_t i = 0; i < h0.modulus().value(); ++i)
        rhs += projection_count(v, slice_member(a, h0, i));
    return lhs == rhs;
}

std::optional<std::pair<AffinePlane, Subspace>> case1_certificate(
    const PointSet& a, std::size_t k, double s, bool override_guard) {
    std::size_t n = a.ambient_dim();
    if (k == 0 || k >= n)
        throw std::invalid_argument("case1_certificate: need 0 < k < n");
    double threshold = std::pow(static_cast<double>(a.modulus().value()),
                                s + static_cast<double>(n) - static_cast<double>(k) - 1);
    std::optional<std::pair<AffinePlane, Subspace>> result;
    for_each_subspace(
        a.modulus(), n, n - 1,
        [&](const Subspace& h0) {
            if (result) return;
            std::size_t free_col = slice_free_column(h0);
            SliceDecomposition dec = slice(a, h0);
            for (std::size_t i = 0; i < dec.slice_sizes.size(); ++i) {
                if (static_cast<double>(dec.slice_sizes[i]) >= threshold) {
                    PointIndex rep = i * pow_u64(h0.modulus().value(), free_col);
                    result = std::make_pair(AffinePlane{h0, rep}, h0);
                    return;
                }
            }
        },
        override_guard);
    return result;
}

}  // namespace ffproj
