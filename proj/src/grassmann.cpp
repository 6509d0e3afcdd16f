#include "ffproj/grassmann.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ffproj {

std::uint64_t max_points_guard() {
    static const std::uint64_t limit = [] {
        const char* env = std::getenv("FFPROJ_MAX_POINTS");
        if (env != nullptr) {
            char* end = nullptr;
            std::uint64_t v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return v;
        }
        return std::uint64_t{1} << 24;
    }();
    return limit;
}

Subspace::Subspace(const PrimeModulus& p, std::size_t n, FpMatrix basis,
                   std::vector<std::size_t> pivots)
    : p_(p), n_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::from_span(const PrimeModulus& p, std::size_t n,
                             const FpMatrix& span_rows) {
    if (span_rows.cols != n) throw std::invalid_argument("from_span: wrong width");
    RrefResult r = rref(span_rows, p);
    FpMatrix basis(r.rank, n);
    std::copy(r.mat.entries.begin(), r.mat.entries.begin() + r.rank * n,
              basis.entries.begin());
    return Subspace(p, n, std::move(basis), std::move(r.pivots));
}

Subspace Subspace::from_rref(const PrimeModulus& p, std::size_t n, FpMatrix basis,
                             std::vector<std::size_t> pivots) {
    return Subspace(p, n, std::move(basis), std::move(pivots));
}

bool Subspace::contains_point(PointIndex x) const {
    std::vector<Residue> coords = decode_point(x, p_, n_);
    for (std::size_t i = 0; i < basis_.rows; ++i) {
        Residue c = coords[pivots_[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            coords[j] = p_.sub(coords[j], p_.mul(c, basis_.at(i, j)));
    }
    for (Residue c : coords)
        if (c != 0) return false;
    return true;
}

std::vector<PointIndex> Subspace::elements() const {
    std::size_t k = basis_.rows;
    std::uint64_t count = pow_u64(p_.value(), k);
    std::vector<PointIndex> out;
    out.reserve(count);
    std::vector<Residue> y(k, 0), x(n_);
    for (std::uint64_t it = 0;; ++it) {
        std::fill(x.begin(), x.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (y[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j)
                x[j] = p_.add(x[j], p_.mul(y[i], basis_.at(i, j)));
        }
        out.push_back(encode_point(x, p_, n_));
        std::size_t d = 0;
        while (d < k && ++y[d] == p_.value()) y[d++] = 0;
        if (d == k) break;
    }
    return out;
}

std::string Subspace::to_text() const {
    if (basis_.rows == 0) return "-";
    std::ostringstream os;
    for (std::size_t r = 0; r < basis_.rows; ++r) {
        if (r) os << ';';
        for (std::size_t c = 0; c < n_; ++c) {
            if (c) os << ',';
            os << basis_.at(r, c);
        }
    }
    return os.str();
}

Subspace Subspace::parse(const PrimeModulus& p, std::size_t n, const std::string& text) {
    if (text == "-") return from_span(p, n, FpMatrix(0, n));
    std::vector<std::vector<Residue>> rows;
    std::istringstream is(text);
    std::string row_text;
    while (std::getline(is, row_text, ';')) {
        std::vector<Residue> row;
        std::istringstream rs(row_text);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            std::uint64_t v = std::stoull(cell);
            if (v >= p.value()) throw std::invalid_argument("subspace entry out of range");
            row.push_back(static_cast<Residue>(v));
        }
        if (row.size() != n) throw std::invalid_argument("subspace row has wrong arity");
        rows.push_back(std::move(row));
    }
    FpMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = rows[r][c];
    return from_span(p, n, m);
}

BigInt gaussian_binomial(std::size_t n, std::size_t k, const PrimeModulus& p) {
    if (k > n) throw std::invalid_argument("gaussian_binomial: k > n");
    BigInt num = 1, den = 1, pp = p.value();
    for (std::size_t i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(pp, static_cast<unsigned>(n - i)) - 1;
        den *= boost::multiprecision::pow(pp, static_cast<unsigned>(k - i)) - 1;
    }
    return num / den;
}

void for_each_subspace(const PrimeModulus& p, std::size_t n, std::size_t k,
                       const std::function<void(const Subspace&)>& fn,
                       bool override_guard) {
    if (k > n) throw std::invalid_argument("for_each_subspace: k > n");
    if (!override_guard) {
        if (pow_u64(p.value(), n) > max_points_guard())
            throw GuardError("instance too large: p^n exceeds the point guard");
        if (gaussian_binomial(n, k, p) > kMaxGrassmannian)
            throw GuardError("instance too large: Grassmannian exceeds the guard");
    }

    // Pivot-column subsets in lexicographic order.
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    for (;;) {
        // Free positions (row, col): col not a pivot and right of the row's pivot.
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        {
            std::vector<bool> is_piv(n, false);
            for (std::size_t c : piv) is_piv[c] = true;
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = piv[r] + 1; c < n; ++c)
                    if (!is_piv[c]) free_pos.emplace_back(r, c);
        }

        FpMatrix basis(k, n);
        for (std::size_t r = 0; r < k; ++r) basis.at(r, piv[r]) = 1;
        for (;;) {
            fn(Subspace::from_rref(p, n, basis, piv));
            // Base-p odometer over the free entries, last position fastest.
            std::size_t d = free_pos.size();
            while (d > 0) {
                --d;
                Residue v = p.add(basis.at(free_pos[d].first, free_pos[d].second), 1);
                basis.at(free_pos[d].first, free_pos[d].second) = v;
                if (v != 0) break;
                if (d == 0) {
                    d = free_pos.size() + 1;
                    break;
                }
            }
            if (free_pos.empty() || d == free_pos.size() + 1) break;
        }

        // Next k-subset of {0..n-1}.
        if (k == 0) break;
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

std::vector<Subspace> enumerate_subspaces(const PrimeModulus& p, std::size_t n,
                                          std::size_t k, bool override_guard) {
    std::vector<Subspace> out;
    for_each_subspace(p, n, k, [&](const Subspace& v) { out.push_back(v); },
                      override_guard);
    return out;
}

Subspace dual(const Subspace& v) {
    FpMatrix kernel = null_space(v.basis().rows > 0
                                     ? v.basis()
                                     : FpMatrix(0, v.ambient_dim()),
                                 v.modulus());
    return Subspace::from_span(v.modulus(), v.ambient_dim(), kernel);
}

bool contains(const Subspace& w, const Subspace& v) {
    if (!(w.modulus() == v.modulus()) || w.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("contains: mismatched ambient space");
    const PrimeModulus& p = w.modulus();
    std::size_t n = w.ambient_dim();
    for (std::size_t r = 0; r < v.basis().rows; ++r) {
        std::vector<Residue> row(v.basis().row(r).begin(), v.basis().row(r).end());
        for (std::size_t i = 0; i < w.basis().rows; ++i) {
            Residue c = row[w.pivots()[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                row[j] = p.sub(row[j], p.mul(c, w.basis().at(i, j)));
        }
        for (Residue e : row)
            if (e != 0) return false;
    }
    return true;
}

PointIndex coset_rep(const Subspace& v, PointIndex x) {
    const PrimeModulus& p = v.modulus();
    std::size_t n = v.ambient_dim();
    std::vector<Residue> coords = decode_point(x, p, n);
    for (std::size_t i = 0; i < v.basis().rows; ++i) {
        Residue c = coords[v.pivots()[i]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            coords[j] = p.sub(coords[j], p.mul(c, v.basis().at(i, j)));
    }
    return encode_point(coords, p, n);
}

AffinePlane coset_of(const Subspace& v, PointIndex x) {
    return AffinePlane{v, coset_rep(v, x)};
}

}  // namespace ffproj
