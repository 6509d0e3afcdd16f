#include "ffproj/fpcore.hpp"

#include <algorithm>

namespace ffproj {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Deterministic Miller-Rabin; the base set {2,3,5,7} is exact below
// 3,215,031,751, far above kMaxModulus.
bool is_prime_u64(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
        if (m == q) return true;
        if (m % q == 0) return false;
    }
    std::uint64_t d = m - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t base : {2ull, 3ull, 5ull, 7ull}) {
        std::uint64_t x = powmod_u64(base, d, m);
        if (x == 1 || x == m - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, m);
            if (x == m - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
    if (p > kMaxModulus)
        throw std::invalid_argument("modulus exceeds cap 2^20: " + std::to_string(p));
    if (!is_prime_u64(p))
        throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
}

Residue PrimeModulus::pow(Residue a, std::uint64_t e) const {
    return static_cast<Residue>(powmod_u64(a, e, p_));
}

Residue PrimeModulus::inv(Residue a) const {
    if (a == 0) throw std::invalid_argument("non-invertible element");
    // Fermat: a^(p-2).
    return pow(a, p_ - 2);
}

RrefResult rref(const FpMatrix& m, const PrimeModulus& p) {
    RrefResult out;
    out.mat = m;
    FpMatrix& a = out.mat;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
        std::size_t piv = row;
        while (piv < a.rows && a.at(piv, col) == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != row) {
            for (std::size_t c = 0; c < a.cols; ++c)
                std::swap(a.at(piv, c), a.at(row, c));
        }
        Residue inv = p.inv(a.at(row, col));
        for (std::size_t c = col; c < a.cols; ++c)
            a.at(row, c) = p.mul(a.at(row, c), inv);
        for (std::size_t r = 0; r < a.rows; ++r) {
            if (r == row || a.at(r, col) == 0) continue;
            Residue f = a.at(r, col);
            for (std::size_t c = col; c < a.cols; ++c)
                a.at(r, c) = p.sub(a.at(r, c), p.mul(f, a.at(row, c)));
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

FpMatrix null_space(const FpMatrix& m, const PrimeModulus& p) {
    RrefResult r = rref(m, p);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;

    FpMatrix kernel(m.cols - r.rank, m.cols);
    std::size_t kr = 0;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        kernel.at(kr, free_col) = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            kernel.at(kr, r.pivots[i]) = p.neg(r.mat.at(i, free_col));
        ++kr;
    }
    return rref(kernel, p).mat;
}

std::vector<Residue> mat_vec(const FpMatrix& m, std::span<const Residue> x,
                             const PrimeModulus& p) {
    if (x.size() != m.cols) throw std::invalid_argument("mat_vec: size mismatch");
    std::vector<Residue> y(m.rows, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < m.cols; ++c) {
            acc += std::uint64_t{m.at(r, c)} * x[c];
            if (acc >= (std::uint64_t{1} << 60)) acc %= p.value();
        }
        y[r] = static_cast<Residue>(acc % p.value());
    }
    return y;
}

std::uint64_t pow_u64(std::uint64_t p, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > UINT64_MAX / p) throw std::overflow_error("pow_u64 overflow");
        r *= p;
    }
    return r;
}

PointIndex encode_point(std::span<const Residue> coords, const PrimeModulus& p,
                        std::size_t n) {
    if (coords.size() != n) throw std::invalid_argument("encode_point: wrong arity");
    PointIndex idx = 0;
    for (std::size_t i = n; i-- > 0;) {
        if (coords[i] >= p.value())
            throw std::invalid_argument("encode_point: coordinate out of range");
        idx = idx * p.value() + coords[i];
    }
    return idx;
}

std::vector<Residue> decode_point(PointIndex idx, const PrimeModulus& p, std::size_t n) {
    if (idx >= pow_u64(p.value(), n))
        throw std::invalid_argument("decode_point: index out of range");
    std::vector<Residue> coords(n);
    for (std::size_t i = 0; i < n; ++i) {
        coords[i] = static_cast<Residue>(idx % p.value());
        idx /= p.value();
    }
    return coords;
}

}  // namespace ffproj
