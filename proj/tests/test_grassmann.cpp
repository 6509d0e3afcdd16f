#include <doctest.h>

#include <map>
#include <set>

#include "ffproj/grassmann.hpp"

using namespace ffproj;

namespace {

// Brute-force oracle: all k-dimensional subspaces as point sets, found by
// taking the span of every k-tuple of vectors.
std::set<std::set<PointIndex>> brute_force_subspaces(const PrimeModulus& p,
                                                     std::size_t n, std::size_t k) {
    std::uint64_t total = pow_u64(p.value(), n);
    std::set<std::set<PointIndex>> spans;
    std::vector<PointIndex> tuple(k, 0);
    for (;;) {
        FpMatrix m(k, n);
        for (std::size_t r = 0; r < k; ++r) {
            std::vector<Residue> coords = decode_point(tuple[r], p, n);
            for (std::size_t c = 0; c < n; ++c) m.at(r, c) = coords[c];
        }
        Subspace v = Subspace::from_span(p, n, m);
        if (v.dim() == k) {
            std::vector<PointIndex> pts = v.elements();
            spans.insert(std::set<PointIndex>(pts.begin(), pts.end()));
        }
        std::size_t d = 0;
        while (d < k && ++tuple[d] == total) tuple[d++] = 0;
        if (d == k) break;
    }
    if (k == 0) spans.insert(std::set<PointIndex>{0});
    return spans;
}

Subspace span_of(const PrimeModulus& p, std::size_t n,
                 std::vector<std::vector<Residue>> rows) {
    FpMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = rows[r][c];
    return Subspace::from_span(p, n, m);
}

}  // namespace

TEST_CASE("gaussian_binomial") {
    PrimeModulus p2(2), p3(3), p5(5);
    CHECK(gaussian_binomial(4, 0, p5) == 1);
    CHECK(gaussian_binomial(2, 1, p2) == BigInt(brute_force_subspaces(p2, 2, 1).size()));
    CHECK(gaussian_binomial(2, 1, p2) == 3);
    CHECK(gaussian_binomial(3, 1, p3) == BigInt(brute_force_subspaces(p3, 3, 1).size()));
    CHECK(gaussian_binomial(3, 1, p3) == 13);
    CHECK_THROWS_AS(gaussian_binomial(2, 3, p2), std::invalid_argument);
}

TEST_CASE("enumerate_subspaces examples") {
    PrimeModulus p2(2), p3(3);

    std::vector<Subspace> lines2 = enumerate_subspaces(p2, 2, 1);
    REQUIRE(lines2.size() == 3);
    std::set<std::string> texts;
    for (const Subspace& v : lines2) texts.insert(v.to_text());
    CHECK(texts == std::set<std::string>{"1,0", "0,1", "1,1"});

    CHECK(enumerate_subspaces(p3, 3, 3).size() == 1);
    CHECK(enumerate_subspaces(p3, 2, 1).size() == 4);
}

TEST_CASE("enumeration is complete and duplicate-free") {
    for (std::uint64_t q : {2, 3}) {
        PrimeModulus p(q);
        for (std::size_t n = 1; n <= 3; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                std::vector<Subspace> found = enumerate_subspaces(p, n, k);
                CHECK(BigInt(found.size()) == gaussian_binomial(n, k, p));
                std::set<std::set<PointIndex>> as_sets;
                for (const Subspace& v : found) {
                    CHECK(v.dim() == k);
                    std::vector<PointIndex> pts = v.elements();
                    as_sets.insert(std::set<PointIndex>(pts.begin(), pts.end()));
                }
                CHECK(as_sets.size() == found.size());
                CHECK(as_sets == brute_force_subspaces(p, n, k));
            }
        }
    }
}

TEST_CASE("enumeration order is deterministic") {
    PrimeModulus p3(3);
    std::vector<Subspace> first = enumerate_subspaces(p3, 3, 2);
    std::vector<Subspace> second = enumerate_subspaces(p3, 3, 2);
    CHECK(first == second);
}

TEST_CASE("size guard") {
    PrimeModulus p(1021);
    CHECK_THROWS_AS(enumerate_subspaces(p, 4, 2), GuardError);
}

TEST_CASE("dual examples") {
    PrimeModulus p3(3);
    Subspace full = span_of(p3, 2, {{1, 0}, {0, 1}});
    Subspace zero = span_of(p3, 2, {});
    CHECK(dual(full) == zero);
    CHECK(dual(zero) == full);
    CHECK(dual(span_of(p3, 2, {{1, 0}})) == span_of(p3, 2, {{0, 1}}));
}

TEST_CASE("dual is an involution and a bijection") {
    for (std::uint64_t q : {2, 3}) {
        PrimeModulus p(q);
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                std::set<std::string> images;
                for (const Subspace& v : enumerate_subspaces(p, n, k)) {
                    Subspace vstar = dual(v);
                    CHECK(vstar.dim() == n - k);
                    CHECK(dual(vstar) == v);
                    images.insert(vstar.to_text());
                    // Annihilation: every x in V pairs to zero with every xi in V*.
                    for (PointIndex x : v.elements()) {
                        std::vector<Residue> coords = decode_point(x, p, n);
                        std::vector<Residue> y = mat_vec(vstar.basis(), coords, p);
                        for (Residue e : y) CHECK(e == 0);
                    }
                }
                CHECK(BigInt(images.size()) == gaussian_binomial(n, k, p));
            }
        }
    }
}

TEST_CASE("contains") {
    PrimeModulus p3(3);
    Subspace v = span_of(p3, 2, {{1, 0}});
    Subspace w = span_of(p3, 2, {{0, 1}});
    Subspace full = span_of(p3, 2, {{1, 0}, {0, 1}});
    CHECK(contains(v, v));
    CHECK(contains(full, v));
    CHECK(contains(full, w));
    CHECK_FALSE(contains(v, w));

    PrimeModulus p5(5);
    CHECK_THROWS_AS(contains(v, span_of(p5, 2, {{1, 0}})), std::invalid_argument);
}

TEST_CASE("containment reverses under duality (p=2, n=4)") {
    PrimeModulus p2(2);
    std::vector<Subspace> all;
    for (std::size_t k = 0; k <= 4; ++k)
        for (const Subspace& v : enumerate_subspaces(p2, 4, k)) all.push_back(v);
    for (const Subspace& v : all)
        for (const Subspace& w : all)
            CHECK(contains(w, v) == contains(dual(v), dual(w)));
}

TEST_CASE("coset_of") {
    PrimeModulus p3(3);
    Subspace v = span_of(p3, 2, {{1, 0}});

    for (PointIndex x : v.elements()) CHECK(coset_of(v, x) == AffinePlane{v, 0});

    std::vector<Residue> pt{2, 1};
    AffinePlane plane = coset_of(v, encode_point(pt, p3, 2));
    std::vector<Residue> rep{0, 1};
    CHECK(plane.rep == encode_point(rep, p3, 2));

    // Cosets partition F_3^2 into p^(n-k) classes of size p^k.
    std::map<PointIndex, std::size_t> sizes;
    for (PointIndex x = 0; x < 9; ++x) ++sizes[coset_rep(v, x)];
    CHECK(sizes.size() == 3);
    for (const auto& [rep_idx, count] : sizes) {
        CHECK(count == 3);
        CHECK(coset_rep(v, rep_idx) == rep_idx);  // idempotent canonicalization
    }
}

TEST_CASE("coset equality iff difference in V") {
    PrimeModulus p3(3);
    for (const Subspace& v : enumerate_subspaces(p3, 3, 2)) {
        for (PointIndex x = 0; x < 27; ++x) {
            for (PointIndex y = 0; y < 27; ++y) {
                auto cx = decode_point(x, p3, 3);
                auto cy = decode_point(y, p3, 3);
                std::vector<Residue> diff(3);
                for (std::size_t i = 0; i < 3; ++i) diff[i] = p3.sub(cx[i], cy[i]);
                bool in_v = v.contains_point(encode_point(diff, p3, 3));
                CHECK((coset_rep(v, x) == coset_rep(v, y)) == in_v);
            }
        }
    }
}

TEST_CASE("subspace text round-trip") {
    PrimeModulus p3(3);
    for (std::size_t k = 0; k <= 3; ++k) {
        for (const Subspace& v : enumerate_subspaces(p3, 3, k)) {
            CHECK(Subspace::parse(p3, 3, v.to_text()) == v);
        }
    }
}
