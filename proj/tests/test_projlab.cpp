#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ffproj/constructions.hpp"
#include "ffproj/projlab.hpp"

using namespace ffproj;

namespace {

Subspace span_of(const PrimeModulus& p, std::size_t n,
                 std::vector<std::vector<Residue>> rows) {
    FpMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = rows[r][c];
    return Subspace::from_span(p, n, m);
}

PointSet set_of(const PrimeModulus& p, std::size_t n,
                std::vector<std::vector<Residue>> points) {
    PointSet a(p, n);
    for (auto& pt : points) a.insert(encode_point(pt, p, n));
    return a;
}

PointSet full_space(const PrimeModulus& p, std::size_t n) {
    PointSet a(p, n);
    for (PointIndex x = 0; x < a.universe_size(); ++x) a.insert(x);
    return a;
}

}  // namespace

TEST_CASE("point set file round-trip") {
    PrimeModulus p3(3);
    PointSet a = set_of(p3, 2, {{0, 0}, {1, 0}, {0, 1}});
    std::stringstream buf;
    a.save(buf);
    CHECK(PointSet::load(buf) == a);

    std::istringstream commented("# header comment\n3 2\n0,0  \n\n1,0 # a point\n0,1\n");
    CHECK(PointSet::load(commented) == a);

    std::istringstream bad("3 2\n3,0\n");
    CHECK_THROWS_AS(PointSet::load(bad), std::invalid_argument);
}

TEST_CASE("project examples") {
    PrimeModulus p3(3);
    Subspace v = span_of(p3, 2, {{1, 0}});

    CHECK(project(v, full_space(p3, 2)).size() == 3);

    PointSet single = set_of(p3, 2, {{1, 2}});
    CHECK(project(v, single).size() == 1);

    PointSet a = set_of(p3, 2, {{0, 0}, {1, 0}, {0, 1}});
    std::vector<Residue> r0{0, 0}, r1{0, 1};
    std::vector<PointIndex> expected{encode_point(r0, p3, 2), encode_point(r1, p3, 2)};
    CHECK(project(v, a) == expected);

    PrimeModulus p5(5);
    CHECK_THROWS_AS(project(span_of(p5, 2, {{1, 0}}), a), std::invalid_argument);
}

TEST_CASE("exceptional_set: single point, all lines exceptional") {
    PrimeModulus p3(3);
    PointSet a = set_of(p3, 2, {{1, 2}});
    ExceptionalReport rep = exceptional_set(a, 1, 0.5);
    CHECK(rep.directions.size() == 4);
    CHECK(rep.exceptional.size() == 4);
    CHECK(rep.overlap_m == 1);
    CHECK(rep.out_of_range);  // a = 0 here, so s >= min{k,a}

    // Oracle: brute force over nonzero xi, counting duals containing it.
    std::size_t best = 0;
    for (PointIndex xi = 1; xi < 9; ++xi) {
        std::size_t hits = 0;
        for (std::size_t idx : rep.exceptional)
            if (dual(rep.directions[idx].direction).contains_point(xi)) ++hits;
        best = std::max(best, hits);
    }
    CHECK(best == 1);
}

TEST_CASE("exceptional_set: full space has no exceptional directions") {
    PrimeModulus p3(3);
    PointSet a = full_space(p3, 3);
    for (std::size_t k : {1, 2}) {
        ExceptionalReport rep = exceptional_set(a, k, 0.9 * k);
        CHECK(rep.exceptional.empty());
        CHECK(rep.overlap_m == 0);
        CHECK_FALSE(rep.xi0.has_value());
    }
}

TEST_CASE("exceptional_set: a line in F_3^3 against planes") {
    PrimeModulus p3(3);
    Subspace line = span_of(p3, 3, {{1, 1, 0}});
    PointSet a(p3, 3);
    for (PointIndex x : line.elements()) a.insert(x);

    ExceptionalReport rep = exceptional_set(a, 1, 0.5);
    CHECK(rep.directions.size() == 13);
    CHECK(rep.exceptional.size() == 4);
    // Oracle: #pi_V = 1 exactly when the line lies in V, else 3.
    for (std::size_t i = 0; i < rep.directions.size(); ++i) {
        const auto& [v, count] = rep.directions[i];
        if (contains(v, line))
            CHECK(count == 1);
        else
            CHECK(count == 3);
    }
    for (std::size_t idx : rep.exceptional)
        CHECK(contains(rep.directions[idx].direction, line));
}

TEST_CASE("exceptional_set scan is independent of worker count") {
    PrimeModulus p5(5);
    PointSet a = random_set(p5, 3, 1.8, 42);
    ExceptionalReport serial = exceptional_set(a, 2, 0.7, 1);
    ExceptionalReport parallel = exceptional_set(a, 2, 0.7, 8);
    CHECK(serial.exceptional == parallel.exceptional);
    CHECK(serial.overlap_m == parallel.overlap_m);
    CHECK(serial.xi0 == parallel.xi0);
    CHECK(serial.theta == parallel.theta);
    for (std::size_t i = 0; i < serial.directions.size(); ++i)
        CHECK(serial.directions[i].count == parallel.directions[i].count);
}

TEST_CASE("overlap_number") {
    PrimeModulus p3(3);
    CHECK(overlap_number({}).first == 0);

    std::vector<Subspace> single{span_of(p3, 2, {{1, 0}})};
    CHECK(overlap_number(single).first == 1);

    std::vector<Subspace> all_lines = enumerate_subspaces(p3, 2, 1);
    auto [m, xi0] = overlap_number(all_lines);
    CHECK(m == 1);  // the 4 dual lines partition the nonzero frequencies
    CHECK(xi0.has_value());
}

TEST_CASE("falconer_rhs on the single-point example") {
    PrimeModulus p3(3);
    PointSet a = set_of(p3, 2, {{1, 1}});
    double rhs = falconer_rhs(a, 1, 0.5, 1);
    CHECK(rhs == doctest::Approx(std::pow(3.0, 1.5)));
    CHECK(4.0 / rhs == doctest::Approx(0.7698).epsilon(1e-3));

    PointSet empty(p3, 2);
    CHECK_THROWS_AS(falconer_rhs(empty, 1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("monotonicity in s and antitonicity in A") {
    PrimeModulus p3(3);
    PointSet b = random_set(p3, 3, 1.6, 9);
    PointSet a = b;
    // Remove a few points so A is a strict subset of B.
    std::vector<PointIndex> pts = b.points();
    for (std::size_t i = 0; i < pts.size(); i += 3) a.erase(pts[i]);

    for (std::size_t k : {1, 2}) {
        ExceptionalReport lo = exceptional_set(b, k, 0.4);
        ExceptionalReport hi = exceptional_set(b, k, 0.9);
        std::set<std::size_t> hi_set(hi.exceptional.begin(), hi.exceptional.end());
        for (std::size_t idx : lo.exceptional) CHECK(hi_set.count(idx) == 1);

        ExceptionalReport eb = exceptional_set(b, k, 0.7);
        ExceptionalReport ea = exceptional_set(a, k, 0.7);
        std::set<std::size_t> ea_set(ea.exceptional.begin(), ea.exceptional.end());
        for (std::size_t idx : eb.exceptional) CHECK(ea_set.count(idx) == 1);
    }
}

TEST_CASE("projection counts are affine invariants") {
    // T(A) + b has the same multiset of projection counts as A.
    auto apply = [](const PointSet& a, const FpMatrix& t,
                    const std::vector<Residue>& shift) {
        const PrimeModulus& p = a.modulus();
        std::size_t n = a.ambient_dim();
        PointSet out(p, n);
        for (PointIndex x = 0; x < a.universe_size(); ++x) {
            if (!a.contains(x)) continue;
            std::vector<Residue> y = mat_vec(t, decode_point(x, p, n), p);
            for (std::size_t i = 0; i < n; ++i) y[i] = p.add(y[i], shift[i]);
            out.insert(encode_point(y, p, n));
        }
        return out;
    };
    auto count_multiset = [](const ExceptionalReport& rep) {
        std::multiset<std::size_t> out;
        for (const auto& d : rep.directions) out.insert(d.count);
        return out;
    };

    SUBCASE("exhaustive over GL_2(F_3)") {
        PrimeModulus p3(3);
        PointSet a = set_of(p3, 2, {{0, 0}, {1, 0}, {0, 1}, {2, 2}});
        ExceptionalReport base = exceptional_set(a, 1, 0.6);
        for (std::uint64_t code = 0; code < 81; ++code) {
            FpMatrix t(2, 2);
            std::uint64_t c = code;
            for (auto& e : t.entries) {
                e = static_cast<Residue>(c % 3);
                c /= 3;
            }
            if (rref(t, p3).rank != 2) continue;
            std::vector<Residue> shift{1, 2};
            ExceptionalReport moved = exceptional_set(apply(a, t, shift), 1, 0.6);
            CHECK(count_multiset(moved) == count_multiset(base));
        }
    }

    SUBCASE("randomized at p=5, n=3") {
        PrimeModulus p5(5);
        PointSet a = random_set(p5, 3, 1.7, 11);
        ExceptionalReport base = exceptional_set(a, 1, 0.6);
        std::mt19937_64 rng(3);
        int done = 0;
        while (done < 10) {
            FpMatrix t(3, 3);
            for (auto& e : t.entries) e = static_cast<Residue>(rng() % 5);
            if (rref(t, p5).rank != 3) continue;
            std::vector<Residue> shift{static_cast<Residue>(rng() % 5),
                                       static_cast<Residue>(rng() % 5),
                                       static_cast<Residue>(rng() % 5)};
            ExceptionalReport moved = exceptional_set(apply(a, t, shift), 1, 0.6);
            CHECK(count_multiset(moved) == count_multiset(base));
            ++done;
        }
    }
}

TEST_CASE("overlap number is capped by the pencil count") {
    PrimeModulus p3(3);
    for (std::size_t k : {1, 2}) {
        for (int seed = 0; seed < 10; ++seed) {
            PointSet a = random_set(p3, 3, 1.2, static_cast<std::uint64_t>(seed));
            ExceptionalReport rep = exceptional_set(a, k, 0.8);
            BigInt cap = gaussian_binomial(3 - 1, 3 - k, p3);
            CHECK(BigInt(rep.overlap_m) <= cap);
        }
    }
}

TEST_CASE("slice") {
    PrimeModulus p3(3);
    Subspace h0 = span_of(p3, 2, {{1, 0}});

    SUBCASE("empty set") {
        SliceDecomposition dec = slice(PointSet(p3, 2), h0);
        for (std::size_t sz : dec.slice_sizes) CHECK(sz == 0);
        CHECK(dec.classes.empty());
        CHECK_FALSE(dec.best_class.has_value());
    }

    SUBCASE("full space") {
        SliceDecomposition dec = slice(full_space(p3, 2), h0);
        for (std::size_t sz : dec.slice_sizes) CHECK(sz == 3);
    }

    SUBCASE("worked example") {
        PointSet a = set_of(p3, 2, {{0, 0}, {1, 0}, {0, 1}});
        SliceDecomposition dec = slice(a, h0);
        CHECK(dec.slice_sizes == std::vector<std::size_t>{2, 1, 0});
        REQUIRE(dec.best_class.has_value());
        CHECK(dec.classes[*dec.best_class].beta == 1);
        CHECK(dec.classes[*dec.best_class].indices == std::vector<std::size_t>{0});
    }

    SUBCASE("slice sizes sum to the cardinality") {
        PointSet a = random_set(p3, 3, 1.9, 5);
        for (const Subspace& h : enumerate_subspaces(p3, 3, 2)) {
            SliceDecomposition dec = slice(a, h);
            std::size_t total = 0;
            for (std::size_t sz : dec.slice_sizes) total += sz;
            CHECK(total == a.cardinality());
        }
    }
}

TEST_CASE("fubini_check") {
    PrimeModulus p3(3);
    Subspace h0 = span_of(p3, 2, {{1, 0}});

    CHECK(fubini_check(PointSet(p3, 2), h0, h0));

    PointSet a = set_of(p3, 2, {{0, 0}, {1, 0}, {0, 1}});
    CHECK(fubini_check(a, h0, h0));

    Subspace other = span_of(p3, 2, {{0, 1}});
    CHECK_THROWS_AS(fubini_check(a, other, h0), std::invalid_argument);

    // Exhaustive at p=3, n=3 over random sets and all V inside each H0.
    for (int seed = 0; seed < 5; ++seed) {
        PointSet b = random_set(p3, 3, 1.5, static_cast<std::uint64_t>(seed));
        for (const Subspace& h : enumerate_subspaces(p3, 3, 2)) {
            for (std::size_t dim = 1; dim <= 2; ++dim) {
                for (const Subspace& v : enumerate_subspaces(p3, 3, dim)) {
                    if (!contains(h, v)) continue;
                    CHECK(fubini_check(b, v, h));
                }
            }
        }
    }
}

TEST_CASE("case1_certificate") {
    PrimeModulus p3(3);

    SUBCASE("full space always certifies") {
        auto cert = case1_certificate(full_space(p3, 2), 1, 0.5);
        CHECK(cert.has_value());
    }

    SUBCASE("single point cannot reach the threshold") {
        PointSet a = set_of(p3, 2, {{1, 1}});
        CHECK_FALSE(case1_certificate(a, 1, 0.5).has_value());
    }

    SUBCASE("set inside a hyperplane, exhaustive downstream check") {
        Subspace h = span_of(p3, 3, {{1, 0, 0}, {0, 1, 0}});
        double s = 0.5;
        // Fill enough of H to pass the threshold p^(s+n-k-1) with k=1.
        PointSet a(p3, 3);
        std::vector<PointIndex> members = h.elements();
        for (std::size_t i = 0; i < 7; ++i) a.insert(members[i]);
        REQUIRE(static_cast<double>(a.cardinality()) >= std::pow(3.0, s + 1));

        auto cert = case1_certificate(a, 1, s);
        REQUIRE(cert.has_value());
        const Subspace& h0 = cert->second;
        ExceptionalReport rep = exceptional_set(a, 1, s);
        for (std::size_t idx : rep.exceptional)
            CHECK(contains(h0, rep.directions[idx].direction));
    }
}
