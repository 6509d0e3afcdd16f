#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "ffproj/constructions.hpp"
#include "ffproj/exponents.hpp"
#include "ffproj/ffourier.hpp"
#include "ffproj/sweep.hpp"
#include "ffproj/verify.hpp"

namespace {

using namespace ffproj;

PointSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open point set file: " + path);
    return PointSet::load(in);
}

std::string point_text(PointIndex idx, const PrimeModulus& p, std::size_t n) {
    std::vector<Residue> coords = decode_point(idx, p, n);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) out += ',';
        out += std::to_string(coords[i]);
    }
    return out;
}

nlohmann::json report_json(const ExceptionalReport& rep, const PointSet& a) {
    nlohmann::json doc;
    doc["k"] = rep.k;
    doc["s"] = rep.s;
    doc["a"] = rep.a;
    doc["out_of_range"] = rep.out_of_range;
    doc["directions"] = nlohmann::json::array();
    for (const DirectionCount& d : rep.directions)
        doc["directions"].push_back(
            {{"subspace", d.direction.to_text()}, {"count", d.count}});
    doc["exceptional"] = rep.exceptional;
    doc["m"] = rep.overlap_m;
    if (rep.xi0)
        doc["xi0"] = point_text(*rep.xi0, a.modulus(), a.ambient_dim());
    else
        doc["xi0"] = nullptr;
    doc["theta"] = rep.theta;
    return doc;
}

nlohmann::json record_json(const SweepRecord& r) {
    return {{"p", r.p},
            {"n", r.n},
            {"k", r.k},
            {"a", r.a},
            {"s", r.s},
            {"card", r.cardinality},
            {"e_count", r.e_count},
            {"m", r.overlap_m},
            {"main_ratio", r.main_ratio},
            {"falconer_ratio", r.falconer_ratio},
            {"falconer_remark_ratio", r.falconer_remark_ratio},
            {"in_range", r.in_range}};
}

int run_fourier_check(std::uint64_t p_val, std::size_t n, unsigned trials) {
    PrimeModulus p(p_val);
    bool ok = true;
    double pk_tolerance = 1e-6;

    // Indicator law for every subspace of every dimension.
    for (std::size_t k = 0; k <= n; ++k) {
        for_each_subspace(p, n, k, [&](const Subspace& v) {
            GridFunction fhat = dft(indicator(v));
            Subspace vstar = dual(v);
            double expected = std::pow(static_cast<double>(p_val),
                                       static_cast<double>(k));
            for (PointIndex xi = 0; xi < fhat.values.size(); ++xi) {
                double want = vstar.contains_point(xi) ? expected : 0.0;
                if (std::abs(std::abs(fhat.values[xi]) - want) > pk_tolerance) ok = false;
            }
            if (!(dual_oracle(v) == vstar)) ok = false;
        });
    }
    std::cout << "indicator law: " << (ok ? "ok" : "FAIL") << '\n';

    // Plancherel + round-trip + mean-zero high part on random functions.
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    bool rand_ok = true;
    for (unsigned t = 0; t < trials; ++t) {
        GridFunction f(p, n, Side::physical);
        double norm2 = 0, sup = 0;
        for (auto& v : f.values) {
            v = {unif(rng), unif(rng)};
            norm2 += std::norm(v);
            sup = std::max(sup, std::abs(v));
        }
        if (plancherel_residual(f) > 1e-8 * norm2) rand_ok = false;
        GridFunction back = idft(dft(f));
        for (std::size_t i = 0; i < f.values.size(); ++i)
            if (std::abs(back.values[i] - f.values[i]) >
                1e-9 * static_cast<double>(f.values.size()) * sup)
                rand_ok = false;
        auto [low, high] = high_low_split(f);
        if (std::abs(dft(high).values[0]) > 1e-6) rand_ok = false;
    }
    std::cout << "plancherel/round-trip/high-low (" << trials
              << " random functions): " << (rand_ok ? "ok" : "FAIL") << '\n';
    return (ok && rand_ok) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field projection laboratory"};
    app.require_subcommand(1);

    std::uint64_t p_val = 3;
    std::size_t n = 2, k = 1, sub_dim = 1;
    double s = 0.5;
    unsigned threads = 1, trials = 100;
    bool override_guard = false;
    std::string set_path, subspace_text, spec_text, out_path, config_path,
        csv_path, json_path, mode = "theorem";
    bool show_predictions = false, show_summary = false;

    auto* enumerate = app.add_subcommand("enumerate", "stream G(k, F_p^n)");
    enumerate->add_option("--p", p_val)->required();
    enumerate->add_option("--n", n)->required();
    enumerate->add_option("--k", k)->required();
    enumerate->add_flag("--override-guard", override_guard);

    auto* project_cmd = app.add_subcommand("project", "compute pi_V(A) from a file");
    project_cmd->add_option("--set", set_path)->required();
    project_cmd->add_option("--subspace", subspace_text, "RREF rows, e.g. 1,0,2;0,1,1")
        ->required();

    auto* exceptional_cmd =
        app.add_subcommand("exceptional", "full exceptional-set report (JSON)");
    exceptional_cmd->add_option("--set", set_path)->required();
    exceptional_cmd->add_option("--k", k)->required();
    exceptional_cmd->add_option("--s", s)->required();
    exceptional_cmd->add_option("--threads", threads);
    exceptional_cmd->add_flag("--override-guard", override_guard);

    auto* fourier_cmd = app.add_subcommand("fourier-check", "Fourier test suites");
    fourier_cmd->add_option("--p", p_val)->required();
    fourier_cmd->add_option("--n", n)->required();
    fourier_cmd->add_option("--trials", trials);

    auto* construct_cmd = app.add_subcommand("construct", "emit a point-set file");
    construct_cmd->add_option("--spec", spec_text, "kind:param=value,...")->required();
    construct_cmd->add_option("--out", out_path, "output file (default stdout)");
    construct_cmd->add_flag("--predictions", show_predictions,
                            "also print predicted directions to stderr");

    auto* verify_cmd = app.add_subcommand("verify", "theorem / falconer / hyper checks");
    verify_cmd->add_option("--set", set_path)->required();
    verify_cmd->add_option("--k", k)->required();
    verify_cmd->add_option("--s", s)->required();
    verify_cmd->add_option("--mode", mode)
        ->check(CLI::IsMember({"theorem", "falconer", "hyper"}));
    verify_cmd->add_option("--threads", threads);
    verify_cmd->add_flag("--override-guard", override_guard);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a config-file sweep");
    sweep_cmd->add_option("--config", config_path)->required();
    sweep_cmd->add_option("--csv", csv_path, "CSV output file (default stdout)");
    sweep_cmd->add_option("--json", json_path, "optional JSON output file");
    sweep_cmd->add_option("--threads", threads, "overrides the config thread count");
    sweep_cmd->add_flag("--summary", show_summary, "print the summary block to stderr");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) {
            PrimeModulus p(p_val);
            std::uint64_t count = 0;
            for_each_subspace(p, n, k,
                              [&](const Subspace& v) {
                                  std::cout << v.to_text() << '\n';
                                  ++count;
                              },
                              override_guard);
            std::cerr << count << " subspaces\n";
        } else if (*project_cmd) {
            PointSet a = load_set(set_path);
            Subspace v =
                Subspace::parse(a.modulus(), a.ambient_dim(), subspace_text);
            std::vector<PointIndex> reps = project(v, a);
            for (PointIndex r : reps)
                std::cout << point_text(r, a.modulus(), a.ambient_dim()) << '\n';
            std::cerr << reps.size() << " planes\n";
        } else if (*exceptional_cmd) {
            PointSet a = load_set(set_path);
            ExceptionalReport rep = exceptional_set(a, k, s, threads, override_guard);
            std::cout << report_json(rep, a).dump(2) << '\n';
        } else if (*fourier_cmd) {
            return run_fourier_check(p_val, n, trials);
        } else if (*construct_cmd) {
            ConstructionResult result = build(ConstructionSpec::parse(spec_text));
            if (out_path.empty()) {
                result.set.save(std::cout);
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::invalid_argument("cannot open " + out_path);
                result.set.save(out);
            }
            if (show_predictions) {
                for (const Subspace& v : result.predicted_directions)
                    std::cerr << v.to_text() << '\n';
                std::cerr << result.predicted_directions.size()
                          << " predicted directions, count bound "
                          << result.predicted_count_bound << '\n';
            }
        } else if (*verify_cmd) {
            PointSet a = load_set(set_path);
            if (mode == "theorem") {
                std::cout << record_json(verify_theorem(a, k, s, "explicit", 0,
                                                        threads, override_guard))
                                 .dump(2)
                          << '\n';
            } else if (mode == "falconer") {
                FalconerCheck c = verify_falconer(a, k, s, threads, override_guard);
                nlohmann::json doc{{"e_count", c.e_count},
                                   {"m", c.overlap_m},
                                   {"rhs_m_form", c.rhs_m_form},
                                   {"ratio_m_form", c.ratio_m_form},
                                   {"rhs_remark", c.rhs_remark},
                                   {"ratio_remark", c.ratio_remark}};
                std::cout << doc.dump(2) << '\n';
            } else {
                HyperLemmaReport r = verify_hyper_lemmas(a, k, s, threads, override_guard);
                nlohmann::json doc;
                doc["theta_size"] = r.theta_size;
                doc["m"] = r.overlap_m;
                doc["lemma_m_rhs"] = r.lemma_m_rhs;
                doc["lemma_m_ratio"] = r.lemma_m_ratio;
                doc["xi0"] = r.xi0 ? nlohmann::json(point_text(
                                         *r.xi0, a.modulus(), a.ambient_dim()))
                                   : nlohmann::json(nullptr);
                doc["h0"] = r.h0 ? nlohmann::json(r.h0->to_text())
                                 : nlohmann::json(nullptr);
                doc["slices"] = nlohmann::json::array();
                for (const SliceBoundRow& row : r.slices)
                    doc["slices"].push_back({{"slice", row.slice_index},
                                             {"card", row.slice_cardinality},
                                             {"lhs", row.lhs},
                                             {"rhs", row.rhs},
                                             {"ratio", row.ratio}});
                if (r.best_beta) {
                    doc["best_class"] = {{"beta", *r.best_beta},
                                         {"slices", r.best_class_indices}};
                }
                std::cout << doc.dump(2) << '\n';
            }
        } else if (*sweep_cmd) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config: " + config_path);
            SweepConfig cfg = SweepConfig::parse(in);
            if (sweep_cmd->count("--threads")) cfg.threads = threads;
            SweepResult result = run_sweep(cfg);
            if (csv_path.empty()) {
                write_csv(std::cout, result.records);
            } else {
                std::ofstream out(csv_path);
                if (!out) throw std::invalid_argument("cannot open " + csv_path);
                write_csv(out, result.records);
            }
            if (!json_path.empty()) {
                std::ofstream out(json_path);
                if (!out) throw std::invalid_argument("cannot open " + json_path);
                write_json(out, result);
            }
            if (show_summary) write_summary(std::cerr, result.summary);
        }
    } catch (const GuardError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
