#include "ffproj/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ffproj {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_ws(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct Instance {
    std::size_t n, k;
    double a;
    double s_entry;
    double s;
    std::uint64_t p;
    std::uint64_t seed;
};

}  // namespace

SweepConfig SweepConfig::parse(std::istream& in) {
    SweepConfig cfg;
    cfg.seeds.clear();
    std::string line;
    while (std::getline(in, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::size_t last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') continue;  // section headers are decorative

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep config: expected key=value: " + line);
        std::string key = line.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::vector<std::string> values = split_ws(line.substr(eq + 1));

        if (key == "p") {
            for (const auto& v : values) cfg.primes.push_back(std::stoull(v));
        } else if (key == "nk") {
            for (const auto& v : values) {
                std::size_t colon = v.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("sweep config: nk entries are n:k");
                cfg.nk_pairs.emplace_back(std::stoull(v.substr(0, colon)),
                                          std::stoull(v.substr(colon + 1)));
            }
        } else if (key == "a") {
            for (const auto& v : values) cfg.a_values.push_back(std::stod(v));
        } else if (key == "s") {
            for (const auto& v : values) cfg.s_values.push_back(std::stod(v));
        } else if (key == "s_rel") {
            for (const auto& v : values) cfg.s_rel_values.push_back(std::stod(v));
        } else if (key == "seeds") {
            for (const auto& v : values) cfg.seeds.push_back(std::stoull(v));
        } else if (key == "construction") {
            if (values.size() != 1)
                throw std::invalid_argument("sweep config: one construction kind");
            cfg.construction = ConstructionSpec::parse(values[0]).kind;
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(std::stoul(values.at(0)));
        } else {
            throw std::invalid_argument("sweep config: unknown key: " + key);
        }
    }
    if (cfg.seeds.empty()) cfg.seeds.push_back(0);
    return cfg;
}

SweepResult run_sweep(const SweepConfig& config) {
    if (!config.s_values.empty() && !config.s_rel_values.empty())
        throw std::invalid_argument("run_sweep: give either s or s_rel, not both");
    const std::vector<double>& s_entries =
        config.s_values.empty() ? config.s_rel_values : config.s_values;
    bool relative = config.s_values.empty();

    std::vector<Instance> grid;
    for (auto [n, k] : config.nk_pairs)
        for (double a : config.a_values)
            for (double s_entry : s_entries)
                for (std::uint64_t p : config.primes)
                    for (std::uint64_t seed : config.seeds) {
                        double s = relative
                                       ? s_entry * (a + 2.0 * static_cast<double>(k) -
                                                    static_cast<double>(n)) / 2.0
                                       : s_entry;
                        grid.push_back({n, k, a, s_entry, s, p, seed});
                    }

    SweepResult result;
    result.records.resize(grid.size());
    std::atomic<std::size_t> cursor{0};
    auto work = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= grid.size()) return;
            const Instance& inst = grid[i];
            SweepRecord& rec = result.records[i];
            try {
                ConstructionSpec spec;
                spec.kind = config.construction;
                spec.p = inst.p;
                spec.n = inst.n;
                spec.a = inst.a;
                spec.s = inst.s;
                spec.seed = inst.seed;
                ConstructionResult built = build(spec);
                rec = verify_theorem(built.set, inst.k, inst.s, spec.label(),
                                     inst.seed, 1, config.override_guard);
            } catch (const std::exception& err) {
                rec.p = inst.p;
                rec.n = inst.n;
                rec.k = inst.k;
                rec.a = inst.a;
                rec.s = inst.s;
                rec.seed = inst.seed;
                rec.failed = true;
                rec.error = err.what();
            }
        }
    };
    unsigned workers = std::max(1u, config.threads);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }

    // Summary: max ratios, plus one log-log slope per (n,k,a,s_entry) cell.
    for (const SweepRecord& rec : result.records) {
        if (rec.failed) continue;
        result.summary.max_falconer_ratio =
            std::max(result.summary.max_falconer_ratio, rec.falconer_ratio);
        result.summary.max_falconer_remark_ratio =
            std::max(result.summary.max_falconer_remark_ratio,
                     rec.falconer_remark_ratio);
    }
    std::size_t per_seed = config.seeds.size();
    std::size_t per_p = per_seed * config.primes.size();
    std::size_t cell = 0;
    for (auto [n, k] : config.nk_pairs) {
        for (double a : config.a_values) {
            for (double s_entry : s_entries) {
                std::vector<double> xs, ys;
                double s = 0;
                for (std::size_t pi = 0; pi < config.primes.size(); ++pi) {
                    std::size_t base = cell * per_p + pi * per_seed;
                    std::size_t max_e = 0;
                    bool ok = false;
                    for (std::size_t si = 0; si < per_seed; ++si) {
                        const SweepRecord& rec = result.records[base + si];
                        if (rec.failed) continue;
                        ok = true;
                        s = rec.s;
                        max_e = std::max(max_e, rec.e_count);
                    }
                    if (!ok) continue;
                    double lp = std::log(static_cast<double>(config.primes[pi]));
                    // Zero counts are clamped to 1 so the fit stays defined.
                    xs.push_back(lp);
                    ys.push_back(std::log(
                        static_cast<double>(std::max<std::size_t>(max_e, 1)) / lp));
                }
                SlopeEstimate est;
                est.n = n;
                est.k = k;
                est.a = a;
                est.s_entry = s_entry;
                est.t_bound = main_exponent(n, k, a, s);
                if (xs.size() >= 2) {
                    double mx = 0, my = 0;
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        mx += xs[i];
                        my += ys[i];
                    }
                    mx /= static_cast<double>(xs.size());
                    my /= static_cast<double>(xs.size());
                    double num = 0, den = 0;
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                        num += (xs[i] - mx) * (ys[i] - my);
                        den += (xs[i] - mx) * (xs[i] - mx);
                    }
                    est.slope = num / den;
                }
                result.summary.slopes.push_back(est);
                ++cell;
            }
        }
    }
    return result;
}

namespace {
const char* kCsvHeader =
    "p,n,k,a,s,card,e_count,m,main_ratio,falconer_ratio,falconer_remark_ratio,"
    "in_range,construction,seed,status";
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
    out << "# ffproj-sweep-csv v1\n" << kCsvHeader << "\n";
    for (const SweepRecord& r : records) {
        std::string status = "ok";
        if (r.failed) {
            status = "failed:" + r.error;
            for (char& c : status)
                if (c == ',' || c == '\n') c = ';';
        }
        out << r.p << ',' << r.n << ',' << r.k << ',' << fmt_double(r.a) << ','
            << fmt_double(r.s) << ',' << r.cardinality << ',' << r.e_count << ','
            << r.overlap_m << ',' << fmt_double(r.main_ratio) << ','
            << fmt_double(r.falconer_ratio) << ','
            << fmt_double(r.falconer_remark_ratio) << ',' << (r.in_range ? 1 : 0)
            << ',' << r.construction << ',' << r.seed << ',' << status << '\n';
    }
}

std::string csv_string(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

std::vector<SweepRecord> read_csv(std::istream& in) {
    std::vector<SweepRecord> out;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!saw_header) {
            if (line != kCsvHeader)
                throw std::invalid_argument("sweep csv: unexpected column header");
            saw_header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream is(line);
        std::string cell;
        while (std::getline(is, cell, ',')) cells.push_back(cell);
        if (cells.size() != 15)
            throw std::invalid_argument("sweep csv: wrong number of columns");
        SweepRecord r;
        r.p = std::stoull(cells[0]);
        r.n = std::stoull(cells[1]);
        r.k = std::stoull(cells[2]);
        r.a = std::stod(cells[3]);
        r.s = std::stod(cells[4]);
        r.cardinality = std::stoull(cells[5]);
        r.e_count = std::stoull(cells[6]);
        r.overlap_m = std::stoull(cells[7]);
        r.main_ratio = std::stod(cells[8]);
        r.falconer_ratio = std::stod(cells[9]);
        r.falconer_remark_ratio = std::stod(cells[10]);
        r.in_range = cells[11] == "1";
        r.construction = cells[12];
        r.seed = std::stoull(cells[13]);
        if (cells[14] != "ok") {
            r.failed = true;
            if (cells[14].rfind("failed:", 0) == 0) r.error = cells[14].substr(7);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_json(std::ostream& out, const SweepResult& result) {
    nlohmann::json doc;
    doc["format"] = "ffproj-sweep-json v1";
    doc["records"] = nlohmann::json::array();
    for (const SweepRecord& r : result.records) {
        nlohmann::json row;
        row["p"] = r.p;
        row["n"] = r.n;
        row["k"] = r.k;
        row["a"] = r.a;
        row["s"] = r.s;
        row["card"] = r.cardinality;
        row["e_count"] = r.e_count;
        row["m"] = r.overlap_m;
        row["main_ratio"] = r.main_ratio;
        row["falconer_ratio"] = r.falconer_ratio;
        row["falconer_remark_ratio"] = r.falconer_remark_ratio;
        row["in_range"] = r.in_range;
        row["construction"] = r.construction;
        row["seed"] = r.seed;
        row["status"] = r.failed ? "failed" : "ok";
        if (r.failed) row["error"] = r.error;
        doc["records"].push_back(std::move(row));
    }
    nlohmann::json summary;
    summary["max_falconer_ratio"] = result.summary.max_falconer_ratio;
    summary["max_falconer_remark_ratio"] = result.summary.max_falconer_remark_ratio;
    summary["slopes"] = nlohmann::json::array();
    for (const SlopeEstimate& e : result.summary.slopes) {
        summary["slopes"].push_back({{"n", e.n},
                                     {"k", e.k},
                                     {"a", e.a},
                                     {"s_entry", e.s_entry},
                                     {"slope", e.slope},
                                     {"t_bound", e.t_bound}});
    }
    doc["summary"] = std::move(summary);
    out << doc.dump(2) << '\n';
}

void write_summary(std::ostream& out, const SweepSummary& summary) {
    out << "max falconer ratio (M-form):   " << fmt_double(summary.max_falconer_ratio)
        << "\nmax falconer ratio (remark):   "
        << fmt_double(summary.max_falconer_remark_ratio) << '\n';
    for (const SlopeEstimate& e : summary.slopes) {
        out << "slope n=" << e.n << " k=" << e.k << " a=" << fmt_double(e.a)
            << " s_entry=" << fmt_double(e.s_entry) << ": "
            << fmt_double(e.slope) << " (t=" << fmt_double(e.t_bound) << ")\n";
    }
}

}  // namespace ffproj
