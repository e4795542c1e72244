#include "kharmonic/cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kharmonic/closedform.hpp"
#include "kharmonic/hopf.hpp"
#include "kharmonic/polysolve.hpp"
#include "kharmonic/tension.hpp"

namespace kharmonic {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

// Pinned check tolerances surfaced in reports.
constexpr double kNormTol = 1e-12;
constexpr double kFiberTol = 1e-12;
constexpr double kDilationTol = 1e-5;
constexpr double kVerticalTol = 1e-7;

std::optional<Family> family_from_name(const std::string& s) {
    if (s == "clifford") return Family::CliffordTorus;
    if (s == "product") return Family::ProductSphereSubmersion;
    if (s == "hypersurface") return Family::HypersurfaceSubmersion;
    if (s == "smallsphere") return Family::SmallSphere;
    return std::nullopt;
}

bool has_second_dim(Family f) {
    return f == Family::CliffordTorus || f == Family::ProductSphereSubmersion;
}

// One serialized root row (CSV: family,d1,d2,k,parameter,residual,excluded_flag).
struct RootRecord {
    Family family{};
    int d1 = 0, d2 = 0, k = 0;
    double parameter = 0, parameter_squared = 0;
    int multiplicity = 1;
    double residual = 0;  // meaningful only when !excluded
    bool excluded = false;
};

std::vector<RootRecord> records_from_report(const RootReport& rep) {
    std::vector<RootRecord> rows;
    for (const auto& r : rep.proper_roots)
        rows.push_back({rep.family, rep.d1, rep.d2, rep.k, r.value, r.value_squared,
                        r.multiplicity, r.residual, false});
    for (const auto& e : rep.excluded) {
        double sq = to_double(e.value_squared);
        rows.push_back({rep.family, rep.d1, rep.d2, rep.k, std::sqrt(sq), sq, e.multiplicity,
                        0.0, true});
    }
    return rows;
}

json record_json(const RootRecord& r) {
    json j{{"family", family_name(r.family)},
           {"d1", r.d1},
           {"k", r.k},
           {"parameter", r.parameter},
           {"parameter_squared", r.parameter_squared},
           {"multiplicity", r.multiplicity},
           {"excluded", r.excluded}};
    if (has_second_dim(r.family)) j["d2"] = r.d2;
    if (!r.excluded) j["residual"] = r.residual;
    return j;
}

void write_records_csv(std::ostream& os, const std::vector<RootRecord>& rows) {
    os << "family,d1,d2,k,parameter,residual,excluded_flag\n";
    for (const auto& r : rows) {
        os << family_name(r.family) << ',' << r.d1 << ',';
        if (has_second_dim(r.family)) os << r.d2;
        os << ',' << r.k << ',' << format_double(r.parameter) << ',';
        if (!r.excluded) os << format_double(r.residual);
        os << ',' << (r.excluded ? 1 : 0) << '\n';
    }
}

void write_records_table(std::ostream& os, const std::vector<RootRecord>& rows) {
    if (rows.empty()) {
        os << "(no roots in the domain)\n";
        return;
    }
    for (const auto& r : rows) {
        os << family_name(r.family) << " d1=" << r.d1;
        if (has_second_dim(r.family)) os << " d2=" << r.d2;
        os << " k=" << r.k << (r.excluded ? "  excluded" : "  proper  ")
           << " parameter=" << format_double(r.parameter)
           << " squared=" << format_double(r.parameter_squared) << " mult=" << r.multiplicity;
        if (!r.excluded) os << " residual=" << format_double(r.residual);
        os << '\n';
    }
}

int emit(const RunConfig& cfg, std::ostream& out, std::ostream& err,
         const std::function<void(std::ostream&)>& writer) {
    if (cfg.output_path.empty()) {
        writer(out);
        return 0;
    }
    std::ofstream f(cfg.output_path);
    if (!f) {
        err << "cannot open output path: " << cfg.output_path << '\n';
        return 2;
    }
    writer(f);
    return 0;
}

int emit_root_rows(const RunConfig& cfg, const char* command, const json& inputs,
                   const std::vector<RootRecord>& rows, std::ostream& out, std::ostream& err) {
    auto writer = [&](std::ostream& os) {
        switch (cfg.format) {
            case OutputFormat::Json: {
                json doc{{"command", command}, {"inputs", inputs}, {"passed", true}};
                json results = json::array();
                json residuals = json::array();
                for (const auto& r : rows) {
                    results.push_back(record_json(r));
                    if (!r.excluded) residuals.push_back(r.residual);
                }
                doc["results"] = std::move(results);
                doc["residuals"] = std::move(residuals);
                os << doc.dump(2) << '\n';
                break;
            }
            case OutputFormat::Csv:
                write_records_csv(os, rows);
                break;
            case OutputFormat::Table:
                write_records_table(os, rows);
                break;
        }
    };
    return emit(cfg, out, err, writer);
}

int run_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.family) {
        err << "classify: --family is required\n";
        return 2;
    }
    RootReport rep;
    try {
        rep = classify(*cfg.family, cfg.d1, cfg.d2, cfg.k, cfg.root_tol, cfg.residual_tol);
    } catch (const std::invalid_argument& e) {
        err << "classify: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        err << "classify: certification failed: " << e.what() << '\n';
        return 1;
    }
    json inputs{{"family", family_name(*cfg.family)}, {"d1", cfg.d1},      {"d2", cfg.d2},
                {"k", cfg.k},                         {"root_tol", cfg.root_tol},
                {"residual_tol", cfg.residual_tol}};
    return emit_root_rows(cfg, "classify", inputs, records_from_report(rep), out, err);
}

struct GridPoint {
    Family family{};
    int d1 = 0, d2 = 0, k = 0;
};

int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.k_min < 2 || cfg.k_max < cfg.k_min) {
        err << "scan: need 2 <= k-min <= k-max\n";
        return 2;
    }
    if (cfg.max_dim < 2) {
        err << "scan: need max-dim >= 2\n";
        return 2;
    }
    if (!cfg.allow_large && (cfg.max_dim > 12 || cfg.k_max > 12)) {
        err << "scan: grid exceeds the default caps (max-dim, k <= 12); "
               "pass --allow-large to lift them\n";
        return 2;
    }
    if (!(cfg.root_tol > 0) || !(cfg.residual_tol > 0)) {
        err << "scan: tolerances must be positive\n";
        return 2;
    }

    std::vector<Family> fams;
    if (cfg.family)
        fams = {*cfg.family};
    else
        fams = {Family::SmallSphere, Family::CliffordTorus, Family::HypersurfaceSubmersion,
                Family::ProductSphereSubmersion};

    std::vector<GridPoint> grid;
    for (Family f : fams) {
        for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
            switch (f) {
                case Family::SmallSphere:
                case Family::HypersurfaceSubmersion:
                    for (int n = 1; n <= cfg.max_dim; ++n) grid.push_back({f, n, 0, k});
                    break;
                case Family::CliffordTorus:
                    for (int m = 2; m <= cfg.max_dim; ++m)
                        for (int p = 1; p <= m - 1; ++p) grid.push_back({f, m, p, k});
                    break;
                case Family::ProductSphereSubmersion:
                    for (int n1 = 1; n1 <= cfg.max_dim - 1; ++n1)
                        for (int n2 = 1; n1 + n2 <= cfg.max_dim; ++n2)
                            grid.push_back({f, n1, n2, k});
                    break;
            }
        }
    }

    // Concurrent evaluation, deterministic assembly: slots are pre-indexed by
    // grid order and written independently.
    std::vector<std::vector<RootRecord>> slots(grid.size());
    std::vector<std::string> failures(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < grid.size();) {
            const GridPoint& g = grid[i];
            try {
                slots[i] = records_from_report(
                    classify(g.family, g.d1, g.d2, g.k, cfg.root_tol, cfg.residual_tol));
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, std::max<size_t>(grid.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    bool failed = false;
    std::vector<RootRecord> rows;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!failures[i].empty()) {
            const GridPoint& g = grid[i];
            err << "scan: " << family_name(g.family) << " d1=" << g.d1 << " d2=" << g.d2
                << " k=" << g.k << ": " << failures[i] << '\n';
            failed = true;
            continue;
        }
        rows.insert(rows.end(), slots[i].begin(), slots[i].end());
    }
    if (failed) return 1;

    json inputs{{"k_min", cfg.k_min},       {"k_max", cfg.k_max},
                {"max_dim", cfg.max_dim},   {"root_tol", cfg.root_tol},
                {"residual_tol", cfg.residual_tol}};
    if (cfg.family) inputs["family"] = family_name(*cfg.family);
    return emit_root_rows(cfg, "scan", inputs, rows, out, err);
}

// ---- closed-form audit ----

struct FormulaRecord {
    std::string formula;
    std::string params;
    std::vector<double> values;
    double residual = 0;
    bool applicable = true;
    std::string source, diagnostic;
    bool certified = false;   // matches the classifier's certified roots
    bool audit_pass = false;  // certified, or inapplicable with a diagnostic
};

bool square_on_some_root(double squared, const RootReport& rep, double tol) {
    for (const auto& pr : rep.proper_roots)
        if (std::abs(pr.value_squared - squared) <= tol) return true;
    return false;
}

// Set equality between candidate squares and the certified proper roots.
bool squares_exhaust_roots(const std::vector<double>& squares, const RootReport& rep,
                           double tol) {
    if (squares.size() != rep.proper_roots.size()) return false;
    for (double s : squares)
        if (!square_on_some_root(s, rep, tol)) return false;
    for (const auto& pr : rep.proper_roots) {
        bool hit = false;
        for (double s : squares)
            if (std::abs(pr.value_squared - s) <= tol) hit = true;
        if (!hit) return false;
    }
    return true;
}

void finish_record(FormulaRecord& rec, const ClosedFormResult& r, bool certified) {
    rec.values = r.values;
    rec.residual = r.residual;
    rec.applicable = r.applicable;
    rec.source = r.source;
    rec.diagnostic = r.diagnostic;
    rec.certified = certified;
    rec.audit_pass = r.applicable ? certified : !r.diagnostic.empty();
}

std::vector<FormulaRecord> audit_closed_forms() {
    std::vector<FormulaRecord> recs;

    for (int k = 2; k <= 10; ++k) {
        ClosedFormResult r = balanced_clifford(k);
        RootReport rep = classify(Family::CliffordTorus, 2, 1, k);
        std::vector<double> squares;
        for (double v : r.values) squares.push_back(v * v);
        FormulaRecord rec;
        rec.formula = "balanced_clifford";
        rec.params = "m=2 p=1 k=" + std::to_string(k);
        finish_record(rec, r, squares_exhaust_roots(squares, rep, 1e-10));
        recs.push_back(std::move(rec));
    }

    // Distinct torus ratios a = (m-p)/p from small dimensions, skipping the
    // balanced a = 1 (covered above; the cube-root base degenerates there).
    std::map<Rational, std::pair<int, int>> ratios;
    for (int m = 3; m <= 8; ++m)
        for (int p = 1; p <= m - 1; ++p)
            if (m != 2 * p) ratios.emplace(rat(m - p, p), std::make_pair(m, p));
    for (const auto& [a, dims] : ratios) {
        for (int k = 3; k <= 6; ++k) {
            ClosedFormResult r = cardano_clifford(to_double(a), k);
            FormulaRecord rec;
            rec.formula = "cardano_clifford";
            rec.params = "a=" + rat_str(a) + " (m=" + std::to_string(dims.first) +
                         " p=" + std::to_string(dims.second) + ") k=" + std::to_string(k);
            bool certified = false;
            if (r.applicable) {
                RootReport rep = classify(Family::CliffordTorus, dims.first, dims.second, k);
                certified = square_on_some_root(r.values[0] * r.values[0], rep, 1e-9);
            }
            finish_record(rec, r, certified);
            recs.push_back(std::move(rec));
        }
    }

    for (int k = 2; k <= 10; ++k) {
        ClosedFormResult r = balanced_product(k);
        RootReport rep = classify(Family::ProductSphereSubmersion, 1, 1, k);
        // Pairs are (r1, r2); the classified parameter is r1.
        std::vector<double> squares;
        for (size_t i = 0; i + 1 < r.values.size(); i += 2)
            squares.push_back(r.values[i] * r.values[i]);
        FormulaRecord rec;
        rec.formula = "balanced_product";
        rec.params = "n1=1 n2=1 k=" + std::to_string(k);
        finish_record(rec, r, squares_exhaust_roots(squares, rep, 1e-10));
        recs.push_back(std::move(rec));
    }

    for (int k = 2; k <= 10; ++k) {
        double a = hypersurface_radius(k);
        RootReport rep = classify(Family::HypersurfaceSubmersion, 2, 0, k);
        bool certified = rep.proper_roots.size() == 1 &&
                         std::abs(rep.proper_roots[0].value_squared - a * a) <= 1e-12;
        for (int n = 1; n <= 5 && certified; ++n) {
            ScalarInvariants inv = invariants(make_hypersurface(n, a));
            certified = normalized_total(tau_k(inv, k)) <= 1e-10;
        }
        FormulaRecord rec;
        rec.formula = "hypersurface_radius";
        rec.params = "k=" + std::to_string(k);
        rec.values = {a};
        rec.residual = scaled_residual(master_hypersurface(2, k).poly, a * a);
        rec.source = "radius 1/sqrt(k)";
        rec.certified = certified;
        rec.audit_pass = certified;
        recs.push_back(std::move(rec));
    }

    auto audit_radicals = [&recs](int c, int k) {
        ClosedFormResult r = product_radicals(c, k);
        FormulaRecord rec;
        rec.formula = "product_radicals";
        rec.params = "n1=1 n2=" + std::to_string(c) + " k=" + std::to_string(k);
        bool certified = false;
        if (r.applicable) {
            RootReport rep = classify(Family::ProductSphereSubmersion, 1, c, k);
            certified = square_on_some_root(r.values[0] * r.values[0], rep, 1e-9) &&
                        std::abs(r.values[0] * r.values[0] + r.values[1] * r.values[1] - 1.0) <=
                            1e-10;
        }
        finish_record(rec, r, certified);
        recs.push_back(std::move(rec));
    };
    audit_radicals(2, 3);
    for (int c = 2; c <= 6; ++c) audit_radicals(c, 4);

    return recs;
}

int run_verify_closed_forms(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format == OutputFormat::Csv) {
        err << "csv output is defined for classify and scan only\n";
        return 2;
    }
    std::vector<FormulaRecord> recs = audit_closed_forms();
    bool passed = true;
    for (const auto& r : recs) passed = passed && r.audit_pass;

    auto writer = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Json) {
            json doc{{"command", "verify-closed-forms"}, {"inputs", json::object()}};
            json results = json::array();
            json residuals = json::array();
            for (const auto& r : recs) {
                json j{{"formula", r.formula},     {"params", r.params},
                       {"values", r.values},       {"residual", r.residual},
                       {"applicable", r.applicable}, {"source", r.source},
                       {"diagnostic", r.diagnostic}, {"certified", r.certified},
                       {"audit_pass", r.audit_pass}};
                results.push_back(std::move(j));
                if (r.applicable) residuals.push_back(r.residual);
            }
            doc["results"] = std::move(results);
            doc["residuals"] = std::move(residuals);
            doc["passed"] = passed;
            os << doc.dump(2) << '\n';
        } else {
            for (const auto& r : recs) {
                os << (r.audit_pass ? "[PASS] " : "[FAIL] ") << r.formula << ' ' << r.params;
                if (r.applicable)
                    os << "  residual=" << format_double(r.residual);
                else
                    os << "  inapplicable: " << r.diagnostic;
                os << '\n';
            }
            os << (passed ? "all formulas audited: pass\n" : "formula audit failed\n");
        }
    };
    int code = emit(cfg, out, err, writer);
    if (code != 0) return code;
    return passed ? 0 : 1;
}

int run_tension(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format == OutputFormat::Csv) {
        err << "csv output is defined for classify and scan only\n";
        return 2;
    }
    if (cfg.m_eff < 1 || cfg.beta < 0 || cfg.tau2 < 0 || cfg.k < 2 ||
        !(cfg.residual_tol > 0)) {
        err << "tension: need m-eff >= 1, beta >= 0, tau2 >= 0, k >= 2, positive tolerance\n";
        return 2;
    }
    ScalarInvariants inv;
    inv.m_eff = cfg.m_eff;
    inv.beta = cfg.beta;
    inv.tau2 = cfg.tau2;
    TensionEvaluation ev = tau_k(inv, cfg.k);
    double id_res = identity_residual(ev);
    double norm_res = normalized_total(ev);
    bool passed = id_res <= cfg.residual_tol;

    auto writer = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Json) {
            json doc{{"command", "tension"},
                     {"inputs",
                      {{"m_eff", cfg.m_eff},
                       {"beta", cfg.beta},
                       {"tau2", cfg.tau2},
                       {"k", cfg.k},
                       {"residual_tol", cfg.residual_tol}}},
                     {"results",
                      json::array({json{{"leading_term", ev.leading_term},
                                        {"curvature_term", ev.curvature_term},
                                        {"cross_terms", ev.cross_terms},
                                        {"total", ev.total},
                                        {"factored_total", ev.factored_total},
                                        {"identity_residual", id_res},
                                        {"normalized_total", norm_res}}})},
                     {"residuals", json::array({id_res})},
                     {"passed", passed}};
            os << doc.dump(2) << '\n';
        } else {
            os << "k=" << cfg.k << " m_eff=" << cfg.m_eff << " beta=" << format_double(cfg.beta)
               << " tau2=" << format_double(cfg.tau2) << '\n'
               << "leading=" << format_double(ev.leading_term)
               << " curvature=" << format_double(ev.curvature_term) << " cross=[";
            for (size_t i = 0; i < ev.cross_terms.size(); ++i)
                os << (i ? ", " : "") << format_double(ev.cross_terms[i]);
            os << "]\n"
               << "total=" << format_double(ev.total)
               << " factored_total=" << format_double(ev.factored_total) << '\n'
               << "identity_residual=" << format_double(id_res)
               << " normalized_total=" << format_double(norm_res) << '\n'
               << (passed ? "passed\n" : "identity check failed\n");
        }
    };
    int code = emit(cfg, out, err, writer);
    if (code != 0) return code;
    return passed ? 0 : 1;
}

int run_hopf_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.format == OutputFormat::Csv) {
        err << "csv output is defined for classify and scan only\n";
        return 2;
    }
    if (cfg.k < 2 || cfg.points < 1 || cfg.fiber_samples < 2 || cfg.step < 1e-8 ||
        cfg.step > 1e-4) {
        err << "hopf-check: need k >= 2, points >= 1, fiber-samples >= 2, "
               "step in [1e-8, 1e-4]\n";
        return 2;
    }
    std::mt19937 rng(cfg.seed);
    double expect_norm = 1.0 / std::sqrt(double(cfg.k));
    double max_norm_dev = 0, max_fiber = 0, max_vert = 0;
    std::vector<double> svals;
    svals.reserve(size_t(cfg.points) * 2);
    for (int i = 0; i < cfg.points; ++i) {
        HopfPoint p = random_hopf_point(cfg.k, rng);
        auto im = hopf_map(p);
        double norm = std::sqrt(im[0] * im[0] + im[1] * im[1] + im[2] * im[2]);
        max_norm_dev = std::max(max_norm_dev, std::abs(norm - expect_norm));
        max_fiber = std::max(max_fiber, fiber_invariance_check(p, cfg.fiber_samples));
        SubmersionReport rep = submersion_check(p, cfg.step);
        svals.push_back(rep.singular_values[0]);
        svals.push_back(rep.singular_values[1]);
        max_vert = std::max(max_vert, rep.vertical_image_norm);
    }
    double dilation = 0;
    for (double s : svals) dilation += s;
    dilation /= double(svals.size());
    double max_dilation_dev = 0;
    for (double s : svals) max_dilation_dev = std::max(max_dilation_dev, std::abs(s - dilation));

    bool passed = max_norm_dev <= kNormTol && max_fiber <= kFiberTol &&
                  max_dilation_dev <= kDilationTol && max_vert <= kVerticalTol;

    auto writer = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Json) {
            json doc{{"command", "hopf-check"},
                     {"inputs",
                      {{"k", cfg.k},
                       {"points", cfg.points},
                       {"fiber_samples", cfg.fiber_samples},
                       {"step", cfg.step},
                       {"seed", cfg.seed}}},
                     {"results",
                      json::array({json{{"max_norm_deviation", max_norm_dev},
                                        {"max_fiber_deviation", max_fiber},
                                        {"dilation", dilation},
                                        {"max_dilation_deviation", max_dilation_dev},
                                        {"max_vertical_norm", max_vert},
                                        {"image_radius", expect_norm}}})},
                     {"residuals",
                      json::array({max_norm_dev, max_fiber, max_dilation_dev, max_vert})},
                     {"passed", passed}};
            os << doc.dump(2) << '\n';
        } else {
            os << "k=" << cfg.k << " points=" << cfg.points
               << " fiber_samples=" << cfg.fiber_samples << " step=" << format_double(cfg.step)
               << " seed=" << cfg.seed << '\n'
               << "max image-norm deviation: " << format_double(max_norm_dev) << " (tol 1e-12)\n"
               << "max fiber deviation:      " << format_double(max_fiber) << " (tol 1e-12)\n"
               << "common dilation constant: " << format_double(dilation)
               << ", max deviation " << format_double(max_dilation_dev) << " (tol 1e-5)\n"
               << "max vertical image norm:  " << format_double(max_vert) << " (tol 1e-7)\n"
               << (passed ? "passed\n" : "hopf checks failed\n");
        }
    };
    int code = emit(cfg, out, err, writer);
    if (code != 0) return code;
    return passed ? 0 : 1;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, int& exit_code,
                                    std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Classifier and verifier for k-harmonic sphere maps"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file");

    std::string format_str = "table";
    app.add_option("--format", format_str, "Output format: table, json, csv")
        ->envname("KHARM_FORMAT")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--output", cfg.output_path, "Write the report to this path");

    std::string family_str;
    int m = 0, p = 0, n = 0, n1 = 0, n2 = 0;

    CLI::App* c_cmd = app.add_subcommand(
        "classify", "Certify the proper parameters of one family instance");
    c_cmd->fallthrough();
    c_cmd->add_option("--family", family_str, "clifford, product, hypersurface, smallsphere")
        ->required();
    c_cmd->add_option("--m", m, "torus: ambient dimension m");
    c_cmd->add_option("--p", p, "torus: first factor dimension p");
    c_cmd->add_option("--n", n, "hypersurface / small sphere: dimension n");
    c_cmd->add_option("--n1", n1, "product: first sphere dimension");
    c_cmd->add_option("--n2", n2, "product: second sphere dimension");
    c_cmd->add_option("--k", cfg.k, "tension order k >= 2")->required();
    c_cmd->add_option("--root-tol", cfg.root_tol, "isolating interval width");
    c_cmd->add_option("--residual-tol", cfg.residual_tol, "tension residual gate");

    CLI::App* s_cmd =
        app.add_subcommand("scan", "Sweep the family grids and report every certified root");
    s_cmd->fallthrough();
    s_cmd->add_option("--family", family_str, "restrict to one family (default: all)");
    s_cmd->add_option("--max-dim", cfg.max_dim, "largest total dimension (default 10)");
    s_cmd->add_option("--k-min", cfg.k_min, "smallest order (default 2)");
    s_cmd->add_option("--k-max", cfg.k_max, "largest order (default 10)");
    s_cmd->add_flag("--allow-large", cfg.allow_large, "lift the max-dim/k <= 12 caps");
    s_cmd->add_option("--root-tol", cfg.root_tol, "isolating interval width");
    s_cmd->add_option("--residual-tol", cfg.residual_tol, "tension residual gate");

    CLI::App* v_cmd = app.add_subcommand(
        "verify-closed-forms", "Audit the printed closed forms against certified roots");
    v_cmd->fallthrough();

    CLI::App* t_cmd =
        app.add_subcommand("tension", "Evaluate the order-k tension stack on explicit data");
    t_cmd->fallthrough();
    t_cmd->add_option("--m-eff", cfg.m_eff, "effective domain dimension")->required();
    t_cmd->add_option("--beta", cfg.beta, "squared second-fundamental-form norm")->required();
    t_cmd->add_option("--tau2", cfg.tau2, "squared tension norm")->required();
    t_cmd->add_option("--k", cfg.k, "tension order k >= 2")->required();
    t_cmd->add_option("--residual-tol", cfg.residual_tol, "identity residual gate");

    CLI::App* h_cmd =
        app.add_subcommand("hopf-check", "Run the scaled fiber-map checks on S^3(sqrt k)");
    h_cmd->fallthrough();
    h_cmd->add_option("--k", cfg.k, "sphere scale k >= 2")->required();
    h_cmd->add_option("--points", cfg.points, "random sample size (default 1000)");
    h_cmd->add_option("--fiber-samples", cfg.fiber_samples, "angles per fiber (default 16)");
    h_cmd->add_option("--step", cfg.step, "difference step in [1e-8, 1e-4]");
    h_cmd->add_option("--seed", cfg.seed, "sample seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        exit_code = code == 0 ? 0 : 2;
        return std::nullopt;
    }

    if (format_str == "json")
        cfg.format = OutputFormat::Json;
    else if (format_str == "csv")
        cfg.format = OutputFormat::Csv;
    else
        cfg.format = OutputFormat::Table;

    if (!family_str.empty()) {
        cfg.family = family_from_name(family_str);
        if (!cfg.family) {
            err << "unknown family: " << family_str << '\n';
            exit_code = 2;
            return std::nullopt;
        }
    }

    if (c_cmd->parsed()) {
        cfg.command = Command::Classify;
        if (cfg.family) {
            switch (*cfg.family) {
                case Family::CliffordTorus:
                    cfg.d1 = m;
                    cfg.d2 = p;
                    break;
                case Family::ProductSphereSubmersion:
                    cfg.d1 = n1;
                    cfg.d2 = n2;
                    break;
                case Family::HypersurfaceSubmersion:
                case Family::SmallSphere:
                    cfg.d1 = n;
                    cfg.d2 = 0;
                    break;
            }
        }
    } else if (s_cmd->parsed()) {
        cfg.command = Command::Scan;
    } else if (v_cmd->parsed()) {
        cfg.command = Command::VerifyClosedForms;
    } else if (t_cmd->parsed()) {
        cfg.command = Command::Tension;
    } else if (h_cmd->parsed()) {
        cfg.command = Command::HopfCheck;
    }

    exit_code = 0;
    return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case Command::Classify: return run_classify(config, out, err);
        case Command::Scan: return run_scan(config, out, err);
        case Command::VerifyClosedForms: return run_verify_closed_forms(config, out, err);
        case Command::Tension: return run_tension(config, out, err);
        case Command::HopfCheck: return run_hopf_check(config, out, err);
    }
    err << "unknown command\n";
    return 2;
}

}  // namespace kharmonic
