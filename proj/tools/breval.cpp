// breval: score, decompose, and compare real-valued point predictors with
// Bregman divergences; reproduce the built-in worked examples.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bregman/curves.hpp"
#include "bregman/decomp.hpp"
#include "bregman/dominance.hpp"
#include "bregman/io.hpp"
#include "bregman/losses.hpp"
#include "bregman/sample.hpp"
#include "bregman/scenarios.hpp"
#include "bregman/stats.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace bregman;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_reproduction = 3;

struct LossSpec {
    enum class Kind { tweedie, atoms, ecdf } kind = Kind::tweedie;
    double power = 0.0;
    std::vector<MixingMeasure::Atom> atoms;
    std::string ecdf_column;
    std::string text;
};

// grammar: tweedie:<p> | atoms:<t1=m1,t2=m2,...> | ecdf:<predictor>
LossSpec parse_loss_spec(const std::string& text) {
    LossSpec spec;
    spec.text = text;
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw validation_error(validation_error::code::out_of_range, "loss spec '" + text + "': missing ':'");
    const std::string head = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);
    if (head == "tweedie") {
        spec.kind = LossSpec::Kind::tweedie;
        spec.power = std::stod(body);
    } else if (head == "atoms") {
        spec.kind = LossSpec::Kind::atoms;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw validation_error(validation_error::code::out_of_range,
                                       "loss spec '" + text + "': atom '" + item + "' is not theta=mass");
            spec.atoms.push_back({std::stod(item.substr(0, eq)), std::stod(item.substr(eq + 1))});
        }
        if (spec.atoms.empty())
            throw validation_error(validation_error::code::out_of_range, "loss spec '" + text + "': no atoms");
    } else if (head == "ecdf") {
        spec.kind = LossSpec::Kind::ecdf;
        spec.ecdf_column = body;
        if (body.empty())
            throw validation_error(validation_error::code::out_of_range, "loss spec '" + text + "': empty column");
    } else {
        throw validation_error(validation_error::code::out_of_range, "loss spec '" + text + "': unknown kind '" + head + "'");
    }
    return spec;
}

struct CommonOptions {
    std::string input;
    std::string response;
    std::string predictors_csv;
    std::vector<std::string> losses;
    std::size_t grid = 512;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::string recalibrate = "pav";
    std::string out = ".";
    bool weighted = false;
};

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct LoadedData {
    std::vector<PairedSample> samples;
    std::vector<std::string> names;
};

LoadedData load_samples(const CommonOptions& opt) {
    const auto table = read_csv(opt.input);
    if (!table.has_column(opt.response)) throw io_error("response column '" + opt.response + "' not in header");
    const auto names = split_names(opt.predictors_csv);
    if (names.empty()) throw validation_error(validation_error::code::empty_input, "no predictor columns given");
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    for (const auto& n : names) {
        if (!table.has_column(n)) throw io_error("predictor column '" + n + "' not in header");
        cols.emplace_back(n, table.column(n));
    }
    LoadedData d;
    d.samples = validate(table.column(opt.response), cols);
    d.names = names;
    return d;
}

std::pair<Recalibration, std::size_t> parse_recalibrate(const std::string& text) {
    if (text == "pav") return {Recalibration::pav, 0};
    if (text == "none") return {Recalibration::none, 0};
    if (text.rfind("bins:", 0) == 0) {
        const std::size_t k = static_cast<std::size_t>(std::stoul(text.substr(5)));
        if (k == 0) throw validation_error(validation_error::code::out_of_range, "--recalibrate bins:k needs k >= 1");
        return {Recalibration::bins, k};
    }
    throw validation_error(validation_error::code::out_of_range,
                           "--recalibrate must be pav, bins:<k>, or none (got '" + text + "')");
}

json json_number(double v) { return v; }

void write_report(const std::string& out_dir, const json& report) {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "report.json");
    if (!f) throw io_error("cannot write report.json under " + out_dir);
    f << report.dump(2) << '\n';
}

json base_report(const std::string& command, const CommonOptions& opt) {
    json r;
    r["schema_version"] = 1;
    r["command"] = command;
    r["seed"] = opt.seed;
    r["grid"] = opt.grid;
    r["tol"] = opt.tol;
    r["recalibrate"] = opt.recalibrate;
    return r;
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------
int cmd_score(const CommonOptions& opt) {
    const auto data = load_samples(opt);
    auto specs = opt.losses;
    if (specs.empty()) specs.push_back("tweedie:0");

    json report = base_report("score", opt);
    report["input"] = opt.input;
    report["response"] = opt.response;
    report["weighted"] = opt.weighted;
    json losses_json = json::array();

    for (const auto& spec_text : specs) {
        const auto spec = parse_loss_spec(spec_text);
        // per-predictor scores, computed concurrently, reduced in order
        std::vector<std::future<double>> futures;
        for (std::size_t i = 0; i < data.samples.size(); ++i) {
            futures.push_back(std::async(std::launch::async, [&, i]() -> double {
                const auto& s = data.samples[i];
                switch (spec.kind) {
                    case LossSpec::Kind::tweedie: {
                        const auto gen = tweedie_generator({spec.power});
                        return opt.weighted ? weighted_score(s, gen) : score(s, gen);
                    }
                    case LossSpec::Kind::atoms: {
                        if (opt.weighted)
                            throw validation_error(validation_error::code::out_of_range,
                                                   "--weighted requires a tweedie loss");
                        return score(s, MixingMeasure::from_atoms(spec.atoms));
                    }
                    case LossSpec::Kind::ecdf: {
                        if (opt.weighted)
                            throw validation_error(validation_error::code::out_of_range,
                                                   "--weighted requires a tweedie loss");
                        bool found = false;
                        std::vector<double> ref;
                        for (std::size_t j = 0; j < data.names.size(); ++j)
                            if (data.names[j] == spec.ecdf_column) {
                                ref = data.samples[j].x;
                                found = true;
                            }
                        if (!found)
                            throw io_error("ecdf loss refers to unknown predictor '" + spec.ecdf_column + "'");
                        return score(s, MixingMeasure::empirical_cdf(ref));
                    }
                }
                return 0.0;
            }));
        }
        json entry;
        entry["loss"] = spec_text;
        json scores = json::array();
        std::vector<std::pair<double, std::string>> ranking;
        for (std::size_t i = 0; i < futures.size(); ++i) {
            const double v = futures[i].get();
            json row;
            row["predictor"] = data.names[i];
            row["score"] = json_number(v);
            row["unbiasedness_gap"] = json_number(data.samples[i].unbiasedness_gap());
            scores.push_back(row);
            ranking.emplace_back(v, data.names[i]);
        }
        std::stable_sort(ranking.begin(), ranking.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        json order = json::array();
        for (const auto& [v, name] : ranking) order.push_back(name);
        entry["scores"] = scores;
        entry["ranking"] = order;
        losses_json.push_back(entry);
    }
    report["losses"] = losses_json;
    write_report(opt.out, report);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------
int cmd_decompose(const CommonOptions& opt) {
    const auto data = load_samples(opt);
    const auto [recal, bins_k] = parse_recalibrate(opt.recalibrate);
    auto specs = opt.losses;
    if (specs.empty()) specs.push_back("tweedie:0");

    json report = base_report("decompose", opt);
    report["input"] = opt.input;
    report["response"] = opt.response;
    json predictors = json::array();

    const auto grid = uniform_grid(opt.grid + 1);
    fs::create_directories(opt.out);

    // per-predictor work runs concurrently; the report is assembled in the
    // order the predictors were given (curve files have distinct names)
    auto build_entry = [&](std::size_t i) -> json {
        const auto& s = data.samples[i];
        json entry;
        entry["predictor"] = data.names[i];
        entry["unbiasedness_gap"] = json_number(s.unbiasedness_gap());

        json decomp_json = json::array();
        for (const auto& spec_text : specs) {
            const auto spec = parse_loss_spec(spec_text);
            DecompositionResult d;
            if (spec.kind == LossSpec::Kind::tweedie) {
                d = murphy_decomposition(s, tweedie_generator({spec.power}), recal, bins_k);
            } else if (spec.kind == LossSpec::Kind::atoms) {
                d = murphy_decomposition(s, MixingMeasure::from_atoms(spec.atoms), recal, bins_k);
            } else {
                d = murphy_decomposition(s, MixingMeasure::empirical_cdf(s.x), recal, bins_k);
            }
            json row;
            row["loss"] = spec_text;
            row["S"] = json_number(d.S);
            row["UNC"] = json_number(d.UNC);
            row["DSC"] = json_number(d.DSC);
            row["MCB"] = json_number(d.MCB);
            row["identity_residual"] = json_number(d.identity_residual());
            row["skill"] = json_number(d.UNC - d.S);
            row["recalibration"] = d.recalibration;
            decomp_json.push_back(row);
        }
        entry["decompositions"] = decomp_json;

        const auto a = abc(s);
        const auto a2 = abc_squared(s);
        const auto g = gini(s.x);
        entry["abc"] = json_number(a.abc);
        entry["abc_from_curves"] = json_number(a.abc_from_curves);
        entry["abc2"] = json_number(a2.abc2);
        entry["abc2_from_q"] = json_number(a2.abc2_from_q);
        entry["gini"] = json_number(g.value);
        entry["gini_max_discrepancy"] = json_number(g.max_discrepancy);
        entry["mcb_mse"] = json_number(mcb_mse(s, recal, bins_k));
        entry["dsc_mse"] = json_number(dsc_mse(s, recal, bins_k));

        // curve exports; the murphy knot grid (all distinct sample values)
        // is exact but grows with n, so large samples export on a uniform
        // grid of the requested size instead
        const std::string stem = (fs::path(opt.out) / data.names[i]).string();
        const auto lc = lorenz_curve(s.x, grid);
        const auto cc = concentration_curve(s, grid);
        write_curve_csv(stem + "_lorenz.csv", lc);
        write_curve_csv(stem + "_concentration.csv", cc);
        std::vector<double> theta;
        if (s.n() <= 8 * opt.grid) {
            theta = default_theta_grid(s, opt.grid);
        } else {
            const double top = std::max(*std::max_element(s.x.begin(), s.x.end()),
                                        *std::max_element(s.y.begin(), s.y.end()));
            theta = uniform_grid(opt.grid + 1, 0.0, 1.05 * top);
        }
        write_curve_csv(stem + "_murphy.csv", murphy_curve(s, theta));
        write_curve_csv(stem + "_q.csv", q_function(s, grid));
        entry["curves"] = {{"lorenz", data.names[i] + "_lorenz.csv"},
                           {"concentration", data.names[i] + "_concentration.csv"},
                           {"murphy", data.names[i] + "_murphy.csv"},
                           {"q", data.names[i] + "_q.csv"}};
        entry["lorenz_integral"] = json_number(lc.integral());
        entry["concentration_integral"] = json_number(cc.integral());
        return entry;
    };

    std::vector<std::future<json>> futures;
    for (std::size_t i = 0; i < data.samples.size(); ++i)
        futures.push_back(std::async(std::launch::async, build_entry, i));
    for (auto& f : futures) predictors.push_back(f.get());

    report["predictors"] = predictors;
    write_report(opt.out, report);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// dominance
// ---------------------------------------------------------------------------
int cmd_dominance(const CommonOptions& opt) {
    const auto data = load_samples(opt);
    const auto [recal, bins_k] = parse_recalibrate(opt.recalibrate);

    json report = base_report("dominance", opt);
    report["input"] = opt.input;
    const bool calibrated_analyses = recal != Recalibration::none;
    if (!calibrated_analyses)
        report["notice"] =
            "calibrated-only analyses skipped: rerun with --recalibrate pav (or bins:k) to compare "
            "recalibrated predictors";

    // analysis columns: recalibrated fit (calibrated analyses) or raw
    std::vector<std::vector<double>> cols;
    for (const auto& s : data.samples)
        cols.push_back(calibrated_analyses ? fitted_conditional_mean(s, recal, bins_k) : s.x);

    json pairs = json::array();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        for (std::size_t j = i + 1; j < cols.size(); ++j) {
            json entry;
            entry["first"] = data.names[i];
            entry["second"] = data.names[j];

            const auto lorenz = lorenz_dominance(cols[i], cols[j], opt.tol);
            entry["lorenz"] = relation_name(lorenz.relation);
            entry["lorenz_crossings"] = lorenz.crossings.sign_changes;

            if (calibrated_analyses) {
                PairedSample s1{data.samples[i].y, cols[i], true, data.names[i]};
                PairedSample s2{data.samples[j].y, cols[j], true, data.names[j]};
                const auto murphy = murphy_dominance(s1, s2, {}, opt.tol);
                entry["murphy"] = relation_name(murphy.relation);
                entry["murphy_crossings"] = murphy.crossings.sign_changes;

                const auto cons = crossing_consistency(cols[i], cols[j], data.samples[i].y, opt.tol);
                entry["cdf_crossings"] = cons.cdf_changes;
                entry["crossing_consistent"] = cons.consistent;

                if (lorenz.crossings.sign_changes == 1) {
                    try {
                        const auto sd = second_degree_lorenz(cols[i], cols[j], opt.tol);
                        entry["second_degree"] = {{"up_holds", sd.up_holds},
                                                  {"down_holds", sd.down_holds},
                                                  {"gini_first", json_number(sd.gini1)},
                                                  {"gini_second", json_number(sd.gini2)}};
                    } catch (const validation_error&) {
                        entry["second_degree"] = nullptr;  // crossing pattern not from-above
                    }
                    for (auto cls : {GeneratorClass::U, GeneratorClass::V}) {
                        const char* key = cls == GeneratorClass::U ? "class_U" : "class_V";
                        try {
                            const auto cv = bregman_dominance_class(cols[i], cols[j], data.samples[i].y,
                                                                    cls, opt.tol);
                            if (cv.abstained) {
                                entry[key] = "abstained";
                            } else {
                                entry[key] = cv.first_dominates ? "first_dominates" : "second_dominates";
                            }
                        } catch (const validation_error&) {
                            entry[key] = nullptr;
                        }
                    }
                }

                const double m1 = mean(cols[i]);
                const double m2 = mean(cols[j]);
                const double scale = std::max({1.0, m1, m2});
                if (std::abs(m1 - m2) <= 0.05 * scale) {
                    const auto third = third_degree_integrals(cols[i], cols[j], {}, 0.05);
                    entry["third_degree"] = {{"half_var_diff", json_number(third.half_var_diff)},
                                             {"lower_at_top", json_number(third.lower_at_top)},
                                             {"upper_at_zero", json_number(third.upper_at_zero)},
                                             {"var_first", json_number(third.var1)},
                                             {"var_second", json_number(third.var2)}};
                } else {
                    entry["third_degree"] = nullptr;
                }
            }
            pairs.push_back(entry);
        }
    }
    report["pairs"] = pairs;
    write_report(opt.out, report);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// reproduce: oracle-vs-empirical tables for the built-in examples
// ---------------------------------------------------------------------------
struct CheckRow {
    std::string name;
    double oracle;
    double empirical;
    double tolerance;
    bool pass;
    std::string note;
};

json check_table(std::vector<CheckRow>& rows, bool& all_pass) {
    json t = json::array();
    for (auto& r : rows) {
        r.pass = std::abs(r.empirical - r.oracle) <= r.tolerance;
        all_pass = all_pass && r.pass;
        json row;
        row["name"] = r.name;
        row["oracle"] = json_number(r.oracle);
        row["empirical"] = json_number(r.empirical);
        row["abs_diff"] = json_number(std::abs(r.empirical - r.oracle));
        row["tolerance"] = json_number(r.tolerance);
        row["pass"] = r.pass;
        if (!r.note.empty()) row["note"] = r.note;
        t.push_back(row);
    }
    return t;
}

void export_function(const std::string& path, const std::function<double(double)>& f,
                     std::span<const double> grid) {
    Curve c;
    c.grid.assign(grid.begin(), grid.end());
    c.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) c.values[i] = f(c.grid[i]);
    write_curve_csv(path, c);
}

int cmd_reproduce(int example, std::uint64_t seed, std::size_t n, const std::string& out_dir) {
    fs::create_directories(out_dir);
    json report;
    report["schema_version"] = 1;
    report["command"] = "reproduce";
    report["example"] = example;
    report["seed"] = seed;
    report["n"] = n;
    bool all_pass = true;
    std::vector<CheckRow> rows;
    const auto pgrid = uniform_grid(513);
    const fs::path out(out_dir);

    const LatentUniformScenario latent{0.9, 0.07};

    switch (example) {
        case 1: {
            const auto s = sample_latent(latent, n, seed);
            const auto rep = abc(s.pair2());
            rows.push_back({"abc_x2", 0.0, rep.abc, 2e-3, false, "area vanishes despite miscalibration"});
            const auto lc = lorenz_curve(s.x2, pgrid);
            const auto cc = concentration_curve(s.pair2(), pgrid);
            const auto cross = sign_changes(lc, cc, 1e-3);
            rows.push_back({"lorenz_concentration_crossings", 1.0, static_cast<double>(cross.sign_changes),
                            0.0, false, ""});
            write_curve_csv((out / "x2_lorenz.csv").string(), lc);
            write_curve_csv((out / "x2_concentration.csv").string(), cc);
            break;
        }
        case 2: {
            const auto o = latent_oracles(latent);
            const auto s = sample_latent(latent, n, seed);
            const auto a1 = abc(s.pair1());
            const auto a2 = abc(s.pair2());
            rows.push_back({"abc_x1", o.abc_x1, a1.abc, 2e-3, false, ""});
            rows.push_back({"abc_x2", 0.0, a2.abc, 2e-3, false, ""});
            rows.push_back({"mcb_mse_x1", o.mcb_x1, mcb_mse(s.pair1()), 5e-5, false, ""});
            rows.push_back({"mcb_mse_x2", o.mcb_x2, mcb_mse(s.pair2()), 5e-5, false, ""});
            const auto v = lorenz_dominance(s.x1, s.x2, 1e-3,
                                            std::span<const double>(pgrid.data(), pgrid.size()));
            rows.push_back({"lorenz_crossings", 1.0, static_cast<double>(v.crossings.sign_changes), 0.0,
                            false, "curves cross once, left of one half"});
            if (!v.crossings.locations.empty())
                rows.push_back({"lorenz_crossing_below_half", 1.0,
                                v.crossings.locations[0] < 0.5 ? 1.0 : 0.0, 0.0, false, ""});
            export_function((out / "x1_lorenz_oracle.csv").string(), o.lc1, pgrid);
            export_function((out / "x2_lorenz_oracle.csv").string(), o.lc2, pgrid);
            export_function((out / "concentration_oracle.csv").string(), o.cc, pgrid);
            write_curve_csv((out / "x1_lorenz.csv").string(), lorenz_curve(s.x1, pgrid));
            write_curve_csv((out / "x2_lorenz.csv").string(), lorenz_curve(s.x2, pgrid));
            break;
        }
        case 3: {
            const auto o = latent_oracles(latent);
            const auto s = sample_latent(latent, n, seed);
            rows.push_back({"abc_x1", o.abc_x1, abc(s.pair1()).abc, 2e-3, false, "printed value 0.0166"});
            rows.push_back({"abc2_x1", o.abc2_x1, abc_squared(s.pair1()).abc2, 5e-5, false,
                            "printed value 0.00033"});
            rows.push_back({"abc2_x2", o.abc2_x2, abc_squared(s.pair2()).abc2, 5e-5, false,
                            "printed value 0.00024"});
            rows.push_back({"mcb_mse_x1", o.mcb_x1, mcb_mse(s.pair1()), 5e-5, false, "printed value 0.00083"});
            rows.push_back({"mcb_mse_x2", o.mcb_x2, mcb_mse(s.pair2()), 5e-5, false,
                            "formula value 0.00245; a printed 0.0049 fails the Monte Carlo oracle"});
            export_function((out / "q1_oracle.csv").string(), o.q1, pgrid);
            export_function((out / "q2_oracle.csv").string(), o.q2, pgrid);
            write_curve_csv((out / "x1_q.csv").string(), q_function(s.pair1(), pgrid));
            write_curve_csv((out / "x2_q.csv").string(), q_function(s.pair2(), pgrid));
            break;
        }
        case 4: {
            const WeightedCounterexampleSpec spec{4.0, 1.0};
            const auto o = weighted_oracles(spec);
            const auto s = sample_weighted(spec, n, seed);
            const auto quad = tweedie_generator({0.0});
            const double w1 = weighted_score(s.pair1(), quad);
            const double w2 = weighted_score(s.pair2(), quad);
            rows.push_back({"weighted_score_x1", o.weighted_score_x1, w1, 1e-2, false, "exact rational 4/3"});
            rows.push_back({"weighted_score_x2", o.weighted_score_x2, w2, 1e-2, false,
                            "exact rational 5/6; a printed 7/6 fails the Monte Carlo oracle"});
            rows.push_back({"weighted_prefers_distorted", 1.0, w2 < w1 ? 1.0 : 0.0, 0.0, false,
                            "the exact conditional mean loses under rank weights"});
            rows.push_back({"unweighted_prefers_truth", 1.0,
                            score(s.pair1(), quad) < score(s.pair2(), quad) ? 1.0 : 0.0, 0.0, false, ""});
            break;
        }
        case 5: {
            const auto o1 = lognormal_oracles(example5_x1());
            const auto o2 = lognormal_oracles(example5_x2());
            rows.push_back({"gini_x1_analytic", 0.2107, o1.gini, 5e-4, false, ""});
            rows.push_back({"gini_x2_analytic", 0.2603, o2.gini, 5e-4, false, ""});
            rows.push_back({"var_x1_analytic", 334.9884, o1.var, 1e-2, false, ""});
            rows.push_back({"var_x2_analytic", 42.9570, o2.var, 1e-2, false, ""});
            const auto x1 = sample_lognormal(example5_x1(), n, seed, 1);
            const auto x2 = sample_lognormal(example5_x2(), n, seed, 2);
            rows.push_back({"gini_x1_empirical", o1.gini, gini(x1).value, 1e-2, false, ""});
            rows.push_back({"gini_x2_empirical", o2.gini, gini(x2).value, 1e-2, false, ""});
            // the sigma=2 fourth moment puts the sample variance std near 1e3;
            // an additive band is not attainable at this n, so the empirical
            // check is a factor-two sanity bound and the gap is reported
            const double v1 = variance(x1);
            rows.push_back({"var_x1_empirical_factor2", 1.0,
                            (v1 > 0.5 * o1.var && v1 < 2.0 * o1.var) ? 1.0 : 0.0, 0.0, false,
                            "sampled " + format_double(v1) + ", absolute gap " +
                                format_double(std::abs(v1 - o1.var))});
            const double v2 = variance(x2);
            rows.push_back({"var_x2_empirical", o2.var, v2, 2.0, false, ""});
            const auto v = lorenz_dominance(x1, x2, 1e-3, std::span<const double>(pgrid.data(), pgrid.size()));
            rows.push_back({"lorenz_crossings", 1.0, static_cast<double>(v.crossings.sign_changes), 0.0,
                            false, ""});
            export_function((out / "x1_lorenz_oracle.csv").string(), o1.lorenz, pgrid);
            export_function((out / "x2_lorenz_oracle.csv").string(), o2.lorenz, pgrid);
            write_curve_csv((out / "x1_lorenz.csv").string(), lorenz_curve(x1, pgrid));
            write_curve_csv((out / "x2_lorenz.csv").string(), lorenz_curve(x2, pgrid));
            break;
        }
        case 6: {
            const auto o1 = lognormal_oracles(example5_x1());
            const auto o2 = lognormal_oracles(example5_x2());
            const auto x1 = sample_lognormal(example5_x1(), n, seed, 1);
            const auto x2 = sample_lognormal(example5_x2(), n, seed, 2);
            const auto tgrid = uniform_grid(513, 0.0, 40.0);
            const auto c1 = discrimination_murphy_curve(x1, mean(x1), tgrid);
            const auto c2 = discrimination_murphy_curve(x2, mean(x2), tgrid);
            double max_err1 = 0.0, max_err2 = 0.0;
            for (std::size_t i = 0; i < tgrid.size(); ++i) {
                max_err1 = std::max(max_err1, std::abs(c1.values[i] - o1.murphy_disc(tgrid[i])));
                max_err2 = std::max(max_err2, std::abs(c2.values[i] - o2.murphy_disc(tgrid[i])));
            }
            rows.push_back({"murphy_disc_x1_sup_error", 0.0, max_err1, 5e-2, false,
                            "stop-loss reconstruction vs sampled curve"});
            rows.push_back({"murphy_disc_x2_sup_error", 0.0, max_err2, 5e-2, false, ""});
            // the discriminatory curves cross once from below
            Curve oc1, oc2;
            oc1.grid = oc2.grid = tgrid;
            oc1.values.resize(tgrid.size());
            oc2.values.resize(tgrid.size());
            for (std::size_t i = 0; i < tgrid.size(); ++i) {
                oc1.values[i] = o1.murphy_disc(tgrid[i]);
                oc2.values[i] = o2.murphy_disc(tgrid[i]);
            }
            const auto cross = sign_changes(oc1, oc2, 1e-9);
            rows.push_back({"disc_curve_crossings", 1.0, static_cast<double>(cross.sign_changes), 0.0,
                            false, ""});
            write_curve_csv((out / "x1_murphy_disc.csv").string(), c1);
            write_curve_csv((out / "x2_murphy_disc.csv").string(), c2);
            export_function((out / "x1_murphy_disc_oracle.csv").string(), o1.murphy_disc, tgrid);
            export_function((out / "x2_murphy_disc_oracle.csv").string(), o2.murphy_disc, tgrid);
            break;
        }
        case 7: {
            const auto o1 = lognormal_oracles(example5_x1());
            const auto o2 = lognormal_oracles(example5_x2());
            rows.push_back({"half_var_gap_analytic", 146.02, 0.5 * (o1.var - o2.var), 0.01, false, ""});
            const auto x1 = sample_lognormal(example5_x1(), n, seed, 1);
            const auto x2 = sample_lognormal(example5_x2(), n, seed, 2);
            const auto third = third_degree_integrals(x1, x2, {}, 0.05);
            rows.push_back({"upper_at_zero_vs_half_var_gap", -third.half_var_diff, third.upper_at_zero,
                            2.0, false, "identity on the sampled step CDFs"});
            const std::vector<double> p_neg = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0};
            const auto pts = example7_dsc_ratio(p_neg, n, seed);
            for (const auto& pt : pts)
                rows.push_back({"dsc_ratio_exceeds_one(p=" + format_double(pt.p) + ")", 1.0,
                                pt.ratio > 1.0 ? 1.0 : 0.0, 0.0, false, "ratio " + format_double(pt.ratio)});
            const std::vector<double> p_hi = {2.0, 2.5, 3.0};
            const auto pts_hi = example7_dsc_ratio(p_hi, n, seed);
            json suspended = json::array();
            for (const auto& pt : pts_hi) {
                json row;
                row["p"] = pt.p;
                row["ratio"] = json_number(pt.ratio);
                suspended.push_back(row);
            }
            report["ratio_beyond_two_reported_not_asserted"] = suspended;
            // curve exports: cdfs and the double integral
            const auto tgrid = uniform_grid(1025, 0.0, 60.0);
            export_function((out / "x1_cdf.csv").string(), o1.cdf, tgrid);
            export_function((out / "x2_cdf.csv").string(), o2.cdf, tgrid);
            write_curve_csv((out / "upper_double_integral.csv").string(), third.upper_integral);
            break;
        }
        default:
            std::cerr << "unknown example id " << example << " (valid: 1..7)\n";
            return exit_validation;
    }

    report["checks"] = check_table(rows, all_pass);
    report["all_pass"] = all_pass;
    write_report(out_dir, report);
    for (const auto& r : rows)
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": oracle=" << r.oracle
                  << " empirical=" << r.empirical << " tol=" << r.tolerance
                  << (r.note.empty() ? "" : "  [" + r.note + "]") << '\n';
    return all_pass ? exit_ok : exit_reproduction;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forecast evaluation with Bregman divergences"};
    app.require_subcommand(1);

    CommonOptions opt;
    int example_id = 1;
    std::size_t repro_n = 1000000;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) {
            sub->add_option("--input", opt.input, "input CSV (header row required)")->required();
            sub->add_option("--response", opt.response, "response column name")->required();
            sub->add_option("--predictors", opt.predictors_csv, "comma-separated predictor columns")
                ->required();
        }
        sub->add_option("--loss", opt.losses,
                        "loss spec: tweedie:<p> | atoms:<t1=m1,...> | ecdf:<predictor> (repeatable)");
        sub->add_option("--grid", opt.grid, "curve grid size")->default_val(512);
        sub->add_option("--tol", opt.tol, "comparison tolerance")->default_val(1e-9);
        sub->add_option("--seed", opt.seed, "random seed")->default_val(1);
        sub->add_option("--recalibrate", opt.recalibrate, "pav | bins:<k> | none")->default_val("pav");
        sub->add_option("--out", opt.out, "output directory")->default_val(".");
    };

    auto* sc_score = app.add_subcommand("score", "average loss per predictor and loss");
    add_common(sc_score, true);
    sc_score->add_flag("--weighted", opt.weighted, "rank-weighted score (demonstrator; inconsistent)");

    auto* sc_dec = app.add_subcommand("decompose", "murphy decomposition, area statistics, curve export");
    add_common(sc_dec, true);

    auto* sc_dom = app.add_subcommand("dominance", "pairwise dominance verdicts");
    add_common(sc_dom, true);

    auto* sc_rep = app.add_subcommand("reproduce", "reproduce a built-in worked example");
    sc_rep->add_option("--example", example_id, "example id in 1..7")->required();
    sc_rep->add_option("--seed", opt.seed, "random seed")->required();
    sc_rep->add_option("--n", repro_n, "sample size")->default_val(1000000);
    sc_rep->add_option("--out", opt.out, "output directory")->default_val(".");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        if (sc_score->parsed()) return cmd_score(opt);
        if (sc_dec->parsed()) return cmd_decompose(opt);
        if (sc_dom->parsed()) return cmd_dominance(opt);
        if (sc_rep->parsed()) return cmd_reproduce(example_id, opt.seed, repro_n, opt.out);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    return exit_validation;
}
