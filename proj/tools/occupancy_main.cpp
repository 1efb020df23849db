#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "occ/bartlett.hpp"
#include "occ/decomp.hpp"
#include "occ/edgeworth.hpp"
#include "occ/errors.hpp"
#include "occ/exact.hpp"
#include "occ/moments.hpp"
#include "occ/numeric.hpp"
#include "occ/scheme.hpp"
#include "occ/simulate.hpp"

using njson = nlohmann::ordered_json;
using namespace occ;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

long long manifest_timestamp() {
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        long long v = std::strtoll(e, &end, 10);
        if (end && *end == '\0') return v;
    }
    return static_cast<long long>(std::time(nullptr));
}

njson make_manifest(const std::string& command, const njson& params, const njson& options) {
    njson probe;
    probe["command"] = command;
    probe["params"] = params;
    probe["options"] = options;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(probe.dump())));
    njson m;
    m["schema"] = 1;
    m["command"] = command;
    m["params"] = params;
    m["options"] = options;
    m["version"] = kVersion;
    m["timestamp"] = manifest_timestamp();
    m["input_hash"] = hash;
    return m;
}

struct OutputCfg {
    std::string out;            // empty: stdout
    std::string format = "json";
    unsigned digits = 15;
};

void emit(const OutputCfg& cfg, const njson& artifact, const std::string& csv) {
    std::string text;
    if (cfg.format == "json") {
        text = artifact.dump(2);
        text += '\n';
    } else {
        text = "# manifest: " + artifact.at("manifest").dump() + "\n" + csv;
    }
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw ResourceError("cannot open output file " + cfg.out);
        f << text;
    }
}

Real parse_real(const std::string& tok) {
    try {
        return Real(tok);
    } catch (const std::exception&) {
        throw DomainError("malformed numeric literal: " + tok);
    }
}

std::string dec(const Real& x, unsigned digits) { return real_str(x, digits); }

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* e = std::getenv("OCCUPANCY_THREADS")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    return 0;
}

njson params_json(const SchemeParams& p) {
    njson j;
    j["cells"] = p.cells;
    j["sets"] = p.set_sizes;
    return j;
}

njson scalars_json(const DerivedParams& d, unsigned digits) {
    njson s;
    s["mean"] = rat_str(d.mean_empty);
    s["mean_decimal"] = dec(to_real(d.mean_empty), digits);
    s["variance"] = rat_str(d.var_empty);
    s["variance_decimal"] = dec(to_real(d.var_empty), digits);
    s["sigma2"] = rat_str(d.sigma2);
    s["sigma2_decimal"] = dec(to_real(d.sigma2), digits);
    if (d.degenerate()) {
        s["b_N"] = nullptr;
    } else {
        s["b_N"] = rat_str(d.var_correction());
        s["b_N_decimal"] = dec(to_real(d.var_correction()), digits);
    }
    s["alpha"] = rat_str(d.alpha);
    s["support"] = {d.support_min(), d.support_max()};
    return s;
}

njson report_json(const ApproxReport& rep, const std::string& frame, unsigned digits) {
    njson j;
    j["method"] = rep.method;
    j["frame"] = frame;
    j["scale_squared"] = dec(rep.scale, digits);
    j["sup_error"] = dec(rep.sup_error, digits);
    njson rows = njson::array();
    for (const auto& r : rep.rows) {
        njson row;
        row["k"] = r.k;
        row["coord"] = dec(r.coord, digits);
        row["approx"] = dec(r.approx, digits);
        row["exact"] = dec(r.exact_scaled, digits);
        row["abs_err"] = dec(r.abs_err, digits);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

void report_csv(std::ostringstream& csv, const ApproxReport& rep, unsigned digits) {
    for (const auto& r : rep.rows)
        csv << rep.method << ',' << r.k << ',' << dec(r.coord, digits) << ','
            << dec(r.approx, digits) << ',' << dec(r.exact_scaled, digits) << ','
            << dec(r.abs_err, digits) << '\n';
    csv << rep.method << ",sup,,,," << dec(rep.sup_error, digits) << '\n';
}

njson decomposition_json(const BernoulliDecomposition& bd, unsigned digits) {
    njson j;
    njson roots = njson::array(), a = njson::array();
    for (const auto& r : bd.roots) roots.push_back(dec(r, digits));
    for (const auto& v : bd.a) a.push_back(dec(v, digits));
    j["roots"] = std::move(roots);
    j["a"] = std::move(a);
    j["L3"] = bd.l3 ? njson(dec(*bd.l3, digits)) : njson(nullptr);
    j["L4"] = bd.l4 ? njson(dec(*bd.l4, digits)) : njson(nullptr);
    return j;
}

njson moments_json(const GMoments& gm, const EdgeworthCoeffs& coeffs, unsigned digits) {
    njson j;
    j["sigma2"] = rat_str(gm.sigma2);
    j["sigma2_decimal"] = dec(gm.sigma(), digits);
    j["g3_raw"] = rat_str(gm.g3_raw);
    j["g3_decimal"] = dec(gm.g3(), digits);
    j["g4_raw"] = rat_str(gm.g4_raw);
    j["g4_decimal"] = dec(gm.g4(), digits);
    j["m2_variant"] = coeffs.variant == M2Variant::pair_corrected ? "pair" : "series";
    j["M2_decimal"] = dec(coeffs.M2(), digits);
    j["M3_decimal"] = dec(coeffs.M3(), digits);
    j["M4_decimal"] = dec(coeffs.M4(), digits);
    return j;
}

M2Variant parse_m2(const std::string& s) {
    if (s == "pair") return M2Variant::pair_corrected;
    if (s == "series") return M2Variant::series;
    throw DomainError("unknown t^2-coefficient form: " + s);
}

int parse_sign(const std::string& s, M2Variant variant, const WHatOptions& opts) {
    if (s == "auto") return calibrate_correction_sign(variant, opts);
    if (s == "plus") return 1;
    if (s == "minus") return -1;
    if (s == "none") return 0;
    throw DomainError("unknown correction sign: " + s);
}

// ---- exact ----------------------------------------------------------------

struct ExactArgs {
    long cells = 0;
    std::vector<long> sets;
    OutputCfg out;
};

int cmd_exact(const ExactArgs& a) {
    SchemeParams params{a.cells, a.sets};
    DerivedParams d = derive(params);
    ExactPmf pmf = exact_pmf(params);

    njson options;
    options["format"] = a.out.format;
    options["digits"] = a.out.digits;
    njson artifact;
    artifact["manifest"] = make_manifest("exact", params_json(params), options);
    njson rows = njson::array();
    for (long k = pmf.min_k; k <= pmf.max_k(); ++k) {
        njson row;
        row["k"] = k;
        row["p"] = rat_str(pmf.at(k));
        rows.push_back(std::move(row));
    }
    artifact["pmf"] = std::move(rows);
    artifact["scalars"] = scalars_json(d, a.out.digits);

    std::ostringstream csv;
    csv << "k,p_exact,p_decimal\n";
    for (long k = pmf.min_k; k <= pmf.max_k(); ++k)
        csv << k << ',' << rat_str(pmf.at(k)) << ',' << dec(to_real(pmf.at(k)), a.out.digits)
            << '\n';
    emit(a.out, artifact, csv.str());
    return 0;
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
    long cells = 0;
    std::vector<long> sets;
    std::vector<std::string> methods{"thm2", "thm3", "thm4", "gaussian"};
    std::string m2 = "pair";
    int h4 = 24;
    std::string thm4_sign = "auto";
    OutputCfg out;
};

int cmd_compare(const CompareArgs& a) {
    SchemeParams params{a.cells, a.sets};
    DerivedParams d = derive(params);
    ExactPmf pmf = exact_pmf(params);
    M2Variant variant = parse_m2(a.m2);
    WHatOptions wopts;
    wopts.h4_denom = a.h4;

    njson options;
    options["methods"] = a.methods;
    options["m2"] = a.m2;
    options["h4"] = a.h4;
    options["thm4_sign"] = a.thm4_sign;
    options["format"] = a.out.format;
    options["digits"] = a.out.digits;
    njson artifact;
    artifact["manifest"] = make_manifest("compare", params_json(params), options);
    artifact["scalars"] = scalars_json(d, a.out.digits);

    bool coeffs_ready = false;
    GMoments gm;
    EdgeworthCoeffs coeffs;
    auto need_coeffs = [&]() -> const EdgeworthCoeffs& {
        if (!coeffs_ready) {
            gm = g_signed_moments(d);
            coeffs = edgeworth_coeffs(d, gm, xi_moments(d), variant);
            coeffs_ready = true;
        }
        return coeffs;
    };

    njson methods = njson::array();
    njson failed = njson::array();
    std::ostringstream csv;
    csv << "method,k,coord,approx,exact,abs_err\n";
    int first_fail_code = 0;
    auto record_failure = [&](const std::string& name, const char* what, int code) {
        njson f;
        f["method"] = name;
        f["error"] = what;
        failed.push_back(std::move(f));
        if (first_fail_code == 0) first_fail_code = code;
    };

    for (const std::string& name : a.methods) {
        try {
            if (name == "thm2") {
                auto rep = approx_thm2(d, need_coeffs(), pmf, wopts);
                methods.push_back(report_json(rep, "series", a.out.digits));
                report_csv(csv, rep, a.out.digits);
            } else if (name == "thm3") {
                auto bd = extract_bernoulli(pgf_coefficients(pmf));
                auto rep = approx_thm3(bd, d, pmf);
                artifact["decomposition"] = decomposition_json(bd, a.out.digits);
                methods.push_back(report_json(rep, "exact", a.out.digits));
                report_csv(csv, rep, a.out.digits);
            } else if (name == "thm4") {
                int sign = parse_sign(a.thm4_sign, variant, wopts);
                auto rep = approx_thm4(d, need_coeffs(), pmf, sign, wopts);
                njson jr = report_json(rep, "exact", a.out.digits);
                jr["correction_sign"] = sign;
                methods.push_back(std::move(jr));
                report_csv(csv, rep, a.out.digits);
            } else if (name == "gaussian") {
                Frame frame = d.degenerate() ? Frame::exact : Frame::series;
                auto rep = approx_gaussian(d, pmf, frame);
                methods.push_back(
                    report_json(rep, frame == Frame::series ? "series" : "exact", a.out.digits));
                report_csv(csv, rep, a.out.digits);
            } else {
                throw DomainError("unknown method: " + name);
            }
        } catch (const DomainError& e) {
            record_failure(name, e.what(), 2);
        } catch (const ResourceError& e) {
            record_failure(name, e.what(), 3);
        } catch (const ValidationError& e) {
            record_failure(name, e.what(), 3);
        }
    }

    if (coeffs_ready) artifact["moments"] = moments_json(gm, coeffs, a.out.digits);
    artifact["methods"] = std::move(methods);
    artifact["failed"] = failed;
    if (artifact["methods"].empty() && !failed.empty()) {
        std::cerr << "error: " << failed.front().at("error").get<std::string>() << "\n";
        return first_fail_code;
    }
    emit(a.out, artifact, csv.str());
    return 0;
}

// ---- convergence ----------------------------------------------------------

struct ConvergenceArgs {
    std::vector<std::string> p;
    std::vector<long> cells_list;
    std::string method = "thm2";
    std::string m2 = "pair";
    int h4 = 24;
    std::string thm4_sign = "auto";
    OutputCfg out;
};

int cmd_convergence(const ConvergenceArgs& a) {
    if (a.cells_list.size() < 3) throw DomainError("need at least three cell counts for a sweep");
    std::vector<Rat> props;
    for (const auto& tok : a.p) {
        Rat v = parse_rat(tok);
        if (!(v > 0 && v < 1)) throw DomainError("proportions must lie strictly between 0 and 1");
        props.push_back(v);
    }
    if (props.empty()) throw DomainError("at least one proportion is required");
    M2Variant variant = parse_m2(a.m2);
    WHatOptions wopts;
    wopts.h4_denom = a.h4;
    int sign = a.method == "thm4" ? parse_sign(a.thm4_sign, variant, wopts) : 0;

    std::vector<std::pair<long, Real>> sweep;
    njson rows = njson::array();
    std::ostringstream csv;
    csv << "N,sup_error,slope_so_far\n";
    for (long cells : a.cells_list) {
        std::vector<long> sets;
        for (const Rat& pv : props) {
            Rat count = Rat(pv * cells);
            if (numerator(count) % denominator(count) != 0)
                throw DomainError("proportion " + rat_str(pv) + " does not give whole sets at " +
                                  std::to_string(cells) + " cells");
            sets.push_back(static_cast<long>(numerator(count) / denominator(count)));
        }
        SchemeParams params{cells, sets};
        DerivedParams d = derive(params);
        ExactPmf pmf = exact_pmf(params);
        ApproxReport rep;
        if (a.method == "thm2") {
            auto gm = g_signed_moments(d);
            rep = approx_thm2(d, edgeworth_coeffs(d, gm, xi_moments(d), variant), pmf, wopts);
        } else if (a.method == "thm3") {
            rep = approx_thm3(extract_bernoulli(pgf_coefficients(pmf)), d, pmf);
        } else if (a.method == "thm4") {
            auto gm = g_signed_moments(d);
            rep = approx_thm4(d, edgeworth_coeffs(d, gm, xi_moments(d), variant), pmf, sign, wopts);
        } else if (a.method == "gaussian") {
            rep = approx_gaussian(d, pmf, d.degenerate() ? Frame::exact : Frame::series);
        } else {
            throw DomainError("unknown method: " + a.method);
        }
        sweep.emplace_back(cells, rep.sup_error);
        njson row;
        row["N"] = cells;
        row["sup_error"] = dec(rep.sup_error, a.out.digits);
        if (sweep.size() >= 3) {
            Real partial = sup_error_slope(sweep);
            row["slope_so_far"] = dec(partial, a.out.digits);
            csv << cells << ',' << dec(rep.sup_error, a.out.digits) << ','
                << dec(partial, a.out.digits) << '\n';
        } else {
            row["slope_so_far"] = nullptr;
            csv << cells << ',' << dec(rep.sup_error, a.out.digits) << ",\n";
        }
        rows.push_back(std::move(row));
    }

    Real slope = sup_error_slope(sweep);
    bool decreasing = true;
    for (size_t i = 1; i < sweep.size(); ++i)
        if (!(sweep[i].second < sweep[i - 1].second)) decreasing = false;
    bool in_window = slope >= -2 && slope <= -1;

    njson params;
    params["p"] = a.p;
    params["N"] = a.cells_list;
    njson options;
    options["method"] = a.method;
    options["m2"] = a.m2;
    options["h4"] = a.h4;
    options["thm4_sign"] = a.thm4_sign;
    options["format"] = a.out.format;
    options["digits"] = a.out.digits;
    njson artifact;
    artifact["manifest"] = make_manifest("convergence", params, options);
    artifact["method"] = a.method;
    artifact["rows"] = std::move(rows);
    artifact["slope"] = dec(slope, a.out.digits);
    artifact["slope_window"] = {-2.0, -1.0};
    artifact["strictly_decreasing"] = decreasing;
    artifact["pass"] = decreasing && in_window;
    emit(a.out, artifact, csv.str());
    return 0;
}

// ---- bartlett -------------------------------------------------------------

struct BartlettArgs {
    long cells = 0;
    std::vector<long> sets;
    std::vector<std::string> t{"0.5", "1", "2"};
    std::string tol = "1e-7";
    int panels = 4;
    int nodes = 16;
    int max_doublings = 6;
    OutputCfg out;
};

int cmd_bartlett(const BartlettArgs& a) {
    SchemeParams params{a.cells, a.sets};
    DerivedParams d = derive(params);
    if (d.params.s() > 3) throw DomainError("quadrature dimension capped at 3 sets");
    GMoments gm = g_signed_moments(d);
    QuadratureSpec spec;
    spec.panels = a.panels;
    spec.nodes = a.nodes;
    spec.tol = parse_real(a.tol);
    spec.max_doublings = a.max_doublings;
    ExactPmf pmf = exact_pmf(params);
    Real center = to_real(d.mean_empty);
    Real scale = gm.sigma() * sqrt(Real(params.cells));

    njson rows = njson::array();
    std::ostringstream csv;
    csv << "t,bartlett_re,bartlett_im,exact_re,exact_im,abs_diff\n";
    Real max_diff = 0;
    for (const auto& tok : a.t) {
        Real t = parse_real(tok);
        CReal via = phi_via_bartlett(t, d, gm, spec);
        CReal want = exact_charfun(pmf, t, center, scale);
        Real diff = abs_creal(csub(via, want));
        if (diff > max_diff) max_diff = diff;
        njson row;
        row["t"] = tok;
        row["bartlett"] = {{"re", dec(via.re, a.out.digits)}, {"im", dec(via.im, a.out.digits)}};
        row["exact"] = {{"re", dec(want.re, a.out.digits)}, {"im", dec(want.im, a.out.digits)}};
        row["abs_diff"] = dec(diff, a.out.digits);
        rows.push_back(std::move(row));
        csv << tok << ',' << dec(via.re, a.out.digits) << ',' << dec(via.im, a.out.digits) << ','
            << dec(want.re, a.out.digits) << ',' << dec(want.im, a.out.digits) << ','
            << dec(diff, a.out.digits) << '\n';
    }

    njson options;
    options["t"] = a.t;
    options["tol"] = a.tol;
    options["panels"] = a.panels;
    options["nodes"] = a.nodes;
    options["max_doublings"] = a.max_doublings;
    options["format"] = a.out.format;
    options["digits"] = a.out.digits;
    njson artifact;
    artifact["manifest"] = make_manifest("bartlett", params_json(params), options);
    artifact["rows"] = std::move(rows);
    artifact["max_abs_diff"] = dec(max_diff, a.out.digits);
    emit(a.out, artifact, csv.str());
    return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    long cells = 0;
    std::vector<long> sets;
    long trials = 100000;
    std::uint64_t seed = 0;
    int threads = 0;
    OutputCfg out;
};

int cmd_simulate(const SimulateArgs& a) {
    SimConfig cfg;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.params = SchemeParams{a.cells, a.sets};
    DerivedParams d = derive(cfg.params);
    EmpiricalPmf emp = empirical_pmf(cfg, resolve_threads(a.threads));

    njson rows = njson::array();
    std::ostringstream csv;
    csv << "k,count,frequency,std_error\n";
    for (long k = emp.min_k; k <= emp.max_k(); ++k) {
        njson row;
        row["k"] = k;
        row["count"] = emp.count_at(k);
        row["frequency"] = dec(emp.frequency(k), a.out.digits);
        row["std_error"] = dec(emp.std_error(k), a.out.digits);
        rows.push_back(std::move(row));
        csv << k << ',' << emp.count_at(k) << ',' << dec(emp.frequency(k), a.out.digits) << ','
            << dec(emp.std_error(k), a.out.digits) << '\n';
    }

    njson options;
    options["trials"] = a.trials;
    options["seed"] = a.seed;
    options["format"] = a.out.format;
    options["digits"] = a.out.digits;
    njson artifact;
    artifact["manifest"] = make_manifest("simulate", params_json(cfg.params), options);
    artifact["rows"] = std::move(rows);
    artifact["target_mean"] = rat_str(d.mean_empty);
    if (a.trials >= 2) {
        MeanCi ci = mc_mean_ci(emp);
        artifact["mean"] = dec(ci.mean, a.out.digits);
        artifact["half_width"] = dec(ci.half_width, a.out.digits);
    } else {
        artifact["mean"] = nullptr;
        artifact["half_width"] = nullptr;
    }
    emit(a.out, artifact, csv.str());
    return 0;
}

void add_output_flags(CLI::App* cmd, OutputCfg& out) {
    cmd->add_option("--out", out.out, "write the artifact to this file instead of stdout");
    cmd->add_option("--format", out.format, "artifact format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--digits", out.digits, "significant digits for decimal fields")
        ->check(CLI::Range(1u, 50u))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"empty-cell distribution toolkit: exact law of the number of empty cells "
                 "under allocation by sets, density approximants, characteristic-function "
                 "verification, and simulation"};
    app.require_subcommand(1);

    ExactArgs ex;
    auto* c_exact = app.add_subcommand("exact", "exact distribution and derived scalars");
    c_exact->add_option("--cells", ex.cells, "number of cells")->required();
    c_exact->add_option("--sets", ex.sets, "comma-separated set sizes")
        ->required()
        ->delimiter(',');
    add_output_flags(c_exact, ex.out);

    CompareArgs cm;
    auto* c_compare = app.add_subcommand("compare", "density approximants against the exact law");
    c_compare->add_option("--cells", cm.cells, "number of cells")->required();
    c_compare->add_option("--sets", cm.sets, "comma-separated set sizes")
        ->required()
        ->delimiter(',');
    c_compare->add_option("--methods", cm.methods, "subset of thm2,thm3,thm4,gaussian")
        ->delimiter(',')
        ->capture_default_str();
    c_compare->add_option("--m2", cm.m2, "t^2 coefficient: pair (cross-pair corrected) or series")
        ->check(CLI::IsMember({"pair", "series"}))
        ->capture_default_str();
    c_compare->add_option("--h4", cm.h4, "fourth-order Hermite denominator")
        ->check(CLI::IsMember({24, 32}))
        ->capture_default_str();
    c_compare->add_option("--thm4-sign", cm.thm4_sign, "variance-correction sign")
        ->check(CLI::IsMember({"auto", "plus", "minus", "none"}))
        ->capture_default_str();
    add_output_flags(c_compare, cm.out);

    ConvergenceArgs cv;
    auto* c_conv = app.add_subcommand("convergence", "sup-error sweep over growing cell counts");
    c_conv->add_option("--p", cv.p, "comma-separated set proportions, e.g. 0.3,0.5")
        ->required()
        ->delimiter(',');
    c_conv->add_option("--N", cv.cells_list, "comma-separated cell counts (at least three)")
        ->required()
        ->delimiter(',');
    c_conv->add_option("--method", cv.method, "one of thm2,thm3,thm4,gaussian")
        ->check(CLI::IsMember({"thm2", "thm3", "thm4", "gaussian"}))
        ->capture_default_str();
    c_conv->add_option("--m2", cv.m2, "t^2 coefficient: pair or series")
        ->check(CLI::IsMember({"pair", "series"}))
        ->capture_default_str();
    c_conv->add_option("--h4", cv.h4, "fourth-order Hermite denominator")
        ->check(CLI::IsMember({24, 32}))
        ->capture_default_str();
    c_conv->add_option("--thm4-sign", cv.thm4_sign, "variance-correction sign")
        ->check(CLI::IsMember({"auto", "plus", "minus", "none"}))
        ->capture_default_str();
    add_output_flags(c_conv, cv.out);

    BartlettArgs ba;
    auto* c_bart = app.add_subcommand(
        "bartlett", "characteristic function via the integral representation vs the exact one");
    c_bart->add_option("--cells", ba.cells, "number of cells")->required();
    c_bart->add_option("--sets", ba.sets, "comma-separated set sizes")->required()->delimiter(',');
    c_bart->add_option("--t", ba.t, "comma-separated evaluation points")
        ->delimiter(',')
        ->capture_default_str();
    c_bart->add_option("--tol", ba.tol, "panel-refinement stopping tolerance")
        ->capture_default_str();
    c_bart->add_option("--panels", ba.panels, "starting panels per dimension")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_bart->add_option("--nodes", ba.nodes, "quadrature nodes per panel")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_bart->add_option("--max-doublings", ba.max_doublings, "refinement rounds before giving up")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(c_bart, ba.out);

    SimulateArgs si;
    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo draws of the empty-cell count");
    c_sim->add_option("--cells", si.cells, "number of cells")->required();
    c_sim->add_option("--sets", si.sets, "comma-separated set sizes")->required()->delimiter(',');
    c_sim->add_option("--trials", si.trials, "number of trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_sim->add_option("--seed", si.seed, "base seed; each trial derives its own stream")
        ->capture_default_str();
    c_sim->add_option("--threads", si.threads,
                      "worker threads (0: OCCUPANCY_THREADS, then hardware)")
        ->capture_default_str();
    add_output_flags(c_sim, si.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_exact) return cmd_exact(ex);
        if (*c_compare) return cmd_compare(cm);
        if (*c_conv) return cmd_convergence(cv);
        if (*c_bart) return cmd_bartlett(ba);
        if (*c_sim) return cmd_simulate(si);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ToleranceError& e) {
        std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
