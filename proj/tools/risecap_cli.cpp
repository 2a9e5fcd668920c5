// Command-line harness: parse a scenario config, run the closed-form /
// quadrature / Monte Carlo pipelines over a parameter grid, emit CSV and
// static SVG plots.
//
// Subcommands:
//   esc       grid sweep with the configured methods -> CSV (+ optional plot)
//   mc        same grid, Monte Carlo only
//   validate  cross-check closed form vs quadrature vs MC, nonzero on violation
//   fit       print the MG fit summaries and per-N cascade KG parameters

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "risecap/capacity.hpp"
#include "risecap/errors.hpp"
#include "risecap/montecarlo.hpp"
#include "svg_plot.hpp"

using json = nlohmann::json;
using namespace risecap;

namespace {

double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---- config ------------------------------------------------------------

MixtureGamma channel_mg(const json& j, const std::string& who) {
    const std::string type = j.at("type").get<std::string>();
    const double omega = j.value("omega", 1.0);
    if (type == "rice") {
        if (omega != 1.0)
            throw std::invalid_argument(who + ": rice supports omega = 1 only");
        return fit_rice(db_to_lin(j.at("k_factor_db").get<double>()),
                        j.value("terms", 20));
    }
    if (type == "nakagami") {
        const double m = j.at("m").get<double>();
        if (!(m >= 0.5))
            throw std::invalid_argument(who + ": nakagami needs m >= 0.5");
        MixtureGamma d;
        d.c = m / omega;
        d.terms = {{std::exp(m * std::log(d.c) - std::lgamma(m)), m}};
        validate(d);
        return d;
    }
    if (type == "rayleigh") return fit_rayleigh(omega);
    throw std::invalid_argument(who + ": unknown channel type '" + type + "'");
}

ExactChannel channel_exact(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    ExactChannel ch;
    ch.omega = j.value("omega", 1.0);
    if (type == "rice") {
        ch.kind = ExactChannel::Kind::rice;
        ch.param = db_to_lin(j.at("k_factor_db").get<double>());
    } else if (type == "nakagami") {
        ch.kind = ExactChannel::Kind::nakagami;
        ch.param = j.at("m").get<double>();
    } else {
        ch.kind = ExactChannel::Kind::rayleigh;
    }
    return ch;
}

std::vector<double> parse_axis(const json& j, const std::string& who) {
    std::vector<double> vals;
    if (j.is_array()) {
        for (const json& v : j) vals.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double from = j.at("from").get<double>();
        const double to = j.at("to").get<double>();
        const double step = j.at("step").get<double>();
        if (!(step > 0.0))
            throw std::invalid_argument(who + ": step must be positive");
        for (int i = 0;; ++i) {
            const double v = from + step * i;
            if (v > to + 1e-9 * step) break;
            vals.push_back(v);
        }
    } else if (j.is_number()) {
        vals.push_back(j.get<double>());
    } else {
        throw std::invalid_argument(who + ": expected list, range or number");
    }
    if (vals.empty()) throw std::invalid_argument(who + ": empty sweep axis");
    return vals;
}

struct AppConfig {
    Scenario base;                 // n_elements / betas filled per grid point
    ExactChannels exact;
    std::vector<int> n_axis;
    std::vector<double> bb_db, be_db;
    std::vector<std::string> methods;
    McConfig mc;
    ChannelSource source = ChannelSource::mg_mixture;
    std::string csv_path, plot_path, plot_kind;
};

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    const json j = json::parse(in);
    AppConfig cfg;

    const json& scn = j.at("scenario");
    cfg.base.hop_a = channel_mg(scn.at("hop_a"), "hop_a");
    cfg.base.hop_r = channel_mg(scn.at("hop_r"), "hop_r");
    cfg.base.eav = channel_mg(scn.at("eavesdropper"), "eavesdropper");
    cfg.base.snr_tx = db_to_lin(scn.value("snr_tx_db", 0.0));
    cfg.exact = {channel_exact(scn.at("hop_a")), channel_exact(scn.at("hop_r")),
                 channel_exact(scn.at("eavesdropper"))};

    const json& sweep = j.at("sweep");
    for (double v : parse_axis(sweep.at("n_elements"), "sweep.n_elements")) {
        if (v < 1.0 || v != std::floor(v))
            throw std::invalid_argument("sweep.n_elements: not a positive integer");
        cfg.n_axis.push_back(static_cast<int>(v));
    }
    cfg.bb_db = sweep.contains("beta_b_sq_db")
                    ? parse_axis(sweep["beta_b_sq_db"], "sweep.beta_b_sq_db")
                    : std::vector<double>{0.0};
    cfg.be_db = sweep.contains("beta_e_sq_db")
                    ? parse_axis(sweep["beta_e_sq_db"], "sweep.beta_e_sq_db")
                    : std::vector<double>{0.0};

    cfg.methods = j.value("methods", std::vector<std::string>{"cf"});
    if (cfg.methods.empty())
        throw std::invalid_argument("methods: must be non-empty");
    for (const std::string& m : cfg.methods)
        if (m != "cf" && m != "quad" && m != "mc")
            throw std::invalid_argument("methods: unknown method '" + m + "'");

    cfg.mc.ci_level = 0.99;
    if (j.contains("mc")) {
        const json& mc = j["mc"];
        cfg.mc.trials = mc.value("trials", cfg.mc.trials);
        cfg.mc.seed = mc.value("seed", cfg.mc.seed);
        cfg.mc.workers = mc.value("workers", cfg.mc.workers);
        cfg.mc.ci_level = mc.value("ci_level", cfg.mc.ci_level);
        const std::string src = mc.value("channel_source", "mg");
        if (src == "mg") cfg.source = ChannelSource::mg_mixture;
        else if (src == "exact") cfg.source = ChannelSource::exact_rice_nakagami;
        else throw std::invalid_argument("mc.channel_source: 'mg' or 'exact'");
        cfg.mc.channel_source = cfg.source;
    }

    if (j.contains("output")) {
        const json& out = j["output"];
        cfg.csv_path = out.value("csv", "");
        cfg.plot_path = out.value("plot", "");
        cfg.plot_kind = out.value("plot_kind", "");
    }
    return cfg;
}

// ---- grid runner ---------------------------------------------------------

struct Row {
    int n;
    double bb_db, be_db;
    std::string method;
    EscResult r;
};

Scenario point_scenario(const AppConfig& cfg, int n, double bb, double be) {
    Scenario s = cfg.base;
    s.n_elements = n;
    s.beta_b_sq = db_to_lin(bb);
    s.beta_e_sq = db_to_lin(be);
    return s;
}

// Rows come back in sweep order N -> beta_B -> beta_E -> method. Closed-form
// and quadrature rows are evaluated by a small thread pool; Monte Carlo rows
// run serially and parallelize internally across chunk workers.
std::vector<Row> run_grid(const AppConfig& cfg,
                          const std::vector<std::string>& methods) {
    std::vector<Row> rows;
    for (int n : cfg.n_axis)
        for (double bb : cfg.bb_db)
            for (double be : cfg.be_db)
                for (const std::string& m : methods)
                    rows.push_back({n, bb, be, m, {}});

    std::vector<size_t> light;
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].method != "mc") light.push_back(i);

    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errs(rows.size());
    auto worker = [&] {
        for (;;) {
            const size_t j = next.fetch_add(1);
            if (j >= light.size()) return;
            Row& row = rows[light[j]];
            try {
                const Scenario s =
                    point_scenario(cfg, row.n, row.bb_db, row.be_db);
                row.r = row.method == "cf" ? ergodic_secrecy_capacity(s)
                                           : ergodic_secrecy_capacity_quad(s);
            } catch (...) {
                errs[light[j]] = std::current_exception();
            }
        }
    };
    const size_t nthreads =
        std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()),
                         std::max<size_t>(light.size(), 1));
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errs)
        if (e) std::rethrow_exception(e);

    for (Row& row : rows) {
        if (row.method != "mc") continue;
        const Scenario s = point_scenario(cfg, row.n, row.bb_db, row.be_db);
        if (cfg.source == ChannelSource::exact_rice_nakagami)
            row.r = simulate_esc(s, cfg.mc, cfg.exact);
        else
            row.r = simulate_esc(s, cfg.mc);
    }
    return rows;
}

void write_csv(const std::string& path, const std::vector<Row>& rows) {
    std::ostringstream body;
    body << "N,beta_B_sq_dB,beta_E_sq_dB,method,cb,ce,cs,ci_halfwidth\n";
    for (const Row& row : rows) {
        body << row.n << ',' << fmt9(row.bb_db) << ',' << fmt9(row.be_db)
             << ',' << row.method << ',' << fmt9(row.r.cb) << ','
             << fmt9(row.r.ce) << ',' << fmt9(row.r.cs) << ',';
        if (row.r.ci_halfwidth) body << fmt9(*row.r.ci_halfwidth);
        body << '\n';
    }
    if (path.empty() || path == "-") {
        std::cout << body.str();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output " + path);
    out << body.str();
}

void write_plot(const AppConfig& cfg, const std::vector<Row>& rows) {
    if (cfg.plot_path.empty()) return;
    std::string method = "cf";
    for (const char* pref : {"cf", "quad", "mc"}) {
        if (std::any_of(rows.begin(), rows.end(),
                        [&](const Row& r) { return r.method == pref; })) {
            method = pref;
            break;
        }
    }
    auto cs_of = [&](int n, double bb, double be) {
        for (const Row& r : rows)
            if (r.method == method && r.n == n && r.bb_db == bb &&
                r.be_db == be)
                return r.r.cs;
        throw std::runtime_error("plot: missing grid row");
    };
    std::string kind = cfg.plot_kind;
    if (kind.empty()) kind = cfg.bb_db.size() == 1 ? "bar" : "line";
    const std::string ylab = "Cs (bits/s/Hz)";
    if (kind == "bar") {
        std::vector<std::string> cats;
        for (int n : cfg.n_axis) cats.push_back(std::to_string(n));
        std::vector<svgplot::Series> series;
        for (double bb : cfg.bb_db)
            for (double be : cfg.be_db) {
                svgplot::Series s;
                s.label = cfg.bb_db.size() > 1
                              ? "bB^2=" + fmt9(bb) + ", bE^2=" + fmt9(be) + " dB"
                              : "beta_E^2 = " + fmt9(be) + " dB";
                for (int n : cfg.n_axis) s.y.push_back(cs_of(n, bb, be));
                series.push_back(std::move(s));
            }
        svgplot::write_bar_svg(cfg.plot_path, "Ergodic secrecy capacity",
                               "number of reflecting elements N", ylab, cats,
                               series);
    } else if (kind == "line") {
        std::vector<svgplot::Series> series;
        for (int n : cfg.n_axis)
            for (double be : cfg.be_db) {
                svgplot::Series s;
                s.label = "N=" + std::to_string(n) + ", bE^2=" + fmt9(be) + " dB";
                for (double bb : cfg.bb_db) {
                    s.x.push_back(bb);
                    s.y.push_back(cs_of(n, bb, be));
                }
                series.push_back(std::move(s));
            }
        svgplot::write_line_svg(cfg.plot_path, "Ergodic secrecy capacity",
                                "beta_B^2 (dB)", ylab, series);
    } else {
        throw std::invalid_argument("output.plot_kind: 'bar' or 'line'");
    }
}

// ---- subcommands -----------------------------------------------------

struct Options {
    std::string config, out, plot, method;
    std::uint64_t seed = 0, trials = 0;
    int workers = -1;
    bool has_seed = false, has_trials = false;
    double tol = 1e-5;
    bool corrupt_xi = false;
};

AppConfig configure(const Options& opt) {
    AppConfig cfg = load_config(opt.config);
    if (!opt.out.empty()) cfg.csv_path = opt.out;
    if (!opt.plot.empty()) cfg.plot_path = opt.plot;
    if (opt.has_seed) cfg.mc.seed = opt.seed;
    if (opt.has_trials) cfg.mc.trials = opt.trials;
    if (opt.workers >= 0) cfg.mc.workers = opt.workers;
    if (!opt.method.empty() && opt.method != "all") cfg.methods = {opt.method};
    if (opt.method == "all") cfg.methods = {"cf", "quad", "mc"};
    return cfg;
}

int cmd_esc(const Options& opt) {
    const AppConfig cfg = configure(opt);
    const std::vector<Row> rows = run_grid(cfg, cfg.methods);
    write_csv(cfg.csv_path, rows);
    write_plot(cfg, rows);
    return 0;
}

int cmd_mc(const Options& opt) {
    AppConfig cfg = configure(opt);
    cfg.methods = {"mc"};
    const std::vector<Row> rows = run_grid(cfg, cfg.methods);
    write_csv(cfg.csv_path, rows);
    return 0;
}

int cmd_validate(const Options& opt) {
    const AppConfig cfg = configure(opt);
    struct Worst {
        double dev = 0.0;
        int n = 0;
        double bb = 0, be = 0;
    };
    Worst wb, we, wmc;
    int mc_inside = 0, points = 0, failures = 0;
    auto where = [](const Worst& w) {
        std::ostringstream os;
        os << "N=" << w.n << ", beta_B^2=" << fmt9(w.bb)
           << " dB, beta_E^2=" << fmt9(w.be) << " dB";
        return os.str();
    };
    for (int n : cfg.n_axis)
        for (double bb : cfg.bb_db)
            for (double be : cfg.be_db) {
                const Scenario s = point_scenario(cfg, n, bb, be);
                KGParams kg = cascade_kg(s);
                if (opt.corrupt_xi) kg.xi *= 1.01;
                const double gb = s.beta_b_sq * s.snr_tx;
                const double ge = s.beta_e_sq * s.snr_tx;
                const double cb = legit_capacity_cf(kg, gb);
                const double ce = eav_capacity_cf(s.eav, ge);
                const EscResult q = ergodic_secrecy_capacity_quad(s);
                const EscResult mc = cfg.source == ChannelSource::exact_rice_nakagami
                                         ? simulate_esc(s, cfg.mc, cfg.exact)
                                         : simulate_esc(s, cfg.mc);
                const double db = std::fabs(cb / q.cb - 1.0);
                const double de = std::fabs(ce / q.ce - 1.0);
                const double dmc = std::fabs((cb - ce) - mc.cs) / *mc.ci_halfwidth;
                ++points;
                if (db > wb.dev) wb = {db, n, bb, be};
                if (de > we.dev) we = {de, n, bb, be};
                if (dmc > wmc.dev) wmc = {dmc, n, bb, be};
                if (dmc <= 1.0) ++mc_inside;
                if (db > opt.tol) {
                    ++failures;
                    std::cout << "FAIL: cb cf/quad rel err " << fmt9(db)
                              << " exceeds " << fmt9(opt.tol) << " at N=" << n
                              << ", beta_B^2=" << fmt9(bb)
                              << " dB, beta_E^2=" << fmt9(be) << " dB\n";
                }
                if (de > opt.tol) {
                    ++failures;
                    std::cout << "FAIL: ce cf/quad rel err " << fmt9(de)
                              << " exceeds " << fmt9(opt.tol) << " at N=" << n
                              << ", beta_B^2=" << fmt9(bb)
                              << " dB, beta_E^2=" << fmt9(be) << " dB\n";
                }
            }
    std::cout << "grid: " << points << " points; mc trials=" << cfg.mc.trials
              << " seed=" << cfg.mc.seed << " ci_level=" << cfg.mc.ci_level
              << "\n"
              << "max cb cf/quad rel err = " << fmt9(wb.dev) << " at "
              << where(wb) << "\n"
              << "max ce cf/quad rel err = " << fmt9(we.dev) << " at "
              << where(we) << "\n"
              << "cf inside mc CI: " << mc_inside << "/" << points
              << " points (max |cf-mc|/ci = " << fmt9(wmc.dev) << " at "
              << where(wmc) << ")\n";
    failures += points - mc_inside;
    if (points != mc_inside)
        std::cout << "FAIL: closed form outside the mc confidence interval at "
                  << where(wmc) << "\n";
    std::cout << (failures == 0 ? "PASS" : "FAIL") << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_fit(const Options& opt) {
    const AppConfig cfg = configure(opt);
    std::ostringstream body;
    auto describe = [&](const char* who, const MixtureGamma& d) {
        body << "# " << who << ": terms=" << d.terms.size() << " c=" << fmt9(d.c)
             << " norm_residual=" << fmt9(mg_envelope_moment(d, 0) - 1.0)
             << "\n";
    };
    describe("hop_a", cfg.base.hop_a);
    describe("hop_r", cfg.base.hop_r);
    describe("eavesdropper", cfg.base.eav);
    body << "N,k,m,xi,omega\n";
    for (int n : cfg.n_axis) {
        Scenario s = cfg.base;
        s.n_elements = n;
        const KGParams kg = cascade_kg(s);
        body << n << ',' << fmt9(kg.k) << ',' << fmt9(kg.m) << ','
             << fmt9(kg.xi) << ',' << fmt9(kg.omega) << '\n';
    }
    // the config's output.csv belongs to the esc sweep; fit prints to stdout
    // unless --out says otherwise
    if (opt.out.empty() || opt.out == "-") {
        std::cout << body.str();
    } else {
        std::ofstream out(opt.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output " + opt.out);
        out << body.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergodic secrecy capacity of a RIS-aided link under "
                 "mixture-Gamma fading"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_method) {
        sub->add_option("--config", opt.config, "scenario config (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output CSV path (default stdout)");
        sub->add_option("--seed", opt.seed, "Monte Carlo seed override");
        sub->add_option("--trials", opt.trials, "Monte Carlo trials override");
        sub->add_option("--workers", opt.workers,
                        "Monte Carlo worker threads (0 = hardware)");
        if (with_method)
            sub->add_option("--method", opt.method,
                            "methods override: cf, quad, mc or all")
                ->check(CLI::IsMember({"cf", "quad", "mc", "all"}));
    };

    CLI::App* esc = app.add_subcommand("esc", "sweep the grid, emit CSV/plot");
    add_common(esc, true);
    esc->add_option("--plot", opt.plot, "output SVG path override");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo rows only");
    add_common(mc, false);

    CLI::App* val = app.add_subcommand(
        "validate", "closed form vs quadrature vs Monte Carlo cross-check");
    add_common(val, false);
    val->add_option("--tol", opt.tol, "cf/quad relative tolerance");
    val->add_flag("--corrupt-xi", opt.corrupt_xi,
                  "fault injection: scale the fitted cascade Xi by 1.01 in "
                  "the closed-form path");

    CLI::App* fit = app.add_subcommand(
        "fit", "MG fit summary and per-N cascade KG parameters");
    add_common(fit, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's many parse-error codes onto the documented
        // usage-error exit code (help/version still exit 0)
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    opt.has_seed = esc->count("--seed") + mc->count("--seed") +
                       val->count("--seed") + fit->count("--seed") >
                   0;
    opt.has_trials = esc->count("--trials") + mc->count("--trials") +
                         val->count("--trials") + fit->count("--trials") >
                     0;
    try {
        if (esc->parsed()) return cmd_esc(opt);
        if (mc->parsed()) return cmd_mc(opt);
        if (val->parsed()) return cmd_validate(opt);
        if (fit->parsed()) return cmd_fit(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
