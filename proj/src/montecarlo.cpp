#include "risecap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kernels/kernels.hpp"
#include "risecap/capacity.hpp"

namespace risecap {

namespace {

// Walker alias table over the mixture component weights w_i = a_i G(b_i) c^-b_i
void build_alias(const std::vector<double>& w, std::vector<double>& prob,
                 std::vector<double>& alias) {
    const int n = static_cast<int>(w.size());
    prob.assign(n, 1.0);
    alias.resize(n);
    std::vector<double> scaled(n);
    std::vector<int> small, large, al(n);
    for (int i = 0; i < n; ++i) {
        al[i] = i;
        scaled[i] = w[i] * n;
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const int s = small.back();
        small.pop_back();
        const int l = large.back();
        prob[s] = scaled[s];
        al[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // leftovers are fp residue, their cells select themselves
    for (int i = 0; i < n; ++i) alias[i] = static_cast<double>(al[i]);
}

kern::ChanTables mg_tables(const MixtureGamma& d) {
    validate(d);
    kern::ChanTables t;
    t.kind = kern::ChanTables::mg;
    t.ncomp = static_cast<int>(d.terms.size());
    t.inv_rate = 1.0 / d.c;
    std::vector<double> w(d.terms.size());
    double total = 0.0;
    for (size_t i = 0; i < d.terms.size(); ++i) {
        w[i] = std::exp(std::log(d.terms[i].a) + std::lgamma(d.terms[i].b) -
                        d.terms[i].b * std::log(d.c));
        total += w[i];
    }
    for (double& x : w) x /= total;
    build_alias(w, t.alias_prob, t.alias_idx);
    t.mt_d.resize(d.terms.size());
    t.mt_c.resize(d.terms.size());
    t.inv_b.resize(d.terms.size());
    for (size_t i = 0; i < d.terms.size(); ++i) {
        const double b = d.terms[i].b;
        const double shape = b >= 1.0 ? b : b + 1.0; // boosted when b < 1
        t.mt_d[i] = shape - 1.0 / 3.0;
        t.mt_c[i] = 1.0 / std::sqrt(9.0 * t.mt_d[i]);
        t.inv_b[i] = b >= 1.0 ? 0.0 : 1.0 / b;
        if (b < 1.0) t.has_boost = true;
    }
    return t;
}

MixtureGamma nakagami_mg(double m, double omega) {
    const double c = m / omega;
    MixtureGamma d;
    d.c = c;
    d.terms = {{std::exp(m * std::log(c) - std::lgamma(m)), m}};
    return d;
}

kern::ChanTables exact_tables(const ExactChannel& ch) {
    switch (ch.kind) {
    case ExactChannel::Kind::rayleigh:
        return mg_tables(fit_rayleigh(ch.omega));
    case ExactChannel::Kind::nakagami:
        if (!(ch.param >= 0.5))
            throw std::invalid_argument("ExactChannel: nakagami m must be >= 0.5");
        return mg_tables(nakagami_mg(ch.param, ch.omega));
    case ExactChannel::Kind::rice: {
        if (!(ch.param >= 0.0))
            throw std::invalid_argument("ExactChannel: rice K must be >= 0");
        if (!(ch.omega > 0.0))
            throw std::invalid_argument("ExactChannel: omega must be positive");
        kern::ChanTables t;
        t.kind = kern::ChanTables::rice;
        t.rice_nu = std::sqrt(ch.param / (ch.param + 1.0) * ch.omega);
        t.rice_sigma = std::sqrt(ch.omega / (2.0 * (ch.param + 1.0)));
        return t;
    }
    }
    throw std::logic_error("ExactChannel: bad kind");
}

// regularized incomplete beta, Lentz continued fraction
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) return h;
    }
    return h;
}

double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                               std::lgamma(b) + a * std::log(x) +
                               b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_quantile(double p, double df) {
    // p in (0.5, 1)
    const auto cdf = [df](double t) {
        return 1.0 - 0.5 * ibeta(0.5 * df, 0.5, df / (df + t * t));
    };
    double lo = 0.0, hi = 1000.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct ChunkPlan {
    uint64_t chunk;
    uint64_t nchunks;
};

ChunkPlan plan_chunks(uint64_t trials) {
    const uint64_t chunk =
        trials >= 524288 ? 8192 : std::max<uint64_t>(1, (trials + 63) / 64);
    return {chunk, (trials + chunk - 1) / chunk};
}

void validate(const McConfig& cfg) {
    if (cfg.trials < 1)
        throw std::invalid_argument("McConfig: trials must be >= 1");
    if (!(cfg.ci_level > 0.0 && cfg.ci_level < 1.0))
        throw std::invalid_argument("McConfig: ci_level must be in (0, 1)");
    if (cfg.workers < 0)
        throw std::invalid_argument("McConfig: workers must be >= 0");
}

EscResult run_simulation(const kern::LinkTables& tables, const McConfig& cfg) {
    const kern::KernelSet& k = kern::active_kernels();
    const ChunkPlan plan = plan_chunks(cfg.trials);
    std::vector<kern::ChunkSums> sums(plan.nchunks);
    std::vector<uint32_t> counts(plan.nchunks);
    for (uint64_t i = 0; i < plan.nchunks; ++i) {
        const uint64_t t0 = i * plan.chunk;
        counts[i] = static_cast<uint32_t>(
            std::min<uint64_t>(plan.chunk, cfg.trials - t0));
    }
    std::atomic<uint64_t> next{0};
    const auto work = [&] {
        for (;;) {
            const uint64_t i = next.fetch_add(1);
            if (i >= plan.nchunks) break;
            k.esc_chunk(tables, cfg.seed, i * plan.chunk, counts[i], sums[i]);
        }
    };
    unsigned workers = cfg.workers > 0
                           ? static_cast<unsigned>(cfg.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<uint64_t>(workers, plan.nchunks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    // fixed-order reduction, independent of worker scheduling
    double sb = 0.0, se = 0.0;
    for (uint64_t i = 0; i < plan.nchunks; ++i) {
        sb += sums[i].cb;
        se += sums[i].ce;
    }
    const double n = static_cast<double>(cfg.trials);
    EscResult r;
    r.cb = sb / n;
    r.ce = se / n;
    r.cs = r.cb - r.ce;
    r.method = Method::monte_carlo;
    // batch-means CI on the secrecy capacity
    const uint64_t nb = std::min<uint64_t>(64, plan.nchunks);
    if (nb >= 2) {
        std::vector<double> means(nb);
        for (uint64_t b = 0; b < nb; ++b) {
            const uint64_t c0 = b * plan.nchunks / nb;
            const uint64_t c1 = (b + 1) * plan.nchunks / nb;
            double s = 0.0, cnt = 0.0;
            for (uint64_t i = c0; i < c1; ++i) {
                s += sums[i].cd;
                cnt += counts[i];
            }
            means[b] = s / cnt;
        }
        double mean = 0.0;
        for (double m : means) mean += m;
        mean /= static_cast<double>(nb);
        double var = 0.0;
        for (double m : means) var += (m - mean) * (m - mean);
        var /= static_cast<double>(nb - 1);
        const double tq = student_t_quantile(
            0.5 + 0.5 * cfg.ci_level, static_cast<double>(nb - 1));
        r.ci_halfwidth = tq * std::sqrt(var / static_cast<double>(nb));
    }
    return r;
}

} // namespace

double sample_mg_envelope(const MixtureGamma& dist, RngStream& stream) {
    const kern::ChanTables t = mg_tables(dist);
    double out = 0.0;
    kern::scalar_kernels().env_chunk(t, stream.seed, stream.trial, 1,
                                     stream.slot, &out);
    ++stream.trial;
    return out;
}

EscResult simulate_esc(const Scenario& scn, const McConfig& cfg) {
    return simulate_esc(scn, cfg, std::nullopt);
}

EscResult simulate_esc(const Scenario& scn, const McConfig& cfg,
                       const std::optional<ExactChannels>& exact) {
    validate(scn);
    validate(cfg);
    kern::LinkTables tables;
    tables.n_elements = scn.n_elements;
    tables.gain_b = scn.beta_b_sq * scn.snr_tx;
    tables.gain_e = scn.beta_e_sq * scn.snr_tx;
    if (cfg.channel_source == ChannelSource::exact_rice_nakagami) {
        if (!exact)
            throw std::invalid_argument(
                "simulate_esc: exact_rice_nakagami source requires channels");
        tables.hop_a = exact_tables(exact->hop_a);
        tables.hop_r = exact_tables(exact->hop_r);
        tables.eav = exact_tables(exact->eav);
    } else {
        if (exact)
            throw std::invalid_argument(
                "simulate_esc: exact channels given but source is mg_mixture");
        tables.hop_a = mg_tables(scn.hop_a);
        tables.hop_r = mg_tables(scn.hop_r);
        tables.eav = mg_tables(scn.eav);
    }
    return run_simulation(tables, cfg);
}

const char* active_simd_name() { return kern::active_kernels().name; }

} // namespace risecap
