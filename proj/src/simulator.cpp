// Copyright (c) 2026 The powmath developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powmath/simulator.hpp>

#include <powmath/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace powmath {

namespace {

constexpr std::uint64_t kBatchCycles = 10000;
constexpr unsigned kWarmupWindows = 3;
// Uncapped double-spend races stop here; the residual catch-up mass
// lambda^deficit is credited analytically.
constexpr long kUncappedLagStop = 10000;

// Draws one block arrival: exponential waiting time at the combined network
// rate, then the owner. Uniform consumption order is fixed so trials are
// reproducible.
struct LetterSource {
    Xoshiro256pp& rng;
    double scale; // tau0 * difficulty
    double q;
    double elapsed = 0.0;
    std::uint64_t count = 0;

    bool next()
    {
        elapsed += -std::log1p(-rng.uniform()) * scale;
        ++count;
        return rng.uniform() < q;
    }
};

struct ZL {
    double z = 0.0;
    unsigned l = 0;
};

ZL honest_cycle(LetterSource& src)
{
    return {src.next() ? 1.0 : 0.0, 1};
}

// Block-withholding cycle: secret lead of two wins everything; a tie after
// the first rogue block triggers one fork competition resolved by the next
// block, with gamma deciding which branch the honest network extends.
ZL sm_cycle(LetterSource& src, double gamma, Xoshiro256pp& rng)
{
    if (!src.next()) return {0.0, 1};
    if (src.next()) {
        unsigned a = 2, h = 0;
        while (h + 1 != a) src.next() ? ++a : ++h;
        return {static_cast<double>(a), a};
    }
    if (src.next()) return {2.0, 2};
    return {rng.bernoulli(gamma) ? 1.0 : 0.0, 2};
}

// Stubborn variant: at a public tie the next block decides the cycle. An
// allied honest block mined on the rogue prefix of height h cements the
// first h rogue blocks into whatever chain finally wins, tracked in natt.
ZL lsm_cycle(LetterSource& src, double gamma, Xoshiro256pp& rng)
{
    unsigned a = 0, h = 0;
    double natt = 0.0;
    for (;;) {
        if (a == h && a >= 1) {
            if (src.next()) return {a + 1.0, a + 1};
            if (rng.bernoulli(gamma)) return {static_cast<double>(a), a + 1};
            return {natt, a + 1};
        }
        if (src.next()) {
            ++a;
            continue;
        }
        if (a >= h && h >= 1 && rng.bernoulli(gamma)) natt = h;
        ++h;
        if (h > a) return {natt, h};
    }
}

// Equal-fork variant: never decides at a tie, keeps the fork alive until the
// official chain pulls ahead.
ZL efsm_cycle(LetterSource& src, double gamma, Xoshiro256pp& rng)
{
    unsigned a = 0, h = 0;
    double natt = 0.0;
    for (;;) {
        if (src.next()) {
            ++a;
            continue;
        }
        if (a >= h && h >= 1 && rng.bernoulli(gamma)) natt = h;
        ++h;
        if (h > a) return {natt, h};
    }
}

// Trailing variant: like the lead-stubborn machine while ahead, but after
// losing a tie it keeps mining from behind until the lag reaches A (give
// up, keeping any cemented blocks) or the fork ties again. A=1 quits at the
// first lost tie and the machine degenerates to lsm_cycle.
ZL atm_cycle(LetterSource& src, double gamma, unsigned A, Xoshiro256pp& rng)
{
    if (!src.next()) return {0.0, 1};
    unsigned a = 1, h = 0;
    double natt = 0.0;
    for (;;) {
        if (a == h) {
            if (src.next()) return {a + 1.0, a + 1};
            if (rng.bernoulli(gamma)) natt = a;
            ++h;
            for (;;) {
                if (h - a >= A) return {natt, h};
                if (src.next()) {
                    if (++a == h) break;
                } else {
                    ++h;
                }
            }
            continue;
        }
        if (src.next()) {
            ++a;
            continue;
        }
        if (h >= 1 && rng.bernoulli(gamma)) natt = h;
        ++h;
    }
}

struct DsResult {
    double succ = 0.0;
    double rev = 0.0;
    double z = 0.0;
    unsigned l = 0;
};

// Premine one secret block, then race the confirmations: publish and win as
// soon as the payment has z confirmations and the secret chain is strictly
// longer; give up when the deficit-to-win reaches A.
DsResult ds_attempt(LetterSource& src, const DoubleSpendScenario& sc, const NetworkParams& pr)
{
    while (!src.next()) {}
    long a = 1, h = 0;
    const bool capped = sc.A != DoubleSpendPlan::kUncapped;
    const long lag_stop = capped ? static_cast<long>(sc.A) : kUncappedLagStop;
    for (;;) {
        if (h >= static_cast<long>(sc.z) && a >= h + 1) {
            const double blocks = static_cast<double>(a);
            return {1.0, sc.v + pr.b * blocks, blocks, static_cast<unsigned>(a)};
        }
        const long deficit = h + 1 - a;
        if (deficit >= lag_stop) {
            if (capped) return {0.0, 0.0, 0.0, static_cast<unsigned>(h)};
            // Analytic tail: catching up from this deficit happens with
            // probability lambda^deficit; duration and revenue are left at
            // their truncated values.
            const double credit =
                std::min(1.0, std::pow(pr.lambda(), static_cast<double>(deficit)));
            return {credit, 0.0, 0.0, static_cast<unsigned>(h)};
        }
        src.next() ? ++a : ++h;
    }
}

struct BatchStat {
    double z = 0.0, l = 0.0, rev = 0.0, dur = 0.0, dur_over_d = 0.0, succ = 0.0,
           letters = 0.0;
    std::uint64_t cycles = 0;

    void add(const BatchStat& o)
    {
        z += o.z;
        l += o.l;
        rev += o.rev;
        dur += o.dur;
        dur_over_d += o.dur_over_d;
        succ += o.succ;
        letters += o.letters;
        cycles += o.cycles;
    }
};

struct TrialResult {
    std::vector<BatchStat> batches;
    // Revenue credited per tau0-wide time bin (index 1..bins), for the
    // profitability-crossing curve.
    std::vector<double> rev_events;
    std::vector<double> durations;
    double total_time = 0.0;
    double final_d = 1.0;
};

TrialResult run_trial(const SimulationConfig& cfg, std::uint64_t index,
                      std::uint64_t batch_size, std::uint64_t bins)
{
    TrialResult out;
    Xoshiro256pp rng = Xoshiro256pp::substream(cfg.seed, index);
    const NetworkParams& pr = cfg.params;
    const StrategySpec* spec = std::get_if<StrategySpec>(&cfg.strategy);
    const DoubleSpendScenario* ds = std::get_if<DoubleSpendScenario>(&cfg.strategy);

    double d = 1.0;
    double t = 0.0;
    std::uint64_t window_blocks = 0;
    double window_start = 0.0;
    unsigned retargets = 0;
    bool warm = cfg.difficulty_adjustment;
    std::uint64_t measured = 0;

    if (bins) out.rev_events.assign(bins + 1, 0.0);

    BatchStat cur;
    auto flush = [&] {
        if (cur.cycles == 0) return;
        // A short leftover batch would distort the spread; fold it in.
        if (!out.batches.empty() && cur.cycles < batch_size / 2)
            out.batches.back().add(cur);
        else
            out.batches.push_back(cur);
        cur = BatchStat{};
    };

    for (;;) {
        if (cfg.cycles > 0 && measured >= cfg.cycles) break;
        if (cfg.sim_time > 0.0 && t >= cfg.sim_time) break;

        const bool count = !warm;
        const double d_now = d;
        LetterSource src{rng, pr.tau0 * d_now, pr.q};

        double z = 0.0, rev = 0.0, succ = 0.0;
        unsigned l = 0;
        if (ds) {
            const DsResult r = ds_attempt(src, *ds, pr);
            z = r.z;
            l = r.l;
            rev = r.rev;
            succ = r.succ;
        } else {
            ZL r;
            switch (spec->kind) {
            case StrategyKind::Honest: r = honest_cycle(src); break;
            case StrategyKind::SelfishMining: r = sm_cycle(src, pr.gamma, rng); break;
            case StrategyKind::LeadStubborn: r = lsm_cycle(src, pr.gamma, rng); break;
            case StrategyKind::EqualForkStubborn: r = efsm_cycle(src, pr.gamma, rng); break;
            case StrategyKind::ATrailing: r = atm_cycle(src, pr.gamma, *spec->A, rng); break;
            }
            z = r.z;
            l = r.l;
            rev = z * pr.b;
        }
        const double dur = src.elapsed;
        t += dur;

        if (bins) {
            auto k = static_cast<std::uint64_t>(std::ceil(t / pr.tau0));
            if (k == 0) k = 1;
            if (k <= bins) out.rev_events[k] += rev;
        }

        if (cfg.difficulty_adjustment) {
            window_blocks += l;
            if (window_blocks >= cfg.adjustment_window) {
                const double span = t - window_start;
                d *= static_cast<double>(window_blocks) * pr.tau0 / span;
                window_start = t;
                window_blocks = 0;
                ++retargets;
                if (warm && retargets >= kWarmupWindows) warm = false;
            }
        }

        if (count) {
            ++measured;
            cur.z += z;
            cur.l += l;
            cur.rev += rev;
            cur.dur += dur;
            cur.dur_over_d += dur / d_now;
            cur.letters += static_cast<double>(src.count);
            cur.succ += succ;
            ++cur.cycles;
            if (cfg.record_cycle_durations && index == 0) out.durations.push_back(dur);
            if (cur.cycles >= batch_size) flush();
        }
    }
    flush();
    out.total_time = t;
    out.final_d = d;
    return out;
}

Estimate ratio_estimate(const std::vector<BatchStat>& batches, const BatchStat& total,
                        double (*num)(const BatchStat&), double (*den)(const BatchStat&))
{
    Estimate e;
    const double dv = den(total);
    e.value = dv > 0.0 ? num(total) / dv : 0.0;

    std::vector<double> ratios;
    ratios.reserve(batches.size());
    for (const BatchStat& b : batches)
        if (den(b) > 0.0) ratios.push_back(num(b) / den(b));
    if (ratios.size() >= 2) {
        double mean = 0.0;
        for (double r : ratios) mean += r;
        mean /= static_cast<double>(ratios.size());
        double var = 0.0;
        for (double r : ratios) var += (r - mean) * (r - mean);
        var /= static_cast<double>(ratios.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(ratios.size()));
    }
    return e;
}

SimulationReport merge_trials(const SimulationConfig& cfg, std::vector<TrialResult>& trials,
                              std::uint64_t bins)
{
    SimulationReport rep;
    rep.seed = cfg.seed;
    const bool is_ds = std::holds_alternative<DoubleSpendScenario>(cfg.strategy);

    std::vector<BatchStat> batches;
    BatchStat total;
    for (TrialResult& tr : trials) {
        for (const BatchStat& b : tr.batches) {
            batches.push_back(b);
            total.add(b);
        }
        rep.total_time += tr.total_time;
        if (!tr.durations.empty()) rep.cycle_durations = std::move(tr.durations);
    }
    rep.cycles_executed = total.cycles;
    rep.final_difficulty = trials.front().final_d;

    rep.revenue_ratio = ratio_estimate(batches, total,
                                       [](const BatchStat& b) { return b.rev; },
                                       [](const BatchStat& b) { return b.dur; });
    rep.apparent_hashrate = ratio_estimate(batches, total,
                                           [](const BatchStat& b) { return b.z; },
                                           [](const BatchStat& b) { return b.l; });
    rep.mean_cycle_duration =
        ratio_estimate(batches, total, [](const BatchStat& b) { return b.dur; },
                       [](const BatchStat& b) { return static_cast<double>(b.cycles); });
    if (is_ds) {
        rep.success_frequency =
            ratio_estimate(batches, total, [](const BatchStat& b) { return b.succ; },
                           [](const BatchStat& b) { return static_cast<double>(b.cycles); });
    } else {
        Estimate delta = ratio_estimate(batches, total,
                                        [](const BatchStat& b) { return b.l; },
                                        [](const BatchStat& b) { return b.dur_over_d; });
        delta.value *= cfg.params.tau0;
        delta.std_error *= cfg.params.tau0;
        rep.delta = delta;
    }

    if (bins > 0 && !trials.empty()) {
        // Averaged cumulative revenue curve against the honest baseline
        // q b t / tau0, which equals q*b*k at bin edge k.
        const std::size_t ng = std::min<std::size_t>(10, trials.size());
        std::vector<double> whole(bins + 1, 0.0);
        std::vector<std::vector<double>> group(ng, std::vector<double>(bins + 1, 0.0));
        std::vector<double> group_size(ng, 0.0);
        for (std::size_t i = 0; i < trials.size(); ++i) {
            const std::size_t g = i * ng / trials.size();
            group_size[g] += 1.0;
            double acc = 0.0;
            for (std::uint64_t k = 1; k <= bins; ++k) {
                acc += trials[i].rev_events[k];
                whole[k] += acc;
                group[g][k] += acc;
            }
        }
        const double per_bin_baseline = cfg.params.q * cfg.params.b;
        auto crossing = [&](const std::vector<double>& curve, double size) -> double {
            // Scan from the horizon backwards. The expected gap to the
            // baseline changes sign at most once, so the mean curve's first
            // crossing is the point after which the average stays above the
            // baseline; a forward scan would trigger on noise near t = 0
            // where both curves vanish.
            auto above = [&](std::uint64_t k) {
                return curve[k] / size >= per_bin_baseline * static_cast<double>(k);
            };
            if (!above(bins)) return -1.0;
            std::uint64_t k = bins;
            while (k > 1 && above(k - 1)) --k;
            return static_cast<double>(k) * cfg.params.tau0;
        };
        const double when = crossing(whole, static_cast<double>(trials.size()));
        if (when >= 0.0) {
            TimeToProfitability tp;
            tp.seconds = when;
            std::vector<double> times;
            for (std::size_t g = 0; g < ng; ++g) {
                const double w = crossing(group[g], group_size[g]);
                if (w >= 0.0) times.push_back(w);
            }
            if (times.size() >= 2) {
                double mean = 0.0;
                for (double w : times) mean += w;
                mean /= static_cast<double>(times.size());
                double var = 0.0;
                for (double w : times) var += (w - mean) * (w - mean);
                var /= static_cast<double>(times.size() - 1);
                tp.std_error = std::sqrt(var / static_cast<double>(times.size()));
            }
            rep.time_to_profitability = tp;
        }
    }
    return rep;
}

SimulationReport run_engine(const SimulationConfig& cfg, int num_threads, bool parallel)
{
    cfg.validate();
    std::uint64_t batch_size = kBatchCycles;
    if (cfg.cycles > 0 && cfg.cycles < 2 * kBatchCycles)
        batch_size = std::max<std::uint64_t>(1, cfg.cycles / 10);
    const std::uint64_t bins =
        cfg.estimate_time_to_profitability
            ? static_cast<std::uint64_t>(cfg.sim_time / cfg.params.tau0)
            : 0;

    std::vector<TrialResult> trials(cfg.trials);
    if (parallel) {
#ifdef _OPENMP
        const int nt = num_threads > 0 ? num_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long long i = 0; i < static_cast<long long>(cfg.trials); ++i)
            trials[static_cast<std::size_t>(i)] =
                run_trial(cfg, static_cast<std::uint64_t>(i), batch_size, bins);
#else
        (void)num_threads;
        for (std::uint64_t i = 0; i < cfg.trials; ++i)
            trials[i] = run_trial(cfg, i, batch_size, bins);
#endif
    } else {
        for (std::uint64_t i = 0; i < cfg.trials; ++i)
            trials[i] = run_trial(cfg, i, batch_size, bins);
    }
    return merge_trials(cfg, trials, bins);
}

} // namespace

void SimulationConfig::validate() const
{
    params.validate();
    if ((cycles > 0) == (sim_time > 0.0))
        throw std::invalid_argument("SimulationConfig: exactly one of cycles and sim_time must be set");
    if (sim_time < 0.0 || !std::isfinite(sim_time))
        throw std::domain_error("SimulationConfig: sim_time must be finite and nonnegative");
    if (trials < 1) throw std::domain_error("SimulationConfig: trials must be >= 1");
    if (adjustment_window < 1)
        throw std::domain_error("SimulationConfig: adjustment_window must be >= 1");

    if (const StrategySpec* spec = std::get_if<StrategySpec>(&strategy)) {
        spec->validate();
        if (estimate_time_to_profitability) {
            if (spec->kind == StrategyKind::Honest)
                throw std::invalid_argument(
                    "SimulationConfig: time to profitability needs a block-withholding strategy");
            if (!(sim_time > 0.0))
                throw std::invalid_argument(
                    "SimulationConfig: time to profitability needs a sim_time horizon");
        }
    } else {
        std::get<DoubleSpendScenario>(strategy).plan(params).validate();
        if (difficulty_adjustment)
            throw std::invalid_argument(
                "SimulationConfig: difficulty adjustment does not apply to double-spend runs");
        if (estimate_time_to_profitability)
            throw std::invalid_argument(
                "SimulationConfig: time to profitability needs a block-withholding strategy");
    }
}

SimulationReport run(const SimulationConfig& config, int num_threads)
{
    return run_engine(config, num_threads, true);
}

SimulationReport run_reference(const SimulationConfig& config)
{
    return run_engine(config, 0, false);
}

std::optional<TimeToProfitability> estimate_time_to_profitability(const SimulationConfig& config)
{
    SimulationConfig cfg = config;
    cfg.estimate_time_to_profitability = true;
    return run(cfg).time_to_profitability;
}

PoissonRaceStats poisson_race_statistics(double alpha, double alpha_prime,
                                         std::uint64_t seed, std::uint64_t trials)
{
    if (!(alpha > 0.0) || !(alpha_prime > 0.0))
        throw std::domain_error("poisson_race_statistics: rates must be positive");
    if (!(alpha_prime < alpha))
        throw std::domain_error("poisson_race_statistics: needs alpha_prime < alpha, "
                                "the stopping time is not integrable otherwise");
    if (trials < 1) throw std::domain_error("poisson_race_statistics: trials must be >= 1");

    const double combined = alpha + alpha_prime;
    const double p_lead = alpha / combined;

    double sum_t = 0.0, sq_t = 0.0;
    double sum_n = 0.0, sq_n = 0.0;
    double sum_m = 0.0, sq_m = 0.0;
    bool lead_one = true;

    Xoshiro256pp rng(seed);
    for (std::uint64_t i = 0; i < trials; ++i) {
        double t = 0.0;
        std::uint64_t n = 0, m = 0;
        while (n != m + 1) {
            t += -std::log1p(-rng.uniform()) / combined;
            rng.uniform() < p_lead ? ++n : ++m;
        }
        lead_one = lead_one && (n == m + 1);
        sum_t += t;
        sq_t += t * t;
        sum_n += static_cast<double>(n);
        sq_n += static_cast<double>(n) * static_cast<double>(n);
        sum_m += static_cast<double>(m);
        sq_m += static_cast<double>(m) * static_cast<double>(m);
    }

    const double dn = static_cast<double>(trials);
    auto estimate = [dn](double sum, double sq) {
        Estimate e;
        e.value = sum / dn;
        if (dn >= 2.0) {
            const double var = (sq - sum * sum / dn) / (dn - 1.0);
            e.std_error = std::sqrt(std::max(0.0, var) / dn);
        }
        return e;
    };
    PoissonRaceStats out;
    out.duration = estimate(sum_t, sq_t);
    out.winner_count = estimate(sum_n, sq_n);
    out.loser_count = estimate(sum_m, sq_m);
    out.trials = trials;
    out.lead_always_one = lead_one;
    return out;
}

DoubleSpendOutcome estimate_double_spend_success(const DoubleSpendPlan& plan,
                                                 std::uint64_t seed, std::uint64_t trials)
{
    plan.validate();
    if (trials < 1)
        throw std::domain_error("estimate_double_spend_success: trials must be >= 1");

    const DoubleSpendScenario sc{plan.z, plan.A, plan.v};
    const std::size_t nb = static_cast<std::size_t>(std::min<std::uint64_t>(100, trials));
    std::vector<BatchStat> batches(nb);
    for (std::uint64_t i = 0; i < trials; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::substream(seed, i);
        LetterSource src{rng, plan.params.tau0, plan.params.q};
        const DsResult r = ds_attempt(src, sc, plan.params);
        BatchStat& b = batches[static_cast<std::size_t>(i * nb / trials)];
        b.succ += r.succ;
        b.rev += r.rev;
        b.dur += src.elapsed;
        ++b.cycles;
    }
    BatchStat total;
    for (const BatchStat& b : batches) total.add(b);

    DoubleSpendOutcome out;
    out.success_probability =
        ratio_estimate(batches, total, [](const BatchStat& b) { return b.succ; },
                       [](const BatchStat& b) { return static_cast<double>(b.cycles); });
    out.mean_revenue =
        ratio_estimate(batches, total, [](const BatchStat& b) { return b.rev; },
                       [](const BatchStat& b) { return static_cast<double>(b.cycles); });
    out.mean_duration =
        ratio_estimate(batches, total, [](const BatchStat& b) { return b.dur; },
                       [](const BatchStat& b) { return static_cast<double>(b.cycles); });
    out.revenue_rate = ratio_estimate(batches, total,
                                      [](const BatchStat& b) { return b.rev; },
                                      [](const BatchStat& b) { return b.dur; });
    return out;
}

} // namespace powmath
