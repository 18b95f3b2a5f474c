// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../support.hpp"

using namespace gpfeat;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
}

std::size_t hardware_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

Outcome operator_closure()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    const double specials[] = {0.0, -0.0, 1.0, -1.0, 1e12, -1e12, 1e-12, -1e-12, 1e-9, -1e-9, 50.0, -50.0, 0.5, 2.0};
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<std::size_t> special(0, std::size(specials) - 1);
    std::uniform_real_distribution<double> exponent(-12.0, 12.0);
    std::normal_distribution<double> normal(0.0, 3.0);
    auto draw = [&]() -> double {
        switch (pick(rng)) {
        case 0: return specials[special(rng)];
        case 1: return (rng() & 1U ? 1.0 : -1.0) * std::pow(10.0, exponent(rng));
        case 2: return normal(rng);
        default: return std::uniform_real_distribution<double>(-1e12, 1e12)(rng);
        }
    };
    std::size_t bad = 0;
    std::size_t total = 0;
    for (const auto& op : kOperators) {
        for (int i = 0; i < 100000; ++i) {
            const double a = draw(), b = draw(), c = draw();
            if (!std::isfinite(apply_operator(op.code, a, b, c))) ++bad;
            ++total;
        }
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 10.0, fmt("%zu non-finite of %zu results over %zu operators in %.2fs", bad, total, kOperators.size(), secs)};
}

Outcome evaluation_oracle()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(202);
    const std::size_t d = 8;
    const auto x = oracle::random_matrix(rng, 100, d, 2.0);
    double worst = 0.0;
    int deepest = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto tree = oracle::random_tree(rng, d, 6);
        deepest = std::max(deepest, tree.depth());
        const auto fast = evaluate(tree, x).values;
        const auto slow = oracle::evaluate(tree, x);
        for (std::size_t r = 0; r < x.rows(); ++r) worst = std::max(worst, std::fabs(fast[r] - slow[r]));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 30.0, fmt("max |diff| %.3g over 1000 trees x 100 rows (max depth %d) in %.2fs", worst, deepest, secs)};
}

Outcome metric_oracles()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(303);
    double worst = 0.0;
    for (int s = 0; s < 500; ++s) {
        const std::size_t n = 2 + rng() % 199;
        const int levels = 1 + static_cast<int>(rng() % 50); // coarse levels force ties
        std::vector<double> scores(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng() % static_cast<unsigned>(levels)) / levels;
            y[i] = static_cast<int>(rng() & 1U);
        }
        y[0] = 0;
        y[1] = 1;
        Matrix m;
        m.append_column(scores);
        const auto labels = Labels::multilabel({"t"}, std::vector<std::uint8_t>(y.begin(), y.end()));
        worst = std::max(worst, std::fabs(roc_auc_macro(m, labels) - oracle::brute_auc(scores, y)));
    }
    const std::vector<int> truth{0, 1, 2, 1, 1, 0, 2, 2};
    const std::vector<int> pred{0, 2, 2, 1, 0, 0, 2, 1};
    const double acc = accuracy(pred, truth); // matches at 0, 2, 3, 5, 6
    const double secs = seconds_since(t0);
    return {worst <= 1e-12 && acc == 5.0 / 8.0 && secs < 10.0,
            fmt("max AUC |diff| %.3g over 500 sets; accuracy %.4f vs hand count 0.6250; %.2fs", worst, acc, secs)};
}

Outcome parsimony_pressure()
{
    const double lambda = 0.01;
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> metric(0.5, 0.95);
    double worstGap = 0.0;
    std::size_t pairs = 0;
    std::size_t smallerWon = 0;
    std::size_t contested = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto a = oracle::random_tree(rng, 5, 6);
        const auto b = oracle::random_tree(rng, 5, 6);
        const double raw = metric(rng);
        const auto ra = make_fitness_record(raw, a.node_count(), false, lambda);
        const auto rb = make_fitness_record(raw, b.node_count(), false, lambda);
        const double expected = lambda * (static_cast<double>(b.node_count()) - static_cast<double>(a.node_count()));
        worstGap = std::max(worstGap, std::fabs((ra.fitness - rb.fitness) - expected));
        ++pairs;
        if (a.node_count() == b.node_count()) continue;
        ++contested;
        const Individual ia{a, ra, static_cast<std::uint64_t>(i)};
        const Individual ib{b, rb, static_cast<std::uint64_t>(i)};
        const Individual* smaller = a.node_count() < b.node_count() ? &ia : &ib;
        const std::vector<const Individual*> ab{&ia, &ib};
        const std::vector<const Individual*> ba{&ib, &ia};
        if (&tournament_winner(ab) == smaller && &tournament_winner(ba) == smaller) ++smallerWon;
    }
    return {worstGap <= 1e-12 && smallerWon == contested,
            fmt("max |gap - lambda*dNodes| %.3g over %zu pairs; smaller tree won %zu/%zu tournaments", worstGap, pairs, smallerWon,
                contested)};
}

// Rewards size so trees press against the height limit for the whole run.
struct BloatFitness {
    FitnessRecord operator()(const ExpressionTree& t) const
    {
        const double raw = static_cast<double>(t.node_count()) / 200.0;
        return make_fitness_record(raw, t.node_count(), false, 0.0);
    }
};

Outcome height_limit_sweep(std::vector<RunLog>& logsOut)
{
    EvolutionConfig c = EvolutionConfig::gp100();
    c.max_generations = 50;
    c.stagnation_generations = 1000;
    c.convergence_window = 1000;
    RunOptions opt;
    opt.workers = hardware_workers();
    const auto log = evolve_one_run(c, synthetic_feature_names(10), BloatFitness{}, 505, opt);
    std::size_t over = 0;
    std::size_t atLimit = 0;
    for (const auto& e : log.evaluations) {
        over += e.depth > 6;
        atLimit += e.depth == 6;
    }
    logsOut.push_back(log);
    return {over == 0 && log.generations_completed == 50,
            fmt("%zu of %zu logged individuals deeper than 6 (%zu at depth 6); %d generations", over, log.evaluations.size(), atLimit,
                log.generations_completed)};
}

Outcome early_stop_triggers(std::vector<RunLog>& logsOut)
{
    const EvolutionConfig c;
    // Injected stream: improving for 5 generations, then flat.
    std::vector<double> best, variance;
    int stoppedAt = -1;
    for (int g = 0; g < 40 && stoppedAt < 0; ++g) {
        best.push_back(g < 5 ? 0.1 * g : 0.4);
        variance.push_back(0.05);
        if (check_early_stop(best, variance, c) == StopReason::Stagnation) stoppedAt = g;
    }
    const int flatAtStop = stoppedAt - 4; // generation 4 set the final best
    const bool streamOk = flatAtStop == 15;

    // Engine with injected fitness: best fixed from generation 0, population still diverse.
    EvolutionConfig e;
    e.population_size = 60;
    e.seed = 1;
    auto stepped = [](const ExpressionTree& t) {
        const double raw = 0.5 - 0.1 * static_cast<double>(t.node_count() % 3);
        return FitnessRecord{raw, raw, t.node_count(), false};
    };
    const auto stag = evolve_one_run(e, synthetic_feature_names(4), stepped, 7);
    // Constant population fitness: variance zero from the start.
    auto constant = [](const ExpressionTree& t) { return FitnessRecord{0.3, 0.3, t.node_count(), false}; };
    const auto conv = evolve_one_run(e, synthetic_feature_names(4), constant, 7);
    logsOut.push_back(stag);
    logsOut.push_back(conv);

    const bool engineStag = stag.stop_reason == StopReason::Stagnation && stag.generations_completed == 15;
    const bool engineConv = conv.stop_reason == StopReason::Convergence && conv.generations_completed == 4;
    return {streamOk && engineStag && engineConv,
            fmt("stream: stagnation after %d flat generations; engine: %s after generation %d, %s after generation %d (window of 5 = "
                "generations 0-4)",
                flatAtStop, std::string(to_string(stag.stop_reason)).c_str(), stag.generations_completed,
                std::string(to_string(conv.stop_reason)).c_str(), conv.generations_completed)};
}

Outcome trajectory_properties(const std::vector<RunLog>& logs)
{
    double worst = 0.0;
    std::size_t monotoneFailures = 0;
    std::size_t evaluations = 0;
    for (const auto& log : logs) {
        const auto t = trajectory(log);
        std::vector<double> f;
        for (const auto& e : log.evaluations) f.push_back(e.fitness);
        const auto mean = oracle::prefix_mean(f);
        for (std::size_t i = 0; i < f.size(); ++i) {
            worst = std::max(worst, std::fabs(t.running_average[i] - mean[i]));
            if (i > 0 && t.best_so_far[i] < t.best_so_far[i - 1]) ++monotoneFailures;
        }
        evaluations += f.size();
    }
    return {!logs.empty() && monotoneFailures == 0 && worst <= 1e-12,
            fmt("%zu logs, %zu evaluations: %zu best-so-far decreases, max running-average |diff| %.3g", logs.size(), evaluations,
                monotoneFailures, worst)};
}

struct SeedRun {
    std::uint64_t seed = 0;
    double baseline_val = 0.0;
    double augmented_val = 0.0;
    double baseline_test = 0.0;
    double augmented_test = 0.0;
    bool early_half = false; // at least half the improvement within 1000 evaluations
    std::size_t evaluations = 0;
    std::string expr;
    RunLog log;
};

std::vector<SeedRun> synthetic_runs()
{
    std::vector<SeedRun> out;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SyntheticSpec spec;
        spec.rows = 2000;
        spec.base_features = 10;
        spec.noise_std = 0.1;
        spec.planted = "(mul x0 x1)";
        spec.seed = seed;
        const auto data = generate_synthetic(spec);

        EvolutionConfig c = EvolutionConfig::gp100();
        c.iterations = 1;
        c.seed = seed;
        const auto hyper = GBTHyperparams::multilabel_preset();
        RunOptions opt;
        opt.workers = hardware_workers();
        opt.label = "seed " + std::to_string(seed);
        const auto result = iterative_construct(data, c, hyper, Metric::RocAucMacro, opt);

        SeedRun r;
        r.seed = seed;
        r.baseline_val = result.baseline_validation_metric;
        r.augmented_val = result.accepted.front().validation_metric;
        r.expr = result.accepted.front().expr;
        r.log = result.run_logs.front();
        r.evaluations = r.log.evaluations.size();

        // Validation metric of the fitness-best individual seen so far, by evaluation count.
        const double total = r.augmented_val - r.baseline_val;
        double bestFitness = -std::numeric_limits<double>::infinity();
        double metricAtBest = r.baseline_val;
        for (const auto& e : r.log.evaluations) {
            if (e.eval > 1000) break;
            if (e.fitness > bestFitness) {
                bestFitness = e.fitness;
                metricAtBest = e.raw_metric;
            }
        }
        r.early_half = total <= 0.0 || metricAtBest - r.baseline_val >= 0.5 * total;

        const auto trees = result.accepted_trees();
        r.baseline_test = holdout_evaluation(data, {}, hyper, Metric::RocAucMacro, data.splits.test).metric;
        r.augmented_test = holdout_evaluation(data, trees, hyper, Metric::RocAucMacro, data.splits.test).metric;
        std::fprintf(stderr, "  seed %2llu: val %.4f -> %.4f, test %.4f -> %.4f, %zu evals, %s: %s\n",
                     static_cast<unsigned long long>(seed), r.baseline_val, r.augmented_val, r.baseline_test, r.augmented_test,
                     r.evaluations, std::string(to_string(r.log.stop_reason)).c_str(), r.expr.c_str());
        out.push_back(std::move(r));
    }
    return out;
}

Outcome synthetic_recovery(const std::vector<SeedRun>& runs, double secs)
{
    std::size_t improved = 0;
    std::size_t early = 0;
    for (const auto& r : runs) {
        if (r.augmented_val > r.baseline_val) {
            ++improved;
            early += r.early_half;
        }
    }
    return {improved >= 8 && early == improved,
            fmt("validation improved in %zu/10 seeds; %zu/%zu improving seeds reached half their gain within 1000 evaluations; %.0fs total",
                improved, early, improved, secs)};
}

Outcome non_degradation(const std::vector<SeedRun>& runs)
{
    std::vector<double> base, aug;
    double worstDrop = 0.0;
    for (const auto& r : runs) {
        base.push_back(r.baseline_test);
        aug.push_back(r.augmented_test);
        worstDrop = std::max(worstDrop, r.baseline_test - r.augmented_test);
    }
    const auto sb = distribution_summary(base);
    const auto sa = distribution_summary(aug);
    return {sa.median >= sb.median && worstDrop <= 0.01,
            fmt("median test AUC %.4f augmented vs %.4f baseline (IQR %.4f-%.4f vs %.4f-%.4f); largest drop %.4f", sa.median, sb.median,
                sa.q1, sa.q3, sb.q1, sb.q3, worstDrop)};
}

// Scores whose AUC against `labels` sits strictly inside (0.5, 1).
std::pair<Matrix, Labels> noisy_binary(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> s(n);
    std::vector<std::uint8_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<std::uint8_t>(rng() & 1U);
        s[i] = g(rng) + (y[i] ? 1.0 : 0.0);
    }
    y[0] = 0;
    y[1] = 1;
    Matrix m;
    m.append_column(s);
    return {std::move(m), Labels::multilabel({"t"}, std::move(y))};
}

Outcome bootstrap_behaviour()
{
    std::mt19937_64 rng(1010);
    const std::size_t workers = hardware_workers();

    std::size_t inside = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        const auto [x, y] = noisy_binary(200, rng);
        const auto r = bootstrap_ci(x, y, Metric::RocAucMacro, {2000, 0.95, t, workers, 0.10});
        inside += r.ci_low <= r.point && r.point <= r.ci_high;
    }

    // Bernoulli accuracy: each prediction is correct with probability p.
    const double p = 0.7;
    const std::size_t n = 300;
    std::size_t covered = 0;
    for (std::uint64_t t = 0; t < 500; ++t) {
        std::vector<int> truth(n);
        Matrix scores(n, 2, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = static_cast<int>(i % 2);
            const bool correct = std::bernoulli_distribution(p)(rng);
            const int predicted = correct ? truth[i] : 1 - truth[i];
            scores(i, static_cast<std::size_t>(predicted)) = 1.0;
        }
        const auto labels = Labels::multiclass({"a", "b"}, truth);
        const auto r = bootstrap_ci(scores, labels, Metric::Accuracy, {2000, 0.95, 5000 + t, workers, 0.10});
        covered += r.ci_low <= p && p <= r.ci_high;
    }
    const double coverage = static_cast<double>(covered) / 500.0;

    double ratio = 0.0;
    const int pairs = 20;
    for (int t = 0; t < pairs; ++t) {
        const auto [xs, ys] = noisy_binary(250, rng);
        const auto [xl, yl] = noisy_binary(1000, rng);
        const auto small = bootstrap_ci(xs, ys, Metric::RocAucMacro, {2000, 0.95, 9000u + static_cast<unsigned>(t), workers, 0.10});
        const auto large = bootstrap_ci(xl, yl, Metric::RocAucMacro, {2000, 0.95, 9500u + static_cast<unsigned>(t), workers, 0.10});
        ratio += (large.ci_high - large.ci_low) / (small.ci_high - small.ci_low) / pairs;
    }
    return {inside == 100 && std::fabs(coverage - 0.95) <= 0.03 && ratio >= 0.4 && ratio <= 0.6,
            fmt("point inside CI %zu/100; Bernoulli coverage %.3f over 500 trials; mean width ratio n=1000/n=250 %.3f", inside, coverage,
                ratio)};
}

Outcome analysis_oracles()
{
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> metric(0.5, 0.9);
    const std::size_t d = 12;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("f" + std::to_string(i));
    std::vector<ExpressionTree> trees;
    std::vector<double> perf;
    for (int e = 0; e < 500; ++e) {
        trees.push_back(oracle::random_tree(rng, d, 5));
        perf.push_back(metric(rng));
    }
    std::size_t mismatches = 0;
    std::size_t cells = 0;
    const auto pairs = feature_pair_cooccurrence(trees, perf, names);
    const auto bp = oracle::pair_recount(trees, perf, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j, ++cells) {
            const bool ok = pairs.count(i, j) == bp.count[i][j] &&
                            (bp.count[i][j] == 0 ? std::isnan(pairs.mean(i, j)) : pairs.mean(i, j) == bp.sum[i][j] / double(bp.count[i][j]));
            mismatches += !ok;
        }
    }
    const auto ops = operator_feature_stats(trees, perf, names);
    const auto bo = oracle::operator_recount(trees, perf, d);
    for (std::size_t o = 0; o < kOperators.size(); ++o) {
        for (std::size_t f = 0; f < d; ++f, ++cells) {
            const bool ok = ops.count(o, f) == bo.count[o][f] &&
                            (bo.count[o][f] == 0 ? std::isnan(ops.mean(o, f)) : ops.mean(o, f) == bo.sum[o][f] / double(bo.count[o][f]));
            mismatches += !ok;
        }
    }
    return {mismatches == 0, fmt("%zu mismatching cells of %zu (feature-pair and operator-feature, 500 expressions)", mismatches, cells)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome cli_determinism()
{
    const fs::path dir = fs::temp_directory_path() / "gpfeat_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string base = "seed = 12\n"
                             "data.source = synthetic\n"
                             "synthetic.rows = 600\n"
                             "gp.population_size = 30\n"
                             "gp.max_generations = 5\n"
                             "gp.iterations = 2\n"
                             "bootstrap.resamples = 500\n";
    std::ofstream(dir / "w1.conf") << base << "workers = 1\n";
    std::ofstream(dir / "w8.conf") << base << "workers = 8\n";
    const std::string bin = GPFEAT_CLI_PATH;
    auto evolve = [&](const std::string& conf, const std::string& out) {
        const auto cmd = bin + " evolve -c " + (dir / conf).string() + " -o " + (dir / out).string() + " 2>" + (dir / (out + ".log")).string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const int s1 = evolve("w1.conf", "a");
    const int s2 = evolve("w1.conf", "b");
    const int s3 = evolve("w8.conf", "c");
    const int s4 = evolve("w8.conf", "d");
    const char* files[] = {"runlog_1.jsonl", "runlog_2.jsonl", "features.txt", "metrics.json", "construction.json"};
    std::size_t identical = 0;
    std::size_t compared = 0;
    std::size_t bytes = 0;
    for (const char* f : files) {
        const auto ref = slurp(dir / "a" / f);
        bytes += ref.size();
        for (const char* other : {"b", "c", "d"}) {
            ++compared;
            identical += !ref.empty() && slurp(dir / other / f) == ref;
        }
    }
    fs::remove_all(dir);
    const bool ok = s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0 && identical == compared;
    return {ok, fmt("exit codes %d/%d/%d/%d; %zu/%zu file comparisons byte-identical across reruns at workers 1 and 8 (%zu bytes each run)",
                    s1, s2, s3, s4, identical, compared, bytes)};
}

Outcome classifier_sanity()
{
    std::mt19937_64 rng(1313);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix x(200, 2);
    std::vector<std::uint8_t> y;
    while (y.size() < 200) {
        const double a = u(rng), b = u(rng);
        if (std::fabs(0.7 * a - 0.4 * b + 0.1) < 0.05) continue; // margin around the separating line
        x(y.size(), 0) = a;
        x(y.size(), 1) = b;
        y.push_back(0.7 * a - 0.4 * b + 0.1 > 0 ? 1 : 0);
    }
    auto hyper = GBTHyperparams::multilabel_preset();
    hyper.mode = BoostMode::BinaryLogistic;
    const auto labels = Labels::multilabel({"t"}, y);
    const auto model = train_gbt(x, labels, hyper);
    const auto s = predict_scores(model, x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < 200; ++i) correct += (s(i, 0) > 0.5) == (y[i] == 1);

    double worst = 0.0;
    std::uniform_real_distribution<double> margin(-6.0, 6.0);
    for (int i = 0; i < 10000; ++i) {
        const double yy = static_cast<double>(rng() & 1U);
        const double z = margin(rng);
        const double h = 1e-5;
        const double numeric = -(logistic_loss(yy, sigmoid(z + h)) - logistic_loss(yy, sigmoid(z - h))) / (2 * h);
        const double analytic = logistic_negative_gradient(yy, sigmoid(z));
        worst = std::max(worst, std::fabs(numeric - analytic) / std::max(std::fabs(analytic), 1e-3));
    }
    return {correct == 200 && worst <= 1e-6,
            fmt("training accuracy %zu/200 with %zu rounds (depth %d, lr %.1f); max gradient relative error %.3g", correct,
                model.trees[0].size(), hyper.max_depth, hyper.learning_rate, worst)};
}

} // namespace

int main()
{
    std::printf("acceptance suite (%zu hardware threads)\n", hardware_workers());
    std::vector<RunLog> logs;

    report(1, "protected-operator closure", operator_closure);
    report(2, "evaluation oracle equivalence", evaluation_oracle);
    report(3, "metric oracles", metric_oracles);
    report(4, "parsimony pressure", parsimony_pressure);
    report(5, "height-limit sweep", [&] { return height_limit_sweep(logs); });
    report(6, "early-stop triggers", [&] { return early_stop_triggers(logs); });

    const auto t0 = Clock::now();
    std::vector<SeedRun> runs;
    std::string runError;
    try {
        runs = synthetic_runs();
    } catch (const std::exception& e) {
        runError = e.what();
    }
    const double runSecs = seconds_since(t0);
    for (const auto& r : runs) logs.push_back(r.log);

    report(7, "trajectory properties", [&] { return trajectory_properties(logs); });
    report(8, "synthetic recovery", [&]() -> Outcome {
        if (!runError.empty()) return {false, "exception: " + runError};
        return synthetic_recovery(runs, runSecs);
    });
    report(9, "augmentation non-degradation", [&]() -> Outcome {
        if (!runError.empty()) return {false, "exception: " + runError};
        return non_degradation(runs);
    });
    report(10, "bootstrap CI behaviour", bootstrap_behaviour);
    report(11, "analysis oracle equivalence", analysis_oracles);
    report(12, "CLI determinism", cli_determinism);
    report(13, "classifier sanity", classifier_sanity);

    std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
