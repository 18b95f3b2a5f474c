#include <cmath>
#include <cstring>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace gpfeat;

namespace {

ExpressionTree feat(std::size_t i) { return ExpressionTree::leaf(Node::make_feature(i)); }
ExpressionTree cst(double v) { return ExpressionTree::leaf(Node::make_constant(v)); }

const Dataset& toy_data()
{
    static const Dataset data = [] {
        SyntheticSpec spec;
        spec.rows = 400;
        spec.base_features = 4;
        spec.seed = 17;
        return generate_synthetic(spec);
    }();
    return data;
}

FitnessSettings fast_settings()
{
    FitnessSettings s;
    s.hyper.n_estimators = 20;
    return s;
}

EvolutionConfig tiny_config(std::size_t iterations)
{
    EvolutionConfig c;
    c.population_size = 10;
    c.max_generations = 2;
    c.iterations = iterations;
    c.seed = 5;
    return c;
}

// Deterministic cheap scorer: |Pearson correlation| between the last training
// column and the first target on the evaluation rows.
double correlation_scorer(const Matrix&, std::span<const std::span<const std::uint32_t>>, const Labels&, const Matrix& evalX,
                          const Labels& evalY)
{
    const auto x = evalX.column(evalX.cols() - 1);
    const auto y = evalY.target_column(0);
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxx > 0 && syy > 0 ? std::fabs(sxy) / std::sqrt(sxx * syy) : 0.0;
}

std::string logs_text(const ConstructionResult& r)
{
    std::ostringstream os;
    for (const auto& log : r.run_logs) write_run_log(os, log);
    os << construction_to_json(r, {}).dump();
    return os.str();
}

} // namespace

TEST(Record, WorkedExamples)
{
    EXPECT_NEAR(make_fitness_record(0.80, 7, false, 0.01).fitness, 0.73, 1e-12);
    EXPECT_NEAR(make_fitness_record(0.80, 7, true, 0.01).fitness, -0.27, 1e-12);
    const auto r = make_fitness_record(0.8, 7, true, 0.01);
    EXPECT_EQ(r.raw_metric, 0.8);
    EXPECT_EQ(r.node_count, 7U);
    EXPECT_TRUE(r.had_non_finite);
}

TEST(Record, ParsimonyOrdering)
{
    for (std::size_t a = 1; a < 20; ++a) {
        for (std::size_t b = 1; b < 20; ++b) {
            const auto ra = make_fitness_record(0.7, a, false, 0.01);
            const auto rb = make_fitness_record(0.7, b, false, 0.01);
            EXPECT_NEAR(ra.fitness - rb.fitness, -0.01 * (double(a) - double(b)), 1e-12);
            EXPECT_LE(ra.fitness, ra.raw_metric);
        }
    }
}

TEST(Context, DuplicatedBaseColumnMatchesDirectTraining)
{
    const auto& data = toy_data();
    const FitnessContext ctx(data, {}, fast_settings());
    const double baseline = ctx.baseline_metric();
    const auto rec = ctx.evaluate(feat(2));

    // Oracle: append a copy of column 2 and train directly.
    Matrix x = data.features;
    x.append_column(data.features.column(2));
    const auto model = train_gbt(x.select_rows(data.splits.train), data.labels.select_rows(data.splits.train), fast_settings().hyper);
    const double direct = roc_auc_macro(predict_scores(model, x.select_rows(data.splits.validation)),
                                        data.labels.select_rows(data.splits.validation));
    EXPECT_NEAR(rec.raw_metric, direct, 1e-9);
    EXPECT_NEAR(rec.raw_metric, baseline, 0.02);
    EXPECT_NEAR(rec.fitness, rec.raw_metric - 0.01, 1e-12);
}

TEST(Context, PlantedColumnBeatsBaseline)
{
    const auto& data = toy_data();
    const FitnessContext ctx(data, {}, fast_settings());
    const auto planted = ExpressionTree::apply(OpCode::Mul, {feat(0), feat(1)});
    EXPECT_GT(ctx.evaluate(planted).raw_metric, ctx.baseline_metric());
}

TEST(Context, CandidateStandardizedWithTrainStatistics)
{
    const auto& data = toy_data();
    std::vector<double> seen;
    const HoldoutScorer capture = [&](const Matrix& trainX, std::span<const std::span<const std::uint32_t>> order, const Labels&,
                                      const Matrix&, const Labels&) {
        const auto col = trainX.column(trainX.cols() - 1);
        seen.assign(col.begin(), col.end());
        EXPECT_EQ(order.size(), trainX.cols());
        return 0.5;
    };
    const FitnessContext ctx(data, {}, fast_settings(), false, capture);

    const auto t = ExpressionTree::apply(OpCode::Add, {ExpressionTree::apply(OpCode::Mul, {feat(0), cst(7)}), cst(3)});
    ctx.evaluate(t);
    ASSERT_EQ(seen.size(), data.splits.train.size());
    double mean = 0;
    for (double v : seen) mean += v;
    mean /= double(seen.size());
    double var = 0;
    for (double v : seen) var += (v - mean) * (v - mean);
    EXPECT_LT(std::fabs(mean), 1e-9);
    EXPECT_NEAR(std::sqrt(var / double(seen.size())), 1.0, 1e-9);

    ctx.evaluate(cst(2.0));
    for (double v : seen) EXPECT_EQ(v, 0.0);
}

TEST(Context, NonFiniteCandidatePenalized)
{
    const auto& data = toy_data();
    const HoldoutScorer stub = [](const Matrix&, std::span<const std::span<const std::uint32_t>>, const Labels&, const Matrix&,
                                  const Labels&) { return 0.8; };
    const FitnessContext ctx(data, {}, fast_settings(), false, stub);
    const auto inf = ExpressionTree::apply(OpCode::Add, {feat(0), ExpressionTree::apply(OpCode::Mul, {cst(1e300), cst(1e300)})});
    const auto rec = ctx.evaluate(inf);
    EXPECT_TRUE(rec.had_non_finite);
    EXPECT_NEAR(rec.fitness, 0.8 - 0.01 * double(inf.node_count()) - 1.0, 1e-12);
}

TEST(Context, ScorerFailureCarriesExpression)
{
    const HoldoutScorer bad = [](const Matrix&, std::span<const std::span<const std::uint32_t>>, const Labels&, const Matrix&,
                                 const Labels&) -> double { throw std::runtime_error("singular"); };
    const FitnessContext ctx(toy_data(), {}, fast_settings(), false, bad);
    try {
        ctx.evaluate(ExpressionTree::apply(OpCode::Add, {feat(0), feat(3)}));
        FAIL();
    } catch (const EvaluationError& e) {
        EXPECT_EQ(e.expression(), "(add x0 x3)");
        EXPECT_NE(std::string(e.what()).find("singular"), std::string::npos);
    }
}

TEST(Context, MetricMustMatchLabels)
{
    auto s = fast_settings();
    s.metric = Metric::Accuracy;
    EXPECT_THROW(FitnessContext(toy_data(), {}, s), ConfigError);
}

TEST(Cache, HitSkipsTrainingAndIsByteIdentical)
{
    const FitnessContext ctx(toy_data(), {}, fast_settings());
    FitnessCache cache;
    const CachedFitness<FitnessContext> fit(ctx, cache, ctx.terminals(), 1);
    const auto t = ExpressionTree::apply(OpCode::Sub, {feat(1), feat(2)});
    const auto first = fit(t);
    const auto second = fit(t);
    EXPECT_EQ(ctx.trainings(), 1U);
    EXPECT_EQ(cache.hits(), 1U);
    EXPECT_EQ(std::memcmp(&first.fitness, &second.fitness, sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(&first.raw_metric, &second.raw_metric, sizeof(double)), 0);
    EXPECT_EQ(first, second);

    const CachedFitness<FitnessContext> next(ctx, cache, ctx.terminals(), 2);
    next(t);
    EXPECT_EQ(ctx.trainings(), 2U);
    EXPECT_EQ(cache.misses(), 2U);
    cache.clear();
    EXPECT_EQ(cache.size(), 0U);
}

TEST(Construct, SingleIterationAcceptsHallOfFameBest)
{
    const auto& data = toy_data();
    const auto r = iterative_construct(data, tiny_config(1), fast_settings().hyper, Metric::RocAucMacro);
    ASSERT_EQ(r.accepted.size(), 1U);
    ASSERT_EQ(r.run_logs.size(), 1U);
    const auto& best = r.run_logs[0].hall_of_fame.front();
    EXPECT_EQ(r.accepted[0].expr, best.expr);
    EXPECT_EQ(r.accepted[0].tree, best.tree);
    EXPECT_EQ(r.accepted[0].iteration, 1U);
    // the post-acceptance metric is the same training the best candidate received
    EXPECT_EQ(r.accepted[0].validation_metric, best.record.raw_metric);

    const FitnessContext ctx(data, {}, fast_settings());
    EXPECT_EQ(r.baseline_validation_metric, ctx.baseline_metric());
}

TEST(Construct, StubScorerIsReproducibleAndBounded)
{
    const auto& data = toy_data();
    auto config = tiny_config(3);
    config.max_generations = 4;
    RunOptions two;
    two.workers = 2;
    const auto a = iterative_construct(data, config, fast_settings().hyper, Metric::RocAucMacro, {}, correlation_scorer);
    const auto b = iterative_construct(data, config, fast_settings().hyper, Metric::RocAucMacro, two, correlation_scorer);
    EXPECT_LE(a.accepted.size(), config.iterations);
    EXPECT_EQ(logs_text(a), logs_text(b));
    for (const auto& log : a.run_logs) {
        for (const auto& e : log.evaluations) {
            // terminals stay base features
            EXPECT_EQ(e.expr.find("gp"), std::string::npos);
        }
    }
    config.seed += 1;
    const auto c = iterative_construct(data, config, fast_settings().hyper, Metric::RocAucMacro, {}, correlation_scorer);
    EXPECT_NE(logs_text(a), logs_text(c));
}

TEST(Construct, AcceptedCompositesAsTerminalsWhenEnabled)
{
    auto config = tiny_config(2);
    config.accepted_as_terminals = true;
    config.population_size = 40;
    const auto r = iterative_construct(toy_data(), config, fast_settings().hyper, Metric::RocAucMacro, {}, correlation_scorer);
    bool usedComposite = false;
    for (const auto& e : r.run_logs[1].evaluations) usedComposite |= e.expr.find("gp1") != std::string::npos;
    EXPECT_TRUE(usedComposite);
    for (const auto& e : r.run_logs[0].evaluations) EXPECT_EQ(e.expr.find("gp1"), std::string::npos);
}

TEST(Construct, FailurePropagatesWithIterationIndex)
{
    const HoldoutScorer bad = [](const Matrix&, std::span<const std::span<const std::uint32_t>>, const Labels&, const Matrix& evalX,
                                 const Labels&) -> double {
        if (evalX.cols() > 5) throw std::runtime_error("out of memory");
        return 0.5;
    };
    try {
        iterative_construct(toy_data(), tiny_config(2), fast_settings().hyper, Metric::RocAucMacro, {}, bad);
        FAIL();
    } catch (const EvolutionError& e) {
        EXPECT_NE(std::string(e.what()).find("iteration 2"), std::string::npos) << e.what();
    }
}

TEST(Construct, JsonRoundTrip)
{
    const auto& data = toy_data();
    const auto r = iterative_construct(data, tiny_config(2), fast_settings().hyper, Metric::RocAucMacro, {}, correlation_scorer);
    const auto j = construction_to_json(r, {{"seed", 5}});
    const auto back = construction_from_json(nlohmann::json::parse(j.dump()), data.names);
    ASSERT_EQ(back.accepted.size(), r.accepted.size());
    for (std::size_t i = 0; i < r.accepted.size(); ++i) {
        EXPECT_EQ(back.accepted[i].tree, r.accepted[i].tree);
        EXPECT_EQ(back.accepted[i].validation_metric, r.accepted[i].validation_metric);
    }
    EXPECT_EQ(back.baseline_validation_metric, r.baseline_validation_metric);
    EXPECT_THROW(construction_from_json(nlohmann::json{{"schema_version", 99}}, data.names), ConfigError);
}

TEST(Augmented, ChainedColumnsSeeEarlierComposites)
{
    const auto& data = toy_data();
    // second tree refers to column 4, which is the first accepted composite
    const std::vector<ExpressionTree> accepted{ExpressionTree::apply(OpCode::Mul, {feat(0), feat(1)}), feat(4)};
    const auto x = augmented_features(data, accepted);
    ASSERT_EQ(x.cols(), 6U);
    for (std::size_t r = 0; r < x.rows(); ++r) EXPECT_NEAR(x(r, 4), x(r, 5), 1e-9);
}
