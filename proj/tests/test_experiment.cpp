#include "doctest.h"

#include "groupmms/experiment.hpp"
#include "groupmms/maximin.hpp"

#include <omp.h>

#include <cmath>
#include <string>
#include <vector>

using namespace groupmms;

TEST_CASE("distribution names round-trip") {
  for (Distribution d :
       {Distribution::uniform01, Distribution::exponential_mean1, Distribution::lognormal_0_1}) {
    auto back = distribution_from_name(distribution_name(d));
    REQUIRE(back.has_value());
    CHECK(*back == d);
  }
  CHECK_FALSE(distribution_from_name("cauchy").has_value());
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  CHECK_NOTHROW(config.validate());

  ExperimentConfig bad = config;
  bad.shape = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.shape = {2, 0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.thresholds = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.thresholds = {0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.thresholds = {0.6, 0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config JSON round-trips and applies defaults") {
  ExperimentConfig config;
  config.shape = {3, 2};
  config.goods = 5;
  config.distribution = Distribution::lognormal_0_1;
  config.trials = 1234;
  config.seed = 99;
  config.thresholds = {0.25, 0.75};
  ExperimentConfig back = parse_experiment_config(experiment_config_to_json(config));
  CHECK(back.shape == config.shape);
  CHECK(back.goods == config.goods);
  CHECK(back.distribution == config.distribution);
  CHECK(back.trials == config.trials);
  CHECK(back.seed == config.seed);
  CHECK(back.thresholds == config.thresholds);

  ExperimentConfig defaults = parse_experiment_config("{}");
  CHECK(defaults.shape == std::vector<std::size_t>{2, 2});
  CHECK(defaults.goods == 4);
  CHECK(defaults.distribution == Distribution::uniform01);
  CHECK(defaults.trials == 100000);
  CHECK(defaults.seed == 0);
  CHECK(defaults.thresholds == std::vector<double>{0.5, 0.6, 0.7, 0.8, 0.9, 1.0});

  CHECK_THROWS_AS(parse_experiment_config("[]"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"shape": [2, 0]})"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"distribution": "coin"})"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"trials": -1})"), ParseError);
  CHECK_THROWS_AS(parse_experiment_config(R"({"thresholds": [0.9, 0.1]})"), ParseError);
}

TEST_CASE("sample_utility is a pure function of its key") {
  for (Distribution d :
       {Distribution::uniform01, Distribution::exponential_mean1, Distribution::lognormal_0_1}) {
    double a = sample_utility(7, 123, 2, 3, d);
    double b = sample_utility(7, 123, 2, 3, d);
    CHECK(a == b);
    CHECK(sample_utility(8, 123, 2, 3, d) != a);
    CHECK(sample_utility(7, 124, 2, 3, d) != a);
    CHECK(sample_utility(7, 123, 1, 3, d) != a);
    CHECK(sample_utility(7, 123, 2, 2, d) != a);
  }
}

TEST_CASE("sampled values live on the distribution's support") {
  for (std::size_t t = 0; t < 2000; ++t) {
    double u = sample_utility(1, t, 0, 0, Distribution::uniform01);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double e = sample_utility(1, t, 0, 0, Distribution::exponential_mean1);
    CHECK(e >= 0.0);
    CHECK(std::isfinite(e));
    double l = sample_utility(1, t, 0, 0, Distribution::lognormal_0_1);
    CHECK(l > 0.0);
    CHECK(std::isfinite(l));
  }
}

TEST_CASE("sample means match the distributions") {
  const std::size_t n = 200000;
  double su = 0, se = 0, sl = 0;
  for (std::size_t t = 0; t < n; ++t) {
    su += sample_utility(3, t, 0, 0, Distribution::uniform01);
    se += sample_utility(3, t, 0, 0, Distribution::exponential_mean1);
    sl += sample_utility(3, t, 0, 0, Distribution::lognormal_0_1);
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(se / n == doctest::Approx(1.0).epsilon(0.02));
  // Log-normal(0,1) mean is exp(1/2); heavier tail, wider tolerance.
  CHECK(sl / n == doctest::Approx(std::exp(0.5)).epsilon(0.05));
}

TEST_CASE("sample_instance embeds the doubles exactly in group-major order") {
  ExperimentConfig config;
  config.shape = {2, 1};
  config.goods = 3;
  config.distribution = Distribution::exponential_mean1;
  config.seed = 5;
  Instance inst = sample_instance(config, 17);
  CHECK(inst.shape() == config.shape);
  CHECK(inst.good_count() == 3);
  std::size_t flat = 0;
  for (AgentId id : inst.agents()) {
    for (std::size_t g = 0; g < 3; ++g) {
      double drawn = sample_utility(5, 17, flat, g, config.distribution);
      CHECK(inst.utility(id, g) == Rational(drawn));
      CHECK(inst.utility(id, g).get_d() == doctest::Approx(drawn).epsilon(1e-15));
    }
    ++flat;
  }
}

TEST_CASE("double pipeline agrees with an all-rational reference") {
  // Tiny shapes so a plain mpq brute force over every allocation and every
  // bipartition stays cheap.
  ExperimentConfig config;
  config.shape = {2, 1};
  config.goods = 4;
  config.seed = 21;
  for (Distribution d :
       {Distribution::uniform01, Distribution::exponential_mean1, Distribution::lognormal_0_1}) {
    config.distribution = d;
    for (std::size_t trial = 0; trial < 40; ++trial) {
      Instance inst = sample_instance(config, trial);
      std::vector<std::vector<double>> rows;
      for (AgentId id : inst.agents()) {
        std::vector<double> row;
        for (std::size_t g = 0; g < config.goods; ++g) {
          row.push_back(inst.utility(id, g).get_d());
        }
        rows.push_back(std::move(row));
      }

      // mpq maximin share of one agent, k = 2, by enumeration.
      auto share = [&](AgentId id) {
        Rational best = 0;
        for (std::size_t code = 0; code < (std::size_t{1} << config.goods); ++code) {
          Rational side0 = 0, side1 = 0;
          for (std::size_t g = 0; g < config.goods; ++g) {
            ((code >> g) & 1 ? side1 : side0) += inst.utility(id, g);
          }
          Rational lo = side0 < side1 ? side0 : side1;
          if (lo > best) best = lo;
        }
        return best;
      };
      std::vector<Rational> shares;
      std::vector<AgentId> ids = inst.agents();
      for (AgentId id : ids) shares.push_back(share(id));

      bool any_positive = false;
      Rational best(-1);
      for (std::size_t code = 0; code < (std::size_t{1} << config.goods); ++code) {
        Rational worst;
        bool worst_set = false;
        for (std::size_t a = 0; a < ids.size(); ++a) {
          if (shares[a] == 0) continue;
          any_positive = true;
          Rational got = 0;
          for (std::size_t g = 0; g < config.goods; ++g) {
            std::size_t owner = (code >> g) & 1;
            if (owner == ids[a].group) got += inst.utility(ids[a], g);
          }
          Rational ratio = got / shares[a];
          if (!worst_set || ratio < worst) {
            worst = ratio;
            worst_set = true;
          }
        }
        if (worst_set && worst > best) best = worst;
      }

      double fast = best_ratio_double(rows, config.shape);
      if (!any_positive) {
        CHECK(std::isinf(fast));
      } else {
        CHECK(fast == doctest::Approx(best.get_d()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("experiment counts are monotone over ascending thresholds") {
  ExperimentConfig config;
  config.trials = 400;
  config.seed = 9;
  ExperimentTable table = run_experiment(config);
  REQUIRE(table.counts.size() == config.thresholds.size());
  for (std::size_t t = 1; t < table.counts.size(); ++t) {
    CHECK(table.counts[t] <= table.counts[t - 1]);
  }
  CHECK(table.counts[0] <= config.trials);
}

TEST_CASE("parallel, serial, and repeated runs produce identical counts") {
  ExperimentConfig config;
  config.shape = {3, 2};
  config.goods = 4;
  config.trials = 300;
  config.seed = 31;
  config.distribution = Distribution::lognormal_0_1;

  ExperimentTable serial = run_experiment_serial(config);
  int saved = omp_get_max_threads();
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    ExperimentTable par = run_experiment(config);
    CHECK(par.counts == serial.counts);
  }
  omp_set_num_threads(saved);
  CHECK(run_experiment_serial(config).counts == serial.counts);
}

TEST_CASE("csv output is byte-stable and well-formed") {
  ExperimentConfig config;
  config.trials = 50;
  config.seed = 2;
  config.thresholds = {0.5, 1.0};
  ExperimentTable table = run_experiment(config);
  std::string csv = table_to_csv(table);
  CHECK(csv == table_to_csv(run_experiment(config)));
  CHECK(csv.rfind("threshold,count,trials,proportion\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("0.5,") != std::string::npos);
  CHECK(csv.find(",50,") != std::string::npos);
}

TEST_CASE("csv filename encodes shape and distribution") {
  ExperimentConfig config;
  CHECK(table_csv_filename(config) == "table_2x2_uniform01.csv");
  config.shape = {3, 2};
  config.distribution = Distribution::lognormal_0_1;
  CHECK(table_csv_filename(config) == "table_3x2_lognormal_0_1.csv");
}

TEST_CASE("markdown rendering groups tables by distribution") {
  ExperimentConfig a;
  a.trials = 30;
  a.thresholds = {0.5, 1.0};
  ExperimentConfig b = a;
  b.shape = {3, 2};
  ExperimentTable ta = run_experiment(a);
  ExperimentTable tb = run_experiment(b);
  std::string md = tables_to_markdown({ta, tb});
  CHECK(md.find("uniform01") != std::string::npos);
  CHECK(md.find("(2,2)") != std::string::npos);
  CHECK(md.find("(3,2)") != std::string::npos);
  CHECK(md.find(">= 0.5") != std::string::npos);

  ExperimentConfig c = a;
  c.thresholds = {0.25, 1.0};
  ExperimentTable tc = run_experiment(c);
  CHECK_THROWS_AS(tables_to_markdown({ta, tc}), std::invalid_argument);
}
