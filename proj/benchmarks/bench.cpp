#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>

#include "spotcast/bspline.hpp"
#include "spotcast/estimator.hpp"
#include "spotcast/lars.hpp"
#include "spotcast/nnls.hpp"
#include "spotcast/simulate.hpp"

using namespace spotcast;

namespace {

Eigen::MatrixXd random_matrix(int n, int p, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd X(n, p);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < p; ++c) X(r, c) = g(rng);
  return X;
}

void BM_BSplineEval(benchmark::State& state) {
  BSplineSpec spec{3, 4.0, 100.0};
  double t = 94.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_bspline(spec, t));
    t += 0.001;
    if (t > 106.0) t = 94.0;
  }
}
BENCHMARK(BM_BSplineEval);

void BM_PeriodicBSpline(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_periodic_bspline(t, 168.0, 11.0, 4.0));
    t += 0.37;
  }
}
BENCHMARK(BM_PeriodicBSpline);

void BM_LarsPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  Eigen::MatrixXd X = random_matrix(n, p, 1);
  for (int c = 0; c < p; ++c) X.col(c).array() -= X.col(c).mean();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
  for (int j = 0; j < p; j += 7) theta(j) = 1.0;
  Eigen::VectorXd y = X * theta + 0.3 * random_matrix(n, 1, 2);
  y.array() -= y.mean();
  for (auto _ : state) {
    LassoPath path = lars_lasso(X, y);
    benchmark::DoNotOptimize(path.breakpoints.size());
  }
}
BENCHMARK(BM_LarsPath)->Args({500, 50})->Args({2000, 200})->Args({5000, 400})
    ->Unit(benchmark::kMillisecond);

void BM_Nnls(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  Eigen::MatrixXd X = random_matrix(n, p, 3).cwiseAbs();
  Eigen::VectorXd y = (X * Eigen::VectorXd::Ones(p)).cwiseAbs() + random_matrix(n, 1, 4);
  for (auto _ : state) {
    NnlsSolution s = nnls(X, y);
    benchmark::DoNotOptimize(s.beta);
  }
}
BENCHMARK(BM_Nnls)->Args({1000, 40})->Args({5000, 100})->Unit(benchmark::kMillisecond);

void BM_FitToyModel(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  HolidayCalendar holidays = german_holidays(2016, 2023);
  SyntheticModel truth = SyntheticModel::standard();
  SimulateOptions so;
  so.n = n;
  so.seed = 1;
  HourlyPanel panel = simulate_from(truth, holidays, so);
  for (auto _ : state) {
    ModelFit m = fit_model(panel, holidays, truth.config);
    benchmark::DoNotOptimize(m.eq[0].df);
  }
}
BENCHMARK(BM_FitToyModel)->Arg(6000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
