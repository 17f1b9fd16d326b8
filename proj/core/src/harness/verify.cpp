#include "outerpress/harness/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "outerpress/diagnostics.hpp"
#include "outerpress/errors.hpp"
#include "outerpress/harness/config.hpp"
#include "outerpress/harness/presets.hpp"
#include "outerpress/harness/runner.hpp"
#include "outerpress/oracles.hpp"

namespace outerpress::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

struct CachedRun {
  RunConfig config;
  RunOutcome outcome;
};

// Preset runs shared between criteria; each is computed once, later callers wait for it.
class PresetCache {
 public:
  std::shared_ptr<const CachedRun> get(const std::string& name) {
    std::unique_lock lock(mutex_);
    if (auto it = runs_.find(name); it != runs_.end()) {
      auto future = it->second;
      lock.unlock();
      return future.get();
    }
    std::promise<std::shared_ptr<const CachedRun>> promise;
    runs_.emplace(name, promise.get_future().share());
    lock.unlock();
    try {
      auto run = std::make_shared<CachedRun>();
      run->config = preset_config(name);
      run->outcome = execute(run->config);
      promise.set_value(std::move(run));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
    return get(name);
  }

 private:
  std::mutex mutex_;
  std::map<std::string, std::shared_future<std::shared_ptr<const CachedRun>>> runs_;
};

struct CriterionSpec {
  int id;
  const char* name;
  std::vector<std::string> presets;  // runs worth starting early
  std::function<void(PresetCache&, CriterionResult&)> body;
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double variance(const std::vector<double>& f) {
  double mean = 0.0;
  for (double x : f) mean += x;
  mean /= static_cast<double>(f.size());
  double var = 0.0;
  for (double x : f) var += (x - mean) * (x - mean);
  return var / static_cast<double>(f.size());
}

void fixed_point(PresetCache&, CriterionResult& out) {
  const auto start = Clock::now();
  const FluidState eq = equilibrium_state(1.0, 1.0, MassGrid(64));
  SolverConfig config;
  config.dt = 1e-3;
  config.t_end = 10.0;
  config.store_history_every = 1000;
  const RunResult r = run(eq, PressureSchedule::constant(1.0), ThermoParams{}, config);
  const double secs = seconds_since(start);
  const FluidState& fin = r.final_state;
  const double drift =
      std::max({max_abs_diff(fin.v, eq.v), max_abs_diff(fin.u, eq.u), max_abs_diff(fin.theta, eq.theta)});
  out.passed = drift < 1e-10 && secs < 5.0 && std::abs(fin.t - 10.0) < 1e-12;
  out.detail = format("max drift %.3e < 1e-10 after %zu steps to t=%g; runtime %.2f s < 5 s", drift, r.steps, fin.t,
                      secs);
}

void momentum_conservation(PresetCache& cache, CriterionResult& out) {
  const auto run = cache.get("standard-beta1");
  const auto& r = run->outcome.result;
  double sampled = 0.0;
  for (const auto& s : r.series) sampled = std::max(sampled, std::abs(s.momentum - r.series.front().momentum));
  const double secs = run->outcome.summary.wall_clock_seconds;
  const bool completed = run->outcome.summary.status == RunStatus::completed;
  out.passed = completed && r.max_momentum_drift < 1e-11 && sampled < 1e-11 && secs < 60.0 &&
               std::abs(r.final_state.t - 200.0) < 1e-9;
  out.detail = format("standard-beta1 N=%zu to t=%g: max drift %.3e over all %zu steps (sampled %.3e) < 1e-11; "
                      "runtime %.2f s < 60 s",
                      r.final_state.n_cells(), r.final_state.t, r.max_momentum_drift, r.steps, sampled, secs);
}

void energy_identity(PresetCache&, CriterionResult& out) {
  RunConfig cfg = preset_config("standard-constant");
  const std::array<double, 3> dts = {4e-4, 2e-4, 1e-4};
  std::array<double, 3> err{};
  for (std::size_t k = 0; k < dts.size(); ++k) {
    SolverConfig sc = cfg.solver;
    sc.dt = dts[k];
    sc.t_end = 5.0;
    sc.store_history_every = 1000000;
    const RunResult r = run(MassGrid(cfg.n_cells), cfg.initial, cfg.schedule, cfg.params, sc);
    err[k] = std::abs(r.series.back().total_energy - r.series.front().total_energy);
  }
  const double r1 = err[0] / err[1];
  const double r2 = err[1] / err[2];
  out.passed = r1 >= 1.7 && r1 <= 2.3 && r2 >= 1.7 && r2 <= 2.3;
  out.detail = format("|E(5)-E(0)| = %.4e, %.4e, %.4e for dt = 4e-4, 2e-4, 1e-4; ratios %.4f, %.4f in [1.7, 2.3]",
                      err[0], err[1], err[2], r1, r2);
}

void mms_convergence(PresetCache&, CriterionResult& out) {
  const MmsCase mms;
  const SourceTerms forcing = mms_forcing(mms);
  const PressureSchedule schedule = mms_schedule(mms);
  const InitialData initial = mms_initial_data(mms);
  const std::array<std::size_t, 4> ladder = {32, 64, 128, 256};
  std::vector<MmsErrors> errors;
  for (std::size_t n : ladder) {
    const double dx = 1.0 / static_cast<double>(n);
    SolverConfig sc;
    sc.dt = 0.5 * dx * dx;
    sc.t_end = 0.5;
    sc.mms_enabled = true;
    sc.store_history_every = 1000000;
    const RunResult r = run(MassGrid(n), initial, schedule, mms.params, sc, &forcing);
    errors.push_back(mms_errors(mms, r.final_state));
  }
  double worst = 1e300;
  std::string orders;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    const double ov = std::log2(errors[k - 1].v / errors[k].v);
    const double ou = std::log2(errors[k - 1].u / errors[k].u);
    const double ot = std::log2(errors[k - 1].theta / errors[k].theta);
    worst = std::min({worst, ov, ou, ot});
    orders += format("%sN=%zu->%zu (v %.3f, u %.3f, theta %.3f)", k > 1 ? "; " : "", ladder[k - 1], ladder[k], ov,
                     ou, ot);
  }
  out.passed = worst >= 1.9;
  out.detail = format("dt = dx^2/2, t=0.5; orders %s; min %.3f >= 1.9; L2 errors at N=256: v %.3e u %.3e theta %.3e",
                      orders.c_str(), worst, errors.back().v, errors.back().u, errors.back().theta);
}

void representation_oracle(PresetCache&, CriterionResult& out) {
  const RunConfig cfg = preset_config("standard-beta1");
  struct Level {
    std::size_t n;
    double dt;
    std::size_t stride;
  };
  const std::array<Level, 3> ladder = {{{128, 2e-3, 2}, {256, 1e-3, 4}, {512, 5e-4, 8}}};
  std::array<double, 3> gap{};
  std::size_t snapshots_256 = 0;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    SolverConfig sc = cfg.solver;
    sc.dt = ladder[k].dt;
    sc.t_end = 1.0;
    sc.store_history_every = ladder[k].stride;
    const RunResult r = run(MassGrid(ladder[k].n), cfg.initial, cfg.schedule, cfg.params, sc);
    const auto rep = representation_profile(r.final_state.t, r.history, cfg.schedule, cfg.params);
    double vmax = 0.0;
    for (double v : r.final_state.v) vmax = std::max(vmax, std::abs(v));
    gap[k] = max_abs_diff(rep, r.final_state.v) / vmax;
    if (ladder[k].n == 256) snapshots_256 = r.history.snapshots.size();
  }
  out.passed = gap[1] < 1e-2 && snapshots_256 >= 200 && gap[1] < gap[0] && gap[2] < gap[1];
  out.detail = format("relative max gap %.3e at N=256 (%zu snapshots) < 1e-2; refinement N=128/256/512: %.3e > %.3e > "
                      "%.3e",
                      gap[1], snapshots_256, gap[0], gap[1], gap[2]);
}

void uniform_flow(PresetCache&, CriterionResult& out) {
  const UniformFlowCase uc{1.0, 2.0, 0.5};
  SolverConfig sc;
  sc.dt = 1e-4;
  sc.t_end = 2.0;
  sc.store_history_every = 1000;
  const RunResult r = run(MassGrid(64), uc.initial_data(), uc.induced_schedule(), ThermoParams{}, sc);
  const UniformFlowValue exact = uniform_ode_oracle(uc.v0, uc.theta0, uc.c, 2.0);
  const FluidState& fin = r.final_state;
  double rel_v = 0.0;
  double rel_theta = 0.0;
  for (std::size_t j = 0; j < fin.n_cells(); ++j) {
    rel_v = std::max(rel_v, std::abs(fin.v[j] / exact.v - 1.0));
    rel_theta = std::max(rel_theta, std::abs(fin.theta[j] / exact.theta - 1.0));
  }
  double u_dev = 0.0;
  const MassGrid grid = fin.grid();
  for (std::size_t i = 0; i < grid.n_nodes(); ++i) u_dev = std::max(u_dev, std::abs(fin.u[i] - uc.c * (grid.node(i) - 0.5)));
  double var = 0.0;
  for (const auto& snap : r.history.snapshots) var = std::max({var, variance(snap.v), variance(snap.theta)});
  out.passed = rel_v < 1e-4 && rel_theta < 1e-4 && var < 1e-10 && std::abs(fin.t - 2.0) < 1e-12;
  out.detail = format("t=2, N=64, dt=1e-4: relative error v %.3e, theta %.3e < 1e-4; max spatial variance %.3e < 1e-10; "
                      "max |u - c(x-1/2)| %.3e",
                      rel_v, rel_theta, var, u_dev);
}

void uniform_bounds(PresetCache& cache, CriterionResult& out) {
  bool ok = true;
  std::string detail;
  for (const char* name : {"standard-beta0.5", "standard-beta1", "standard-beta2"}) {
    const auto run = cache.get(name);
    const auto& s = run->outcome.summary;
    const bool pass = s.status == RunStatus::completed && std::abs(s.final_time - 200.0) < 1e-9 &&
                      s.observed_min_theta > 0.05 && s.observed_min_v > 0.05;
    ok = ok && pass;
    detail += format("%s%s: %s to t=%g, min v %.4f, min theta %.4f", detail.empty() ? "" : "; ", name,
                     to_string(s.status).c_str(), s.final_time, s.observed_min_v, s.observed_min_theta);
  }
  out.passed = ok;
  out.detail = detail + " (thresholds 0.05, every step)";
}

void jensen_bracket(PresetCache& cache, CriterionResult& out) {
  bool ok = true;
  std::string detail;
  double worst_residual = 0.0;
  auto residual_of = [&](double C0) {
    const JensenBounds b = jensen_bounds(C0);
    worst_residual = std::max({worst_residual, std::abs(b.alpha1 - std::log(b.alpha1) - C0),
                               std::abs(b.alpha2 - std::log(b.alpha2) - C0)});
  };
  for (double C0 : {1.5, 2.0, 3.0, 10.0}) residual_of(C0);
  std::size_t completed = 0;
  for (const auto& name : preset_names()) {
    const auto run = cache.get(name);
    const auto& s = run->outcome.summary;
    if (s.status != RunStatus::completed) {
      detail += format("%s%s: %s (skipped)", detail.empty() ? "" : "; ", name.c_str(), to_string(s.status).c_str());
      continue;
    }
    ++completed;
    residual_of(s.jensen.final_C0);
    const bool pass = s.jensen.passed && s.jensen.worst_margin >= 0.0;
    ok = ok && pass;
    detail += format("%s%s margin %.4f", detail.empty() ? "" : "; ", name.c_str(), s.jensen.worst_margin);
  }
  ok = ok && completed > 0 && worst_residual < 1e-12;
  out.passed = ok;
  out.detail = detail + format("; root residual %.2e < 1e-12", worst_residual);
}

void stationary_convergence(PresetCache& cache, CriterionResult& out) {
  const auto run = cache.get("standard-beta1");
  const auto& s = run->outcome.summary;
  if (!s.stationary) {
    out.passed = false;
    out.detail = "no stationary state: " + s.stationary_note;
    return;
  }
  const auto& st = *s.stationary;
  const double dv = std::abs(s.final_v_mean - st.v_hat);
  const double dth = std::abs(s.final_theta_mean - st.theta_hat);
  const double balance = std::abs(st.theta_hat - st.P_bar * st.v_hat);
  out.passed = s.status == RunStatus::completed && std::abs(s.final_time - 200.0) < 1e-9 && s.h1_u < 1e-5 &&
               dv < st.v_uncertainty + 1e-4 && dth < st.theta_uncertainty + 1e-4 && s.h1_v < 1e-3 &&
               balance <= 1e-12;
  out.detail = format("t=%g: |u|_H1 %.3e < 1e-5; |vbar-vhat| %.3e < %.3e; |thetabar-thetahat| %.3e < %.3e; "
                      "|v-vhat|_H1 %.3e < 1e-3; |thetahat - Pbar vhat| %.1e <= 1e-12 (vhat %.10f)",
                      s.final_time, s.h1_u, dv, st.v_uncertainty + 1e-4, dth, st.theta_uncertainty + 1e-4, s.h1_v,
                      balance, st.v_hat);
}

void exponential_decay(PresetCache& cache, CriterionResult& out) {
  const auto run = cache.get("standard-beta1");
  const auto& fit = run->outcome.summary.decay_int_u2;
  bool ok = fit.fit && fit.fit->lambda > 0.0 && fit.fit->r_squared > 0.99;
  std::string detail = fit.fit ? format("int u^2 decay rate %.4f > 0, r^2 %.6f > 0.99 over [%g, %g] (%zu points)",
                                        fit.fit->lambda, fit.fit->r_squared, fit.fit->t_start, fit.fit->t_end,
                                        fit.fit->points)
                               : "int u^2 fit failed: " + fit.note;

  const auto constant = cache.get("standard-constant");
  const double P_bar = *constant->config.schedule.limit();
  double worst_abs = 0.0;
  double worst_rel = 0.0;
  for (const auto& s : constant->outcome.result.series) {
    const double ref = std::exp(-2.0 * P_bar * s.t);
    worst_abs = std::max(worst_abs, std::abs(s.F - ref));
    worst_rel = std::max(worst_rel, std::abs(s.F / ref - 1.0));
  }
  // The stand-alone quadrature agrees as well.
  for (double t : {0.5, 1.0, 5.0}) {
    const double ref = std::exp(-2.0 * P_bar * t);
    worst_rel = std::max(worst_rel, std::abs(F_of_t(constant->config.schedule, t, P_bar) / ref - 1.0));
  }
  ok = ok && worst_abs < 1e-10 && worst_rel < 1e-10;
  out.passed = ok;
  out.detail = detail + format("; standard-constant F vs exp(-2 Pbar t): max abs %.2e, max rel %.2e < 1e-10",
                               worst_abs, worst_rel);
}

const std::vector<CriterionSpec>& specs() {
  static const std::vector<CriterionSpec> all = {
      {1, "fixed-point", {}, fixed_point},
      {2, "momentum-conservation", {"standard-beta1"}, momentum_conservation},
      {3, "energy-identity", {}, energy_identity},
      {4, "mms-convergence", {}, mms_convergence},
      {5, "representation-formula", {}, representation_oracle},
      {6, "uniform-flow", {}, uniform_flow},
      {7, "uniform-bounds", {"standard-beta0.5", "standard-beta1", "standard-beta2"}, uniform_bounds},
      {8, "jensen-bracket", preset_names(), jensen_bracket},
      {9, "stationary-convergence", {"standard-beta1"}, stationary_convergence},
      {10, "exponential-decay", {"standard-beta1", "standard-constant"}, exponential_decay},
  };
  return all;
}

const CriterionSpec& spec_of(int id) {
  for (const auto& s : specs()) {
    if (s.id == id) return s;
  }
  throw InputError("unknown criterion " + std::to_string(id));
}

}  // namespace

bool SuiteReport::passed() const {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"conservation", "oracles", "mms", "convergence-to-stationary",
                                                 "bounds"};
  return names;
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "conservation") return {1, 2, 3};
  if (suite == "oracles") return {5, 6};
  if (suite == "mms") return {4};
  if (suite == "convergence-to-stationary") return {9, 10};
  if (suite == "bounds") return {7, 8};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string names;
  for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
  throw InputError("unknown suite '" + std::string(suite) + "' (" + names + ", all)");
}

std::string criterion_name(int id) { return spec_of(id).name; }

unsigned suite_threads() {
  if (const char* env = std::getenv("OUTERPRESS_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CriterionResult> run_criteria(std::span<const int> ids, unsigned threads) {
  PresetCache cache;
  std::vector<CriterionResult> results(ids.size());
  std::vector<std::function<void()>> tasks;

  // Shared preset runs go first so that no worker blocks on a run nobody has started.
  std::set<std::string> presets;
  for (int id : ids) {
    for (const auto& p : spec_of(id).presets) presets.insert(p);
  }
  if (threads > 1) {
    for (const auto& p : presets) {
      tasks.emplace_back([&cache, p] {
        try {
          (void)cache.get(p);
        } catch (...) {
          // Reported by the criterion that needs the run.
        }
      });
    }
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    tasks.emplace_back([&, k] {
      const CriterionSpec& entry = spec_of(ids[k]);
      CriterionResult& out = results[k];
      out.id = entry.id;
      out.name = entry.name;
      const auto start = Clock::now();
      try {
        entry.body(cache, out);
      } catch (const std::exception& e) {
        out.passed = false;
        out.detail = std::string("error: ") + e.what();
      }
      out.seconds = seconds_since(start);
    });
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) tasks[k]();
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

SuiteReport run_suite(std::string_view suite, unsigned threads) {
  const std::vector<int> ids = suite_criteria(suite);
  return SuiteReport{std::string(suite), run_criteria(ids, threads)};
}

std::string format_result(const CriterionResult& r) {
  return format("%s  C%d %s  %s [%.1f s]", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
}

}  // namespace outerpress::harness
