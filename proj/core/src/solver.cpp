#include "outerpress/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "outerpress/errors.hpp"
#include "outerpress/tridiagonal.hpp"

namespace outerpress {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt", "time step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end", "final time must be non-negative");
  if (!(theta_floor > 0.0)) throw DomainError("theta_floor", "temperature floor must be positive");
  if (cfl_factor && !(*cfl_factor > 0.0)) throw DomainError("cfl_factor", "CFL factor must be positive");
  if (store_history_every < 1) throw DomainError("store_history_every", "snapshot stride must be at least 1");
}

void StateHistory::append(const FluidState& state, double p) {
  if (!snapshots.empty() && !(state.t > snapshots.back().t)) return;
  snapshots.push_back(Snapshot{state.t, state.v, state.u, state.theta, p});
}

BoundaryCondition apply_boundary(const FluidState&, double t, const PressureSchedule& schedule) {
  const double p = schedule(t).p;
  return BoundaryCondition{-p, -p, 0.0, 0.0};
}

double time_step(const FluidState& state, const ThermoParams& params, const SolverConfig& config) {
  if (!config.cfl_factor) return config.dt;
  double speed = 0.0;
  for (std::size_t j = 0; j < state.n_cells(); ++j) {
    const double u = 0.5 * (std::abs(state.u[j]) + std::abs(state.u[j + 1]));
    speed = std::max(speed, u + std::sqrt(params.R * state.theta[j]));
  }
  const double dx = 1.0 / static_cast<double>(state.n_cells());
  return std::min(config.dt, *config.cfl_factor * dx / speed);
}

Stepper::Stepper(ThermoParams params, PressureSchedule schedule, double theta_floor,
                 std::optional<SourceTerms> forcing)
    : params_(params), schedule_(std::move(schedule)), theta_floor_(theta_floor), forcing_(std::move(forcing)) {
  params_.validate();
  if (forcing_ && (!forcing_->momentum || !forcing_->energy)) {
    throw DomainError("forcing", "source terms need both momentum and energy parts");
  }
}

void Stepper::resize(std::size_t n_cells) {
  if (diag_.size() == n_cells + 1) return;
  for (auto* buffer : {&lower_, &diag_, &upper_, &rhs_, &scratch_}) buffer->assign(n_cells + 1, 0.0);
  for (auto* buffer : {&mu_, &visc_, &cell_pressure_, &kappa_}) buffer->assign(n_cells, 0.0);
}

void Stepper::advance(FluidState& state, double dt) {
  const std::size_t n = state.n_cells();
  resize(n);
  const double dx = 1.0 / static_cast<double>(n);
  const double t_old = state.t;
  const double t_new = t_old + dt;
  const BoundaryCondition bc = apply_boundary(state, t_old, schedule_);

  // Frozen coefficients at time level n.
  for (std::size_t j = 0; j < n; ++j) {
    const double th = state.theta[j];
    const double mu = params_.alpha == 0.0 ? params_.mu_tilde : params_.mu_tilde * std::pow(th, params_.alpha);
    mu_[j] = mu;
    visc_[j] = mu / state.v[j];
    cell_pressure_[j] = params_.R * th / state.v[j];
    kappa_[j] = params_.beta == 0.0 ? params_.kappa_tilde : params_.kappa_tilde * std::pow(th, params_.beta);
  }

  // Stage 1: velocity on the N + 1 nodes; the end nodes carry half-cell mass.
  const double mass = dx / dt;
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i > 0 ? visc_[i - 1] / dx : 0.0;
    const double right = i < n ? visc_[i] / dx : 0.0;
    const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
    lower_[i] = -left;
    upper_[i] = -right;
    diag_[i] = weight * mass + left + right;
    const double stress_right = i < n ? -cell_pressure_[i] : bc.stress_right;
    const double stress_left = i > 0 ? -cell_pressure_[i - 1] : bc.stress_left;
    rhs_[i] = weight * mass * state.u[i] + stress_right - stress_left;
    if (forcing_) rhs_[i] += weight * dx * forcing_->momentum(static_cast<double>(i) * dx, t_new);
  }
  solve_tridiagonal(lower_, diag_, upper_, rhs_, scratch_);
  std::copy(rhs_.begin(), rhs_.end(), state.u.begin());

  // Stage 2: volume, the discrete v_t = u_x.
  for (std::size_t j = 0; j < n; ++j) {
    state.v[j] += dt * (state.u[j + 1] - state.u[j]) / dx;
    if (!(state.v[j] > 0.0)) {
      throw VolumeCollapseError(t_new, "volume collapse: v = " + std::to_string(state.v[j]) + " at cell " +
                                           std::to_string(j) + ", t = " + std::to_string(t_new));
    }
  }

  // Stage 3: temperature on cells, zero-flux end faces.
  const double heat = params_.c_v * dx / dt;
  double face_left = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double face_right =
        j + 1 < n ? (kappa_[j] + kappa_[j + 1]) / ((state.v[j] + state.v[j + 1]) * dx) : 0.0;
    lower_[j] = -face_left;
    upper_[j] = -face_right;
    diag_[j] = heat + face_left + face_right;
    const double ux = (state.u[j + 1] - state.u[j]) / dx;
    const double th = state.theta[j];
    const double source = (-params_.R * th * ux + mu_[j] * ux * ux) / state.v[j];
    rhs_[j] = heat * th + dx * source;
    if (forcing_) rhs_[j] += dx * forcing_->energy((static_cast<double>(j) + 0.5) * dx, t_new);
    face_left = face_right;
  }
  std::span<double> theta_rhs(rhs_.data(), n);
  solve_tridiagonal(std::span<const double>(lower_.data(), n), std::span<const double>(diag_.data(), n),
                    std::span<const double>(upper_.data(), n), theta_rhs, scratch_);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(rhs_[j] >= theta_floor_)) {
      throw FloorBreachError(t_new, "temperature-floor breach: theta = " + std::to_string(rhs_[j]) + " at cell " +
                                        std::to_string(j) + ", t = " + std::to_string(t_new));
    }
    state.theta[j] = rhs_[j];
  }
  state.t = t_new;
}

FluidState step(const FluidState& state, const PressureSchedule& schedule, const ThermoParams& params,
                const SolverConfig& config, const SourceTerms* forcing) {
  config.validate();
  state.validate();
  Stepper stepper(params, schedule, config.theta_floor,
                  forcing ? std::optional<SourceTerms>(*forcing) : std::nullopt);
  FluidState next = state;
  stepper.advance(next, time_step(state, params, config));
  return next;
}

Simulation::Simulation(FluidState initial, PressureSchedule schedule, ThermoParams params, SolverConfig config,
                       std::optional<SourceTerms> forcing)
    : schedule_(schedule),
      params_(params),
      config_(config),
      stepper_(params, std::move(schedule), config.theta_floor, std::move(forcing)) {
  config_.validate();
  initial.validate();
  if (config_.mms_enabled && !forcing_enabled()) {
    throw DomainError("mms_enabled", "manufactured-solution mode needs source terms");
  }
  result_.final_state = initial;
  result_.history.initial = initial;
  result_.history.nominal_spacing = config_.dt * static_cast<double>(config_.store_history_every);

  const double dx = 1.0 / static_cast<double>(initial.n_cells());
  double u0 = 0.0;
  for (std::size_t j = 0; j < initial.n_cells(); ++j) u0 += 0.5 * dx * (initial.u[j] + initial.u[j + 1]);
  result_.u0_integral = u0;
  initial_momentum_ = momentum(initial);

  const auto p0 = schedule_(initial.t);
  const double du_dx = (initial.u[1] - initial.u[0]) / dx;
  result_.min_v = result_.min_theta = std::numeric_limits<double>::infinity();
  result_.max_v = result_.max_theta = -std::numeric_limits<double>::infinity();
  track_extrema();
  result_.initial_stress_mismatch = std::abs(stress(du_dx, initial.v[0], initial.theta[0], params_) + p0.p);
  initial_energy_ = total_energy(initial, p0.p, params_);

  double v_mean = 0.0;
  for (double v : initial.v) v_mean += v;
  v_mean /= static_cast<double>(initial.n_cells());
  result_.max_v_mean = v_mean;
  previous_work_integrand_ = p0.dp * v_mean;

  const auto limit = schedule_.limit();
  envelope_available_ = limit.has_value();
  if (envelope_available_) {
    try {
      (void)schedule_.tail_variation(initial.t);
    } catch (const ScheduleError&) {
      envelope_available_ = false;
    }
  }
  record_sample();
}

void Simulation::track_extrema() {
  const FluidState& s = result_.final_state;
  const auto [v_lo, v_hi] = std::minmax_element(s.v.begin(), s.v.end());
  const auto [th_lo, th_hi] = std::minmax_element(s.theta.begin(), s.theta.end());
  result_.min_v = std::min(result_.min_v, *v_lo);
  result_.max_v = std::max(result_.max_v, *v_hi);
  result_.min_theta = std::min(result_.min_theta, *th_lo);
  result_.max_theta = std::max(result_.max_theta, *th_hi);
}

bool Simulation::forcing_enabled() const noexcept { return stepper_.has_forcing(); }

bool Simulation::finished() const noexcept {
  // Tolerate roundoff in accumulated time.
  return result_.final_state.t >= config_.t_end - 1e-12 * std::max(1.0, config_.t_end);
}

double Simulation::log_Y() const {
  return schedule_.has_analytic_integral() ? schedule_.integral(result_.final_state.t) : log_Y_numeric_;
}

void Simulation::record_sample() {
  const FluidState& state = result_.final_state;
  const double p = schedule_(state.t).p;
  DiagnosticsSample sample = sample_diagnostics(state, params_, p);
  sample.Y = std::exp(log_Y());
  if (envelope_available_) {
    sample.F = std::exp(-2.0 * log_Y()) + envelope_middle_ * envelope_middle_ + schedule_.tail_variation(state.t);
  }
  sample.energy_residual = sample.total_energy - initial_energy_ - result_.work_integral;
  result_.series.push_back(sample);
  result_.history.append(state, p);
}

void Simulation::advance() {
  if (finished()) return;
  FluidState& state = result_.final_state;
  const double t_old = state.t;
  double dt = time_step(state, params_, config_);
  const std::size_t next_index = result_.steps + 1;
  double t_target = config_.cfl_factor ? t_old + dt : static_cast<double>(next_index) * config_.dt;
  if (t_target > config_.t_end || config_.t_end - t_target < 1e-9 * dt) t_target = config_.t_end;
  dt = t_target - t_old;

  const PressureValue p_old = schedule_(t_old);
  stepper_.advance(state, dt);
  state.t = t_target;
  ++result_.steps;
  const PressureValue p_new = schedule_(t_target);

  double v_mean = 0.0;
  for (double v : state.v) v_mean += v;
  v_mean /= static_cast<double>(state.n_cells());
  result_.max_v_mean = std::max(result_.max_v_mean, v_mean);
  const double work_integrand = p_new.dp * v_mean;
  result_.work_integral += 0.5 * dt * (previous_work_integrand_ + work_integrand);
  previous_work_integrand_ = work_integrand;

  // Integral of p over the step (Simpson) feeds Y and the F envelope recursion.
  const double step_integral =
      schedule_.has_analytic_integral()
          ? schedule_.integral(t_target) - schedule_.integral(t_old)
          : dt / 6.0 * (p_old.p + 4.0 * schedule_(0.5 * (t_old + t_target)).p + p_new.p);
  log_Y_numeric_ += step_integral;
  if (envelope_available_) {
    const double p_bar = *schedule_.limit();
    const double damping = std::exp(-step_integral);
    envelope_middle_ = envelope_middle_ * damping + 0.5 * dt * (damping * (p_bar - p_old.p) + (p_bar - p_new.p));
  }

  track_extrema();
  result_.max_momentum_drift = std::max(result_.max_momentum_drift, std::abs(momentum(state) - initial_momentum_));

  const bool on_stride = result_.steps % config_.store_history_every == 0;
  if (on_stride || finished()) {
    record_sample();
    result_.max_abs_energy_residual =
        std::max(result_.max_abs_energy_residual, std::abs(result_.series.back().energy_residual));
  }
}

void Simulation::run_to_end() {
  while (!finished()) advance();
}

RunResult run(const FluidState& initial, const PressureSchedule& schedule, const ThermoParams& params,
              const SolverConfig& config, const SourceTerms* forcing) {
  Simulation sim(initial, schedule, params, config, forcing ? std::optional<SourceTerms>(*forcing) : std::nullopt);
  sim.run_to_end();
  return std::move(sim).take_result();
}

RunResult run(const MassGrid& grid, const InitialData& initial, const PressureSchedule& schedule,
              const ThermoParams& params, const SolverConfig& config, const SourceTerms* forcing) {
  return run(init_state(grid, initial).state, schedule, params, config, forcing);
}

}  // namespace outerpress
