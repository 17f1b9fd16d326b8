#include "outerpress/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "outerpress/errors.hpp"

namespace outerpress {

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t k = static_cast<std::size_t>(std::distance(xs.begin(), it));
  const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return (1.0 - w) * ys[k - 1] + w * ys[k];
}

struct Sampler {
  std::function<double(double)> v0;
  std::function<double(double)> u0;
  std::function<double(double)> theta0;
};

Sampler make_sampler(const InitialData& initial) {
  return std::visit(
      [](const auto& d) -> Sampler {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantInit>) {
          return {[v = d.v0](double) { return v; }, [u = d.u0](double) { return u; },
                  [th = d.theta0](double) { return th; }};
        } else if constexpr (std::is_same_v<T, SineInit>) {
          const double phase = d.phase();
          const double k = 2.0 * std::numbers::pi * d.wavenumber;
          auto wave = [k, phase](double base, double amplitude) {
            return [=](double x) { return base + amplitude * std::sin(k * x + phase); };
          };
          return {wave(d.v_base, d.v_amplitude), wave(d.u_base, d.u_amplitude),
                  wave(d.theta_base, d.theta_amplitude)};
        } else if constexpr (std::is_same_v<T, ProfileInit>) {
          if (!d.v0 || !d.u0 || !d.theta0) throw InputError("profile initial data is missing a field");
          return {d.v0, d.u0, d.theta0};
        } else {
          return {[&d](double x) { return interpolate(d.x, d.v0, x); },
                  [&d](double x) { return interpolate(d.x, d.u0, x); },
                  [&d](double x) { return interpolate(d.x, d.theta0, x); }};
        }
      },
      initial);
}

std::string location(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

double SineInit::phase() const {
  if (seed == 0) return 0.0;
  std::mt19937_64 rng(seed);
  // 53 random bits mapped to [0, 1); avoids the implementation-defined distributions.
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * std::numbers::pi * unit;
}

TableInit load_initial_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open initial-data file " + path.string());
  TableInit table;
  table.source = path.string();
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,v0,u0,theta0") {
    throw InputError(path.string() + ":1: expected header 'x,v0,u0,theta0', got '" + line + "'");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, v, u, th;
    if (!(row >> x >> v >> u >> th)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected four numbers");
    }
    if (!table.x.empty() && !(x > table.x.back())) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": x must be strictly increasing");
    }
    if (!(v > 0.0)) {
      throw InitError(x, path.string() + ":" + std::to_string(line_no) + ": non-positive v0 at x = " + location(x));
    }
    if (!(th > 0.0)) {
      throw InitError(x, path.string() + ":" + std::to_string(line_no) +
                             ": non-positive theta0 at x = " + location(x));
    }
    table.x.push_back(x);
    table.v0.push_back(v);
    table.u0.push_back(u);
    table.theta0.push_back(th);
  }
  if (table.x.size() < 2) throw InputError(path.string() + ": need at least two rows");
  if (table.x.front() > 0.0 || table.x.back() < 1.0) {
    throw InputError(path.string() + ": rows must cover x in [0, 1]");
  }
  return table;
}

InitResult init_state(const MassGrid& grid, const InitialData& initial) {
  if (const auto* table = std::get_if<TableInit>(&initial)) {
    for (std::size_t k = 0; k < table->x.size(); ++k) {
      if (!(table->v0[k] > 0.0)) throw InitError(table->x[k], "non-positive v0 at x = " + location(table->x[k]));
      if (!(table->theta0[k] > 0.0)) {
        throw InitError(table->x[k], "non-positive theta0 at x = " + location(table->x[k]));
      }
    }
  }
  const Sampler sampler = make_sampler(initial);
  const std::size_t n = grid.n_cells();
  InitResult result;
  FluidState& s = result.state;
  s.v.resize(n);
  s.theta.resize(n);
  s.u.resize(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.cell_center(j);
    s.v[j] = sampler.v0(x);
    s.theta[j] = sampler.theta0(x);
    if (!(s.v[j] > 0.0)) throw InitError(x, "non-positive v0 sample at x = " + location(x));
    if (!(s.theta[j] > 0.0)) throw InitError(x, "non-positive theta0 sample at x = " + location(x));
  }
  for (std::size_t i = 0; i <= n; ++i) s.u[i] = sampler.u0(grid.node(i));
  double integral = 0.0;
  for (std::size_t j = 0; j < n; ++j) integral += 0.5 * grid.dx() * (s.u[j] + s.u[j + 1]);
  result.u0_integral = integral;
  s.t = 0.0;
  return result;
}

}  // namespace outerpress
