// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "cli/commands.hpp"
#include "qthermo/firstlaw.hpp"
#include "qthermo/oracle.hpp"

namespace qthermo::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Reference values, evaluated independently from the closed forms.
constexpr double kPdHeatAt8 = 0.17316105991312036;
constexpr double kPfHeatAt8 = 1.2581958580513313e-4;
constexpr double kPfHeatPeak = 0.17328679513998632;  // ln 4 / 8

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Check at_most(std::string label, double measured, double tol) {
  Check c;
  c.label = std::move(label);
  c.measured = measured;
  c.upper = tol;
  c.pass = measured <= tol;  // NaN fails
  return c;
}

Check in_range(std::string label, double measured, double lo, double hi) {
  Check c;
  c.label = std::move(label);
  c.measured = measured;
  c.lower = lo;
  c.upper = hi;
  c.range = true;
  c.pass = measured >= lo && measured <= hi;
  return c;
}

double max_abs(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b, double scale_b = 1.0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - scale_b * b[i]));
  return worst;
}

std::vector<double> sample(const std::vector<double>& tau, const std::function<double(double)>& f) {
  std::vector<double> out;
  out.reserve(tau.size());
  for (double t : tau) out.push_back(f(t));
  return out;
}

Matrix conjugate(const Matrix& u, const Matrix& m) { return mul(mul(u, m), adjoint(u)); }

Matrix hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return Matrix::from_rows({{h, h}, {h, -h}});
}

/// Columns are the sigma_y eigenbasis: S * Hadamard.
Matrix y_basis() { return mul(Matrix::diagonal({1.0, Complex(0.0, 1.0)}), hadamard()); }

Matrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = u(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex v(u(rng), u(rng));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

DensityOperator preset_state(double theta = kPi / 6) { return prepare_pure_state(InitialStatePrep(theta, 0.0)); }

/// Trajectories shared between criteria, keyed by a descriptive name.
class Runs {
 public:
  const EnergeticsLedger& get(const std::string& key, const std::function<EnergeticsLedger()>& make) {
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, make()).first;
    return it->second;
  }

  const EnergeticsLedger& z_setup(ChannelKind kind, double theta = kPi / 6, std::size_t steps = kDefaultSteps) {
    const std::string key = std::string(channel_name(kind)) + "/z/" + fmt(theta) + "/" + std::to_string(steps);
    return get(key, [=] {
      return run_first_law(ChannelSpec::builtin(kind), preset_state(theta), Hamiltonian::diagonal({0.0, 1.0}),
                           TimeGrid(kDefaultTauMax, steps));
    });
  }

  /// State and Hamiltonian rotated by `u`; the z-basis setup is u = I.
  const EnergeticsLedger& rotated(ChannelKind kind, const std::string& basis_name, const Matrix& u, double theta) {
    const std::string key = std::string(channel_name(kind)) + "/" + basis_name + "/" + fmt(theta);
    return get(key, [&] {
      const auto rho = DensityOperator::from_matrix(conjugate(u, preset_state(theta).matrix()));
      const auto h = Hamiltonian::constant(conjugate(u, Matrix::diagonal({0.0, 1.0})));
      return run_first_law(ChannelSpec::builtin(kind), rho, h, TimeGrid(kDefaultTauMax, kDefaultSteps));
    });
  }

 private:
  std::map<std::string, EnergeticsLedger> cache_;
};

struct Context {
  Runs runs;
  std::optional<double> quad_override;
  std::filesystem::path scratch;

  double quad(double pinned) const { return quad_override.value_or(pinned); }
};

std::size_t nearest_index(const std::vector<double>& tau, double target) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (std::abs(tau[i] - target) < std::abs(tau[best] - target)) best = i;
  }
  return best;
}

void criterion_pd_heat(Context& ctx, Criterion& c) {
  const auto& led = ctx.runs.z_setup(ChannelKind::PhaseDamping);
  const auto cfg = oracle::default_config();
  const auto exact = sample(led.tau, [&](double t) { return oracle::pd_heat(t, cfg); });
  c.checks.push_back(at_most("max |Q - closed form|", max_diff(led.heat, exact), ctx.quad(1e-5)));
  c.checks.push_back(at_most("|Q(8) - 0.173161059913|", std::abs(led.heat.back() - kPdHeatAt8), ctx.quad(1e-5)));
}

void criterion_pd_coherence(Context& ctx, Criterion& c) {
  const auto& led = ctx.runs.z_setup(ChannelKind::PhaseDamping);
  const auto cfg = oracle::default_config();
  const auto exact = sample(led.tau, [&](double t) { return oracle::pd_coherence(t, cfg); });
  c.checks.push_back(at_most("max |C - closed form|", max_diff(led.coherence, exact), ctx.quad(1e-5)));
  c.checks.push_back(at_most("max |Q + C|", max_diff(led.heat, led.coherence, -1.0), ctx.quad(5e-6)));
}

void criterion_closure(Context& ctx, Criterion& c) {
  for (ChannelKind kind :
       {ChannelKind::PhaseDamping, ChannelKind::PhaseFlip, ChannelKind::BitFlip, ChannelKind::BitPhaseFlip}) {
    const auto& led = ctx.runs.z_setup(kind);
    c.checks.push_back(at_most("closure " + std::string(channel_name(kind)), led.closure_residual(), ctx.quad(5e-5)));
  }

  using expr::Expression;
  const Hamiltonian driven({Expression::constant(0.0), expr::parse("1+0.1*t")},
                           {{Expression::constant(0.0), Expression::constant(0.0)}});
  const auto identity = ChannelSpec::custom({ExprMatrix::constant(Matrix::identity(2))});
  const auto led = run_first_law(identity, preset_state(), driven, TimeGrid(kDefaultTauMax, kDefaultSteps));
  c.checks.push_back(at_most("closure driven identity", led.closure_residual(), ctx.quad(5e-5)));
  c.checks.push_back(at_most("driven max |Q|", max_abs(led.heat), 1e-12));
  c.checks.push_back(at_most("driven max |C|", max_abs(led.coherence), 1e-12));
  c.checks.push_back(at_most("driven max |dU - W|", max_diff(led.delta_u, led.work), 1e-12));
}

// Each builtin leaves populations alone in its own Pauli basis.
void criterion_non_dissipative(Context& ctx, Criterion& c) {
  struct Setup {
    ChannelKind kind;
    const char* basis;
    Matrix u;
  };
  const Setup setups[] = {{ChannelKind::PhaseDamping, "z", Matrix::identity(2)},
                          {ChannelKind::PhaseFlip, "z", Matrix::identity(2)},
                          {ChannelKind::BitFlip, "x", hadamard()},
                          {ChannelKind::BitPhaseFlip, "y", y_basis()}};
  for (const auto& s : setups) {
    const auto& led =
        std::string(s.basis) == "z" ? ctx.runs.z_setup(s.kind) : ctx.runs.rotated(s.kind, s.basis, s.u, kPi / 6);
    const std::string name = std::string(channel_name(s.kind)) + "/" + s.basis;
    c.checks.push_back(at_most(name + " max |dU|", max_abs(led.delta_u), 1e-9));
    c.checks.push_back(at_most(name + " max |W|", max_abs(led.work), 1e-12));
  }
}

void criterion_phase_flip(Context& ctx, Criterion& c) {
  const auto& led = ctx.runs.z_setup(ChannelKind::PhaseFlip);
  const auto cfg = oracle::default_config();
  c.checks.push_back(at_most("max |Q - closed form|",
                             max_diff(led.heat, sample(led.tau, [&](double t) { return oracle::pf_heat(t, cfg); })),
                             ctx.quad(1e-5)));
  c.checks.push_back(
      at_most("max |C - closed form|",
              max_diff(led.coherence, sample(led.tau, [&](double t) { return oracle::pf_coherence(t, cfg); })),
              ctx.quad(1e-5)));

  const std::size_t at_ln2 = nearest_index(led.tau, std::log(2.0));
  c.checks.push_back(at_most("|Q(ln 2) - ln4/8|", std::abs(led.heat[at_ln2] - kPfHeatPeak), ctx.quad(1e-4)));
  const auto peak = static_cast<double>(std::max_element(led.heat.begin(), led.heat.end()) - led.heat.begin());
  c.checks.push_back(at_most("argmax Q offset from ln 2 (grid points)", std::abs(peak - static_cast<double>(at_ln2)), 1.0));
  c.checks.push_back(at_most("|Q(8) - 1.2582e-4|", std::abs(led.heat.back() - kPfHeatAt8), ctx.quad(1e-5)));

  const oracle::OracleConfig shifted(0.3, 1.7, kPi / 6);
  const auto& gen = ctx.runs.get("phase-flip/z/general", [] {
    return run_first_law(ChannelSpec::builtin(ChannelKind::PhaseFlip), preset_state(),
                         Hamiltonian::diagonal({0.3, 1.7}), TimeGrid(kDefaultTauMax, kDefaultSteps));
  });
  const auto q_gen = sample(gen.tau, [&](double t) { return oracle::pf_heat(t, shifted); });
  const auto c_gen = sample(gen.tau, [&](double t) { return oracle::pf_coherence(t, shifted); });
  c.checks.push_back(at_most("(0.3,1.7) max |Q - general closed form|", max_diff(gen.heat, q_gen), ctx.quad(1e-5)));
  c.checks.push_back(at_most("(0.3,1.7) max |C - general closed form|", max_diff(gen.coherence, c_gen), ctx.quad(1e-5)));
  c.checks.push_back(at_most("(0.3,1.7) numeric Q vs 1.4x", max_diff(gen.heat, led.heat, 1.4), 1e-10));
  c.checks.push_back(at_most("(0.3,1.7) numeric C vs 1.4x", max_diff(gen.coherence, led.coherence, 1.4), 1e-10));
  const auto q_ref = sample(gen.tau, [&](double t) { return oracle::pf_heat(t, cfg); });
  const auto c_ref = sample(gen.tau, [&](double t) { return oracle::pf_coherence(t, cfg); });
  c.checks.push_back(at_most("(0.3,1.7) closed-form Q vs 1.4x", max_diff(q_gen, q_ref, 1.4), 1e-10));
  c.checks.push_back(at_most("(0.3,1.7) closed-form C vs 1.4x", max_diff(c_gen, c_ref, 1.4), 1e-10));
}

void criterion_order(Context& ctx, Criterion& c) {
  const auto cfg = oracle::default_config();
  auto error = [&](std::size_t steps) {
    const auto& led = ctx.runs.z_setup(ChannelKind::PhaseDamping, kPi / 6, steps);
    return max_diff(led.heat, sample(led.tau, [&](double t) { return oracle::pd_heat(t, cfg); }));
  };
  c.checks.push_back(in_range("error ratio 500/1000 steps", error(500) / error(1000), 3.5, 4.5));
}

void criterion_symmetry(Context& ctx, Criterion& c) {
  for (double theta : {0.0, kPi / 6}) {
    const std::string tag = theta == 0.0 ? "theta=0" : "theta=pi/6";
    const auto& z = ctx.runs.z_setup(ChannelKind::PhaseFlip, theta);
    const auto& x = ctx.runs.rotated(ChannelKind::BitFlip, "x", hadamard(), theta);
    const auto& y = ctx.runs.rotated(ChannelKind::BitPhaseFlip, "y", y_basis(), theta);
    c.checks.push_back(at_most("bit-flip/x Q vs phase-flip " + tag, max_diff(x.heat, z.heat), 1e-8));
    c.checks.push_back(at_most("bit-flip/x C vs phase-flip " + tag, max_diff(x.coherence, z.coherence), 1e-8));
    c.checks.push_back(at_most("bit-phase-flip/y Q vs phase-flip " + tag, max_diff(y.heat, z.heat), 1e-8));
    c.checks.push_back(at_most("bit-phase-flip/y C vs phase-flip " + tag, max_diff(y.coherence, z.coherence), 1e-8));
  }
  const auto& bf = ctx.runs.z_setup(ChannelKind::BitFlip, kPi / 4);
  c.checks.push_back(at_most("bit-flip/z theta=pi/4 closure", bf.closure_residual(), ctx.quad(5e-5)));
}

void criterion_cptp(Context&, Criterion& c) {
  for (ChannelKind kind :
       {ChannelKind::PhaseDamping, ChannelKind::PhaseFlip, ChannelKind::BitFlip, ChannelKind::BitPhaseFlip}) {
    const auto spec = ChannelSpec::builtin(kind);
    double worst = 0.0;
    bool all_pass = true;
    for (int i = 0; i < 50; ++i) {
      const auto rep = validate_cptp(kraus_at(spec, kDefaultTauMax * i / 49.0));
      worst = std::max(worst, rep.deviation);
      all_pass = all_pass && rep.pass;
    }
    Check chk = at_most(std::string(channel_name(kind)) + " max deviation", worst, 1e-12);
    chk.pass = chk.pass && all_pass;
    c.checks.push_back(chk);
  }
  const auto pair = ChannelSpec::custom({ExprMatrix::constant(Matrix::identity(2)),
                                         ExprMatrix::constant(Matrix::identity(2))});
  const auto rep = validate_cptp(kraus_at(pair, 0.0));
  Check chk = at_most("{I, I} |deviation - 1|", std::abs(rep.deviation - 1.0), 1e-15);
  chk.pass = chk.pass && !rep.pass;
  c.checks.push_back(chk);
}

void criterion_eigensolver(Context&, Criterion& c) {
  std::mt19937_64 rng(20240611);
  double residual = 0.0;
  double ortho = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(i % 8);
    const Matrix a = random_hermitian(rng, dim);
    const auto eig = hermitian_eigen(a);
    const Matrix av = mul(a, eig.eigenvectors);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t r = 0; r < dim; ++r) {
        residual = std::max(residual, std::abs(av(r, j) - eig.eigenvalues[j] * eig.eigenvectors(r, j)));
      }
    }
    ortho = std::max(ortho, max_abs_diff(mul(adjoint(eig.eigenvectors), eig.eigenvectors), Matrix::identity(dim)));
  }
  c.checks.push_back(at_most("max residual |Av - lv|", residual, 1e-10));
  c.checks.push_back(at_most("max |V^dagger V - I|", ortho, 1e-12));

  double closed = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Matrix a = random_hermitian(rng, 2);
    const double p = a(0, 0).real();
    const double d = a(1, 1).real();
    const double disc = std::sqrt((p - d) * (p - d) + 4.0 * std::norm(a(0, 1)));
    const auto eig = hermitian_eigen(a);
    closed = std::max({closed, std::abs(eig.eigenvalues[0] - 0.5 * (p + d - disc)),
                       std::abs(eig.eigenvalues[1] - 0.5 * (p + d + disc))});
  }
  c.checks.push_back(at_most("2x2 vs quadratic formula", closed, 1e-12));
}

void criterion_oracle_cross(Context&, Criterion& c) {
  const auto rho0 = preset_state();
  const auto spec = ChannelSpec::builtin(ChannelKind::PhaseDamping);
  double values = 0.0;
  double vectors = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double tau = kDefaultTauMax * i / 99.0;
    const auto closed = oracle::pd_eigensystem(tau, rho0);
    const auto eig = hermitian_eigen(evolve(spec, rho0, tau).matrix());
    // Oracle is descending, the solver ascending.
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t k = 1 - j;
      values = std::max(values, std::abs(closed.values[j] - eig.eigenvalues[k]));
      const Complex ov = std::conj(closed.vectors(0, j)) * eig.eigenvectors(0, k) +
                         std::conj(closed.vectors(1, j)) * eig.eigenvectors(1, k);
      vectors = std::max(vectors, std::abs(1.0 - std::abs(ov)));
    }
  }
  c.checks.push_back(at_most("max eigenvalue difference", values, 1e-12));
  c.checks.push_back(at_most("max 1 - |<oracle|numeric>|", vectors, 1e-12));
}

/// Measured 0 when f throws E, 1 otherwise.
template <class E>
Check raises(const std::string& label, const std::function<void()>& f) {
  bool ok = false;
  try {
    f();
  } catch (const E&) {
    ok = true;
  } catch (const std::exception&) {
  }
  return at_most(label, ok ? 0.0 : 1.0, 0.0);
}

void criterion_parser(Context&, Criterion& c) {
  auto value = [](const char* src, const char* at, double t, double expected, double tol) {
    const double got = expr::eval(expr::parse(src), t);
    return at_most(std::string("\"") + src + "\"" + at, std::abs(got - expected), tol);
  };
  c.checks.push_back(value("1+2*3", "", 0.0, 7.0, 0.0));
  c.checks.push_back(value("(1+2)*3", "", 0.0, 9.0, 0.0));
  c.checks.push_back(value("-2^2", "", 0.0, -4.0, 0.0));
  c.checks.push_back(value("1-exp(-t)", " at t=0", 0.0, 0.0, 1e-15));
  c.checks.push_back(value("1-exp(-t)", " at t=ln 2", std::log(2.0), 0.5, 1e-15));

  c.checks.push_back(raises<expr::ParseError>("\"foo(t)\" parse error", [] { expr::parse("foo(t)"); }));
  c.checks.push_back(raises<expr::ParseError>("\"(1+2\" parse error", [] { expr::parse("(1+2"); }));
  c.checks.push_back(raises<expr::ParseError>("\"1+2)\" parse error", [] { expr::parse("1+2)"); }));
  c.checks.push_back(raises<expr::DomainError>("\"sqrt(-1-t)\" domain error",
                                               [] { expr::eval(expr::parse("sqrt(-1-t)"), 0.0); }));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void criterion_determinism(Context& ctx, Criterion& c) {
  std::random_device rd;
  const auto root = ctx.scratch / ("qthermo-determinism-" + std::to_string(rd()));
  std::ostringstream sink;
  const Streams quiet{sink, sink};
  const int a = cmd_reproduce(Figure::Fig2, root / "a", quiet);
  const int b = cmd_reproduce(Figure::Fig2, root / "b", quiet);
  const std::string csv_a = slurp(root / "a" / "fig2.csv");
  const std::string csv_b = slurp(root / "b" / "fig2.csv");
  std::error_code ec;
  std::filesystem::remove_all(root, ec);

  c.checks.push_back(at_most("reproduce exit codes", static_cast<double>(std::abs(a) + std::abs(b)), 0.0));
  c.checks.push_back(at_most("fig2.csv empty", csv_a.empty() ? 1.0 : 0.0, 0.0));
  c.checks.push_back(at_most("fig2.csv byte mismatch", csv_a == csv_b ? 0.0 : 1.0, 0.0));
}

struct Entry {
  int number;
  const char* title;
  void (*run)(Context&, Criterion&);
};

constexpr Entry kCriteria[] = {
    {1, "phase-damping heat matches closed form", criterion_pd_heat},
    {2, "phase-damping coherence matches closed form and Q = -C", criterion_pd_coherence},
    {3, "first-law closure", criterion_closure},
    {4, "non-dissipative invariants", criterion_non_dissipative},
    {5, "phase-flip closed forms", criterion_phase_flip},
    {6, "quadrature order", criterion_order},
    {7, "bit flip and bit-phase flip mirror phase flip", criterion_symmetry},
    {8, "CPTP validation", criterion_cptp},
    {9, "Hermitian eigensolver", criterion_eigensolver},
    {10, "oracle eigensystem cross-check", criterion_oracle_cross},
    {11, "expression parser golden suite", criterion_parser},
    {12, "reproduce is byte-stable", criterion_determinism},
};

}  // namespace

bool Criterion::pass() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Criterion> run_acceptance(const AcceptanceOptions& options) {
  Context ctx;
  ctx.quad_override = options.quadrature_tol;
  ctx.scratch = options.scratch_dir.value_or(std::filesystem::temp_directory_path());

  std::vector<Criterion> out;
  for (const auto& e : kCriteria) {
    Criterion c;
    c.number = e.number;
    c.title = e.title;
    try {
      e.run(ctx, c);
    } catch (const std::exception& ex) {
      c.error = ex.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string describe(const Criterion& c, bool verbose) {
  auto bound = [](const Check& k) {
    return k.range ? "in [" + fmt(k.lower) + ", " + fmt(k.upper) + "]" : "<= " + fmt(k.upper);
  };
  char head[16];
  std::snprintf(head, sizeof head, "%s %2d  ", c.pass() ? "PASS" : "FAIL", c.number);
  std::string s = head + c.title;
  if (verbose) {
    s += '\n';
    for (const auto& k : c.checks) {
      s += std::string("    ") + (k.pass ? "ok   " : "FAIL ") + k.label + " = " + fmt(k.measured) + " (" + bound(k) + ")\n";
    }
    if (!c.error.empty()) s += "    error: " + c.error + '\n';
    return s;
  }
  s += " |";
  for (const auto& k : c.checks) {
    s += std::string(" ") + k.label + "=" + fmt(k.measured) + (k.pass ? "" : " [FAIL " + bound(k) + "]") + ";";
  }
  if (!c.error.empty()) s += " error: " + c.error;
  s += '\n';
  return s;
}

}  // namespace qthermo::cli
