#include "entangledyn/scenario.hpp"

#include "entangledyn/cavity.hpp"
#include "entangledyn/core.hpp"
#include "entangledyn/jcm.hpp"
#include "entangledyn/multimode.hpp"
#include "entangledyn/series.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>

namespace entangledyn::scenario {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::Eoe: return "EOE";
    case Measure::Ln: return "LN";
    case Measure::AbsU: return "abs_u";
  }
  return "?";
}

static Model parse_model(const std::string& s) {
  if (s == "jcm") return Model::Jcm;
  if (s == "multimode") return Model::Multimode;
  if (s == "ladder") return Model::Ladder;
  if (s == "cavity-longtime") return Model::CavityLongtime;
  if (s == "cavity-poles") return Model::CavityPoles;
  throw ValidationError("scenario: unknown model '" + s + "'");
}

static Measure parse_measure(const std::string& s) {
  if (s == "EOE") return Measure::Eoe;
  if (s == "LN") return Measure::Ln;
  if (s == "abs_u") return Measure::AbsU;
  throw ValidationError("scenario: unknown measure '" + s + "'");
}

Scenario parse(const nlohmann::json& j) {
  Scenario sc;
  if (!j.contains("model")) throw ValidationError("scenario: missing 'model'");
  sc.model = parse_model(j.at("model").get<std::string>());

  if (j.contains("initial_state")) {
    const auto& st = j.at("initial_state");
    sc.r = st.value("r", 1.0);
    sc.theta = st.value("theta", 0.0);
    sc.phi = st.value("phi", 0.0);
  }
  core::BlochVector check(sc.r, sc.theta, sc.phi); // validates ranges
  (void)check;

  sc.params = j.value("params", nlohmann::json::object());
  if (!sc.params.is_object())
    throw ValidationError("scenario: 'params' must be an object");

  const bool needs_grid = sc.model != Model::CavityPoles;
  if (needs_grid) {
    if (!j.contains("time_grid"))
      throw ValidationError("scenario: missing 'time_grid'");
    const auto& g = j.at("time_grid");
    sc.grid.t_start = g.at("t_start").get<double>();
    sc.grid.t_end = g.at("t_end").get<double>();
    sc.grid.samples = g.at("samples").get<int>();
    if (sc.grid.samples < 2)
      throw ValidationError("scenario: time_grid.samples must be >= 2");
    if (!(sc.grid.t_start >= 0.0) || !(sc.grid.t_end > sc.grid.t_start))
      throw ValidationError("scenario: need t_end > t_start >= 0");

    if (!j.contains("measures"))
      throw ValidationError("scenario: missing 'measures'");
    for (const auto& m : j.at("measures"))
      sc.measures.push_back(parse_measure(m.get<std::string>()));
    if (sc.measures.empty())
      throw ValidationError("scenario: 'measures' must be non-empty");
  }

  for (Measure m : sc.measures)
    if (m == Measure::Eoe && sc.r != 1.0)
      throw ValidationError(
          "scenario: EOE requires a pure initial state (r = 1)");
  if ((sc.model == Model::CavityLongtime || sc.model == Model::CavityPoles) &&
      sc.r != 1.0)
    throw ValidationError("scenario: cavity models require r = 1");

  if (j.contains("sweep")) {
    SweepSpec sw;
    sw.parameter = j.at("sweep").at("parameter").get<std::string>();
    for (const auto& v : j.at("sweep").at("values"))
      sw.values.push_back(v.get<double>());
    if (sw.values.empty())
      throw ValidationError("scenario: sweep values list is empty");
    std::sort(sw.values.begin(), sw.values.end());
    sc.sweep = sw;
  }
  return sc;
}

Scenario parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nlohmann::json::other_error::create(
      500, "cannot open config file '" + path + "'", nullptr);
  nlohmann::json j = nlohmann::json::parse(in);
  return parse(j);
}

// ---------------------------------------------------------------------------

static multimode::ModeSet build_mode_set(Model model, const nlohmann::json& p) {
  if (model == Model::Ladder) {
    const int q = p.at("Q").get<int>();
    const double g = p.value("g", 1.0);
    return multimode::cavity_ladder(q, g, p.at("delta").get<double>(),
                                    p.at("Delta").get<double>(),
                                    p.at("omega0").get<double>());
  }
  const double omega0 = p.value("omega0", 1.0e6);
  if (p.contains("symmetric_delta")) {
    const double d = p.at("symmetric_delta").get<double>();
    const double g = p.value("g", 1.0);
    return multimode::ModeSet(omega0, {-d, d}, {g, g});
  }
  std::vector<double> deltas = p.at("deltas").get<std::vector<double>>();
  std::vector<double> couplings =
      p.contains("couplings") ? p.at("couplings").get<std::vector<double>>()
                              : std::vector<double>(deltas.size(), 1.0);
  return multimode::ModeSet(omega0, deltas, couplings);
}

static cavity::CavityParams build_cavity(const nlohmann::json& p) {
  const double lambda = p.at("lambda").get<double>();
  const double eps = p.value("epsilon_omega0", 1.0e-3); // omega0 = 1 units
  double length;
  if (p.contains("L")) {
    length = p.at("L").get<double>();
  } else {
    // pin L by the requested free-spectral-range ratio L*Omega_inf/pi
    const double target = p.at("L_omega_over_pi").get<double>();
    cavity::CavityParams probe(lambda, 1.0, eps, 1.0);
    length = target * pi / cavity::omega_infinity(probe);
  }
  return cavity::CavityParams(lambda, length, eps, 1.0);
}

// measures for one time sample given |u| (pure-state paths)
static double pure_measure(Measure m, double u_abs, double theta) {
  switch (m) {
    case Measure::AbsU: return u_abs;
    case Measure::Ln: return core::ln_from_u(u_abs, theta);
    case Measure::Eoe:
      return core::eoe_from_spectrum(core::reduced_eigs_from_u(u_abs, theta));
  }
  return 0.0;
}

static bool needs_mixed_path(const Scenario& sc) {
  if (sc.r == 1.0) return false;
  for (Measure m : sc.measures)
    if (m == Measure::Ln) return true;
  return false;
}

// one column per measure, evaluated over the grid
static std::vector<std::vector<double>> evaluate(const Scenario& sc,
                                                 std::vector<double>& times) {
  times = series::linspace(sc.grid.t_start, sc.grid.t_end, sc.grid.samples);
  const std::size_t nt = times.size();
  std::vector<std::vector<double>> cols(sc.measures.size(),
                                        std::vector<double>(nt));
  const core::BlochVector b(sc.r, sc.theta, sc.phi);

  if (sc.model == Model::Jcm) {
    const jcm::JcmParams p(1.0, sc.params.value("delta", 0.0),
                           sc.params.value("omega", 1.0));
    for (std::size_t i = 0; i < nt; ++i) {
      const double ua = std::abs(jcm::u(p, times[i]));
      for (std::size_t c = 0; c < sc.measures.size(); ++c) {
        if (sc.measures[c] == Measure::Ln && sc.r != 1.0)
          cols[c][i] = core::log_negativity(jcm::mixed_evolution(p, b, times[i]));
        else
          cols[c][i] = pure_measure(sc.measures[c], ua, sc.theta);
      }
    }
    return cols;
  }

  if (sc.model == Model::Multimode || sc.model == Model::Ladder) {
    const multimode::ModeSet ms = build_mode_set(sc.model, sc.params);
    const multimode::PoleSet ps = multimode::poles(ms);
    const std::vector<Complex> u = series::u_on_grid(ps.roots, ps.weights, times);
    const bool mixed = needs_mixed_path(sc);
    for (std::size_t i = 0; i < nt; ++i) {
      const double ua = std::min(std::abs(u[i]), 1.0);
      for (std::size_t c = 0; c < sc.measures.size(); ++c) {
        if (sc.measures[c] == Measure::Ln && mixed)
          cols[c][i] =
              core::log_negativity(multimode::mixed_evolution(ms, b, times[i]));
        else
          cols[c][i] = pure_measure(sc.measures[c], ua, sc.theta);
      }
    }
    return cols;
  }

  if (sc.model == Model::CavityLongtime) {
    const cavity::CavityParams cp = build_cavity(sc.params);
    std::vector<cavity::Pole> poles;
    const std::string method = sc.params.value("method", std::string("numeric"));
    if (method == "perturbative") {
      const Complex z = cavity::dominant_pole_perturbative(cp);
      poles.push_back({z, 1.0 / (1.0 + cavity::mu_laplace_derivative(cp, z))});
    } else if (method == "numeric") {
      if (cavity::near_resonance(cp))
        poles = cavity::near_resonance_poles(cp);
      else
        poles.push_back(cavity::dominant_pole_numeric(cp));
    } else {
      throw ValidationError("scenario: cavity method must be numeric or "
                            "perturbative");
    }
    double gamma = 0.0;
    for (const auto& p : poles) gamma = std::max(gamma, -p.z.real());
    if (!(gamma > 0.0))
      throw NumericalError("scenario: dominant pole has no decay rate");
    std::vector<Complex> roots, weights;
    for (const auto& p : poles) {
      roots.push_back(p.z / gamma); // grid times are in units of 1/gamma
      weights.push_back(p.residue);
    }
    const std::vector<Complex> u = series::u_on_grid(roots, weights, times);
    for (std::size_t i = 0; i < nt; ++i) {
      const double ua = std::min(std::abs(u[i]), 1.0);
      for (std::size_t c = 0; c < sc.measures.size(); ++c)
        cols[c][i] = pure_measure(sc.measures[c], ua, sc.theta);
    }
    return cols;
  }

  throw ValidationError("scenario: model has no time-series run mode");
}

Table run(const Scenario& sc) {
  std::vector<double> times;
  const auto cols = evaluate(sc, times);
  Table t;
  t.columns.push_back("t");
  for (Measure m : sc.measures) t.columns.push_back(measure_name(m));
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(fmt(times[i]));
    for (const auto& c : cols) row.push_back(fmt(c[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table sweep(const Scenario& sc, int workers) {
  if (!sc.sweep) throw ValidationError("scenario: sweep block missing");
  if (workers < 1) workers = 1;
  const auto& sw = *sc.sweep;
  const int njobs = static_cast<int>(sw.values.size());
  std::vector<std::vector<std::vector<double>>> results(njobs);
  std::vector<double> times;
  std::exception_ptr err;

#pragma omp parallel for schedule(static) num_threads(workers)
  for (int k = 0; k < njobs; ++k) {
    try {
      Scenario job = sc;
      if (sw.parameter == "r")
        job.r = sw.values[k];
      else if (sw.parameter == "theta")
        job.theta = sw.values[k];
      else if (sw.parameter == "phi")
        job.phi = sw.values[k];
      else
        job.params[sw.parameter] = sw.values[k];
      std::vector<double> local_times;
      results[k] = evaluate(job, local_times);
      if (k == 0) {
#pragma omp critical
        times = local_times;
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  if (times.empty())
    times = series::linspace(sc.grid.t_start, sc.grid.t_end, sc.grid.samples);

  Table t;
  t.columns.push_back("t");
  t.columns.push_back("sweep_value");
  for (Measure m : sc.measures) t.columns.push_back(measure_name(m));
  for (std::size_t i = 0; i < times.size(); ++i) {
    for (int k = 0; k < njobs; ++k) {
      std::vector<std::string> row;
      row.push_back(fmt(times[i]));
      row.push_back(fmt(sw.values[k]));
      for (const auto& c : results[k]) row.push_back(fmt(c[i]));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table poles_report(const Scenario& sc) {
  Table t;
  if (sc.model == Model::Multimode || sc.model == Model::Ladder) {
    const multimode::ModeSet ms = build_mode_set(sc.model, sc.params);
    const multimode::PoleSet ps = multimode::poles(ms);
    t.columns = {"re_z", "im_z", "weight_re", "weight_im", "method",
                 "secular_residual"};
    for (std::size_t j = 0; j < ps.roots.size(); ++j)
      t.rows.push_back({fmt(ps.roots[j].real()), fmt(ps.roots[j].imag()),
                        fmt(ps.weights[j].real()), fmt(ps.weights[j].imag()),
                        "spectral",
                        fmt(multimode::secular_residual(ms, ps.secular_roots[j]))});
    try {
      const auto cw = multimode::product_formula_weights(ms, ps);
      for (std::size_t j = 0; j < ps.roots.size(); ++j)
        t.rows.push_back({fmt(ps.roots[j].real()), fmt(ps.roots[j].imag()),
                          fmt(cw[j].real()), fmt(cw[j].imag()), "product",
                          fmt(multimode::secular_residual(ms, ps.secular_roots[j]))});
    } catch (const NumericalError&) {
      // nearly degenerate roots: the product formula is skipped by design
    }
    return t;
  }
  if (sc.model == Model::CavityPoles) {
    const cavity::CavityParams cp = build_cavity(sc.params);
    t.columns = {"re_z", "im_z", "weight_re", "weight_im", "method"};
    std::vector<cavity::Pole> poles;
    if (cavity::near_resonance(cp))
      poles = cavity::near_resonance_poles(cp);
    else
      poles.push_back(cavity::dominant_pole_numeric(cp));
    for (const auto& p : poles)
      t.rows.push_back({fmt(p.z.real()), fmt(p.z.imag()),
                        fmt(p.residue.real()), fmt(p.residue.imag()),
                        "numeric"});
    const Complex zp = cavity::dominant_pole_perturbative(cp);
    const Complex rp = 1.0 / (1.0 + cavity::mu_laplace_derivative(cp, zp));
    t.rows.push_back({fmt(zp.real()), fmt(zp.imag()), fmt(rp.real()),
                      fmt(rp.imag()), "perturbative"});
    return t;
  }
  throw ValidationError("scenario: poles report needs multimode, ladder or "
                        "cavity-poles model");
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

std::string gnuplot_script(const Table& table, const std::string& csv_path) {
  std::string s;
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 't'\n";
  const bool swept =
      table.columns.size() > 1 && table.columns[1] == "sweep_value";
  const std::size_t first = swept ? 2 : 1;
  s += "plot ";
  for (std::size_t c = first; c < table.columns.size(); ++c) {
    if (c > first) s += ", ";
    s += "'" + csv_path + "' using 1:" + std::to_string(c + 1) + " with lines";
  }
  s += "\n";
  return s;
}

} // namespace entangledyn::scenario
