#include "pbessel/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbessel/asymptotics.hpp"
#include "pbessel/fractional.hpp"
#include "pbessel/lattice.hpp"

namespace pbessel::cli {

using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// Runs f(0..n-1) on a pool and returns the results in index order.
template <class T>
std::vector<T> parallel_map(size_t n, int threads, const std::function<T(size_t)>& f) {
  std::vector<T> out(n);
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<size_t>(n, 1))));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) out[i] = f(i);
  };
  if (workers == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<PExponent> exponents(const RunConfig& cfg) {
  std::vector<PExponent> out;
  for (const auto& s : cfg.p_list) {
    try {
      out.push_back(PExponent::parse(s));
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

struct Output {
  std::ostream& stream;
  std::ofstream file;

  static std::ostream& pick(const std::string& path, std::ofstream& f, std::ostream& fallback) {
    if (path.empty() || path == "-") return fallback;
    f.open(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + path + "'");
    return f;
  }
  Output(const std::string& path, std::ostream& fallback) : stream(pick(path, file, fallback)) {}
};

// ---- eval / compare ------------------------------------------------------

struct EvalRow {
  PExponent p = PExponent::from_q(1);
  double omega = 0, phi = 0, r_re = 0, r_im = 0;
  std::complex<double> value;
  double err = 0;
  std::string method;
  bool reliable = true;
  std::string error;
};

const char* kEvalHeader = "p_num,p_den,omega,phi,r_re,r_im,value_re,value_im,err,method";

std::string csv_row(const EvalRow& r) {
  return std::to_string(r.p.p_num()) + "," + std::to_string(r.p.p_den()) + "," + num(r.omega) + "," +
         num(r.phi) + "," + num(r.r_re) + "," + num(r.r_im) + "," + num(r.value.real()) + "," +
         num(r.value.imag()) + "," + num(r.err) + "," + r.method;
}

json json_row(const EvalRow& r) {
  json j{{"p_num", r.p.p_num()}, {"p_den", r.p.p_den()}, {"omega", r.omega},     {"phi", r.phi},
         {"r_re", r.r_re},       {"r_im", r.r_im},       {"value_re", r.value.real()},
         {"value_im", r.value.imag()}, {"err", r.err},   {"method", r.method},   {"reliable", r.reliable}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void write_svg(std::ostream& out, const std::vector<EvalRow>& rows) {
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& r : rows) {
    if (!r.error.empty() || !std::isfinite(r.value.real())) continue;
    const std::string key = "p=" + r.p.to_string() + " omega=" + num(r.omega) + " phi=" + num(r.phi) +
                            " " + r.method;
    series[key].push_back({r.r_re, r.value.real()});
    xmin = std::min(xmin, r.r_re);
    xmax = std::max(xmax, r.r_re);
    ymin = std::min(ymin, r.value.real());
    ymax = std::max(ymax, r.value.real());
  }
  const double W = 800, H = 500, M = 50;
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n";
  if (ymin < 0 && ymax > 0)
    out << "<line x1=\"" << M << "\" y1=\"" << sy(0) << "\" x2=\"" << W - M << "\" y2=\"" << sy(0)
        << "\" stroke=\"#bbb\"/>\n";
  out << "<text x=\"" << M << "\" y=\"" << H - 15 << "\" font-size=\"12\">r " << num(xmin) << " .. "
      << num(xmax) << "</text>\n";
  out << "<text x=\"5\" y=\"" << M - 10 << "\" font-size=\"12\">value " << num(ymin) << " .. "
      << num(ymax) << "</text>\n";
  int i = 0;
  for (const auto& [key, pts] : series) {
    const char* c = colors[i % 6];
    out << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
    for (const auto& [x, y] : pts) out << num(sx(x)) << "," << num(sy(y)) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << W - M - 300 << "\" y=\"" << M + 15 * i << "\" font-size=\"11\" fill=\"" << c
        << "\">" << key << "</text>\n";
    ++i;
  }
  out << "</svg>\n";
}

struct Point {
  PExponent p;
  double omega, phi, r;
};

std::vector<Point> grid(const RunConfig& cfg) {
  std::vector<Point> pts;
  for (const auto& p : exponents(cfg))
    for (double om : cfg.omega_list)
      for (double phi : cfg.phi_list)
        for (double r : cfg.r_values) pts.push_back({p, om, phi, r});
  return pts;
}

EvalRow evaluate_point(const Point& pt, MethodChoice method, double tol, double imag) {
  EvalRow row;
  row.p = pt.p;
  row.omega = pt.omega;
  row.phi = pt.phi;
  row.r_re = pt.r;
  row.r_im = imag;
  row.method = std::string(method_choice_name(method));
  try {
    DistortedAngle phi(pt.p, pt.phi);
    if (imag != 0) {
      auto v = evaluate_complex(pt.p, pt.omega, phi, {pt.r, imag}, method, tol);
      row.value = v.value;
      row.err = v.err_estimate;
      row.method = std::string(method_name(v.method));
      row.reliable = v.reliable;
    } else {
      auto v = evaluate(pt.p, pt.omega, phi, pt.r, method, tol);
      row.value = v.value;
      row.err = v.err_estimate;
      row.method = std::string(method_name(v.method));
      row.reliable = v.reliable;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.reliable = false;
    row.value = {NAN, NAN};
    row.err = INFINITY;
  }
  return row;
}

void emit_eval(const RunConfig& cfg, const std::vector<EvalRow>& rows, std::ostream& out) {
  if (cfg.format == Format::csv) {
    out << kEvalHeader << "\n";
    for (const auto& r : rows) out << csv_row(r) << "\n";
  } else if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(json_row(r));
    out << json{{"rows", arr}}.dump(1) << "\n";
  } else {
    write_svg(out, rows);
  }
}

int report_flags(const std::vector<EvalRow>& rows, std::ostream& err) {
  int bad = 0;
  for (const auto& r : rows) {
    if (r.reliable) continue;
    ++bad;
    err << "flagged: " << csv_row(r);
    if (!r.error.empty()) err << "  (" << r.error << ")";
    err << "\n";
  }
  return bad == 0 ? 0 : 1;
}

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto pts = grid(cfg);
  const double tol = cfg.tol.value_or(1e-10);
  auto rows = parallel_map<EvalRow>(pts.size(), cfg.threads, [&](size_t i) {
    return evaluate_point(pts[i], cfg.method, tol, cfg.imag);
  });
  emit_eval(cfg, rows, out);
  return report_flags(rows, err);
}

int run_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto pts = grid(cfg);
  const double tol = cfg.tol.value_or(1e-8);
  auto groups = parallel_map<std::vector<EvalRow>>(pts.size(), cfg.threads, [&](size_t i) {
    const auto& pt = pts[i];
    std::vector<MethodChoice> methods{MethodChoice::series, MethodChoice::double_integral};
    DistortedAngle phi(pt.p, pt.phi);
    if (phi.on_x_axis() || phi.on_y_axis()) methods.push_back(MethodChoice::axis);
    if (pt.p.q_odd() && pt.r > 0) methods.push_back(MethodChoice::poisson);
    std::vector<EvalRow> rows;
    for (auto m : methods) {
      if (m == MethodChoice::double_integral && pt.omega < 0) continue;
      rows.push_back(evaluate_point(pt, m, 1e-12, 0));
    }
    return rows;
  });
  std::vector<EvalRow> flat;
  int status = 0;
  for (const auto& g : groups) {
    for (size_t a = 0; a < g.size(); ++a)
      for (size_t b = a + 1; b < g.size(); ++b) {
        if (!g[a].error.empty() || !g[b].error.empty()) continue;
        // only certified values are held to agreement
        if (!g[a].reliable || !g[b].reliable) continue;
        const double diff = std::abs(g[a].value - g[b].value);
        if (diff > tol + g[a].err + g[b].err) {
          status = 1;
          err << "disagreement " << num(diff) << " between " << g[a].method << " and " << g[b].method
              << " at " << csv_row(g[a]) << "\n";
        }
      }
    flat.insert(flat.end(), g.begin(), g.end());
  }
  emit_eval(cfg, flat, out);
  return status;
}

// ---- verify --------------------------------------------------------------

struct CheckRow {
  std::string suite;
  PExponent p = PExponent::from_q(1);
  double omega = 0, gamma = 0, phi = 0, r = 0;
  double residual = 0, scale = 1, tol = 0;
  bool pass = false;
  std::string error;
  double relative() const { return residual / scale; }
};

double default_tol(const std::string& suite) {
  if (suite == "ek-derivative") return 1e-6;
  if (suite == "ek-integral" || suite == "order-lower") return 1e-7;
  if (suite == "ode") return 1e-4;
  if (suite == "termwise") return 1e-8;
  if (suite == "p2-reduction") return 1e-10;
  throw UsageError("unknown suite '" + suite + "'");
}

const std::vector<std::string> kSuites{"ek-derivative", "ek-integral", "order-lower",
                                       "ode",           "termwise",    "p2-reduction"};

std::vector<CheckRow> plan_suite(const RunConfig& cfg, const std::string& suite) {
  std::vector<CheckRow> plan;
  std::vector<double> gammas = cfg.gamma_list;
  if (gammas.empty())
    gammas = suite == "ek-integral" ? std::vector<double>{0.5, 1, 1.5} : std::vector<double>{0.25, 0.5, 0.75};
  const bool uses_gamma = suite == "ek-derivative" || suite == "ek-integral" || suite == "termwise";
  if (!uses_gamma) gammas = {0};
  std::vector<PExponent> ps = exponents(cfg);
  if (suite == "p2-reduction") ps = {PExponent::from_q(1)};
  const double tol = cfg.tol.value_or(default_tol(suite));
  for (const auto& p : ps)
    for (double om : cfg.omega_list)
      for (double g : gammas)
        for (double phi : cfg.phi_list)
          for (double r : cfg.r_values) {
            CheckRow row;
            row.suite = suite;
            row.p = p;
            row.omega = om;
            row.gamma = g;
            row.phi = phi;
            row.r = r;
            row.tol = tol;
            plan.push_back(row);
          }
  return plan;
}

CheckRow run_check(CheckRow row) {
  try {
    DistortedAngle phi(row.p, row.phi);
    Residual res;
    if (row.suite == "ek-derivative") {
      res = verify_ek_derivative_identity(row.p, row.omega, row.gamma, phi, row.r);
    } else if (row.suite == "ek-integral") {
      res = verify_ek_integral_identity(row.p, row.omega, row.gamma, phi, row.r);
    } else if (row.suite == "order-lower") {
      res = verify_order_lower(row.p, row.omega, phi, row.r);
    } else if (row.suite == "ode") {
      res = verify_fractional_ode(row.p, row.omega, phi, row.r);
    } else if (row.suite == "termwise") {
      const double pp = row.p.p();
      const double eta = (1 - 1 / pp) * row.omega + (2 - row.gamma) / pp - 1;
      SeriesEvaluator ev(phi, row.omega + row.gamma);
      FractionalConfig fc;
      fc.f_exponent_at_zero = row.omega + row.gamma;
      auto a = ek_derivative([&](double x) { return ev.eval(x).value; }, {row.gamma, eta, row.p}, row.r, fc);
      auto b = ek_derivative_termwise(phi, row.omega + row.gamma, {row.gamma, eta, row.p}, row.r);
      res = {std::abs(a.value - b.value), std::max(1.0, std::abs(b.value)), a.reliable && b.reliable,
             a.value, b.value};
    } else {
      auto v = pbessel_series(row.p, row.omega, phi, row.r);
      const double j = classical_bessel_j(row.omega, row.r);
      res = {std::abs(v.value - j), 1.0, v.reliable, v.value, j};
    }
    row.residual = res.residual;
    row.scale = res.scale;
    row.pass = std::isfinite(res.relative()) && res.relative() <= row.tol;
  } catch (const std::exception& e) {
    row.error = e.what();
    row.pass = false;
  }
  return row;
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<std::string> suites;
  if (cfg.suite == "all")
    suites = kSuites;
  else
    suites = {cfg.suite};
  std::vector<CheckRow> plan;
  for (const auto& s : suites) {
    auto part = plan_suite(cfg, s);
    plan.insert(plan.end(), part.begin(), part.end());
  }
  auto rows = parallel_map<CheckRow>(plan.size(), cfg.threads, [&](size_t i) { return run_check(plan[i]); });
  json summary = json::object();
  int failed_total = 0;
  for (const auto& s : suites) {
    int n = 0, failed = 0;
    double worst = 0;
    for (const auto& r : rows)
      if (r.suite == s) {
        ++n;
        if (!r.pass) ++failed;
        worst = std::max(worst, r.relative());
      }
    summary[s] = {{"checks", n}, {"failed", failed}, {"worst_relative", worst}, {"pass", failed == 0}};
    failed_total += failed;
  }
  summary["pass"] = failed_total == 0;
  if (cfg.format == Format::csv) {
    out << "suite,p_num,p_den,omega,gamma,phi,r,residual,scale,relative,tol,pass\n";
    for (const auto& r : rows)
      out << r.suite << "," << r.p.p_num() << "," << r.p.p_den() << "," << num(r.omega) << ","
          << num(r.gamma) << "," << num(r.phi) << "," << num(r.r) << "," << num(r.residual) << ","
          << num(r.scale) << "," << num(r.relative()) << "," << num(r.tol) << ","
          << (r.pass ? "pass" : "FAIL") << "\n";
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      json j{{"suite", r.suite}, {"p_num", r.p.p_num()}, {"p_den", r.p.p_den()}, {"omega", r.omega},
             {"gamma", r.gamma}, {"phi", r.phi},         {"r", r.r},              {"residual", r.residual},
             {"scale", r.scale}, {"relative", r.relative()}, {"tol", r.tol},     {"pass", r.pass}};
      if (!r.error.empty()) j["error"] = r.error;
      arr.push_back(j);
    }
    out << json{{"rows", arr}, {"summary", summary}}.dump(1) << "\n";
  }
  err << summary.dump() << "\n";
  for (const auto& r : rows)
    if (!r.error.empty()) err << "error in " << r.suite << " at r=" << num(r.r) << ": " << r.error << "\n";
  return failed_total == 0 ? 0 : 1;
}

// ---- asy -----------------------------------------------------------------

int run_asy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.r_values.size() < 2) throw UsageError("asy needs an r window start:stop");
  const double r0 = cfg.r_values.front();
  const double r1 = cfg.r_values.back();
  const double tol = cfg.tol.value_or(1e-8);
  const FitMode mode = cfg.fit == "rms" ? FitMode::rms_bin : FitMode::envelope;
  struct Job {
    PExponent p;
    double omega, phi;
  };
  std::vector<Job> jobs;
  for (const auto& p : exponents(cfg))
    for (double om : cfg.omega_list)
      for (double phi : cfg.phi_list) jobs.push_back({p, om, phi});
  struct Fit {
    DecayFit fit;
    bool ok = true;
    std::string error;
  };
  std::vector<Fit> fits;
  int status = 0;
  for (const auto& job : jobs) {
    Fit f;
    try {
      DistortedAngle phi(job.p, job.phi);
      const double step = std::log(r1 / r0) / (cfg.samples - 1);
      auto values = parallel_map<double>(static_cast<size_t>(cfg.samples), cfg.threads, [&](size_t i) {
        const double r = i + 1 == static_cast<size_t>(cfg.samples) ? r1 : r0 * std::exp(i * step);
        auto v = evaluate(job.p, job.omega, phi, r, cfg.method, tol);
        return v.value;
      });
      std::vector<Sample> samples;
      for (int i = 0; i < cfg.samples; ++i)
        samples.push_back({i + 1 == cfg.samples ? r1 : r0 * std::exp(i * step), values[static_cast<size_t>(i)]});
      f.fit = fit_decay_slope(samples, mode);
      if (cfg.expect_slope) f.ok = std::abs(f.fit.slope - *cfg.expect_slope) <= cfg.slope_tol;
    } catch (const std::exception& e) {
      f.ok = false;
      f.error = e.what();
    }
    if (!f.ok) status = 1;
    fits.push_back(f);
  }
  if (cfg.format == Format::csv) {
    out << "p_num,p_den,omega,phi,r_min,r_max,n_samples,bins,slope,intercept,residual_rms,pass\n";
    for (size_t i = 0; i < jobs.size(); ++i) {
      const auto& j = jobs[i];
      const auto& f = fits[i].fit;
      out << j.p.p_num() << "," << j.p.p_den() << "," << num(j.omega) << "," << num(j.phi) << ","
          << num(f.r_window.first) << "," << num(f.r_window.second) << "," << f.n_samples << ","
          << f.bins_used << "," << num(f.slope) << "," << num(f.intercept) << "," << num(f.residual_rms)
          << "," << (fits[i].ok ? "pass" : "FAIL") << "\n";
    }
  } else if (cfg.format == Format::json) {
    json arr = json::array();
    for (size_t i = 0; i < jobs.size(); ++i) {
      const auto& f = fits[i].fit;
      json j{{"p_num", jobs[i].p.p_num()}, {"p_den", jobs[i].p.p_den()}, {"omega", jobs[i].omega},
             {"phi", jobs[i].phi},         {"r_min", f.r_window.first}, {"r_max", f.r_window.second},
             {"n_samples", f.n_samples},   {"bins", f.bins_used},       {"slope", f.slope},
             {"intercept", f.intercept},   {"residual_rms", f.residual_rms}, {"pass", fits[i].ok}};
      if (!fits[i].error.empty()) j["error"] = fits[i].error;
      arr.push_back(j);
    }
    out << json{{"fits", arr}}.dump(1) << "\n";
  } else {
    throw UsageError("asy supports csv and json output");
  }
  for (const auto& f : fits)
    if (!f.error.empty()) err << "asy: " << f.error << "\n";
  return status;
}

// ---- lattice / hardy -----------------------------------------------------

int run_lattice(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<LatticeReport> reps;
  int status = 0;
  for (const auto& p : exponents(cfg))
    for (double r : cfg.r_values) {
      try {
        reps.push_back(count_lattice_points(p, r));
      } catch (const std::exception& e) {
        err << "lattice p=" << p.to_string() << " r=" << num(r) << ": " << e.what() << "\n";
        status = 1;
      }
    }
  if (cfg.format == Format::csv) {
    out << "p_num,p_den,r,count,area,discrepancy,boundary_points\n";
    for (const auto& rep : reps)
      out << rep.p.p_num() << "," << rep.p.p_den() << "," << num(rep.r) << "," << rep.count << ","
          << num(rep.area_term) << "," << num(rep.discrepancy) << "," << rep.boundary_points.size() << "\n";
  } else if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& rep : reps) {
      json pts = json::array();
      for (const auto& b : rep.boundary_points) pts.push_back({b.n1, b.n2});
      arr.push_back({{"p_num", rep.p.p_num()}, {"p_den", rep.p.p_den()}, {"r", rep.r},
                     {"count", rep.count},     {"area", rep.area_term},  {"discrepancy", rep.discrepancy},
                     {"boundary_points", pts}});
    }
    out << json{{"reports", arr}}.dump(1) << "\n";
  } else {
    throw UsageError("lattice supports csv and json output");
  }
  return status;
}

int run_hardy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  struct Row {
    PExponent p;
    double r;
    double truncation;
    double value;
    double counted;
    std::int64_t terms;
    std::string route;
  };
  std::vector<Row> rows;
  int status = 0;
  for (const auto& p : exponents(cfg))
    for (double r : cfg.r_values) {
      try {
        const double counted = count_lattice_points(p, r).discrepancy;
        if (p.q() == 1) {
          rows.push_back({p, r, static_cast<double>(cfg.K), hardy_partial_sum_p2(r, cfg.K), counted,
                          cfg.K, "classical"});
        } else {
          LatticeConfig lc;
          if (cfg.tol) lc.tol = *cfg.tol;
          auto h = hardy_partial_sum_general(p, r, cfg.S, lc);
          rows.push_back({p, r, cfg.S, h.value, counted, h.lattice_points, "grouped"});
          if (!h.reliable) {
            err << "hardy p=" << p.to_string() << " r=" << num(r) << ": some terms are flagged\n";
            status = 1;
          }
        }
      } catch (const std::exception& e) {
        err << "hardy p=" << p.to_string() << " r=" << num(r) << ": " << e.what() << "\n";
        status = 1;
      }
    }
  if (cfg.format == Format::csv) {
    out << "p_num,p_den,r,truncation,terms,value,discrepancy,deviation,route\n";
    for (const auto& h : rows)
      out << h.p.p_num() << "," << h.p.p_den() << "," << num(h.r) << "," << num(h.truncation) << ","
          << h.terms << "," << num(h.value) << "," << num(h.counted) << "," << num(h.value - h.counted)
          << "," << h.route << "\n";
  } else if (cfg.format == Format::json) {
    json arr = json::array();
    for (const auto& h : rows)
      arr.push_back({{"p_num", h.p.p_num()}, {"p_den", h.p.p_den()}, {"r", h.r},
                     {"truncation", h.truncation}, {"terms", h.terms}, {"value", h.value},
                     {"discrepancy", h.counted}, {"deviation", h.value - h.counted}, {"route", h.route}});
    out << json{{"sums", arr}}.dump(1) << "\n";
  } else {
    throw UsageError("hardy supports csv and json output");
  }
  return status;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::eval: return "eval";
    case Command::compare: return "compare";
    case Command::verify: return "verify";
    case Command::asy: return "asy";
    case Command::lattice: return "lattice";
    case Command::hardy: return "hardy";
  }
  return "eval";
}

}  // namespace

std::vector<double> expand_range(const RRange& r) {
  if (!(r.step > 0)) throw UsageError("range step must be positive");
  if (!(r.stop >= r.start)) throw UsageError("range stop must be >= start");
  const auto n = static_cast<long long>(std::floor((r.stop - r.start) / r.step + 1e-9)) + 1;
  if (n > 10'000'000) throw UsageError("range has too many points");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) out.push_back(r.start + static_cast<double>(i) * r.step);
  return out;
}

std::vector<double> parse_r_spec(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError("range must be start:stop:step");
    return expand_range({to_double(parts[0]), to_double(parts[1]), to_double(parts[2])});
  }
  std::vector<double> out;
  for (const auto& s : split(spec, ',')) out.push_back(to_double(s));
  if (out.empty()) throw UsageError("empty r specification");
  return out;
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::eval, Command::compare, Command::verify, Command::asy, Command::lattice,
                 Command::hardy})
    if (name == command_name(c)) return c;
  throw UsageError("unknown command '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "svg") return Format::svg;
  throw UsageError("unknown format '" + name + "'");
}

void load_config_json(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  json j;
  try {
    in >> j;
    if (j.contains("command")) cfg.command = parse_command(j["command"].get<std::string>());
    if (j.contains("p_list"))
      for (const auto& v : j["p_list"]) cfg.p_list.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    if (j.contains("q_list"))
      for (const auto& v : j["q_list"]) cfg.p_list.push_back(PExponent::from_q(v.get<int>()).to_string());
    if (j.contains("omega_list")) cfg.omega_list = j["omega_list"].get<std::vector<double>>();
    if (j.contains("phi_list")) cfg.phi_list = j["phi_list"].get<std::vector<double>>();
    if (j.contains("gamma_list")) cfg.gamma_list = j["gamma_list"].get<std::vector<double>>();
    if (j.contains("r_range")) {
      const auto& r = j["r_range"];
      RRange rr;
      if (r.is_array()) {
        if (r.size() != 3) throw UsageError("r_range must have three entries");
        rr = {r[0].get<double>(), r[1].get<double>(), r[2].get<double>()};
      } else {
        rr = {r.at("start").get<double>(), r.at("stop").get<double>(), r.at("step").get<double>()};
      }
      cfg.r_range = rr;
      cfg.r_values = expand_range(rr);
    }
    if (j.contains("r_list")) cfg.r_values = j["r_list"].get<std::vector<double>>();
    if (j.contains("method")) cfg.method = parse_method_choice(j["method"].get<std::string>());
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("output_path")) cfg.output_path = j["output_path"].get<std::string>();
    if (j.contains("format")) cfg.format = parse_format(j["format"].get<std::string>());
    if (j.contains("imag")) cfg.imag = j["imag"].get<double>();
    if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("fit")) cfg.fit = j["fit"].get<std::string>();
    if (j.contains("expect_slope")) cfg.expect_slope = j["expect_slope"].get<double>();
    if (j.contains("slope_tol")) cfg.slope_tol = j["slope_tol"].get<double>();
    if (j.contains("K")) cfg.K = j["K"].get<long long>();
    if (j.contains("S")) cfg.S = j["S"].get<double>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  } catch (const DomainError& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
}

void validate(const RunConfig& cfg) {
  const bool needs_grid = cfg.command == Command::eval || cfg.command == Command::compare ||
                          cfg.command == Command::asy;
  if (cfg.p_list.empty()) throw UsageError("no exponent given (--p or --q)");
  if (cfg.r_values.empty()) throw UsageError("no radius given (--r)");
  if (needs_grid && (cfg.omega_list.empty() || cfg.phi_list.empty()))
    throw UsageError("--omega and --phi are required");
  if (cfg.tol && !(*cfg.tol > 0)) throw UsageError("--tol must be positive");
  for (double r : cfg.r_values)
    if (!(r >= 0) || !std::isfinite(r)) throw UsageError("radii must be finite and >= 0");
  if (cfg.method == MethodChoice::poisson)
    for (const auto& s : cfg.p_list)
      if (!PExponent::parse(s).q_odd()) throw UsageError("method poisson needs 2/p odd for every p");
  if (cfg.format == Format::svg && cfg.command != Command::eval && cfg.command != Command::compare)
    throw UsageError("svg output is available for eval and compare");
  if (cfg.command == Command::asy && cfg.samples < 20) throw UsageError("--samples must be >= 20");
  if (cfg.command == Command::asy && cfg.fit != "envelope" && cfg.fit != "rms")
    throw UsageError("--fit must be envelope or rms");
  if (cfg.command == Command::hardy && cfg.K < 0) throw UsageError("--K must be >= 0");
  if (cfg.command == Command::hardy && !(cfg.S >= 1)) throw UsageError("--S must be >= 1");
  if (cfg.command == Command::verify && cfg.suite != "all" &&
      std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end())
    throw UsageError("unknown suite '" + cfg.suite + "'");
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"p-Bessel functions: evaluation, identity checks and lattice sums"};
  app.require_subcommand(1);

  struct Flags {
    std::string config, p, q, omega, phi, r, method, output, format, suite, gamma, fit;
    double tol = 0, imag = 0, expect = 0, slope_tol = 0.05, S = 100;
    long long K = 10000;
    int samples = 400, threads = 0;
  } f;
  std::map<std::string, CLI::Option*> opts;
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (auto c : {Command::eval, Command::compare, Command::verify, Command::asy, Command::lattice,
                 Command::hardy}) {
    static const std::map<Command, std::string> blurb = {
        {Command::eval, "evaluate over a grid of p, omega, phi, r"},
        {Command::compare, "evaluate every applicable route and report spreads"},
        {Command::verify, "residuals of the operator identities and reductions"},
        {Command::asy, "fit the decay slope over a radius window"},
        {Command::lattice, "lattice counts, area term and discrepancy"},
        {Command::hardy, "Hardy-type partial sums against the counted discrepancy"}};
    auto* sub = app.add_subcommand(command_name(c), blurb.at(c));
    subs.push_back({c, sub});
    auto add = [&](const std::string& name, auto& target, const std::string& help) {
      opts[std::string(command_name(c)) + name] = sub->add_option(name, target, help);
    };
    add("--config", f.config, "JSON file with RunConfig fields");
    add("--p", f.p, "exponents as rationals, comma separated (2/3,1/2)");
    add("--q", f.q, "exponents through q = 2/p, comma separated");
    add("--r", f.r, "radii: start:stop:step or a,b,c");
    add("--tol", f.tol, "tolerance");
    add("--output,-o", f.output, "output file (default stdout)");
    add("--format", f.format, "csv, json or svg");
    add("--threads", f.threads, "worker threads (0: all cores)");
    if (c != Command::lattice && c != Command::hardy) {
      add("--omega", f.omega, "orders, comma separated");
      add("--phi", f.phi, "distorted angles in radians, comma separated");
    }
    if (c == Command::eval || c == Command::asy) add("--method", f.method, "auto, series, double-integral, poisson, axis");
    if (c == Command::eval) add("--imag", f.imag, "imaginary part of the argument");
    if (c == Command::verify) {
      add("--suite", f.suite, "ek-derivative, ek-integral, order-lower, ode, termwise, p2-reduction, all");
      add("--gamma", f.gamma, "operator orders, comma separated");
    }
    if (c == Command::asy) {
      add("--samples", f.samples, "log-spaced samples over the window");
      add("--fit", f.fit, "envelope or rms");
      add("--expect-slope", f.expect, "fail unless the fitted slope is within --slope-tol");
      add("--slope-tol", f.slope_tol, "tolerance on the slope");
    }
    if (c == Command::hardy) {
      add("--K", f.K, "terms of the classical sum (p = 2)");
      add("--S", f.S, "level cut-off of the grouped sum");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    throw HelpRequested(os.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  std::string cmd;
  for (const auto& [c, sub] : subs)
    if (sub->parsed()) {
      cfg.command = c;
      cmd = command_name(c);
    }
  auto given = [&](const std::string& name) {
    auto it = opts.find(cmd + name);
    return it != opts.end() && it->second->count() > 0;
  };
  if (given("--config")) load_config_json(f.config, cfg);
  cfg.command = parse_command(cmd);
  if (given("--p") || given("--q")) cfg.p_list.clear();
  if (given("--p")) cfg.p_list = split(f.p, ',');
  if (given("--q"))
    for (const auto& s : split(f.q, ',')) {
      const double v = to_double(s);
      if (v != std::floor(v) || v < 1) throw UsageError("--q takes positive integers");
      cfg.p_list.push_back(PExponent::from_q(static_cast<int>(v)).to_string());
    }
  auto list = [&](const std::string& s) {
    std::vector<double> out;
    for (const auto& t : split(s, ',')) out.push_back(to_double(t));
    return out;
  };
  if (given("--omega")) cfg.omega_list = list(f.omega);
  if (given("--phi")) cfg.phi_list = list(f.phi);
  if (given("--gamma")) cfg.gamma_list = list(f.gamma);
  if (given("--r")) cfg.r_values = parse_r_spec(f.r);
  if (given("--tol")) cfg.tol = f.tol;
  if (given("--output")) cfg.output_path = f.output;
  if (given("--format")) cfg.format = parse_format(f.format);
  if (given("--threads")) cfg.threads = f.threads;
  if (given("--method")) {
    try {
      cfg.method = parse_method_choice(f.method);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (given("--imag")) cfg.imag = f.imag;
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--samples")) cfg.samples = f.samples;
  if (given("--fit")) cfg.fit = f.fit;
  if (given("--expect-slope")) cfg.expect_slope = f.expect;
  if (given("--slope-tol")) cfg.slope_tol = f.slope_tol;
  if (given("--K")) cfg.K = f.K;
  if (given("--S")) cfg.S = f.S;

  if (cfg.command == Command::verify) {
    if (cfg.p_list.empty()) cfg.p_list = {"2", "1", "2/3"};
    if (cfg.omega_list.empty()) cfg.omega_list = {0, 1};
    if (cfg.phi_list.empty()) cfg.phi_list = {M_PI / 4};
    if (cfg.r_values.empty()) cfg.r_values = {1, 3, 7};
  }
  try {
    validate(cfg);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Output o(cfg.output_path, out);
  switch (cfg.command) {
    case Command::eval: return run_eval(cfg, o.stream, err);
    case Command::compare: return run_compare(cfg, o.stream, err);
    case Command::verify: return run_verify(cfg, o.stream, err);
    case Command::asy: return run_asy(cfg, o.stream, err);
    case Command::lattice: return run_lattice(cfg, o.stream, err);
    case Command::hardy: return run_hardy(cfg, o.stream, err);
  }
  return 2;
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    return run(cfg, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pbessel::cli
