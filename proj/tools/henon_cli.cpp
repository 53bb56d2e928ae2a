// Command-line front end: simulate | certify | horseshoe | sweep | spectrum |
// continue. Every command reads a JSON config (strict: unknown keys are
// rejected), writes a data file, and prints a JSON summary on stdout.
// Exit codes: 0 success, 1 certificate/verification failed, 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "henon/henon.hpp"
#include "henon/report_json.hpp"

using nlohmann::json;

namespace {

struct CliError {
  int code;
  json payload;
};

[[noreturn]] void fail(int code, json payload) { throw CliError{code, std::move(payload)}; }

[[noreturn]] void fail_invalid(const std::string& detail) {
  fail(2, json{{"error", "invalid-input"}, {"detail", detail}});
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_keys(const json& obj, const std::string& prefix,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail_invalid(prefix + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      fail(2, json{{"error", "unknown-key"}, {"key", prefix.empty() ? key : prefix + "." + key}});
  }
}

double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail_invalid(where + "." + key + " is required");
  if (!obj[key].is_number()) fail_invalid(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number()) fail_invalid(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

std::int64_t integer_or(const json& obj, const std::string& where, const std::string& key,
                        std::int64_t dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_integer()) fail_invalid(where + "." + key + " must be an integer");
  return obj[key].get<std::int64_t>();
}

henon::MapParams parse_map(const json& cfg) {
  if (!cfg.contains("map")) fail_invalid("config requires a \"map\" section");
  const json& m = cfg["map"];
  check_keys(m, "map", {"kind", "mu", "coeffs", "b", "a"});
  const std::string kind = m.value("kind", std::string{});
  henon::Nonlinearity f = [&] {
    if (kind == "quadratic") return henon::Nonlinearity::quadratic(require_number(m, "map", "mu"));
    if (kind == "cubic") return henon::Nonlinearity::cubic(require_number(m, "map", "mu"));
    if (kind == "polynomial") {
      if (!m.contains("coeffs") || !m["coeffs"].is_array())
        fail_invalid("map.coeffs (array, low order first) required for polynomial kind");
      std::vector<double> c = m["coeffs"].get<std::vector<double>>();
      return henon::Nonlinearity::polynomial(std::move(c));
    }
    fail_invalid("map.kind must be one of quadratic|cubic|polynomial");
  }();
  const double b = require_number(m, "map", "b");
  std::vector<double> a;
  if (m.contains("a")) {
    if (!m["a"].is_array()) fail_invalid("map.a must be an array");
    a = m["a"].get<std::vector<double>>();
  }
  try {
    return henon::MapParams(std::move(f), b, std::move(a));
  } catch (const std::invalid_argument& e) {
    fail(2, json{{"error", "constraint-violated"}, {"detail", e.what()}});
  }
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct Common {
  henon::MapParams map;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // csv | json
};

Common resolve_common(const json& cfg, const Overrides& ov, const std::string& cmd,
                      const std::string& data_ext) {
  Common c{parse_map(cfg)};
  if (ov.seed)
    c.seed = *ov.seed;
  else if (cfg.contains("seed")) {
    if (!cfg["seed"].is_number_unsigned() && !cfg["seed"].is_number_integer())
      fail_invalid("seed must be an integer");
    c.seed = cfg["seed"].get<std::uint64_t>();
  }
  c.format = ov.format ? *ov.format : cfg.value("format", std::string("csv"));
  if (c.format != "csv" && c.format != "json") fail_invalid("format must be csv or json");
  const std::string ext = data_ext == "table" ? (c.format == "csv" ? "csv" : "json") : data_ext;
  c.out = ov.out ? *ov.out : cfg.value("out", "henon_" + cmd + "." + ext);
  return c;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
};

void write_table(const Table& t, const std::string& path, const std::string& format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail_invalid("cannot open output file: " + path);
  if (format == "csv") {
    for (std::size_t i = 0; i < t.header.size(); ++i)
      os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ",";
        if (row[i].is_string())
          os << row[i].get<std::string>();
        else if (row[i].is_number_integer())
          os << row[i].get<std::int64_t>();
        else
          os << fmt17(row[i].get<double>());
      }
      os << "\n";
    }
  } else {
    json j{{"header", t.header}, {"rows", t.rows}};
    os << j.dump(2) << "\n";
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail_invalid("cannot open output file: " + path);
  os << j.dump(2) << "\n";
}

const std::set<std::string> kTopKeys = {"map",     "seed",      "out",    "format",
                                        "simulate", "certify",  "horseshoe",
                                        "sweep",    "spectrum", "continue"};

json section(const json& cfg, const std::string& name) {
  return cfg.contains(name) ? cfg[name] : json::object();
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const json& cfg, const Overrides& ov) {
  const json s = section(cfg, "simulate");
  check_keys(s, "simulate", {"transient", "points", "x0", "y0"});
  Common c = resolve_common(cfg, ov, "simulate", "table");
  const auto transient = integer_or(s, "simulate", "transient", 1000);
  const auto points = integer_or(s, "simulate", "points", 100000);
  if (transient < 0 || points < 1) fail_invalid("simulate: transient >= 0, points >= 1");

  const henon::MapParams& p = c.map;
  const int n = p.n();
  henon::State st;
  st.x = number_or(s, "simulate", "x0", 0.1);
  st.y.assign(static_cast<std::size_t>(n), 0.0);
  if (s.contains("y0")) {
    if (!s["y0"].is_array() || static_cast<int>(s["y0"].size()) != n)
      fail_invalid("simulate.y0 must be an array of length n");
    st.y = s["y0"].get<std::vector<double>>();
  }

  std::optional<henon::TrappingDomain> dom;
  try {
    if (p.f().kind() == henon::NonlinearityKind::Quadratic)
      dom = henon::quadratic_trapping_domain(p.f().mu(), p.b(), p.a_bound());
    else if (p.f().kind() == henon::NonlinearityKind::Cubic)
      dom = henon::cubic_trapping_domain(p.f().mu(), p.b(), p.a_bound());
  } catch (const std::domain_error&) {
    dom.reset();
  }

  Table table;
  table.header = {"step", "x"};
  for (int i = 1; i <= n; ++i) table.header.push_back("y" + std::to_string(i));
  table.header.push_back("lle");

  bool escaped = false;
  std::int64_t escape_step = -1;
  std::int64_t step_index = 0;
  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < transient && !escaped; ++t) {
    henon::step_in_place(p, st.x, st.y.data(), scratch.data());
    st.y.swap(scratch);
    ++step_index;
    if (henon::is_escaped(st)) {
      escaped = true;
      escape_step = step_index;
    }
  }

  // Benettin tangent iteration for the largest Lyapunov exponent, seeded
  // after the transient with the x-direction.
  double vx = 1.0;
  std::vector<double> vy(static_cast<std::size_t>(n), 0.0), vscratch(static_cast<std::size_t>(n));
  double log_sum = 0.0;
  bool inside_domain = true;
  for (std::int64_t t = 0; t < points && !escaped; ++t) {
    henon::tangent_step_in_place(p, st.x, vx, vy.data(), vscratch.data());
    vy.swap(vscratch);
    henon::step_in_place(p, st.x, st.y.data(), scratch.data());
    st.y.swap(scratch);
    ++step_index;
    double norm2 = vx * vx;
    for (double v : vy) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    log_sum += std::log(norm);
    vx /= norm;
    for (auto& v : vy) v /= norm;

    if (henon::is_escaped(st)) {
      escaped = true;
      escape_step = step_index;
      break;
    }
    std::vector<json> row{step_index, st.x};
    for (double v : st.y) row.push_back(v);
    row.push_back(log_sum / static_cast<double>(t + 1));
    table.rows.push_back(std::move(row));
    if (dom && !dom->contains(st.x, st.y_norm())) inside_domain = false;
  }

  write_table(table, c.out, c.format);
  json summary{{"command", "simulate"},
               {"out", c.out},
               {"points_emitted", table.rows.size()},
               {"escaped", escaped}};
  if (escaped) summary["escape_step"] = escape_step;
  if (dom) {
    summary["certified_domain"] = *dom;
    summary["inside_domain"] = inside_domain;
  }
  if (!table.rows.empty()) summary["lle_final"] = table.rows.back().back();
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- certify

int cmd_certify(const json& cfg, const Overrides& ov) {
  const json s = section(cfg, "certify");
  check_keys(s, "certify", {"samples", "grid_density", "iterations", "interval", "gamma"});
  Common c = resolve_common(cfg, ov, "certify", "json");
  const auto samples = integer_or(s, "certify", "samples", 10000);
  const auto grid_density = integer_or(s, "certify", "grid_density", 100);
  const auto iterations = integer_or(s, "certify", "iterations", 1000);

  const henon::MapParams& p = c.map;
  std::optional<henon::TrappingDomain> dom;
  std::string reason;
  try {
    switch (p.f().kind()) {
      case henon::NonlinearityKind::Quadratic:
        dom = henon::quadratic_trapping_domain(p.f().mu(), p.b(), p.a_bound());
        if (!dom) reason = "closed-form condition fails";
        break;
      case henon::NonlinearityKind::Cubic:
        dom = henon::cubic_trapping_domain(p.f().mu(), p.b(), p.a_bound());
        if (!dom) reason = "closed-form condition fails";
        break;
      case henon::NonlinearityKind::Polynomial: {
        if (!s.contains("interval") || !s["interval"].is_array() || s["interval"].size() != 2)
          fail_invalid("certify.interval = [lo, hi] required for polynomial kind");
        const double lo = s["interval"][0].get<double>();
        const double hi = s["interval"][1].get<double>();
        const double alpha = std::max(std::abs(lo), std::abs(hi));
        const double gamma = s.contains("gamma") ? require_number(s, "certify", "gamma")
                                                 : henon::gamma_bound(p, alpha);
        dom = henon::attractor_from_invariant_interval(p.f(), lo, hi, gamma);
        if (!dom) reason = "interval fails the envelope clearance";
        break;
      }
    }
  } catch (const std::domain_error& e) {
    reason = e.what();
  }

  if (!dom) {
    const json report{{"command", "certify"}, {"certified", false}, {"reason", reason}};
    write_json_file(report, c.out);
    std::cout << report.dump(2) << "\n";
    return 1;
  }

  const auto ball = henon::y_ball_check(p, *dom, static_cast<std::size_t>(samples), c.seed);
  const auto envelope =
      henon::sandwich_check(p, *dom, static_cast<std::size_t>(samples),
                            henon::mix_seed(c.seed, 1));
  const auto oracle = henon::brute_force_trap_oracle(p, *dom, static_cast<int>(grid_density),
                                                     static_cast<int>(iterations));
  const bool pass = ball.pass && envelope.pass && oracle.pass;
  json report{{"command", "certify"}, {"certified", true},    {"domain", *dom},
              {"y_ball_check", ball}, {"envelope_check", envelope},
              {"grid_oracle", oracle}, {"pass", pass}};
  write_json_file(report, c.out);
  std::cout << report.dump(2) << "\n";
  return pass ? 0 : 1;
}

// --------------------------------------------------------------- horseshoe

int cmd_horseshoe(const json& cfg, const Overrides& ov) {
  const json s = section(cfg, "horseshoe");
  check_keys(s, "horseshoe", {"lines", "points_per_line", "gamma", "arc_out"});
  Common c = resolve_common(cfg, ov, "horseshoe", "json");
  const auto lines = integer_or(s, "horseshoe", "lines", 100);
  const auto points = integer_or(s, "horseshoe", "points_per_line", 10000);
  std::optional<double> gamma;
  if (s.contains("gamma")) gamma = require_number(s, "horseshoe", "gamma");

  henon::HorseshoeReport rep;
  try {
    rep = henon::verify_covering(c.map, static_cast<int>(lines), static_cast<int>(points), gamma);
  } catch (const std::domain_error& e) {
    const json report{{"command", "horseshoe"}, {"condition_holds", false}, {"reason", e.what()}};
    write_json_file(report, c.out);
    std::cout << report.dump(2) << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    fail(2, json{{"error", "undersampled"}, {"detail", e.what()}});
  }

  json report(rep);
  report["command"] = "horseshoe";
  write_json_file(report, c.out);

  if (s.contains("arc_out")) {
    const std::string arc_path = s["arc_out"].get<std::string>();
    Table arcs;
    arcs.header = {"line", "offset", "x", "x_image"};
    const double edge = rep.mu - rep.gamma;
    const int m = static_cast<int>(points);
    std::vector<double> offsets;
    if (rep.gamma == 0.0 || lines == 1) {
      offsets.push_back(0.0);
    } else {
      const double cmax = 0.99 * rep.gamma;
      for (int k = 0; k < lines; ++k)
        offsets.push_back(-cmax + 2.0 * cmax * k / (static_cast<int>(lines) - 1));
    }
    for (std::size_t li = 0; li < offsets.size(); ++li) {
      for (int j = 0; j < m; ++j) {
        const double x = -edge + 2.0 * edge * j / (m - 1);
        arcs.rows.push_back({static_cast<std::int64_t>(li), offsets[li], x,
                             c.map.f()(x) + offsets[li]});
      }
    }
    write_table(arcs, arc_path, c.format);
    report["arc_out"] = arc_path;
  }

  std::cout << report.dump(2) << "\n";
  return rep.condition_holds && rep.covering_verified ? 0 : 1;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const json& cfg, const Overrides& ov, int threads) {
  const json s = section(cfg, "sweep");
  check_keys(s, "sweep", {"mu_min", "mu_max", "mu_count", "b_min", "b_max", "b_count",
                          "probe_steps"});
  Common c = resolve_common(cfg, ov, "sweep", "table");
  const double mu_min = require_number(s, "sweep", "mu_min");
  const double mu_max = require_number(s, "sweep", "mu_max");
  const double b_min = number_or(s, "sweep", "b_min", 0.0);
  const double b_max = number_or(s, "sweep", "b_max", 0.0);
  const auto mu_count = integer_or(s, "sweep", "mu_count", 50);
  const auto b_count = integer_or(s, "sweep", "b_count", 50);
  const auto probe_steps = integer_or(s, "sweep", "probe_steps", 1000);
  if (mu_count < 1 || b_count < 1) fail_invalid("sweep: mu_count, b_count >= 1");

  const henon::MapParams& p = c.map;
  const auto kind = p.f().kind();
  const double a_bound = p.a_bound();

  struct Cell {
    std::string label;
    double alpha = 0.0, gamma = 0.0;
  };
  const std::size_t total = static_cast<std::size_t>(mu_count) * static_cast<std::size_t>(b_count);
  std::vector<Cell> cells(total);

  auto classify = [&](std::size_t idx) {
    const std::size_t i = idx / static_cast<std::size_t>(b_count);
    const std::size_t j = idx % static_cast<std::size_t>(b_count);
    const double mu = mu_count == 1 ? mu_min : mu_min + (mu_max - mu_min) * static_cast<double>(i) / (mu_count - 1);
    const double b = b_count == 1 ? b_min : b_min + (b_max - b_min) * static_cast<double>(j) / (b_count - 1);
    Cell cell;
    std::optional<henon::TrappingDomain> dom;
    try {
      if (kind == henon::NonlinearityKind::Quadratic)
        dom = henon::quadratic_trapping_domain(mu, b, a_bound);
      else if (kind == henon::NonlinearityKind::Cubic)
        dom = henon::cubic_trapping_domain(mu, b, a_bound);
    } catch (const std::domain_error&) {
      dom.reset();
    } catch (const std::invalid_argument&) {
      dom.reset();
    }
    if (dom) {
      cell.label = "attractor-certified";
      cell.alpha = dom->alpha_plus;
      cell.gamma = dom->gamma;
    } else {
      bool horseshoe = false;
      if (kind == henon::NonlinearityKind::Quadratic && mu > 0.0 && std::abs(b) < 1.0) {
        try {
          const double g = henon::horseshoe_gamma(mu, b, a_bound);
          horseshoe = henon::horseshoe_condition(mu, g);
          if (horseshoe) {
            cell.label = "horseshoe-certified";
            cell.alpha = mu - g;
            cell.gamma = g;
          }
        } catch (const std::domain_error&) {
        } catch (const std::invalid_argument&) {
        }
      }
      if (!horseshoe) {
        bool escaped = true;
        if (std::abs(b) < 1.0) {
          try {
            const henon::MapParams probe(p.f().kind() == henon::NonlinearityKind::Quadratic
                                             ? henon::Nonlinearity::quadratic(mu)
                                             : (kind == henon::NonlinearityKind::Cubic
                                                    ? henon::Nonlinearity::cubic(mu)
                                                    : p.f()),
                                         b, p.a());
            henon::State st{0.1, std::vector<double>(static_cast<std::size_t>(p.n()), 0.0)};
            escaped = false;
            std::vector<double> scratch(st.y.size());
            for (std::int64_t t = 0; t < probe_steps; ++t) {
              henon::step_in_place(probe, st.x, st.y.data(), scratch.data());
              st.y.swap(scratch);
              if (!(std::abs(st.x) < 1e6)) {
                escaped = true;
                break;
              }
            }
          } catch (const std::invalid_argument&) {
            escaped = true;
          }
        }
        cell.label = escaped ? "escaped" : "none";
      }
    }
    cells[idx] = cell;
  };

  if (threads <= 1) {
    for (std::size_t idx = 0; idx < total; ++idx) classify(idx);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t idx = static_cast<std::size_t>(w); idx < total; idx += static_cast<std::size_t>(threads))
          classify(idx);
      });
    for (auto& th : pool) th.join();
  }

  Table table;
  table.header = {"mu", "b", "label", "alpha", "gamma"};
  std::size_t counts_attractor = 0, counts_horseshoe = 0, counts_none = 0, counts_escaped = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t i = idx / static_cast<std::size_t>(b_count);
    const std::size_t j = idx % static_cast<std::size_t>(b_count);
    const double mu = mu_count == 1 ? mu_min : mu_min + (mu_max - mu_min) * static_cast<double>(i) / (mu_count - 1);
    const double b = b_count == 1 ? b_min : b_min + (b_max - b_min) * static_cast<double>(j) / (b_count - 1);
    const Cell& cell = cells[idx];
    table.rows.push_back({mu, b, cell.label, cell.alpha, cell.gamma});
    if (cell.label == "attractor-certified") ++counts_attractor;
    else if (cell.label == "horseshoe-certified") ++counts_horseshoe;
    else if (cell.label == "none") ++counts_none;
    else ++counts_escaped;
  }
  write_table(table, c.out, c.format);
  const json summary{{"command", "sweep"},
                     {"out", c.out},
                     {"cells", total},
                     {"attractor_certified", counts_attractor},
                     {"horseshoe_certified", counts_horseshoe},
                     {"none", counts_none},
                     {"escaped", counts_escaped}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const json& cfg, const Overrides& ov) {
  const json s = section(cfg, "spectrum");
  check_keys(s, "spectrum", {"x", "orbit"});
  Common c = resolve_common(cfg, ov, "spectrum", "json");
  const henon::MapParams& p = c.map;

  json report{{"command", "spectrum"}};
  int code = 0;
  if (s.contains("x")) {
    const double x = require_number(s, "spectrum", "x");
    const double fxp = p.f().derivative(x);
    const auto closed = henon::char_poly_closed_form(p, fxp);
    const auto det = henon::char_poly_determinant(p, fxp);
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.q.coeffs().size(); ++i) {
      const double ci = closed.q.coeffs()[i];
      const double di = det.q.coeffs()[i];
      worst = std::max(worst, std::abs(ci - di) / std::max(1.0, std::abs(ci)));
    }
    const auto roots = henon::eigenvalues(closed);
    json roots_json = json::array();
    for (const auto& r : roots) roots_json.push_back(henon::complex_to_json(r));
    report["x"] = x;
    report["fx_prime"] = fxp;
    report["closed_form"] = closed;
    report["determinant"] = det;
    report["max_rel_coeff_diff"] = worst;
    report["roots"] = roots_json;
    report["det_jacobian"] = henon::jacobian_determinant(p);
    if (worst > 1e-10) code = 1;
  } else if (s.contains("orbit")) {
    if (!s["orbit"].is_array() || s["orbit"].empty())
      fail_invalid("spectrum.orbit must be a non-empty array of states");
    std::vector<henon::State> orbit;
    for (const auto& row : s["orbit"]) {
      if (!row.is_array() || static_cast<int>(row.size()) != p.n() + 1)
        fail_invalid("spectrum.orbit rows must have length n+1");
      henon::State st;
      st.x = row[0].get<double>();
      for (int k = 0; k < p.n(); ++k) st.y.push_back(row[static_cast<std::size_t>(k + 1)].get<double>());
      orbit.push_back(std::move(st));
    }
    std::vector<std::complex<double>> mult;
    try {
      mult = henon::orbit_multipliers(p, orbit);
    } catch (const std::domain_error& e) {
      fail_invalid(e.what());
    }
    json mj = json::array();
    for (const auto& lam : mult) mj.push_back(henon::complex_to_json(lam));
    report["multipliers"] = mj;
    report["residual"] = henon::cycle_residual(p, orbit);
  } else {
    fail_invalid("spectrum requires either spectrum.x or spectrum.orbit");
  }

  write_json_file(report, c.out);
  std::cout << report.dump(2) << "\n";
  return code;
}

// ---------------------------------------------------------------- continue

int cmd_continue(const json& cfg, const Overrides& ov) {
  const json s = section(cfg, "continue");
  check_keys(s, "continue",
             {"period", "orbit_index", "b_target", "steps", "period_max", "interval"});
  Common c = resolve_common(cfg, ov, "continue", "table");
  const henon::MapParams& p = c.map;
  if (p.b() != 0.0) fail_invalid("continue: map.b must be 0 (continuation starts at b = 0)");

  const int period = static_cast<int>(integer_or(s, "continue", "period", 1));
  const int orbit_index = static_cast<int>(integer_or(s, "continue", "orbit_index", 0));
  const double b_target = require_number(s, "continue", "b_target");
  const int steps = static_cast<int>(integer_or(s, "continue", "steps", 50));
  const int period_max = static_cast<int>(integer_or(s, "continue", "period_max", period));
  double lo = -2.5, hi = 2.5;
  if (s.contains("interval")) {
    if (!s["interval"].is_array() || s["interval"].size() != 2)
      fail_invalid("continue.interval must be [lo, hi]");
    lo = s["interval"][0].get<double>();
    hi = s["interval"][1].get<double>();
  }

  const auto orbits = henon::find_1d_orbits(p.f(), std::max(period, period_max), lo, hi, p.n());
  std::vector<henon::PeriodicOrbit> matching;
  for (const auto& o : orbits)
    if (o.period == period) matching.push_back(o);
  if (orbit_index < 0 || orbit_index >= static_cast<int>(matching.size()))
    fail_invalid("continue.orbit_index out of range: found " +
                 std::to_string(matching.size()) + " orbits of period " + std::to_string(period));
  const henon::PeriodicOrbit& o = matching[static_cast<std::size_t>(orbit_index)];
  if (!henon::structural_stability(o))
    fail_invalid("selected orbit is not structurally stable (|m_x| = " +
                 std::to_string(std::abs(o.m_x)) + ")");

  const auto result = henon::continue_in_b(p, o, b_target, steps);

  Table table;
  table.header = {"b", "period", "residual"};
  for (int i = 0; i < period; ++i) table.header.push_back("x" + std::to_string(i));
  for (int i = 0; i <= p.n(); ++i) table.header.push_back("mod" + std::to_string(i));
  const auto track = henon::multiplier_track(result.history);
  for (std::size_t r = 0; r < result.history.size(); ++r) {
    const auto& orb = result.history[r];
    std::vector<json> row{orb.b_value, orb.period, orb.residual};
    for (const auto& st : orb.points) row.push_back(st.x);
    for (double mod : track[r].second) row.push_back(mod);
    table.rows.push_back(std::move(row));
  }
  write_table(table, c.out, c.format);

  json summary{{"command", "continue"},
               {"out", c.out},
               {"status", henon::to_string(result.status)},
               {"b_reached", result.history.back().b_value},
               {"final_orbit", result.history.back()}};
  if (!result.message.empty()) summary["message"] = result.message;
  std::cout << summary.dump(2) << "\n";
  return result.status == henon::ContinuationStatus::Reached ? 0 : 1;
}

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail_invalid("cannot read config file: " + path);
  json cfg;
  try {
    cfg = json::parse(is);
  } catch (const json::parse_error& e) {
    fail_invalid(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(cfg, "", kTopKeys);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(n+1)-dimensional Henon-like maps: trapping certificates, horseshoe "
               "verification, spectra, and orbit continuation"};
  app.require_subcommand(1);

  struct SubOpts {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    int threads = 1;
  };
  std::map<std::string, SubOpts> opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "iterate the map and emit the attractor cloud"},
      {"certify", "closed-form trapping certificate plus sampling and grid oracles"},
      {"horseshoe", "stretch-across condition and covering verification"},
      {"sweep", "label a (mu, b) parameter grid"},
      {"spectrum", "characteristic polynomial and multipliers"},
      {"continue", "continue a b = 0 periodic orbit in b"}};
  for (const auto& [name, desc] : commands) {
    auto* sc = app.add_subcommand(name, desc);
    auto& o = opts[name];
    sc->add_option("--config", o.config, "JSON config file")->required();
    sc->add_option("--seed", [&o](const std::vector<std::string>& v) {
      o.seed = std::stoull(v.at(0));
      return true;
    }, "override config seed");
    sc->add_option("--out", [&o](const std::vector<std::string>& v) {
      o.out = v.at(0);
      return true;
    }, "override output path");
    sc->add_option("--format", [&o](const std::vector<std::string>& v) {
      if (v.at(0) != "csv" && v.at(0) != "json") return false;
      o.format = v.at(0);
      return true;
    }, "output format: csv or json");
    if (name == "sweep")
      sc->add_option("--threads", o.threads, "worker threads (output is order-independent)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", "invalid-input"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const SubOpts& o = opts[name];
  const Overrides ov{o.seed, o.out, o.format};
  try {
    const json cfg = load_config(o.config);
    if (name == "simulate") return cmd_simulate(cfg, ov);
    if (name == "certify") return cmd_certify(cfg, ov);
    if (name == "horseshoe") return cmd_horseshoe(cfg, ov);
    if (name == "sweep") return cmd_sweep(cfg, ov, o.threads);
    if (name == "spectrum") return cmd_spectrum(cfg, ov);
    if (name == "continue") return cmd_continue(cfg, ov);
    return 2;
  } catch (const CliError& e) {
    std::cerr << e.payload.dump() << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "invalid-input"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
}
