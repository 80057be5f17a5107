#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "hproj/hproj.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace hproj::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string format = "text";
  std::string out_path;
  unsigned threads = 1;
  bool exact = false;
  std::string plot;
};

struct Context {
  std::string subcommand;
  json parameters = json::object();
  json truncation = json::object();
  std::function<void(std::ostream&)> emit;
  std::function<void(const std::string&)> plot;  // writes an SVG next to --out
};

void add_common(CLI::App* sub, Common& c, bool plot) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  sub->add_option("--out", c.out_path, "Write output to PATH (a manifest is written to PATH.manifest.json)");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  sub->add_flag("--exact", c.exact, "Print exact rationals");
  if (plot) sub->add_option("--plot", c.plot, "Also emit a plot next to --out")->check(CLI::IsMember({"svg"}));
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string rational_text(const Rational& r, bool exact) {
  if (exact) return std::to_string(r.num()) + "/" + std::to_string(r.den());
  if (r.is_integer()) return std::to_string(r.num());
  return num(r.to_double());
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--pivots", "expected a comma separated integer list");
    }
  }
  return out;
}

void emit_scalar(std::ostream& o, const Common& c, const std::string& key, std::int64_t arg, const std::string& name,
                 const std::string& text_value, const json& jvalue) {
  if (c.format == "json") {
    json j;
    j[key] = arg;
    j[name] = jvalue;
    o << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    o << key << ',' << name << '\n' << arg << ',' << text_value << '\n';
  } else {
    o << text_value << '\n';
  }
}

void emit_series(std::ostream& o, const Common& c, const IntSeries& s) {
  if (c.format == "json") {
    json arr = json::array();
    for (std::size_t n = 0; n <= s.precision(); ++n) arr.push_back(s[n].get_str());
    json j;
    j["precision"] = s.precision();
    j["coefficients"] = arr;
    o << j.dump(2) << '\n';
  } else {
    write_series_csv(o, s);
  }
}

const char* kRChiHeader = "h,constant,harmonic,holomorphic,sesquiharmonic,total,uncertainty";

void emit_breakdown(std::ostream& o, const Common& c, const std::vector<RChiBreakdown>& rows) {
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"h", r.h},
                     {"constant", r.constant},
                     {"harmonic", r.harmonic},
                     {"holomorphic", r.holomorphic},
                     {"sesquiharmonic", r.sesquiharmonic},
                     {"total", r.total},
                     {"uncertainty", r.uncertainty}});
    }
    o << arr.dump(2) << '\n';
    return;
  }
  o << kRChiHeader << '\n';
  for (const auto& r : rows) {
    o << r.h << ',' << num(r.constant) << ',' << num(r.harmonic) << ',' << num(r.holomorphic) << ','
      << num(r.sesquiharmonic) << ',' << num(r.total) << ',' << num(r.uncertainty) << '\n';
  }
}

json config_json(const ProjectionConfig& cfg) {
  return {{"M", cfg.M},
          {"acceleration", to_string(cfg.acceleration)},
          {"constant_log_variant", to_string(cfg.constant_log_variant)},
          {"harmonic_normalization", to_string(cfg.harmonic)}};
}

std::vector<std::int64_t> h_range(std::int64_t h, std::int64_t hmax) {
  if (h > 0) return {h};
  if (hmax < 1) throw CLI::ValidationError("--h/--hmax", "give --h or --hmax");
  std::vector<std::int64_t> hs(static_cast<std::size_t>(hmax));
  std::iota(hs.begin(), hs.end(), 1);
  return hs;
}

void write_manifest(const std::string& path, const Context& ctx, double seconds) {
  json j;
  j["subcommand"] = ctx.subcommand;
  j["parameters"] = ctx.parameters;
  j["library_version"] = kVersion;
  j["truncation"] = ctx.truncation;
  j["wall_time_seconds"] = seconds;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hurwitz class numbers, holomorphic projection and shifted convolution sums", "hproj"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  Context ctx;

  std::uint64_t n_arg = 0;
  std::int64_t d_arg = 0, h_arg = 0, hmax_arg = 0, terms = 10000, mmax = 0;
  std::string backend = "auto", character = "kronecker:-4", eta_spec, form, accel = "pairing", variant = "log_h",
              normalization = "corrected", pivots = "1,2,5", target = "rchi", scale = "square";
  double s_arg = 2.0, tol = 1e-2;
  std::size_t window = 0;

  auto* hurwitz_cmd = app.add_subcommand("hurwitz", "Hurwitz class number H(n)");
  hurwitz_cmd->add_option("--n", n_arg, "n >= 0")->required();
  hurwitz_cmd->add_option("--backend", backend)->check(CLI::IsMember({"auto", "direct", "fast"}));
  add_common(hurwitz_cmd, common, false);
  hurwitz_cmd->callback([&] {
    Rational v = backend == "direct" ? hurwitz_direct(n_arg) : backend == "fast" ? hurwitz_fast(n_arg) : hurwitz(n_arg);
    ctx.parameters = {{"n", n_arg}, {"backend", backend}};
    ctx.emit = [&, v](std::ostream& o) {
      emit_scalar(o, common, "n", static_cast<std::int64_t>(n_arg), "H", rational_text(v, common.exact),
                  json{{"num", v.num()}, {"den", v.den()}, {"value", v.to_double()}});
    };
  });

  auto* classno_cmd = app.add_subcommand("classno", "Class number h(D) of a negative fundamental discriminant");
  classno_cmd->add_option("--d", d_arg, "D < 0 fundamental")->required();
  add_common(classno_cmd, common, false);
  classno_cmd->callback([&] {
    auto v = class_number_fundamental(d_arg);
    ctx.parameters = {{"d", d_arg}};
    ctx.emit = [&, v](std::ostream& o) { emit_scalar(o, common, "d", d_arg, "h", std::to_string(v), v); };
  });

  auto* reg_cmd = app.add_subcommand("regulator", "Regulator R(d) of a positive discriminant");
  reg_cmd->add_option("--d", d_arg)->required();
  add_common(reg_cmd, common, false);
  reg_cmd->callback([&] {
    double v = regulator(d_arg);
    json extra = v;
    std::string text = num(v);
    if (common.exact && !sqrt_if_square(static_cast<std::uint64_t>(d_arg))) {
      auto p = pell_fundamental(d_arg);
      text += " (t=" + p.t.get_str() + ", u=" + p.u.get_str() + ")";
      extra = {{"value", v}, {"t", p.t.get_str()}, {"u", p.u.get_str()}};
    }
    ctx.parameters = {{"d", d_arg}};
    ctx.emit = [&, text, extra](std::ostream& o) { emit_scalar(o, common, "d", d_arg, "R", text, extra); };
  });

  auto* hplus_cmd = app.add_subcommand("hplus", "Narrow class number h+(d)");
  hplus_cmd->add_option("--d", d_arg)->required();
  add_common(hplus_cmd, common, false);
  hplus_cmd->callback([&] {
    auto v = hplus(d_arg);
    ctx.parameters = {{"d", d_arg}};
    ctx.emit = [&, v](std::ostream& o) { emit_scalar(o, common, "d", d_arg, "hplus", std::to_string(v), v); };
  });

  auto* hstar_cmd = app.add_subcommand("hstar", "General Hurwitz function h*(d)");
  hstar_cmd->add_option("--d", d_arg)->required();
  add_common(hstar_cmd, common, false);
  hstar_cmd->callback([&] {
    double v = hstar(d_arg);
    ctx.parameters = {{"d", d_arg}};
    ctx.emit = [&, v](std::ostream& o) { emit_scalar(o, common, "d", d_arg, "hstar", num(v), v); };
  });

  auto* theta_cmd = app.add_subcommand("theta", "Theta series of a character");
  theta_cmd->add_option("--char", character)->required();
  theta_cmd->add_option("--n", n_arg, "Highest power of q")->required();
  add_common(theta_cmd, common, false);
  theta_cmd->callback([&] {
    auto chi = DirichletCharacter::parse(character);
    auto s = theta_series(chi, n_arg);
    ctx.parameters = {{"char", chi.label()}, {"n", n_arg}};
    ctx.emit = [&, s](std::ostream& o) { emit_series(o, common, s); };
  });

  auto* eta_cmd = app.add_subcommand("eta", "Eta quotient q-expansion");
  eta_cmd->add_option("--spec", eta_spec, "t:r pairs, e.g. 8:8,4:-2,16:-2");
  eta_cmd->add_option("--form", form, "Basis element")->check(CLI::IsMember({"f1", "f2", "f3", "delta"}));
  eta_cmd->add_option("--n", n_arg, "Highest power of q")->required();
  add_common(eta_cmd, common, false);
  eta_cmd->callback([&] {
    if (eta_spec.empty() == form.empty()) throw CLI::ValidationError("eta", "give exactly one of --spec or --form");
    IntSeries s;
    if (!form.empty()) {
      if (form == "delta") {
        s = eta_quotient(EtaQuotientSpec({{1, 24}}), n_arg);
      } else {
        auto b = basis_s2_64(std::max<std::uint64_t>(n_arg, 5));
        s = (form == "f1" ? b.f1 : form == "f2" ? b.f2 : b.f3).truncated(n_arg);
      }
    } else {
      s = eta_quotient(EtaQuotientSpec::parse(eta_spec), n_arg);
    }
    ctx.parameters = {{"spec", eta_spec}, {"form", form}, {"n", n_arg}};
    ctx.emit = [&, s](std::ostream& o) { emit_series(o, common, s); };
  });

  ProjectionConfig cfg;
  auto add_projection_opts = [&](CLI::App* sub) {
    sub->add_option("--char", character, "kronecker:D or table:m:v0,...");
    sub->add_option("--terms", terms, "Harmonic truncation M")->check(CLI::PositiveNumber);
    sub->add_option("--accel", accel)->check(CLI::IsMember({"pairing", "none"}));
    sub->add_option("--variant", variant, "Constant-term log variant")->check(CLI::IsMember({"log_h", "log_sqrt_h"}));
    sub->add_option("--normalization", normalization, "Harmonic prefactor")
        ->check(CLI::IsMember({"corrected", "printed"}));
  };
  auto make_config = [&] {
    cfg.M = terms;
    cfg.acceleration = parse_acceleration(accel);
    cfg.constant_log_variant = parse_log_variant(variant);
    cfg.harmonic = parse_harmonic_normalization(normalization);
    cfg.validate();
    ctx.truncation = config_json(cfg);
  };

  auto* rchi_cmd = app.add_subcommand("rchi", "Projected coefficients r_chi(h)");
  rchi_cmd->add_option("--h", h_arg);
  rchi_cmd->add_option("--hmax", hmax_arg);
  add_projection_opts(rchi_cmd);
  add_common(rchi_cmd, common, true);
  rchi_cmd->callback([&] {
    make_config();
    if (common.format == "text") common.format = "csv";
    auto chi = DirichletCharacter::parse(character);
    auto hs = h_range(h_arg, hmax_arg);
    auto rows = r_chi_batch(hs, chi, cfg, common.threads);
    hurwitz_cache().flush();
    ctx.parameters = {{"char", chi.label()}, {"h", h_arg}, {"hmax", hmax_arg}};
    ctx.emit = [&, rows](std::ostream& o) { emit_breakdown(o, common, rows); };
    ctx.plot = [rows](const std::string& path) {
      PlotSeries s{"r_chi(h)", {}};
      for (const auto& r : rows) s.points.emplace_back(static_cast<double>(r.h), r.total);
      std::ofstream(path) << svg_plot("projected coefficients", "h", {s});
    };
  });

  auto* project_cmd = app.add_subcommand("project", "General projection of Z times theta_chi (checks r_chi)");
  project_cmd->add_option("--hmax", hmax_arg)->required();
  add_projection_opts(project_cmd);
  add_common(project_cmd, common, false);
  project_cmd->callback([&] {
    make_config();
    if (common.format == "text") common.format = "csv";
    auto chi = DirichletCharacter::parse(character);
    if (hmax_arg < 1) throw std::invalid_argument("project: --hmax must be >= 1");
    std::vector<std::uint64_t> ns;
    for (std::int64_t h = 1; h <= hmax_arg; ++h)
      for (std::int64_t m = 1; m <= cfg.M; ++m)
        if (m * m > h && chi(m) != 0) ns.push_back(static_cast<std::uint64_t>(m * m - h));
    hurwitz_cache().prefetch(ns, common.threads);
    auto F = z_coefficients(hmax_arg, cfg.M * cfg.M);
    auto g = CuspCoefficients::from_character(chi, cfg.M);
    auto rows = project_general_breakdown(F, g, hmax_arg, cfg);
    hurwitz_cache().flush();
    ctx.parameters = {{"char", chi.label()}, {"hmax", hmax_arg}};
    ctx.emit = [&, rows](std::ostream& o) { emit_breakdown(o, common, rows); };
  });

  auto* decomp_cmd = app.add_subcommand("decompose", "Decompose r_chi values on the S2(64) basis");
  decomp_cmd->add_option("--target", target)->check(CLI::IsMember({"rchi"}));
  decomp_cmd->add_option("--pivots", pivots, "Comma separated pivot indices");
  decomp_cmd->add_option("--hmax", hmax_arg, "Largest index to scan (default 98)");
  decomp_cmd->add_option("--tol", tol, "Pattern tolerance");
  add_projection_opts(decomp_cmd);
  add_common(decomp_cmd, common, false);
  decomp_cmd->callback([&] {
    make_config();
    if (common.format == "text") common.format = "json";
    auto chi = DirichletCharacter::parse(character);
    auto pv = parse_list(pivots);
    std::int64_t hmax = hmax_arg > 0 ? hmax_arg : 98;
    auto hs = h_range(0, hmax);
    auto rows = r_chi_batch(hs, chi, cfg, common.threads);
    hurwitz_cache().flush();
    std::map<std::int64_t, double> values, unc;
    for (const auto& r : rows) {
      values[r.h] = r.total;
      unc[r.h] = r.uncertainty;
    }
    auto basis = basis_s2_64(static_cast<std::size_t>(std::max<std::int64_t>(hmax, 5)));
    std::vector<IntSeries> b{basis.f1, basis.f2, basis.f3};
    auto solve = solve_on_basis(values, b, pv);
    auto patterns = arithmetic_patterns(values, tol, unc);
    ctx.parameters = {{"char", chi.label()}, {"target", target}, {"pivots", pv}, {"hmax", hmax}, {"tol", tol}};
    ctx.emit = [&, solve, patterns](std::ostream& o) {
      if (common.format == "json") {
        o << to_json(solve, &patterns) << '\n';
        return;
      }
      o << "key,value\n";
      for (std::size_t i = 0; i < solve.coefficients.size(); ++i)
        o << "x" << i + 1 << "," << num(solve.coefficients[i]) << '\n';
      o << "residual_max," << num(solve.residual_max) << "\nresidual_index," << solve.residual_index
        << "\npattern_violations," << patterns.violations.size() << '\n';
    };
  });

  auto* shifted_cmd = app.add_subcommand("shifted-sum", "Partial sums S(m) of H(m^2-h) m chi(m)");
  shifted_cmd->add_option("--h", h_arg)->required();
  shifted_cmd->add_option("--char", character);
  shifted_cmd->add_option("--mmax", mmax)->required();
  shifted_cmd->add_option("--scale", scale, "Growth variable: square (X = m^2) or linear (X = m)")
      ->check(CLI::IsMember({"square", "linear"}));
  shifted_cmd->add_option("--window", window, "Trailing points in the exponent fit (0 = half)");
  add_common(shifted_cmd, common, true);
  shifted_cmd->callback([&] {
    if (common.format == "text") common.format = "csv";
    auto chi = DirichletCharacter::parse(character);
    auto series = partial_sums(h_arg, chi, mmax, hurwitz_cache(), common.threads);
    hurwitz_cache().flush();
    auto gs = scale == "square" ? GrowthScale::square : GrowthScale::linear;
    json fit = nullptr;
    if (series.rows.size() >= 40) {
      try {
        auto f = fit_exponent(series, window, gs);
        fit = {{"c", f.c}, {"stderr", f.stderr_c}, {"points", f.points}};
      } catch (const std::domain_error&) {
      }
    }
    ctx.parameters = {{"h", h_arg}, {"char", chi.label()}, {"mmax", mmax}, {"scale", scale}, {"window", window}};
    ctx.truncation = {{"fit", fit}};
    ctx.emit = [&, series, gs, fit](std::ostream& o) {
      if (common.format == "json") {
        json rows = json::array();
        for (const auto& r : series.rows)
          rows.push_back({{"m", r.m}, {"num", r.S.num()}, {"den", r.S.den()}, {"S", r.S.to_double()}});
        o << json{{"h", series.h}, {"scale", scale}, {"fit", fit}, {"rows", rows}}.dump(2) << '\n';
      } else {
        o << shifted_sum_csv(series, gs);
      }
    };
    ctx.plot = [series](const std::string& path) {
      // plot always uses X = m; the CSV carries raw (m, S) for other readings
      PlotSeries a{"S / m^(5/4)", {}}, b{"S / m^(3/2)", {}};
      for (const auto& r : series.rows) {
        double X = static_cast<double>(r.m), s = r.S.to_double();
        a.points.emplace_back(static_cast<double>(r.m), s / std::pow(X, 1.25));
        b.points.emplace_back(static_cast<double>(r.m), s / std::pow(X, 1.5));
      }
      std::ofstream(path) << svg_plot("normalized shifted sums", "m", {a, b});
    };
  });

  auto* dseries_cmd = app.add_subcommand("dseries", "Truncated shifted convolution series D_h(s)");
  dseries_cmd->add_option("--h", h_arg)->required();
  dseries_cmd->add_option("--char", character);
  dseries_cmd->add_option("--s", s_arg)->required();
  dseries_cmd->add_option("--terms", terms)->check(CLI::PositiveNumber);
  add_common(dseries_cmd, common, false);
  dseries_cmd->callback([&] {
    auto chi = DirichletCharacter::parse(character);
    auto v = d_series_truncated(h_arg, chi, s_arg, terms);
    ctx.parameters = {{"h", h_arg}, {"char", chi.label()}, {"s", s_arg}, {"terms", terms}};
    ctx.truncation = {{"M", terms}};
    ctx.emit = [&, v](std::ostream& o) {
      if (common.format == "json") {
        o << json{{"h", h_arg}, {"s", s_arg}, {"value", v.value}, {"tail_estimate", v.tail_estimate}}.dump(2) << '\n';
      } else if (common.format == "csv") {
        o << "h,s,value,tail_estimate\n" << h_arg << ',' << num(s_arg) << ',' << num(v.value) << ','
          << num(v.tail_estimate) << '\n';
      } else {
        o << num(v.value) << " (tail estimate " << num(v.tail_estimate) << ")\n";
      }
    };
  });

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in oracle suite");
  int selftest_failures = 0;
  selftest_cmd->callback([&] {
    ctx.emit = [&](std::ostream& o) { selftest_failures = selftest(o); };
  });

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    for (auto* sub : app.get_subcommands()) ctx.subcommand = sub->get_name();
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const convergence_error& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::invalid_argument& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::out_of_range& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::overflow_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!common.plot.empty() && common.out_path.empty()) {
    err << "--plot requires --out\n";
    return kUsage;
  }
  try {
    if (common.out_path.empty()) {
      if (ctx.emit) ctx.emit(out);
    } else {
      std::ofstream f(common.out_path);
      if (!f) throw std::runtime_error("cannot write " + common.out_path);
      if (ctx.emit) ctx.emit(f);
      if (!common.plot.empty() && ctx.plot) ctx.plot(common.out_path + ".svg");
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_manifest(common.out_path + ".manifest.json", ctx, secs);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (ctx.subcommand == "selftest" && selftest_failures > 0) return kConvergence;
  return kOk;
}

}  // namespace hproj::cli
