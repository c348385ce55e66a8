// Copyright 2026 The nclp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "nclp/divergence.hpp"
#include "nclp/errors.hpp"
#include "nclp/json_writer.hpp"
#include "nclp/lp.hpp"
#include "nclp/matrix_file.hpp"
#include "nclp/propsuite.hpp"
#include "nclp/report.hpp"
#include "nclp/tensorprod.hpp"

namespace nclp::cli {
namespace {

// Text output: 12 significant digits; magnitudes below 1e-12 print as 0.
std::string format_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_positive(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v) || !(v > 0.0)) {
    throw UsageError(what + " must be a positive number, got '" + text + "'");
  }
  return v;
}

NumericConfig numeric_config(const std::optional<double>& flag) {
  NumericConfig c;
  if (const char* env = std::getenv("NCLP_EPS_REL"); env != nullptr && *env != '\0') {
    c.eps_rel = parse_positive(env, "NCLP_EPS_REL");
  }
  if (flag) c.eps_rel = *flag;
  if (!(c.eps_rel > 0.0 && c.eps_rel < 1.0)) throw UsageError("eps-rel must lie in (0, 1)");
  return c;
}

Json base_config(std::string_view command, const NumericConfig& numeric) {
  Json c;
  c["command"] = command;
  const Json numeric_json = numeric_config_json(numeric);
  for (const auto& [key, value] : numeric_json.items()) c[key] = value;
  return c;
}

Json ok_report(Json config, Json results) {
  Json report;
  report["tool_version"] = tool_version();
  report["config"] = std::move(config);
  report["results"] = std::move(results);
  report["residuals"] = Json::object();
  report["status"] = "ok";
  return report;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

struct DivergenceArgs {
  std::string kind = "sandwiched";
  double alpha = 0.0;
  std::optional<double> z;
  std::string psi;
  std::string phi;
  bool json = false;
};

struct LpArgs {
  std::string p;
  std::string x;
  bool kosaki = false;
  std::string phi;
  double eta = 0.5;
  bool json = false;
};

struct TensorArgs {
  std::string left;
  std::string right;
  std::string out;
};

struct SuiteArgs {
  std::string name;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> dims;
  std::vector<std::string> tol_overrides;
  std::optional<std::string> out;
  unsigned threads = 0;
};

// Holds the partially built config so errors can still be reported in JSON.
struct Context {
  Json config;
  bool json = false;
  std::optional<std::string> report_path;
};

int cmd_divergence(const DivergenceArgs& a, const NumericConfig& numeric, Context& ctx,
                   std::ostream& out) {
  ctx.json = a.json;
  ctx.config = base_config("divergence", numeric);
  ctx.config["kind"] = a.kind;
  ctx.config["alpha"] = a.alpha;
  if (a.kind == "sandwiched" && a.z && *a.z != a.alpha) {
    throw UsageError("--z must equal --alpha (or be omitted) for --kind sandwiched");
  }
  const double z = a.z.value_or(a.alpha);
  ctx.config["z"] = z;
  ctx.config["psi"] = a.psi;
  ctx.config["phi"] = a.phi;

  const DivergenceParams params = a.kind == "sandwiched" ? DivergenceParams::sandwiched(a.alpha)
                                                         : DivergenceParams::alpha_z(a.alpha, z);
  const PositiveFunctional psi = load_functional(a.psi, numeric);
  const PositiveFunctional phi = load_functional(a.phi, numeric);
  const DivergenceValue q = q_tilde(psi, phi, params);
  const DivergenceValue d = d_tilde(psi, phi, params);

  if (a.json) {
    Json r;
    r["Q"] = json_number(q.is_finite() ? q.value : std::numeric_limits<double>::infinity());
    r["Q_reason"] = reason_name(q.reason);
    r["D"] = json_number(d.is_finite() ? d.value : std::numeric_limits<double>::infinity());
    r["D_reason"] = reason_name(d.reason);
    out << dump_json(ok_report(ctx.config, Json::array({r})));
    return kOk;
  }
  const auto line = [&out](const char* name, const DivergenceValue& v) {
    if (v.is_finite()) {
      out << name << '=' << format_text(v.value) << '\n';
    } else {
      out << name << "=inf reason=" << reason_name(v.reason) << '\n';
    }
  };
  line("Q", q);
  line("D", d);
  return kOk;
}

int cmd_lp_norm(const LpArgs& a, const NumericConfig& numeric, Context& ctx, std::ostream& out) {
  ctx.json = a.json;
  ctx.config = base_config("lp-norm", numeric);
  ctx.config["p"] = a.p;
  ctx.config["x"] = a.x;
  if (a.kosaki) {
    ctx.config["kosaki"] = true;
    ctx.config["phi"] = a.phi;
    ctx.config["eta"] = a.eta;
  }
  const LpExponent p = LpExponent::parse(a.p);
  const Element x = load_matrix_file(a.x, numeric).element;
  double norm = 0.0;
  if (a.kosaki) {
    if (a.phi.empty()) throw UsageError("--kosaki requires --phi");
    const PositiveFunctional phi = load_functional(a.phi, numeric);
    norm = kosaki_norm(x, KosakiSpec(phi, p, a.eta));
  } else {
    norm = lp_norm(x, p, numeric);
  }
  if (a.json) {
    out << dump_json(ok_report(ctx.config, Json::array({Json{{"norm", json_number(norm)}}})));
  } else {
    out << "norm=" << format_text(norm) << '\n';
  }
  return kOk;
}

int cmd_tensor(const TensorArgs& a, const NumericConfig& numeric, Context& ctx,
               std::ostream& out) {
  ctx.config = base_config("tensor", numeric);
  const MatrixFile left = load_matrix_file(a.left, numeric);
  const MatrixFile right = load_matrix_file(a.right, numeric);
  const Element product = kron_element(left.element, right.element);
  const bool functional =
      left.kind == MatrixKind::kFunctional && right.kind == MatrixKind::kFunctional;
  save_matrix_file(a.out, product, functional ? MatrixKind::kFunctional : MatrixKind::kElement);
  out << "wrote " << a.out << " (blocks " << product.algebra().describe() << ")\n";
  return kOk;
}

int cmd_suite(const SuiteArgs& a, const NumericConfig& numeric, Context& ctx, std::ostream& out) {
  ctx.report_path = a.out;
  ctx.json = !a.out.has_value();
  ctx.config = base_config("suite", numeric);
  ctx.config["suite"] = a.name;

  SuiteConfig config = default_suite_config(a.name);
  config.numeric = numeric;
  if (a.trials) config.trials = *a.trials;
  if (a.seed) config.seed = *a.seed;
  if (a.dims) config.dims = parse_dims_list(*a.dims);
  for (const std::string& kv : a.tol_overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--tol-override expects key=value");
    const std::string key = kv.substr(0, eq);
    if (!config.tolerances.contains(key)) {
      throw UsageError("suite " + a.name + " has no tolerance '" + key + "'");
    }
    config.tolerances[key] = parse_positive(kv.substr(eq + 1), "tolerance " + key);
  }
  config.threads = a.threads != 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());

  const SuiteResult result = run_suite(config);
  const std::string report = dump_json(suite_report(result));
  if (a.out) {
    write_file(*a.out, report);
    out << "suite=" << config.suite_name << " trials=" << config.trials
        << " failed=" << result.failures << " status=" << (result.failures == 0 ? "ok" : "fail")
        << '\n';
    for (const auto& [key, value] : result.max_residuals) {
      char line[128];
      std::snprintf(line, sizeof line, "  %s max=%.3e tol=%.3e\n", key.c_str(), value,
                    config.tolerances.at(key));
      out << line;
    }
  } else {
    out << report;
  }
  return result.failures == 0 ? kOk : kSuiteFailed;
}

int report_error(const Context& ctx, const std::exception& e, int code, std::ostream& out,
                 std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (!ctx.config.is_null()) {
    const std::string report = dump_json(error_report(ctx.config, e.what()));
    if (ctx.report_path) {
      try {
        write_file(*ctx.report_path, report);
      } catch (const std::exception& w) {
        err << "error: " << w.what() << '\n';
      }
    } else if (ctx.json) {
      out << report;
    }
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative L^p norms, tensor products and Renyi divergences on "
               "finite-dimensional block algebras.",
               "nclp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(tool_version()));
  std::optional<double> eps_rel;
  app.add_option("--eps-rel", eps_rel,
                 "Relative kernel threshold (default 1e-12, or NCLP_EPS_REL)");

  DivergenceArgs div;
  CLI::App* div_cmd = app.add_subcommand("divergence", "Sandwiched or alpha-z Renyi divergence");
  div_cmd->add_option("--kind", div.kind, "sandwiched | alpha-z")
      ->check(CLI::IsMember({"sandwiched", "alpha-z"}))
      ->capture_default_str();
  div_cmd->add_option("--alpha", div.alpha, "Order alpha")->required();
  div_cmd->add_option("--z", div.z, "Parameter z (alpha-z only; defaults to alpha)");
  div_cmd->add_option("--psi", div.psi, "Functional file for psi")->required();
  div_cmd->add_option("--phi", div.phi, "Functional file for phi")->required();
  div_cmd->add_flag("--json", div.json, "Emit a JSON run report");

  LpArgs lp;
  CLI::App* lp_cmd = app.add_subcommand("lp-norm", "Schatten or Kosaki L^p norm");
  lp_cmd->add_option("--p", lp.p, "Exponent p, or inf")->required();
  lp_cmd->add_option("--x", lp.x, "Matrix file")->required();
  lp_cmd->add_flag("--kosaki", lp.kosaki, "Kosaki interpolation norm relative to --phi");
  lp_cmd->add_option("--phi", lp.phi, "Reference functional file");
  lp_cmd->add_option("--eta", lp.eta, "Interpolation parameter in [0, 1]")->capture_default_str();
  lp_cmd->add_flag("--json", lp.json, "Emit a JSON run report");

  TensorArgs tensor;
  CLI::App* tensor_cmd = app.add_subcommand("tensor", "Kronecker product of two matrix files");
  tensor_cmd->add_option("--left", tensor.left, "Left factor file")->required();
  tensor_cmd->add_option("--right", tensor.right, "Right factor file")->required();
  tensor_cmd->add_option("-o,--out", tensor.out, "Output file")->required();

  SuiteArgs suite;
  std::vector<std::string> names;
  for (std::string_view n : suite_names()) names.emplace_back(n);
  CLI::App* suite_cmd = app.add_subcommand("suite", "Run a property suite");
  suite_cmd->add_option("--name", suite.name, "Suite name")
      ->required()
      ->check(CLI::IsMember(names));
  suite_cmd->add_option("--trials", suite.trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  suite_cmd->add_option("--seed", suite.seed, "64-bit seed");
  suite_cmd->add_option("--dims", suite.dims, "Profiles, e.g. 2x2,3x2,2+3");
  suite_cmd->add_option("--tol-override", suite.tol_overrides, "key=value (repeatable)");
  suite_cmd->add_option("--out", suite.out, "Report file (default: stdout)");
  suite_cmd->add_option("--threads", suite.threads, "Worker threads (default: all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto active = app.get_subcommands();
    err << (active.empty() ? app.help() : active.front()->help());
    return kMalformed;
  }

  Context ctx;
  try {
    const NumericConfig numeric = numeric_config(eps_rel);
    if (*div_cmd) return cmd_divergence(div, numeric, ctx, out);
    if (*lp_cmd) return cmd_lp_norm(lp, numeric, ctx, out);
    if (*tensor_cmd) return cmd_tensor(tensor, numeric, ctx, out);
    return cmd_suite(suite, numeric, ctx, out);
  } catch (const MalformedInput& e) {
    return report_error(ctx, e, kMalformed, out, err);
  } catch (const UsageError& e) {
    return report_error(ctx, e, kMalformed, out, err);
  } catch (const ConditioningError& e) {
    return report_error(ctx, e, kConditioning, out, err);
  } catch (const std::exception& e) {
    return report_error(ctx, e, kPrecondition, out, err);
  }
}

}  // namespace nclp::cli
