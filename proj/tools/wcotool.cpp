// Command-line front end: analyze, orbit, xcheck, example.
// Exit codes: 0 ok, 1 oracle failure, 2 input error, 3 invariant violation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wco/bridge.hpp"
#include "wco/continuous.hpp"
#include "wco/dense.hpp"
#include "wco/errors.hpp"
#include "wco/examples.hpp"
#include "wco/io.hpp"
#include "wco/system.hpp"

namespace {

using wco::io::json;

void emit(const json& report, const std::string& format,
          const std::string& output) {
  std::string text =
      format == "structured" ? report.dump(2) + "\n" : wco::io::render_text(report);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw wco::input_error("cannot write output file: " + output);
    out << text;
  }
}

Eigen::VectorXcd parse_vector(const std::string& spec, Eigen::Index dim) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw wco::input_error("cannot parse vector component: " + item);
    }
  }
  if (static_cast<Eigen::Index>(vals.size()) != dim)
    throw wco::input_error("vector has " + std::to_string(vals.size()) +
                           " components, operator dim is " +
                           std::to_string(dim));
  Eigen::VectorXcd h(dim);
  for (Eigen::Index i = 0; i < dim; ++i) h(i) = vals[i];
  if (h.norm() == 0.0) throw wco::input_error("orbit vector must be nonzero");
  return h;
}

int run(int argc, char** argv) {
  CLI::App app{"lambda-hyponormality and hypercyclicity-exclusion analyzer "
               "for weighted composition operators"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string output;
  app.add_option("--format", format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--output", output, "write the report to a file");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze",
                                         "analyze a system or matrix file");
  std::string analyze_input;
  double support_tol = -1.0, psd_tol = 1e-8;
  std::size_t max_n = 6;
  bool tail_bound_asserted = false;
  analyze_cmd->add_option("input", analyze_input, "input json file")
      ->required();
  analyze_cmd->add_option("--support-tol", support_tol,
                          "relative support threshold (default 1e-12)");
  analyze_cmd->add_option("--psd-tol", psd_tol,
                          "dense PSD/bisection tolerance (default 1e-8)");
  analyze_cmd->add_option("--max-n", max_n, "J_n table depth (default 6)");
  analyze_cmd->add_flag("--tail-bound-asserted", tail_bound_asserted,
                        "assert the analytic tail bound for prefix windows");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "orbit growth table and "
                                                "certificates");
  std::string orbit_input, h_spec;
  std::size_t orbit_n = 20;
  double orbit_lambda = 0.0;
  orbit_cmd->set_help_flag("--help", "print help");  // frees -h for the vector
  orbit_cmd->add_option("input", orbit_input, "input json file")->required();
  orbit_cmd->add_option("--h", h_spec, "comma-separated orbit vector")
      ->required();
  orbit_cmd->add_option("--N", orbit_n, "number of iterations (default 20)");
  orbit_cmd->add_option("--lambda", orbit_lambda,
                        "certified lambda (default: minimal lambda)");

  // xcheck
  auto* xcheck_cmd = app.add_subcommand("xcheck", "cross-validate pointwise "
                                                  "criteria against matrix "
                                                  "oracles on a random corpus");
  std::uint64_t seed = 42;
  std::size_t count = 100;
  double lambda_tol = 1e-6;
  xcheck_cmd->add_option("--seed", seed, "corpus seed (default 42)");
  xcheck_cmd->add_option("--count", count, "corpus size (default 100)");
  xcheck_cmd->add_option("--lambda-tol", lambda_tol,
                         "lambda agreement tolerance (default 1e-6)");

  // example
  auto* example_cmd = app.add_subcommand("example", "canonical example "
                                                    "systems and validators");
  std::string example_name;
  std::size_t quad_nodes = 4096;
  double quad_tol = 1e-6;
  bool example_tail = false;
  example_cmd->add_option("name", example_name,
                          "paper-continuous | paper-discrete | cycle-demo")
      ->required();
  example_cmd->add_option("--quad-nodes", quad_nodes,
                          "quadrature nodes (default 4096)");
  example_cmd->add_option("--quad-tol", quad_tol,
                          "quadrature tolerance (default 1e-6)");
  example_cmd->add_flag("--tail-bound-asserted", example_tail,
                        "assert the analytic tail bound for prefix windows");

  CLI11_PARSE(app, argc, argv);

  if (analyze_cmd->parsed()) {
    json input = wco::io::load_json_file(analyze_input);
    if (wco::io::detect_kind(input) == wco::io::InputKind::System) {
      wco::io::LoadedSystem loaded = wco::io::system_from_json(input);
      if (analyze_cmd->count("--support-tol"))
        loaded.opts.support_tol = support_tol;
      if (analyze_cmd->count("--max-n")) loaded.opts.max_n = max_n;
      if (tail_bound_asserted) loaded.opts.tail_bound_asserted = true;
      wco::AnalysisReport rep = wco::analyze(loaded.sys, loaded.opts);
      emit(wco::io::system_report_to_json(rep, input), format, output);
    } else {
      wco::MatrixOperator T = wco::io::matrix_from_json(input);
      wco::DenseAnalysis rep = wco::analyze_operator(T, psd_tol);
      emit(wco::io::matrix_report_to_json(rep, input), format, output);
    }
    return 0;
  }

  if (orbit_cmd->parsed()) {
    json input = wco::io::load_json_file(orbit_input);
    wco::MatrixOperator T =
        wco::io::detect_kind(input) == wco::io::InputKind::System
            ? wco::matrix_of_system(
                  wco::io::system_from_json(input).sys)
            : wco::io::matrix_from_json(input);
    Eigen::VectorXcd h = parse_vector(h_spec, T.dim());
    double lambda = orbit_cmd->count("--lambda") ? orbit_lambda
                                                 : wco::minimal_lambda(T);
    json rep;
    rep["tool_version"] = wco::io::kToolVersion;
    rep["kind"] = "orbit";
    rep["input_digest"] = wco::io::digest(input);
    rep["lambda"] = std::isinf(lambda) ? json("infinity") : json(lambda);
    std::vector<double> norms = wco::orbit_norms(T, h, orbit_n);
    rep["norms"] = norms;
    if (std::isfinite(lambda) && lambda > 0.0) {
      auto rows = wco::orbit_bound_check(T, h, lambda, orbit_n);
      json table = json::array();
      for (const auto& r : rows)
        table.push_back({{"n", r.n},
                         {"norm", r.norm},
                         {"bound", r.bound},
                         {"ok", r.ok}});
      rep["bound_table"] = table;
    }
    json certs = json::array();
    if (auto c = wco::growth_certificate(norms, std::nullopt))
      certs.push_back(wco::io::certificate_to_json(*c));
    if (std::isfinite(lambda))
      if (auto c = wco::weakly_closed_orbit_certificate(T, h))
        certs.push_back(wco::io::certificate_to_json(*c));
    if (std::isfinite(lambda))
      if (auto c = wco::not_weakly_hypercyclic_certificate(T))
        certs.push_back(wco::io::certificate_to_json(*c));
    rep["certificates"] = certs;
    if (format == "structured") {
      emit(rep, format, output);
    } else {
      std::ostringstream os;
      os << "orbit report, lambda = " << rep["lambda"].dump() << "\n";
      for (std::size_t n = 0; n < norms.size(); ++n) {
        os << "  n=" << n << "  ||T^n h|| = " << norms[n];
        if (rep.contains("bound_table"))
          os << "  floor = " << rep["bound_table"][n]["bound"].dump()
             << (rep["bound_table"][n]["ok"].get<bool>() ? "  ok" : "  FAIL");
        os << "\n";
      }
      os << "certificates:\n";
      if (certs.empty()) os << "  (none; inconclusive)\n";
      for (const auto& cert : certs)
        os << "  " << cert["kind"].get<std::string>() << " ["
           << cert["theorem"].get<std::string>() << "] witnesses="
           << cert["witnesses"].dump() << "\n";
      if (output.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream out(output);
        out << os.str();
      }
    }
    return 0;
  }

  if (xcheck_cmd->parsed()) {
    wco::CorpusSummary summary =
        wco::run_xcheck_corpus(seed, count, lambda_tol);
    std::cout << "xcheck: " << summary.passed << "/" << summary.count
              << " systems passed (seed " << seed << ")\n";
    if (summary.passed != summary.count) {
      std::string path = output.empty() ? "xcheck_failure.json" : output;
      std::ofstream out(path);
      out << summary.first_failure_input << "\n";
      std::cerr << "first failure: " << summary.first_failure
                << "\nfailing input written to " << path << "\n";
      return 1;
    }
    return 0;
  }

  if (example_cmd->parsed()) {
    if (example_name == "paper-continuous") {
      wco::QuadratureGrid grid{quad_nodes, quad_tol};
      wco::ContinuousReport rep = wco::continuous_example_check(grid);
      emit(wco::io::continuous_report_to_json(rep), format, output);
      return rep.ok ? 0 : 1;
    }
    if (example_name == "paper-discrete" || example_name == "cycle-demo") {
      bool discrete = example_name == "paper-discrete";
      wco::WeightedCompositionSystem sys = discrete
                                               ? wco::examples::discrete_window()
                                               : wco::examples::cycle_demo();
      wco::AnalysisOptions opts;
      opts.prefix_window = discrete;
      opts.tail_bound_asserted = example_tail;
      json input = wco::io::system_to_json(sys);
      if (discrete)
        input["options"] = {{"prefix_window", true},
                            {"tail_bound_asserted", example_tail}};
      wco::AnalysisReport rep = wco::analyze(sys, opts);
      json doc = wco::io::system_report_to_json(rep, input);
      doc["input"] = input;
      emit(doc, format, output);
      return 0;
    }
    throw wco::input_error("unknown example '" + example_name +
                           "'; known: paper-continuous, paper-discrete, "
                           "cycle-demo");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wco::invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const wco::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const wco::oracle_error& e) {
    std::cerr << "oracle failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
