#include <cmath>

#include "doctest.h"
#include "wco/examples.hpp"
#include "wco/io.hpp"

using namespace wco;
using wco::io::json;

namespace {

json cycle_doc() {
  return json{{"masses", {1.0, 1.0, 1.0}},
              {"phi", {2, 3, 1}},
              {"u", {1.0, 2.0, 4.0}}};
}

}  // namespace

TEST_CASE("system document parsing") {
  io::LoadedSystem loaded = io::system_from_json(cycle_doc());
  CHECK(loaded.sys.size() == 3);
  CHECK(loaded.sys.map(0) == 1);
  CHECK(loaded.sys.u[2] == 4.0);
  CHECK(loaded.opts.max_n == 6);

  SUBCASE("options") {
    json doc = cycle_doc();
    doc["options"] = {{"max_n", 3},
                      {"prefix_window", true},
                      {"tail_bound_asserted", true},
                      {"support_tol", 1e-9}};
    io::LoadedSystem l = io::system_from_json(doc);
    CHECK(l.opts.max_n == 3);
    CHECK(l.opts.prefix_window);
    CHECK(l.opts.tail_bound_asserted);
    CHECK(l.opts.support_tol == 1e-9);
  }
  SUBCASE("rejects bad documents") {
    json doc = cycle_doc();
    doc["phi"] = {2, 3};
    CHECK_THROWS_AS(io::system_from_json(doc), input_error);
    doc = cycle_doc();
    doc["phi"] = {2, 3, 0};
    CHECK_THROWS_AS(io::system_from_json(doc), input_error);
    doc = cycle_doc();
    doc["phi"] = {2, 3, 4};  // escapes the window
    CHECK_THROWS_AS(io::system_from_json(doc), invariant_error);
    doc = cycle_doc();
    doc["masses"] = {1.0, -1.0, 1.0};
    CHECK_THROWS_AS(io::system_from_json(doc), input_error);
  }
}

TEST_CASE("matrix document parsing") {
  json doc;
  doc["dim"] = 2;
  doc["entries"] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  MatrixOperator T = io::matrix_from_json(doc);
  CHECK(T.dim() == 2);
  CHECK(T.entries()(0, 1) == std::complex<double>(1.0, 0.0));

  doc["masses"] = {1.0, 2.0};
  MatrixOperator Tw = io::matrix_from_json(doc);
  CHECK(Tw.masses().has_value());

  SUBCASE("round trip") {
    json again = io::matrix_to_json(Tw);
    MatrixOperator back = io::matrix_from_json(again);
    CHECK((back.entries() - Tw.entries()).norm() == 0.0);
  }
  SUBCASE("rejects malformed entries") {
    json bad = doc;
    bad["entries"] = {{0.0, 0.0}};
    CHECK_THROWS_AS(io::matrix_from_json(bad), input_error);
    bad = doc;
    bad["masses"] = {1.0};
    CHECK_THROWS_AS(io::matrix_from_json(bad), input_error);
  }
}

TEST_CASE("input kind detection") {
  CHECK(io::detect_kind(cycle_doc()) == io::InputKind::System);
  json m = {{"dim", 1}, {"entries", {{1.0, 0.0}}}};
  CHECK(io::detect_kind(m) == io::InputKind::Matrix);
  CHECK_THROWS_AS(io::detect_kind(json::object()), input_error);
}

TEST_CASE("digest is deterministic and input-sensitive") {
  CHECK(io::digest(cycle_doc()) == io::digest(cycle_doc()));
  json other = cycle_doc();
  other["u"] = {1.0, 2.0, 5.0};
  CHECK(io::digest(other) != io::digest(cycle_doc()));
}

TEST_CASE("report round trip re-verifies") {
  json input = cycle_doc();
  io::LoadedSystem loaded = io::system_from_json(input);
  AnalysisReport rep = analyze(loaded.sys, loaded.opts);
  json doc = io::system_report_to_json(rep, input);

  CHECK(doc["lambda_min"].get<double>() == doctest::Approx(4.0));
  CHECK(doc["kind"] == "system");

  // serialize -> reload -> replay
  json reloaded = json::parse(doc.dump());
  CHECK(io::reverify_report(reloaded, input));

  SUBCASE("tampered certificate fails replay") {
    json bad = reloaded;
    bool tampered = false;
    for (auto& cert : bad["certificates"])
      if (cert["witnesses"].contains("lambda")) {
        cert["witnesses"]["lambda"] = 123.0;
        tampered = true;
      }
    if (tampered) CHECK_FALSE(io::reverify_report(bad, input));
  }
}

TEST_CASE("infinity serialization") {
  WeightedCompositionSystem gap(DiscreteMeasureSpace({1.0, 2.0, 1.0}),
                                Transformation({1, 2, 2}), {1.0, 0.0, 1.0});
  json input = io::system_to_json(gap);
  AnalysisReport rep = analyze(gap);
  json doc = io::system_report_to_json(rep, input);
  CHECK(doc["lambda_min"].is_string());
  CHECK(doc["lambda_min"] == "infinity");
  CHECK(io::reverify_report(doc, input));
}

TEST_CASE("certificate json round trip") {
  Certificate cert;
  cert.kind = CertificateKind::NotWeaklyHypercyclic;
  cert.theorem = "corollary_3_6";
  cert.witnesses["lambda"] = 1.0;
  cert.scope = CertificateScope::PrefixEvidence;
  cert.note = "window";
  Certificate back = io::certificate_from_json(io::certificate_to_json(cert));
  CHECK(back.kind == cert.kind);
  CHECK(back.theorem == cert.theorem);
  CHECK(back.witnesses == cert.witnesses);
  CHECK(back.scope == cert.scope);
  CHECK(back.note == cert.note);
}

TEST_CASE("matrix report carries factorization data") {
  json doc;
  doc["dim"] = 2;
  doc["entries"] = {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {2.0, 0.0}};
  MatrixOperator T = io::matrix_from_json(doc);
  DenseAnalysis rep = analyze_operator(T);
  json out = io::matrix_report_to_json(rep, doc);
  CHECK(out["douglas"]["feasible"] == true);
  CHECK(out["lambda_min"].get<double>() == doctest::Approx(1.0));
  CHECK(io::reverify_report(out, doc));

  // text rendering carries the same numeric content
  std::string text = io::render_text(out);
  CHECK(text.find("lambda_min") != std::string::npos);
}
