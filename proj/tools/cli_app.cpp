#include "cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "capra/ball_slice.hpp"
#include "capra/bounds.hpp"
#include "capra/conjugacy.hpp"
#include "capra/errors.hpp"
#include "capra/json_io.hpp"
#include "capra/l0.hpp"
#include "capra/norms.hpp"
#include "capra/oracle.hpp"
#include "capra/property_suite.hpp"

namespace capra::cli {
namespace {

struct Options {
  std::string p = "2";
  std::string x;
  std::string y;
  std::string file;
  std::string phi;
  std::optional<std::size_t> k;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t max_iters = 2000;
  std::size_t resolution = 360;
  std::size_t dim = 2;
  std::string ball = "both";
  std::size_t trials = 40;
};

struct Item {
  Json results;
  Json residuals;
};

using Handler = std::function<Item(const Vector&)>;

// Evaluates every input vector, in parallel for batches, keeping input order.
std::vector<Item> evaluate_all(const std::vector<Vector>& inputs, const Handler& handler) {
  std::vector<Item> items(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  const std::size_t workers =
      std::min<std::size_t>(inputs.size(), std::max(1u, std::thread::hardware_concurrency()));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < inputs.size(); i += workers) {
      try {
        items[i] = handler(inputs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return items;
}

double galois_slack(const PhiSpec& phi, VectorView x, const ExtReal& value) {
  const ExtReal slack = upper_add(phi(l0(x)), -value);
  return slack.to_double();
}

void validate_document(const Json& doc) {
  for (const char* key : {"command", "inputs", "results", "residuals", "version"}) {
    if (!doc.contains(key)) throw Error(std::string("output document lacks key '") + key + "'");
  }
  if (!doc["command"].is_string() || !doc["version"].is_string() || !doc["inputs"].is_object()) {
    throw Error("output document has malformed header fields");
  }
}

class App {
 public:
  App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Coordinate-k norms, Capra conjugacy and l0 bounds", "capra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kSchemaVersion);

    auto vector_opts = [&](CLI::App* sub, bool wants_x, bool wants_y) {
      sub->add_option("--p", o_.p, "Source norm exponent: decimal >= 1 or inf")->capture_default_str();
      if (wants_x) sub->add_option("--x", o_.x, "Vector as a JSON array");
      if (wants_y) sub->add_option("--y", o_.y, "Dual vector as a JSON array");
      sub->add_option("--file", o_.file, "CSV file, one vector per line (batch mode)");
      sub->add_option("--output", o_.output, "Write the document here instead of stdout");
      sub->add_option("--max-iters", o_.max_iters, "Solver iteration budget")->capture_default_str();
      sub->add_option("--seed", o_.seed, "Random seed")->capture_default_str();
    };

    auto* norm = app.add_subcommand("norm", "Coordinate-k norm of x");
    vector_opts(norm, true, false);
    norm->add_option("--k", o_.k, "Coordinate index k in 1..d")->required();

    auto* dnorm = app.add_subcommand("dual-norm", "Dual norm, or dual coordinate-k norm with --k");
    vector_opts(dnorm, false, true);
    dnorm->add_option("--k", o_.k, "Coordinate index k in 0..d");

    auto* seq = app.add_subcommand("seq", "Coordinate-k norm sequence of x (and dual sequence of y)");
    vector_opts(seq, true, true);

    auto* sparsity = app.add_subcommand("sparsity", "Sparsity read off the graded norm sequence");
    vector_opts(sparsity, true, false);
    sparsity->add_option("--tol", o_.tol, "Relative grading tolerance (default 1e-6)");

    auto* conj = app.add_subcommand("conjugate", "Capra conjugate of phi o l0 at y");
    vector_opts(conj, false, true);
    conj->add_option("--phi", o_.phi, "l0, sqrt, levelset:k or a JSON array")->required();

    auto* biconj = app.add_subcommand("biconjugate", "Capra biconjugate of phi o l0 at x");
    vector_opts(biconj, true, false);
    biconj->add_option("--phi", o_.phi, "l0, sqrt, levelset:k or a JSON array")->required();

    auto* subdiff = app.add_subcommand("subdiff", "Capra subdifferential membership of y at x");
    vector_opts(subdiff, true, true);
    subdiff->add_option("--phi", o_.phi, "l0, sqrt, levelset:k or a JSON array")->required();
    subdiff->add_option("--tol", o_.tol, "Relative tolerance");

    auto* bound = app.add_subcommand("bound", "phi-norm lower bound on l0(x)");
    vector_opts(bound, true, false);
    bound->add_option("--phi", o_.phi, "sqrt, l0 or a JSON array with phi(0)=0 < phi(l)")->required();

    auto* slice = app.add_subcommand("ball-slice", "CSV boundary of the planar coordinate-k balls");
    slice->add_option("--p", o_.p, "Source norm exponent")->capture_default_str();
    slice->add_option("--k", o_.k, "Coordinate index k")->required();
    slice->add_option("--d", o_.dim, "Dimension (only 2 is supported)")->capture_default_str();
    slice->add_option("--resolution", o_.resolution, "Number of angles")->capture_default_str();
    slice->add_option("--ball", o_.ball, "primal, dual or both")
        ->check(CLI::IsMember({"primal", "dual", "both"}))
        ->capture_default_str();
    slice->add_option("--output", o_.output, "CSV path (default stdout)");

    auto* check = app.add_subcommand("check", "Run the property suite");
    check->add_option("--seed", o_.seed, "Random seed")->capture_default_str();
    check->add_option("--trials", o_.trials, "Instances per property")->capture_default_str();
    check->add_option("--output", o_.output, "Write the report here instead of stdout");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return kOk;
    } catch (const CLI::CallForVersion&) {
      out_ << kSchemaVersion << "\n";
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "capra: " << e.what() << "\n";
      return kValidationError;
    }

    try {
      cfg_.max_iters = o_.max_iters;
      cfg_.seed = o_.seed;
      const std::string command = app.get_subcommands().front()->get_name();
      if (command == "ball-slice") return run_ball_slice();
      if (command == "check") return run_check();
      return run_vector_command(command);
    } catch (const ConvergenceError& e) {
      err_ << "capra: did not converge: " << e.what() << " (residual " << e.residual() << ")\n";
      return kNonConvergence;
    } catch (const InvalidArgument& e) {
      err_ << "capra: " << e.what() << "\n";
      return kValidationError;
    } catch (const std::exception& e) {
      err_ << "capra: internal error: " << e.what() << "\n";
      return kFailure;
    }
  }

 private:
  SourceNorm source() const { return SourceNorm::parse(o_.p); }

  Json header_inputs() const {
    Json in;
    in["p"] = o_.p;
    if (o_.k) in["k"] = *o_.k;
    if (o_.tol) in["tol"] = *o_.tol;
    in["seed"] = o_.seed;
    if (!o_.file.empty()) in["file"] = o_.file;
    return in;
  }

  void emit(const std::string& text) {
    if (o_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(o_.output, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + o_.output + "'");
    f << text;
  }

  void emit_document(const Json& doc) {
    const std::string text = doc.dump(2) + "\n";
    validate_document(Json::parse(text));
    emit(text);
  }

  // The batch vector is --file if given, otherwise the command's primary inline vector.
  std::vector<Vector> primary_inputs(const std::string& inline_text, const char* name) const {
    if (!o_.file.empty()) return read_vector_csv_file(o_.file);
    if (inline_text.empty()) throw InvalidArgument(std::string("missing --") + name + " or --file");
    return {parse_vector(inline_text)};
  }

  int run_vector_command(const std::string& command) {
    const SourceNorm src = source();
    Json inputs = header_inputs();
    std::vector<Vector> xs;
    Handler handler;

    if (command == "norm") {
      xs = primary_inputs(o_.x, "x");
      handler = [&](const Vector& x) {
        const NormEvaluation e = coordinate_norm_eval(x, *o_.k, src, cfg_);
        Item it;
        it.results = {{"value", e.value},
                      {"closed_form", e.closed_form},
                      {"gap", e.gap},
                      {"dual_point", to_json(e.dual_point)}};
        it.residuals = {{"dual_ball", dual_coordinate_norm(e.dual_point, *o_.k, src) - 1.0},
                        {"duality", e.value - dot(x, e.dual_point)}};
        return it;
      };
    } else if (command == "dual-norm") {
      xs = primary_inputs(o_.y, "y");
      handler = [&](const Vector& y) {
        Item it;
        if (o_.k) {
          const double v = dual_coordinate_norm(y, *o_.k, src);
          Json top = Json::array();
          for (std::size_t i : top_k_indices(y, *o_.k)) top.push_back(i + 1);
          it.results = {{"value", v}, {"top_k_indices", top}};
          it.residuals = {{"subset_oracle", y.size() <= 20
                                                ? Json(std::abs(v - dual_norm_by_subsets(y, *o_.k, src)))
                                                : Json(nullptr)}};
        } else {
          it.results = {{"value", dual_norm(y, src)}};
          it.residuals = Json::object();
        }
        return it;
      };
    } else if (command == "seq") {
      xs = primary_inputs(o_.x, "x");
      std::optional<Vector> y;
      if (!o_.y.empty()) {
        y = parse_vector(o_.y);
        inputs["y"] = to_json(*y);
      }
      handler = [&, y](const Vector& x) {
        const NormSequence s = y ? norm_sequence(x, *y, src, cfg_) : norm_sequence(x, src, cfg_);
        double violation = std::abs(s.values.back() - source_norm(x, src));
        for (std::size_t k = 1; k < s.values.size(); ++k) {
          violation = std::max(violation, s.values[k] - s.values[k - 1]);
        }
        for (std::size_t k = 1; k < s.dual_values.size(); ++k) {
          violation = std::max(violation, s.dual_values[k - 1] - s.dual_values[k]);
        }
        Item it;
        it.results = {{"values", to_json(s.values)}};
        if (y) it.results["dual_values"] = to_json(s.dual_values);
        it.residuals = {{"monotonicity", std::max(0.0, violation)}};
        return it;
      };
    } else if (command == "sparsity") {
      xs = primary_inputs(o_.x, "x");
      const double tol = o_.tol.value_or(1e-6);
      handler = [&, tol](const Vector& x) {
        const NormSequence s = norm_sequence(x, src, cfg_);
        const std::size_t k_hat = sparsity_from_grading(x, src, tol, cfg_);
        const double last = s.values.back();
        Item it;
        it.results = {{"k_hat", k_hat},
                      {"is_exact", src.strictly_convex()},
                      {"l0", l0(x)},
                      {"values", to_json(s.values)}};
        it.residuals = {{"grading", std::abs(s.values[k_hat - 1] - last) / last}};
        return it;
      };
    } else if (command == "conjugate") {
      xs = primary_inputs(o_.y, "y");
      const PhiSpec phi = parse_phi(o_.phi, xs.front().size());
      inputs["phi"] = to_json(phi);
      handler = [&, phi](const Vector& y) {
        Json arg = Json::array();
        for (std::size_t l : capra_conjugate_argmax(phi, y, src)) arg.push_back(l);
        Item it;
        it.results = {{"value", to_json(capra_conjugate(phi, y, src))}, {"argmax", arg}};
        it.residuals = Json::object();
        return it;
      };
    } else if (command == "biconjugate") {
      xs = primary_inputs(o_.x, "x");
      const PhiSpec phi = parse_phi(o_.phi, xs.front().size());
      inputs["phi"] = to_json(phi);
      handler = [&, phi](const Vector& x) {
        const BiconjugateResult r = capra_biconjugate(phi, x, src, cfg_);
        Item it;
        it.results = {{"value", to_json(r.value)},
                      {"ascent_upper", number_to_json(r.ascent_upper)},
                      {"variational", r.variational ? Json(*r.variational) : Json(nullptr)},
                      {"variational_skipped", r.variational_skipped},
                      {"skip_reason", r.skip_reason},
                      {"dual_point", to_json(r.dual_point)},
                      {"iterations", r.iterations},
                      {"box_limited", r.box_limited}};
        it.residuals = {{"route_gap", r.gap ? Json(*r.gap) : Json(nullptr)},
                        {"galois_slack", number_to_json(galois_slack(phi, x, r.value))}};
        return it;
      };
    } else if (command == "subdiff") {
      xs = primary_inputs(o_.x, "x");
      const Vector y = parse_vector(o_.y.empty() ? throw InvalidArgument("missing --y") : o_.y);
      inputs["y"] = to_json(y);
      const PhiSpec phi = parse_phi(o_.phi, xs.front().size());
      inputs["phi"] = to_json(phi);
      handler = [&, phi, y](const Vector& x) {
        require_same_dim(x, y, "subdiff");
        SubdiffCertificate c;
        if (is_zero(x)) {
          c = subdiff_at_zero_contains(phi, y, src, o_.tol.value_or(1e-7));
        } else {
          SubdiffOptions so;
          so.tol = o_.tol;
          so.solver = cfg_;
          c = subdiff_membership(phi, x, y, src, so);
        }
        Json arg = Json::array();
        for (std::size_t l : c.argmax_set) arg.push_back(l);
        Item it;
        it.results = {{"member", c.member}, {"case", to_string(c.case_tag)}, {"argmax_set", arg}, {"l0", c.l0}};
        it.residuals = {{"coupling_eq", number_to_json(c.residual_coupling_eq)},
                        {"argmax", number_to_json(c.residual_argmax)},
                        {"tol", c.tol}};
        return it;
      };
    } else if (command == "bound") {
      xs = primary_inputs(o_.x, "x");
      const PhiSpec phi = parse_phi(o_.phi, xs.front().size());
      require_phi_norm_weights(phi);
      inputs["phi"] = to_json(phi);
      handler = [&, phi](const Vector& x) {
        const BoundReport r = l0_lower_bound(x, phi, src, cfg_);
        Item it;
        it.results = {{"phi_norm", r.phi_norm_value},
                      {"source_norm", r.source_norm_value},
                      {"ratio", r.ratio},
                      {"phi_at_l0", r.phi_at_l0},
                      {"slack", r.slack},
                      {"l0", r.l0},
                      {"integer_bound", r.integer_bound ? Json(*r.integer_bound) : Json(nullptr)},
                      {"holder_bound", src.p() == 1.0 ? Json(nullptr) : Json(holder_ratio_bound(x, src))}};
        it.residuals = {{"slack", r.slack}};
        return it;
      };
    } else {
      throw InvalidArgument("unknown command " + command);
    }

    if (o_.file.empty()) {
      inputs[command == "conjugate" || command == "dual-norm" ? "y" : "x"] = to_json(xs.front());
    } else {
      inputs["count"] = xs.size();
    }
    const std::vector<Item> items = evaluate_all(xs, handler);

    Json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    if (o_.file.empty()) {
      doc["results"] = items.front().results;
      doc["residuals"] = items.front().residuals;
    } else {
      Json results = Json::array(), residuals = Json::array();
      for (const Item& it : items) {
        results.push_back(it.results);
        residuals.push_back(it.residuals);
      }
      doc["results"] = results;
      doc["residuals"] = residuals;
    }
    doc["version"] = kSchemaVersion;
    emit_document(doc);
    return kOk;
  }

  int run_ball_slice() {
    if (o_.dim != 2) throw InvalidArgument("ball-slice: only d = 2 is supported, got d = " + std::to_string(o_.dim));
    const bool primal = o_.ball != "dual";
    const bool dual = o_.ball != "primal";
    emit(ball_slice_csv(ball_slice(*o_.k, source(), o_.resolution, primal, dual, cfg_)));
    return kOk;
  }

  int run_check() {
    PropertySuiteOptions po;
    po.seed = o_.seed;
    po.trials = o_.trials;
    const Json report = run_property_suite(po);
    std::size_t violations = 0;
    for (const Json& c : report["checks"]) violations += c["violations"].get<std::size_t>();
    Json doc;
    doc["command"] = "check";
    doc["inputs"] = {{"seed", o_.seed}, {"trials", o_.trials}};
    doc["results"] = report;
    doc["residuals"] = {{"violations", violations}};
    doc["version"] = kSchemaVersion;
    emit_document(doc);
    if (violations > 0) {
      const Json& first = report["first_counterexample"];
      err_ << "capra: property " << first["check"].get<std::string>()
           << " violated; first counterexample " << first["vector"].dump() << "\n";
      return kFailure;
    }
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
  SolverConfig cfg_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return App(out, err).run(args);
}

}  // namespace capra::cli
