#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumsetlab/error.hpp"
#include "sumsetlab/identities.hpp"
#include "sumsetlab/instance_io.hpp"
#include "sumsetlab/random.hpp"
#include "sumsetlab/sumsets.hpp"

namespace sumsetlab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::string format = "table";
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  std::string enforce = "none";
  std::string out_path;
  unsigned jobs = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Results land in index order whatever order the workers finish in.
template <typename Fn>
auto run_indexed(std::size_t count, unsigned jobs, Fn fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// "3", "0..2" or "1,4,6".
std::vector<std::int64_t> parse_range(const std::string& text, const std::string& flag) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw UsageError(flag + ": cannot parse \"" + text + "\" as a range");
    }
    return v;
  };
  std::vector<std::int64_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = to_int(text.substr(0, dots));
    const auto hi = to_int(text.substr(dots + 2));
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_int(part));
  }
  if (out.empty()) throw UsageError(flag + ": empty range \"" + text + "\"");
  return out;
}

std::vector<std::int64_t> range_or(const std::string& text, const std::string& flag,
                                   std::vector<std::int64_t> fallback) {
  return text.empty() ? fallback : parse_range(text, flag);
}

std::vector<std::int64_t> iota_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::string str(const mpz_class& z) { return z.get_str(); }
std::string str(const mpq_class& q) { return q.get_str(); }

Json optional_int(const std::optional<std::int64_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// -- tables -----------------------------------------------------------------

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c + 1 == row.size()) {
          os << row[c];
        } else {
          os << std::left << std::setw(static_cast<int>(width[c])) << row[c] << "  ";
        }
      }
      os << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string flat(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_object()) {
    std::string out;
    for (const auto& [key, value] : v.items()) {
      if (!out.empty()) out += " ";
      out += key + "=" + flat(value);
    }
    return out;
  }
  if (v.is_array()) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + flat(v[i]);
    return out + "}";
  }
  return v.dump();
}

void print_summary(std::ostream& os, const Json& report) {
  if (report.contains("summary")) {
    for (const auto& [key, value] : report["summary"].items()) {
      os << key << ": " << flat(value) << '\n';
    }
  }
}

void render_identities(std::ostream& os, const Json& report) {
  Table t({"identity", "params", "brute", "closed", "agree"});
  for (const auto& row : report["rows"]) {
    if (row["identity"] == "lemma22") {
      t.add({"lemma22", flat(row["params"]), flat(row["leading"]),
             flat(row["expected_leading"]), flat(row["agree"])});
    } else {
      t.add({flat(row["identity"]), flat(row["params"]), flat(row["brute"]),
             flat(row["closed"]), flat(row["agree"])});
    }
  }
  t.print(os);
  print_summary(os, report);
}

void render_sumset(std::ostream& os, const Json& report) {
  os << "p: " << report["instance"]["p"] << "\n";
  os << "sumset: " << flat(report["sumset"]) << "\n";
  os << "cardinality: " << report["cardinality"] << "\n";
  Table t({"bound", "value", "hypothesis", "reason", "formula"});
  for (const auto& [name, b] : report["bounds"].items()) {
    t.add({name, flat(b["bound"]), flat(b["hypothesis"]), flat(b["reason"]), flat(b["formula"])});
  }
  t.print(os);
  for (const auto& [name, v] : report["specializations"].items()) {
    os << name << ": " << flat(v) << "\n";
  }
  os << "certificate: " << flat(report["certificate"]) << "\n";
  if (report.contains("shrink")) os << "shrink: " << flat(report["shrink"]) << "\n";
  print_summary(os, report);
}

void render_thm4(std::ostream& os, const Json& report) {
  Table t({"A", "S", "n", "hypothesis", "covered", "missing", "r", "proof_arith"});
  for (const auto& row : report["rows"]) {
    t.add({flat(row["set"]), flat(row["forbidden"]), flat(row["n"]),
           flat(row["hypothesis_met"]), flat(row["covered"]), flat(row["missing"]),
           flat(row["r"]), flat(row["proof_arithmetic_ok"])});
  }
  t.print(os);
  print_summary(os, report);
}

void render_experiment(std::ostream& os, const Json& report) {
  Table t({"trial", "p", "n", "m", "sizes", "|C|", "thm1", "thm2", "thm3", "old",
           "certificate", "violations"});
  auto bound_cell = [](const Json& b) {
    return flat(b["bound"]) + (b["hypothesis"].get<bool>() ? "*" : "");
  };
  for (const auto& row : report["rows"]) {
    const auto& c = row["certificate"];
    std::string cert = c.contains("valid") ? (c["valid"].get<bool>() ? "valid>=" : "void>=") +
                                                 flat(c["claimed_bound"])
                                           : "-";
    t.add({flat(row["trial"]), flat(row["p"]), flat(row["n"]), flat(row["m"]),
           flat(row["sizes"]), flat(row["cardinality"]), bound_cell(row["bounds"]["thm1"]),
           bound_cell(row["bounds"]["thm2"]), bound_cell(row["bounds"]["thm3"]),
           bound_cell(row["bounds"]["old"]), cert, flat(row["violations"])});
  }
  t.print(os);
  os << "(* = hypothesis holds)\n";
  print_summary(os, report);
}

// -- identities -------------------------------------------------------------

struct IdentityArgs {
  std::string scope;
  std::string n, s, a, b, m, k;
  std::int64_t max_entry = 2;
  std::int64_t min_vars = 2;
  std::int64_t max_vars = 4;
  std::int64_t slack = 2;
  std::string placement = "with-a";
};

Json identity_row(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  return Json{{"identity", r.identity}, {"params", params}, {"brute", str(r.brute_value)},
              {"closed", str(r.closed_value)}, {"agree", r.agree}, {"source", r.note}};
}

Json lemma22_row(std::int64_t n, std::int64_t s, std::int64_t b, std::int64_t m,
                 std::int64_t slack) {
  Json params{{"n", n}, {"s", s}, {"b", b}, {"m", m}};
  try {
    const auto r = lemma22_check(n, s, b, m, slack);
    Json samples = Json::array();
    for (const auto& v : r.samples) samples.push_back(str(v));
    Json interp = Json::array();
    for (const auto& v : r.interpolant) interp.push_back(str(v));
    return Json{{"identity", "lemma22"},
                {"params", params},
                {"exponents", r.exponents},
                {"degree", r.degree},
                {"samples", samples},
                {"interpolant", interp},
                {"leading", str(r.leading)},
                {"expected_leading", str(r.expected_leading)},
                {"closed_form_leading", str(r.closed_form_leading)},
                {"agree", r.agree},
                {"source", "constant term is a degree-D polynomial in a_0; leading "
                           "coefficient vs (1/D!) CT of (x_1+..+x_n)^D prod x_l^{-a_l} L"}};
  } catch (const Error& e) {
    if (e.code() != Errc::interpolation_mismatch) throw;
    return Json{{"identity", "lemma22"}, {"params", params}, {"leading", nullptr},
                {"expected_leading", nullptr}, {"agree", false}, {"error", e.what()}};
  }
}

std::pair<Json, int> cmd_identities(const IdentityArgs& args, const GlobalOptions& g) {
  using Task = std::function<std::vector<Json>()>;
  std::vector<Task> tasks;
  const auto& scope = args.scope;

  if (scope == "dyson" || scope == "zeilberger") {
    if (args.min_vars < 2 || args.max_vars < args.min_vars || args.max_entry < 0) {
      throw UsageError("need 2 <= --min-vars <= --max-vars and --max-entry >= 0");
    }
    for (auto len = args.min_vars; len <= args.max_vars; ++len) {
      std::vector<std::int64_t> v(static_cast<std::size_t>(len), 0);
      for (;;) {
        tasks.push_back([v, scope] {
          return std::vector<Json>{identity_row(scope == "dyson" ? dyson_report(v)
                                                                 : zeilberger_report(v))};
        });
        std::size_t i = 0;
        while (i < v.size() && v[i] == args.max_entry) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
      }
    }
  } else if (scope == "aomoto") {
    ChiPlacement placement;
    if (args.placement == "with-a") {
      placement = ChiPlacement::with_a;
    } else if (args.placement == "with-b") {
      placement = ChiPlacement::with_b;
    } else {
      throw UsageError("--placement must be with-a or with-b");
    }
    for (auto n : range_or(args.n, "--n", iota_range(1, 3))) {
      for (auto s : range_or(args.s, "--s", iota_range(0, n))) {
        if (s > n) continue;
        for (auto a : range_or(args.a, "--a", iota_range(0, 2))) {
          for (auto b : range_or(args.b, "--b", iota_range(0, 2))) {
            for (auto m : range_or(args.m, "--m", iota_range(0, 1))) {
              const IdentityParams p{n, s, a, b, m};
              p.validate();
              tasks.push_back([p, placement] {
                return std::vector<Json>{identity_row(aomoto_report(p, placement)),
                                         identity_row(inversion_report(p))};
              });
            }
          }
        }
      }
    }
  } else if (scope == "lemma22") {
    for (auto n : range_or(args.n, "--n", {2})) {
      for (auto m : range_or(args.m, "--m", iota_range(0, 1))) {
        for (auto b : range_or(args.b, "--b", iota_range(0, 2))) {
          for (auto s : range_or(args.s, "--s", iota_range(0, n))) {
            if (s > n) continue;
            IdentityParams{n, s, 0, b, m}.validate();
            const auto slack = args.slack;
            tasks.push_back([=] { return std::vector<Json>{lemma22_row(n, s, b, m, slack)}; });
          }
        }
      }
    }
  } else if (scope == "prop21") {
    for (auto n : range_or(args.n, "--n", iota_range(2, 3))) {
      for (auto m : range_or(args.m, "--m", iota_range(1, 2))) {
        const auto base = m * (n - 1);
        for (auto k : range_or(args.k, "--k", iota_range(base + 1, base + 4))) {
          for (auto s : range_or(args.s, "--s", iota_range(0, n))) {
            if (s > n) continue;
            if (n < 1 || k <= base) {
              throw UsageError("prop21 needs n >= 1 and k > m(n-1); got n=" +
                               std::to_string(n) + " m=" + std::to_string(m) +
                               " k=" + std::to_string(k));
            }
            tasks.push_back([=] { return std::vector<Json>{identity_row(prop21_report(n, m, k, s))}; });
          }
        }
      }
    }
  } else {
    throw UsageError("unknown identity scope \"" + scope +
                     "\" (dyson|zeilberger|aomoto|lemma22|prop21)");
  }

  const auto chunks = run_indexed(tasks.size(), g.jobs, [&](std::size_t i) { return tasks[i](); });
  Json rows = Json::array();
  Json first_failure = nullptr;
  std::size_t agreed = 0;
  for (const auto& chunk : chunks) {
    for (const auto& row : chunk) {
      if (row["agree"].get<bool>()) {
        ++agreed;
      } else if (first_failure.is_null()) {
        first_failure = Json{{"identity", row["identity"]}, {"params", row["params"]}};
      }
      rows.push_back(row);
    }
  }
  Json report{{"command", "identities"},
              {"config", {{"scope", scope}, {"placement", args.placement}}},
              {"rows", rows},
              {"summary",
               {{"checks", rows.size()}, {"agreed", agreed}, {"first_failure", first_failure}}}};
  return {report, first_failure.is_null() ? kOk : kDisagreement};
}

// -- sumset -----------------------------------------------------------------

Json bound_json(const BoundCheck& b) {
  return Json{{"bound", optional_int(b.bound)}, {"hypothesis", b.hypothesis},
              {"reason", b.reason}, {"formula", b.formula}};
}

Json bounds_json(const BoundReport& r) {
  Json out = Json::object();
  for (const auto& [name, check] : r.checks()) out[name] = bound_json(*check);
  return out;
}

Json certificate_json(const CertificateReport& c) {
  return Json{{"route", c.route},
              {"degree", c.degree},
              {"sum_exponent", c.sum_exponent},
              {"coefficient", str(c.coefficient_integer)},
              {"coefficient_mod_p", c.coefficient_mod_p.value()},
              {"claimed_bound", c.claimed_bound},
              {"valid", c.certificate_valid}};
}

// Certificate, or the reason none was produced.
Json try_certificate(const SumsetInstance& inst) {
  try {
    return certificate_json(certificate_check(inst));
  } catch (const Error& e) {
    if (e.code() != Errc::degree_infeasible && e.code() != Errc::budget_exceeded) throw;
    return Json{{"status", "not-computed"}, {"reason", e.what()}};
  }
}

bool all_forbidden_empty(const SumsetInstance& inst) {
  for (std::size_t i = 0; i < inst.n(); ++i) {
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (i != j && !inst.forbidden(i, j).empty()) return false;
    }
  }
  return true;
}

bool distinct_summands_shape(const SumsetInstance& inst) {
  const Residues zero{0};
  for (std::size_t i = 0; i < inst.n(); ++i) {
    if (inst.sets()[i] != inst.sets()[0]) return false;
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (i != j && inst.forbidden(i, j) != zero) return false;
    }
  }
  return true;
}

std::pair<Json, int> cmd_sumset(const std::string& path, const GlobalOptions& g) {
  const auto inst = load_instance(path);
  const auto bounds = compute_bounds(inst, g.budget);
  const auto card = *bounds.brute_cardinality;
  Json violations = Json::array();
  for (const auto& v : bounds.violations()) violations.push_back(v);

  Json special = Json::object();
  const auto sizes = inst.sizes();
  if (all_forbidden_empty(inst)) {
    special["cauchy_davenport"] =
        std::min<std::int64_t>(static_cast<std::int64_t>(inst.p()), cauchy_davenport_bound(sizes));
  }
  if (distinct_summands_shape(inst)) {
    special["distinct_summands"] = std::min<std::int64_t>(
        static_cast<std::int64_t>(inst.p()),
        distinct_summands_bound(static_cast<std::int64_t>(inst.n()), sizes[0]));
  }

  Json cert = try_certificate(inst);
  if (cert.contains("valid") && cert["valid"].get<bool>() &&
      card < cert["claimed_bound"].get<std::int64_t>()) {
    violations.push_back("certificate");
  }

  Json report{{"command", "sumset"},
              {"config", {{"instance", path}, {"budget", g.budget}}},
              {"instance", instance_to_json(inst)},
              {"sumset", *bounds.sumset},
              {"cardinality", card},
              {"bounds", bounds_json(bounds)},
              {"specializations", special},
              {"certificate", cert}};

  if (bounds.old.hypothesis) {
    const auto shrunk = shrink_instance(inst);
    const auto shrunk_card = static_cast<std::int64_t>(
        enumerate_restricted_sumset(shrunk, g.budget).size());
    Json shrink{{"sizes", shrunk.sizes()},
                {"cardinality", shrunk_card},
                {"certificate", try_certificate(shrunk)}};
    if (shrunk_card < static_cast<std::int64_t>(inst.p())) violations.push_back("shrink");
    report["shrink"] = shrink;
  }
  report["summary"] = Json{{"violations", violations},
                           {"characteristic_zero", "identity-level verification only"}};
  return {report, violations.empty() ? kOk : kDisagreement};
}

// -- thm4 -------------------------------------------------------------------

struct Thm4Args {
  std::uint64_t p = 7;
  std::int64_t m = 1;
  std::string mode = "exhaustive";
  std::uint64_t count = 50;
  std::int64_t size = 0;
  std::string forbidden;
};

Json thm4_row(const Thm4Report& r) {
  return Json{{"set", r.set},
              {"forbidden", r.forbidden},
              {"n", r.n},
              {"threshold", r.threshold},
              {"hypothesis_met", r.hypothesis_met},
              {"covered", r.covered},
              {"missing", r.missing},
              {"r", r.r},
              {"derived_bound", r.derived_bound},
              {"proof_arithmetic_ok", r.proof_arithmetic_ok()}};
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c > cap ? cap + 1 : c.get_ui();
}

std::pair<Json, int> cmd_thm4(const Thm4Args& args, const GlobalOptions& g) {
  const auto field = make_field(args.p);
  if (args.m < 1 || static_cast<std::uint64_t>(args.m) > args.p) {
    throw UsageError("--m must lie in [1, p]");
  }
  const auto threshold = thm4_threshold(args.p, args.m);
  const auto p = static_cast<std::int64_t>(args.p);

  std::optional<Residues> fixed_forbidden;
  if (!args.forbidden.empty()) {
    Residues s;
    for (auto v : parse_range(args.forbidden, "--forbidden")) {
      if (v < 0 || v >= p) throw UsageError("--forbidden residues must lie in [0, p)");
      s.push_back(static_cast<std::uint64_t>(v));
    }
    if (static_cast<std::int64_t>(s.size()) != args.m) {
      throw UsageError("--forbidden must list exactly m residues");
    }
    fixed_forbidden = s;
  }
  if (args.size < 0 || args.size > p) throw UsageError("--size must lie in [0, p]");

  std::vector<std::pair<Residues, Residues>> cases;  // (S, A)
  if (args.mode == "exhaustive") {
    const auto size = args.size > 0 ? args.size : std::clamp<std::int64_t>(threshold, 1, p);
    if (binomial_capped(args.p, static_cast<std::uint64_t>(size), g.budget) > g.budget) {
      throw Error(Errc::budget_exceeded, "too many subsets for exhaustive mode");
    }
    Residues s = fixed_forbidden.value_or(Residues{});
    if (!fixed_forbidden) {
      for (std::int64_t v = 0; v < args.m; ++v) s.push_back(static_cast<std::uint64_t>(v));
    }
    // Subsets in lexicographic order via a selection mask.
    std::vector<char> mask(args.p, 0);
    std::fill(mask.begin(), mask.begin() + size, 1);
    do {
      Residues a;
      for (std::uint64_t v = 0; v < args.p; ++v) {
        if (mask[v]) a.push_back(v);
      }
      cases.emplace_back(s, a);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  } else if (args.mode == "sample") {
    Rng rng(g.seed);
    const auto lo = args.size > 0 ? args.size : std::clamp<std::int64_t>(threshold, 1, p);
    const auto hi = args.size > 0 ? args.size : p;
    for (std::uint64_t t = 0; t < args.count; ++t) {
      Residues s = fixed_forbidden ? *fixed_forbidden
                                   : rng.subset(args.p, static_cast<std::uint64_t>(args.m));
      const auto size = rng.between(lo, hi);
      cases.emplace_back(s, rng.subset(args.p, static_cast<std::uint64_t>(size)));
    }
  } else {
    throw UsageError("--mode must be exhaustive or sample");
  }

  const auto reports = run_indexed(cases.size(), g.jobs, [&](std::size_t i) {
    return thm4_check(field, cases[i].first, cases[i].second, g.budget);
  });
  Json rows = Json::array();
  std::size_t with_hypothesis = 0, failures = 0, arithmetic_failures = 0;
  for (const auto& r : reports) {
    rows.push_back(thm4_row(r));
    if (r.hypothesis_met) {
      ++with_hypothesis;
      if (!r.covered) ++failures;
    }
    if (!r.proof_arithmetic_ok()) ++arithmetic_failures;
  }
  Json report{{"command", "thm4"},
              {"config",
               {{"p", args.p}, {"m", args.m}, {"mode", args.mode}, {"count", args.count},
                {"size", args.size}, {"seed", g.seed}, {"budget", g.budget}}},
              {"threshold", threshold},
              {"rows", rows},
              {"summary",
               {{"cases", rows.size()},
                {"hypothesis_met", with_hypothesis},
                {"uncovered_with_hypothesis", failures},
                {"proof_arithmetic_failures", arithmetic_failures}}}};
  return {report, failures == 0 && arithmetic_failures == 0 ? kOk : kDisagreement};
}

// -- experiment -------------------------------------------------------------

struct ExperimentArgs {
  std::uint64_t trials = 200;
  std::string primes = "5,7,11,13";
  std::string ns = "2,3";
  std::string ms = "0,1";
  std::int64_t k_min = 1;
  std::int64_t k_max = 6;
};

Json experiment_row(std::size_t trial, const SumsetInstance& inst, std::uint64_t budget) {
  const auto bounds = compute_bounds(inst, budget);
  const auto card = *bounds.brute_cardinality;
  Json violations = Json::array();
  for (const auto& v : bounds.violations()) violations.push_back(v);
  Json cert = try_certificate(inst);
  if (cert.contains("valid") && cert["valid"].get<bool>() &&
      card < cert["claimed_bound"].get<std::int64_t>()) {
    violations.push_back("certificate");
  }
  return Json{{"trial", trial},
              {"p", inst.p()},
              {"n", inst.n()},
              {"m", optional_int(inst.uniform_m())},
              {"sizes", inst.sizes()},
              {"instance", instance_to_json(inst)},
              {"cardinality", card},
              {"bounds", bounds_json(bounds)},
              {"certificate", cert},
              {"violations", violations}};
}

std::pair<Json, int> cmd_experiment(const ExperimentArgs& args, const GlobalOptions& g) {
  const auto enforce = parse_enforce(g.enforce);
  if (!enforce) throw UsageError("--enforce must be thm1, thm2, thm3 or none");
  TrialRanges ranges;
  ranges.primes.clear();
  for (auto p : parse_range(args.primes, "--primes")) {
    if (p < 2) throw UsageError("--primes must be primes");
    make_field(static_cast<std::uint64_t>(p));
    ranges.primes.push_back(static_cast<std::uint64_t>(p));
  }
  ranges.ns = parse_range(args.ns, "--n");
  ranges.ms = parse_range(args.ms, "--m");
  ranges.k_min = args.k_min;
  ranges.k_max = args.k_max;
  for (auto n : ranges.ns) {
    if (n < 1) throw UsageError("--n values must be positive");
  }
  for (auto m : ranges.ms) {
    if (m < 0) throw UsageError("--m values must be nonnegative");
  }

  // Instances are drawn sequentially so the stream does not depend on --jobs.
  Rng rng(g.seed);
  std::vector<SumsetInstance> instances;
  for (std::uint64_t t = 0; t < args.trials; ++t) {
    instances.push_back(draw_trial(rng, ranges, *enforce));
  }
  const auto rows_vec = run_indexed(instances.size(), g.jobs, [&](std::size_t i) {
    return experiment_row(i, instances[i], g.budget);
  });
  Json rows = Json::array();
  std::size_t violating = 0, certified = 0;
  for (const auto& row : rows_vec) {
    if (!row["violations"].empty()) ++violating;
    if (row["certificate"].contains("valid") && row["certificate"]["valid"].get<bool>()) {
      ++certified;
    }
    rows.push_back(row);
  }
  Json report{{"command", "experiment"},
              {"config",
               {{"trials", args.trials}, {"seed", g.seed}, {"enforce", g.enforce},
                {"primes", ranges.primes}, {"n", ranges.ns}, {"m", ranges.ms},
                {"k_min", ranges.k_min}, {"k_max", ranges.k_max}, {"budget", g.budget}}},
              {"rows", rows},
              {"summary",
               {{"trials", rows.size()}, {"violating_trials", violating},
                {"valid_certificates", certified}}}};
  return {report, violating == 0 ? kOk : kDisagreement};
}

void emit(const Json& report, const GlobalOptions& g, std::ostream& out) {
  std::ostringstream buf;
  if (g.format == "doc") {
    buf << report.dump(2) << '\n';
  } else {
    const auto& cmd = report["command"];
    if (cmd == "identities") render_identities(buf, report);
    if (cmd == "sumset") render_sumset(buf, report);
    if (cmd == "thm4") render_thm4(buf, report);
    if (cmd == "experiment") render_experiment(buf, report);
  }
  if (g.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(g.out_path);
    if (!file) throw UsageError("cannot write " + g.out_path);
    file << buf.str();
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted sumsets over Z/pZ and the constant-term identities behind their bounds",
               "sumsetlab"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  g.budget = default_tuple_budget();
  g.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "doc"}));
  app.add_option("--seed", g.seed, "Seed for sampled subsets and random trials");
  app.add_option("--budget", g.budget, "Maximum tuples per enumeration");
  app.add_option("--enforce", g.enforce, "Hypothesis enforced on random trials")
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "none"}));
  app.add_option("--out", g.out_path, "Write the report to this file");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  IdentityArgs id;
  auto* identities = app.add_subcommand("identities", "Brute-force vs closed-form identity checks");
  identities->add_option("scope", id.scope, "dyson | zeilberger | aomoto | lemma22 | prop21")
      ->required();
  identities->add_option("--n", id.n, "Range for n (e.g. 1..3)");
  identities->add_option("--s", id.s, "Range for s (default 0..n)");
  identities->add_option("--a", id.a, "Range for a");
  identities->add_option("--b", id.b, "Range for b");
  identities->add_option("--m", id.m, "Range for m");
  identities->add_option("--k", id.k, "Range for k (prop21)");
  identities->add_option("--max-entry", id.max_entry, "Largest Dyson exponent");
  identities->add_option("--min-vars", id.min_vars, "Fewest Dyson variables");
  identities->add_option("--max-vars", id.max_vars, "Most Dyson variables");
  identities->add_option("--slack", id.slack, "Extra interpolation nodes (lemma22)");
  identities->add_option("--placement", id.placement, "Closed-form shift placement (aomoto)")
      ->check(CLI::IsMember({"with-a", "with-b"}));

  std::string instance_path;
  auto* sumset = app.add_subcommand("sumset", "Enumerate an instance file and check every bound");
  sumset->add_option("instance", instance_path, "Instance JSON file")->required();

  Thm4Args t4;
  auto* thm4 = app.add_subcommand("thm4", "Check coverage of Z/pZ by restricted n-fold sums");
  thm4->add_option("--p", t4.p, "Prime modulus")->required();
  thm4->add_option("--m", t4.m, "|S|")->required();
  thm4->add_option("--mode", t4.mode, "exhaustive | sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  thm4->add_option("--count", t4.count, "Samples in sample mode");
  thm4->add_option("--size", t4.size, "Fix |A| instead of using the threshold");
  thm4->add_option("--forbidden", t4.forbidden, "Fixed S as a list, e.g. 0 or 0,3");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Seeded soundness sweep over random instances");
  experiment->add_option("--trials", ex.trials, "Number of trials");
  experiment->add_option("--primes", ex.primes, "Candidate primes");
  experiment->add_option("--n", ex.ns, "Candidate n values");
  experiment->add_option("--m", ex.ms, "Candidate m values");
  experiment->add_option("--k-min", ex.k_min, "Smallest k");
  experiment->add_option("--k-max", ex.k_max, "Largest k");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::pair<Json, int> result;
    if (*identities) result = cmd_identities(id, g);
    if (*sumset) result = cmd_sumset(instance_path, g);
    if (*thm4) result = cmd_thm4(t4, g);
    if (*experiment) result = cmd_experiment(ex, g);
    result.first["exit_code"] = result.second;
    emit(result.first, g, out);
    if (result.second == kDisagreement) {
      err << "sumsetlab: disagreement or soundness violation detected\n";
    }
    return result.second;
  } catch (const UsageError& e) {
    err << "sumsetlab: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "sumsetlab: " << e.what() << '\n';
    switch (e.code()) {
      case Errc::budget_exceeded:
        return kBudget;
      case Errc::non_integer_result:
      case Errc::interpolation_mismatch:
        return kDisagreement;
      default:
        return kUsage;
    }
  }
}

}  // namespace sumsetlab::cli
